#pragma once

#include "lsbm/types.hpp"

namespace lsbm {

/// Uniform unit-step quantizer: y in [k-1/2, k+1/2) maps to k, clamped to
/// the dynamic range [0, 2^B - 1].
int quantize(double y, int bit_depth = 8);

/// Quantized Gaussian pmf of a cover pixel: interior bins take the
/// Phi-difference mass, the two boundary bins absorb the clamped tails so
/// the pmf sums to exactly 1.  Requires 0 <= theta <= 2^B - 1.
QuantizedPmf cover_pmf(const PixelParams& params, int bit_depth = 8);

/// Pmf after LSB-matching embedding at rate R in [0, 2]:
/// q[k] = (R/4)(p[k-1] + p[k+1]) + (1 - R/2) p[k], with reflection at the
/// boundary (p[-1] := p[0], p[2^B] := p[2^B - 1]).
QuantizedPmf stego_pmf(const QuantizedPmf& cover, double rate);

/// Mean and variance of a pmf, used by tests and the harness.
double pmf_mean(const QuantizedPmf& pmf);
double pmf_variance(const QuantizedPmf& pmf);

}  // namespace lsbm
