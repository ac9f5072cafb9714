#pragma once

#include "lsbm/csv.hpp"
#include "lsbm/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace lsbm {

enum class SceneKind { Constant, Ramp, Texture };

/// Deterministic scene: the true expectation field theta(x, y).
struct SceneSpec {
    SceneKind kind = SceneKind::Constant;
    double theta0 = 128.0;                 // constant level / ramp offset
    double grad_x = 0.0, grad_y = 0.0;     // ramp gradients, DN per pixel
    GrayImage texture;                     // theta values for SceneKind::Texture

    double theta_at(int x, int y) const;
};

/// Synthesizes a cover image: pixels = quantize(theta_n + xi_n) with
/// xi_n ~ N(0, sigma^2) drawn from a counter stream keyed by (seed, n).
/// Returns the image together with the true parameter field.
std::pair<GrayImage, ParamField> synth_cover(const SceneSpec& scene, int width, int height,
                                             double sigma, std::uint64_t seed,
                                             int bit_depth = 8);

enum class DetectorMode { TheoreticalLrt, PracticalGlrt };

struct ExperimentConfig {
    DetectorMode mode = DetectorMode::TheoreticalLrt;
    SceneSpec scene;
    int width = 0;                   // image dims; constant scenes may instead
    int height = 0;                  // set n_pixels (laid out as a 1 x N strip)
    double sigma = 1.0;
    std::vector<double> rates;       // embedding rates, each in [0, 1]
    std::vector<double> alphas;      // false-alarm targets, each in (0, 1)
    int n_trials = 10000;
    std::uint64_t master_seed = 1;
    double alpha_stab = 0.25;        // practical mode stabilizer

    void validate() const;
};

/// Flat key=value experiment file ('#' comments); documented in README.
ExperimentConfig parse_experiment_config(const std::string& path);

struct McRow {
    double alpha0 = 0.0;
    double rate = 0.0;
    double empirical_alpha = 0.0;
    double empirical_power = 0.0;
    double theory_power = 0.0;
};

/// Monte-Carlo verification of the test calibration and power: for each
/// (alpha0, R), empirical rates over n_trials seeded runs next to the
/// asymptotic prediction.  Per-trial seeds derive from (master_seed,
/// purpose, trial), so results are independent of thread count.
std::vector<McRow> mc_verify(const ExperimentConfig& config, int n_threads = 1);

CsvTable mc_rows_to_table(const std::vector<McRow>& rows);

struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (false alarm, detection)
    double auc = 0.0;
};

/// Empirical ROC by threshold sweep over the pooled scores (decision
/// "score > t"), ties split evenly; AUC by trapezoidal rule over integer
/// counts, so it equals the pairwise win-rate exactly.
RocCurve roc_from_scores(const std::vector<double>& cover_scores,
                         const std::vector<double>& stego_scores);

/// Calibration threshold: smallest cover-score order statistic whose
/// exceedance fraction is <= alpha0 (percentile method).
double calibrate_threshold(std::vector<double> cover_scores, double alpha0);

}  // namespace lsbm
