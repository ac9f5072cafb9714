#pragma once

#include "lsbm/types.hpp"

#include <stdexcept>
#include <string>

namespace lsbm {

class PgmError : public std::runtime_error {
  public:
    enum class Kind { Io, UnsupportedFormat, BadHeader, BadMaxval, Truncated };

    PgmError(Kind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/// Reads a binary (P5) 8-bit PGM with maxval 255.  Header comments are
/// accepted; any other format is rejected with a distinct error.
GrayImage load_pgm(const std::string& path);

/// Writes the canonical header "P5\n<w> <h>\n255\n" followed by raw bytes.
void save_pgm(const GrayImage& image, const std::string& path);

}  // namespace lsbm
