#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "potts/deconvolution.hpp"

namespace potts {

// malformed input files (distinct from usage errors; the CLI maps this to
// exit code 2)
struct SignalFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// CSV with header `x,f` or `x,f,w`, `#` comment lines, ascending x, finite
// values, positive weights.
struct SignalColumns {
    std::vector<double> x;
    std::vector<double> f;
    std::optional<std::vector<double>> w;
};

SignalColumns read_signal_csv(const std::string& path);
void write_signal_csv(const std::string& path, const SignalColumns& columns,
                      const std::string& value_header = "f");

// single-column CSV of taps; auto-normalized (with a warning on stderr when
// the sum is not 1), symmetry and sign validated
Kernel read_kernel_csv(const std::string& path);

} // namespace potts
