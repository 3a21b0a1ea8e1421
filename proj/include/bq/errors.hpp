#pragma once

#include <stdexcept>
#include <string>

namespace bq {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct non_invertible : error {
    using error::error;
};
struct invalid_velocity : error {
    using error::error;
};
struct out_of_domain : error {
    using error::error;
};
struct quadrature_budget_exceeded : error {
    using error::error;
};
struct negative_time : error {
    using error::error;
};
struct unsupported_mass : error {
    using error::error;
};
struct zero_wave_number : error {
    using error::error;
};
struct zero_wave_vector : error {
    using error::error;
};

/// Malformed input; carries a 1-based line number when known (0 otherwise).
struct parse_error : error {
    explicit parse_error(const std::string& what, long line_no = 0)
        : error(line_no > 0 ? what + " (line " + std::to_string(line_no) + ")" : what),
          line(line_no) {}
    long line = 0;
};

}  // namespace bq
