#pragma once

#include <string>

#include "tailweight/estimators.hpp"

namespace tailweight {

/// Input-file problem with the offending line number in the message.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reads newline-separated positive decimals ('#' lines are comments,
/// blank lines are skipped), sorts ascending. At least 3 values required.
SortedSample read_sample(const std::string& path);

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_double(double v);

}  // namespace tailweight
