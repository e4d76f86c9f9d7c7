#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tailweight {

/// Parses argv-style arguments (without the program name) and runs the
/// selected subcommand. Returns 0 on success, 1 on usage or input errors,
/// 2 on numerical failures (no root bracketed, quadrature breakdown,
/// degenerate simulation cell). Table output goes to `out` unless an --out
/// file is given; diagnostics go to `err`.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err);

}  // namespace tailweight
