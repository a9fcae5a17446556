#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace surfq {

/// Batch front end. Subcommands: curvature, brackets, spectrum,
/// verify-quantum. Returns 0 on success, 1 on a verification failure or
/// solver non-convergence, 2 on usage/config errors; never throws.
/// Human-readable tables go to `out`; machine-readable JSON goes to the
/// --out file (or to `out` with --format json), never both on one stream.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace surfq
