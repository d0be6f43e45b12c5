#pragma once

#include <ostream>

namespace qmexpect {

/// Entry point of the qmexpect command. Returns 0 when every check passes,
/// 1 when a check fails or a numerical error occurs, 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qmexpect
