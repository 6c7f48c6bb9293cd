// Command-line front end; kept apart from main() so the dispatch logic and
// exit-code contract are directly testable.
#ifndef QZETA_CLI_HPP
#define QZETA_CLI_HPP

#include <ostream>

namespace qzeta::cli {

// Exit codes: 0 success / all checks passed, 1 some check failed,
// 2 usage or domain error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qzeta::cli

#endif
