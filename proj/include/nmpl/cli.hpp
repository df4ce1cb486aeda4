#pragma once

#include <string>
#include <vector>

namespace nmpl::cli {

// <binary> <command> <config-path> [--out DIR] [--seed N] [--threads K]
// Commands: simulate, check-measure, reachability, verify-barrier,
// verify-appendix, probe-nondegeneracy, check-scaling, compare.
// Exit codes: 0 all checks pass, 2 a check failed, 1 usage/config error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

}  // namespace nmpl::cli
