#ifndef LANDEN_CLI_HPP
#define LANDEN_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace landen::cli
{

enum exit_code : int {
    ok = 0,
    parse_failure = 2,
    non_finite_input = 3,
    no_convergence = 4,
    domain_failure = 5,
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace landen::cli

#endif
