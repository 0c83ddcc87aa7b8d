#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wloop::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseError = 2,
    kBudgetExceeded = 3,
    kOracleMismatch = 4,
};

int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);  // args exclude argv[0]

}  // namespace wloop::cli
