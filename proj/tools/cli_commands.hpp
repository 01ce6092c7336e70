#ifndef ELLCFT_CLI_COMMANDS_HPP
#define ELLCFT_CLI_COMMANDS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ellcft::cli {

// exit codes: 0 success, 1 failed check or numerical failure, 2 usage error
int run(int argc, char** argv);
// args exclude the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ellcft::cli

#endif
