#pragma once

#include <string>
#include <vector>

namespace relfix {

// Entry point shared by the binary and the tests. Exit codes: 0 all
// requested checks pass, 1 some check fails or a reproduction diverges,
// 2 only Unknown-grade blemishes, 64 usage/parse errors.
int run_cli(const std::vector<std::string>& args, std::string& out, std::string& err);
int run_cli_main(int argc, char** argv);

} // namespace relfix
