#ifndef AUTHORLINK_TOOLS_CLI_H_
#define AUTHORLINK_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace authorlink::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args[0] is the program name). Reports go to `out`,
// diagnostics to `err`.
int Run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

}  // namespace authorlink::cli

#endif  // AUTHORLINK_TOOLS_CLI_H_
