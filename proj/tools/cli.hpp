#ifndef WSI_TOOLS_CLI_HPP_
#define WSI_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace wsi::cli {

// Exit codes: 0 success, 1 data error, 2 usage error.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

// Runs the `wsi` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wsi::cli

#endif  // WSI_TOOLS_CLI_HPP_
