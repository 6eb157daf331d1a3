#ifndef WHITTAKER_CLI_HPP
#define WHITTAKER_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>

namespace whittaker {

/// Entry point of the `whittaker` tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// WHITTAKER_CACHE_DIR if set (empty disables), else ~/.cache/whittaker.
std::optional<std::filesystem::path> cache_directory();

}  // namespace whittaker

#endif  // WHITTAKER_CLI_HPP
