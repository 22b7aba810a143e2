#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tmpp {

inline constexpr const char* kVersion = "0.1.0";

namespace cli {

/// Runs one subcommand. `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 validation or usage error, 2 I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace cli
}  // namespace tmpp
