#pragma once

// The `mf` command line: coeffs, eval, meijer, verify and scan.

#include <cstdint>
#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace mf {

enum class OutputFormat { Text, Json, Csv };

struct CliConfig {
  long precision_bits = 256;
  long max_terms = 10'000'000;
  OutputFormat output = OutputFormat::Text;
  std::uint64_t seed = 1;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int usage = 2;
inline constexpr int domain = 3;
inline constexpr int budget = 4;
inline constexpr int no_contour = 5;
inline constexpr int precision = 6;
}  // namespace exit_code

/// Exit status for an exception escaping a command.
int exit_code_for(const std::exception& e);

/// Runs one command. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mf
