#ifndef KMT_CLI_HPP
#define KMT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmt/report.hpp"

namespace kmt {

inline constexpr const char* kConfigEnv = "KMTOWER_CONFIG";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  long height_bound = 12;
  int search_depth = 8;
  long max_roots = 5'000'000;
  int max_matrix_size = 16;  // caps thm-3.5 at m + n <= max_matrix_size / 4
  int parallelism = 1;
  std::uint64_t seed = 20240601;

  int max_mn() const { return max_matrix_size / 4; }
  ojson to_json() const;
};

// path, else $KMTOWER_CONFIG, else defaults. Throws ConfigError on unreadable or invalid input.
RunConfig load_config(const std::optional<std::string>& path);

enum ExitCode { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitCap = 3 };

int run_command(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kmt

#endif
