#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace fourfactors::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // parse or validation failure
inline constexpr int kExitIo = 2;
inline constexpr int kExitVerifyFailed = 3;  // simulate --verify mismatch

enum class MuSource { Literal, Estimated };
enum class OutputFormat { Csv, Json };

struct Config {
  double mu_default = 0.42;
  MuSource mu_source = MuSource::Estimated;
  bool per100 = false;
  std::filesystem::path data_dir;
  OutputFormat output_format = OutputFormat::Csv;
  std::uint64_t seed = 1;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// key=value lines; '#' starts a comment. Throws fourfactors::Error
// (ConfigError) on unknown keys or bad values.
Config parse_config(std::istream& in);
Config load_config(const std::filesystem::path& path);

// Runs one subcommand. Output goes to `out` unless --out is given.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fourfactors::cli
