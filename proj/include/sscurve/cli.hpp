#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sscurve {

/// Exit codes of the command-line tool.
constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;
constexpr int kExitUsage = 64;

/// Flat key=value file: one pair per line, '#' starts a comment, keys may repeat.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::string& path);
std::string format_key_values(const KeyValues& kv);

/// Settings of an enumeration run. Keys of to_key_values() are the long flag
/// names of the enumerate subcommand, so a saved config replays the run.
struct RunConfig {
  enum class Mode { full, sample };
  enum class Format { json, csv };

  int p = 0;
  int n = 0;
  std::optional<std::vector<int>> modulus;
  std::string case_id;
  Mode mode = Mode::full;
  long long sample = 0;
  std::uint64_t seed = 0;
  std::string cells;
  int jobs = 0;  // 0: available parallelism
  std::string checkpoint;
  int checkpoint_every = 256;
  std::string out;
  Format format = Format::json;

  /// Throws MathError when fields contradict each other or the case.
  void validate() const;
  KeyValues to_key_values() const;
  static RunConfig from_key_values(const KeyValues& kv);

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Runs one subcommand; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sscurve
