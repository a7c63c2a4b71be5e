#pragma once

// Command-line front end. `run` does all the work so tests can drive it
// without spawning a process.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace symdisc::cli {

enum class Command { Membership, Boundary, Symmetrize, CheckTuple, Fundamental, Counterexample, CfCheck };

enum class Format { Json, Text };

struct RunConfig {
  Command command = Command::Membership;
  std::string set = "closed";  // membership: open | closed | boundary
  std::optional<std::string> input_path;
  std::optional<std::string> point;  // comma-separated complex numbers
  std::optional<int> n;
  int depth = 8;
  double eta = 0.25;
  int degree = 6;
  /// Defaults: 200 polynomials for tuple/counterexample checks, 2000 tails
  /// for cf-check.
  std::optional<int> trials;
  int circle_grid = 1024;
  int torus_grid = 48;
  int alpha_radii = 32;
  int alpha_angles = 64;
  int beta_grid = 256;
  int z_grid = 64;
  std::uint64_t seed = 42;
  double abs_eps = 1e-10;
  double rel_eps = 1e-8;
  double band = 1e-9;
  std::string b0 = "1";
  std::string b1 = "1";
  Format format = Format::Json;
  std::optional<std::string> output_path;
};

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNegative = 2;

/// Name of the environment variable that overrides the default seed.
inline constexpr const char* kSeedEnv = "SYMDISC_SEED";

/// Parses argv (including argv[0]). On failure or --help, returns nullopt
/// and sets `exit_code`; messages go to `out`/`err`.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out,
                                    std::ostream& err, int& exit_code);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace symdisc::cli
