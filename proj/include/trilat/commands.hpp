#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace trilat::cli {

// stdout payload and exit code; on failure `out` holds only the JSON error object
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

enum ExitCode { kOk = 0, kFailure = 1, kDegenerate = 2, kSchema = 3 };

enum class Format { Json, Csv };

struct SolveFlags {
  bool oracle_check = false;
  Format format = Format::Json;
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
};

CommandResult cmd_solve(const std::string& instance_path, const SolveFlags& flags);
CommandResult cmd_table(const std::string& fixture);

struct SweepSpec {
  double r = 2.0, s = 1.0;
  double d1_lo = 0.1, d1_hi = 5.0;
  double d3_lo = 0.1, d3_hi = 6.0;
  int steps = 200;
  double tol = 1e-9;
};
CommandResult cmd_sweep(const SweepSpec& spec);

CommandResult cmd_contour(const std::string& instance_path, int resolution, std::optional<std::uint64_t> seed);
CommandResult cmd_thresholds(const std::string& instance_path, double tol);

struct OracleFlags {
  int resolution = 512;
  int rounds = 6;
  double factor = 4.0;
  std::optional<std::uint64_t> seed;
};
CommandResult cmd_oracle(const std::string& instance_path, const OracleFlags& flags);

}  // namespace trilat::cli
