#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trilat/classifier.hpp"
#include "trilat/oracle.hpp"

namespace trilat {

struct GeneratorSpec {
  Point2 source;
  NoiseSpec noise;
  std::uint64_t seed = 0;
};

struct Instance {
  SensorConfig config;
  bool canonical = false;
  double r = 0.0, s = 0.0;
  std::optional<GeneratorSpec> generator;
};

// Accepted layout:
//   sensors: [[x, y] x 3]   or   canonical: {r, s}   (or top-level r, s)
//   ranges: {d1, d2, d3} | [d1, d2, d3] (or top-level d)   or
//   ranges/generator: {source: [x, y], noise: {kind, a | sigma}, seed}
// Throws Error(SchemaError) on anything else.
Instance parse_instance(const nlohmann::json& j, std::optional<std::uint64_t> seed_override = std::nullopt);
Instance load_instance(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt);

struct ReportPoint {
  double x = 0.0, y = 0.0;
  std::string role;
  bool operator==(const ReportPoint&) const = default;
};

struct OracleAgreement {
  int clusters = 0;
  double max_position_error = 0.0;
  double value_error = 0.0;
  bool operator==(const OracleAgreement&) const = default;
};

struct SolveReport {
  std::vector<ReportPoint> solutions;
  int multiplicity = 0;
  double objective = 0.0;
  std::string derivation;  // kind name
  std::string row;
  std::vector<std::pair<std::string, double>> near_threshold;
  std::vector<std::string> notes;
  std::optional<OracleAgreement> oracle_agreement;
  bool operator==(const SolveReport&) const = default;
};

inline constexpr const char* kReportSchema = "trilat/1";

SolveReport make_report(const SolutionSet& set);
nlohmann::json to_json(const SolveReport& r);
SolveReport report_from_json(const nlohmann::json& j);

nlohmann::json error_json(const std::string& kind, const std::string& message);

}  // namespace trilat
