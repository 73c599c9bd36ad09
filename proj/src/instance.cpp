#include "trilat/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "trilat/errors.hpp"

namespace trilat {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::SchemaError, msg); }

double number(const json& j, const char* what) {
  if (!j.is_number()) schema(std::string(what) + " must be a number");
  return j.get<double>();
}

Point2 point(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) schema(std::string(what) + " must be an [x, y] pair");
  return {number(j[0], what), number(j[1], what)};
}

std::array<double, 3> triple(const json& j, const char* what) {
  std::array<double, 3> out{};
  if (j.is_array()) {
    if (j.size() != 3) schema(std::string(what) + " must hold three ranges");
    for (int i = 0; i < 3; ++i) out[i] = number(j[i], what);
    return out;
  }
  if (j.is_object()) {
    static const char* keys[3] = {"d1", "d2", "d3"};
    for (int i = 0; i < 3; ++i) {
      if (!j.contains(keys[i])) schema(std::string(what) + " is missing " + keys[i]);
      out[i] = number(j[keys[i]], keys[i]);
    }
    return out;
  }
  schema(std::string(what) + " must be an object or an array");
}

NoiseSpec parse_noise(const json& j) {
  NoiseSpec n;
  if (j.is_null()) return n;
  if (j.is_string()) {
    if (j.get<std::string>() != "none") schema("noise string must be \"none\"");
    return n;
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) schema("noise needs a kind");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "none") return n;
  if (kind == "uniform") {
    n.kind = NoiseKind::Uniform;
    if (!j.contains("a")) schema("uniform noise needs a");
    n.amplitude = number(j["a"], "a");
  } else if (kind == "normal" || kind == "gaussian") {
    n.kind = NoiseKind::Normal;
    if (!j.contains("sigma")) schema("normal noise needs sigma");
    n.amplitude = number(j["sigma"], "sigma");
  } else {
    schema("unknown noise kind " + kind);
  }
  if (n.amplitude < 0.0) schema("noise amplitude must be nonnegative");
  return n;
}

GeneratorSpec parse_generator(const json& j) {
  if (!j.is_object() || !j.contains("source")) schema("generator needs a source");
  GeneratorSpec g;
  g.source = point(j["source"], "source");
  if (j.contains("noise")) g.noise = parse_noise(j["noise"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) schema("seed must be an integer");
    g.seed = j["seed"].get<std::uint64_t>();
  }
  return g;
}

}  // namespace

Instance parse_instance(const json& j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) schema("instance must be a JSON object");
  Instance inst;

  const bool has_sensors = j.contains("sensors");
  const bool has_canonical = j.contains("canonical");
  const bool has_rs = j.contains("r") || j.contains("s");
  if (int(has_sensors) + int(has_canonical) + int(has_rs) != 1)
    schema("exactly one of sensors or canonical {r, s} is required");

  if (has_sensors) {
    const auto& s = j["sensors"];
    if (!s.is_array() || s.size() != 3) schema("sensors must hold three [x, y] pairs");
    for (int i = 0; i < 3; ++i) inst.config.z[i] = point(s[i], "sensor");
  } else {
    const json& c = has_canonical ? j["canonical"] : j;
    if (!c.is_object() || !c.contains("r") || !c.contains("s")) schema("canonical needs r and s");
    inst.canonical = true;
    inst.r = number(c["r"], "r");
    inst.s = number(c["s"], "s");
    inst.config = SensorConfig::canonical(inst.r, inst.s, 0, 0, 0);
  }

  const bool ranges_is_gen = j.contains("ranges") && j["ranges"].is_object() && j["ranges"].contains("source");
  const int n_ranges = int(j.contains("ranges")) + int(j.contains("d")) + int(j.contains("generator"));
  if (n_ranges != 1) schema("exactly one of ranges or generator is required");

  if (ranges_is_gen || j.contains("generator")) {
    auto g = parse_generator(ranges_is_gen ? j["ranges"] : j["generator"]);
    if (seed_override) g.seed = *seed_override;
    inst.config = generate_instance(g.source, inst.config.z, g.noise, g.seed);
    inst.generator = g;
  } else {
    inst.config.d = triple(j.contains("ranges") ? j["ranges"] : j["d"], "ranges");
  }
  for (const auto& p : inst.config.z)
    if (!finite(p)) schema("sensor coordinates must be finite");
  for (double d : inst.config.d)
    if (!std::isfinite(d) || d < 0.0) schema("ranges must be finite and nonnegative");
  return inst;
}

Instance load_instance(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) schema("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    schema(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance(j, seed_override);
}

SolveReport make_report(const SolutionSet& set) {
  SolveReport r;
  for (const auto& p : set.points) r.solutions.push_back({p.location.x, p.location.y, to_string(p.role)});
  r.multiplicity = set.multiplicity();
  r.objective = set.objective_value;
  r.derivation = to_string(set.derivation.kind);
  r.row = set.derivation.row;
  for (const auto& n : set.near_threshold) r.near_threshold.emplace_back(n.name, n.signed_distance);
  r.notes = set.notes;
  return r;
}

json to_json(const SolveReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["solutions"] = json::array();
  for (const auto& p : r.solutions) j["solutions"].push_back({{"x", p.x}, {"y", p.y}, {"role", p.role}});
  j["multiplicity"] = r.multiplicity;
  j["objective"] = r.objective;
  j["derivation"] = {{"kind", r.derivation}, {"row", r.row}};
  j["near_threshold"] = json::array();
  for (const auto& [name, dist] : r.near_threshold)
    j["near_threshold"].push_back({{"name", name}, {"signed_distance", dist}});
  j["notes"] = r.notes;
  if (r.oracle_agreement) {
    const auto& a = *r.oracle_agreement;
    j["oracle_agreement"] = {{"clusters", a.clusters},
                             {"max_position_error", a.max_position_error},
                             {"value_error", a.value_error}};
  } else {
    j["oracle_agreement"] = nullptr;
  }
  return j;
}

SolveReport report_from_json(const json& j) {
  try {
    if (!j.is_object() || j.value("schema", "") != kReportSchema) schema("not a trilat/1 report");
    SolveReport r;
    for (const auto& p : j.at("solutions"))
      r.solutions.push_back({p.at("x").get<double>(), p.at("y").get<double>(), p.at("role").get<std::string>()});
    r.multiplicity = j.at("multiplicity").get<int>();
    if (r.multiplicity != int(r.solutions.size())) schema("multiplicity differs from the solution count");
    r.objective = j.at("objective").get<double>();
    r.derivation = j.at("derivation").at("kind").get<std::string>();
    r.row = j.at("derivation").at("row").get<std::string>();
    for (const auto& n : j.at("near_threshold"))
      r.near_threshold.emplace_back(n.at("name").get<std::string>(), n.at("signed_distance").get<double>());
    r.notes = j.value("notes", std::vector<std::string>{});
    if (j.contains("oracle_agreement") && !j["oracle_agreement"].is_null()) {
      const auto& a = j["oracle_agreement"];
      r.oracle_agreement = OracleAgreement{a.at("clusters").get<int>(), a.at("max_position_error").get<double>(),
                                           a.at("value_error").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    schema(std::string("malformed report: ") + e.what());
  }
}

json error_json(const std::string& kind, const std::string& message) {
  return {{"schema", kReportSchema}, {"error", kind}, {"message", message}};
}

}  // namespace trilat
