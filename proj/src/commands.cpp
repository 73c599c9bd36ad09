#include "trilat/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "trilat/errors.hpp"
#include "trilat/fixtures.hpp"
#include "trilat/instance.hpp"
#include "trilat/objective.hpp"

namespace trilat::cli {

using nlohmann::json;

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// every failure goes through here so nothing partial reaches stdout
template <class F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    int code = kFailure;
    if (e.kind() == ErrorKind::SchemaError) code = kSchema;
    else if (e.is_degenerate_geometry()) code = kDegenerate;
    return {code, error_json(to_string(e.kind()), e.what()).dump(2) + "\n", e.what()};
  } catch (const std::exception& e) {
    return {kFailure, error_json("InternalError", e.what()).dump(2) + "\n", e.what()};
  }
}

OracleAgreement agreement(const SolutionSet& set, const OracleResult& o) {
  OracleAgreement a;
  a.clusters = int(o.minima.size());
  double worst = 0.0;
  auto nearest = [](Point2 p, auto const& others, auto&& loc) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : others) best = std::min(best, distance(p, loc(q)));
    return best;
  };
  auto sol_loc = [](const CandidatePoint& c) { return c.location; };
  auto ora_loc = [](const OracleMinimum& m) { return m.point; };
  for (const auto& p : set.points) worst = std::max(worst, nearest(p.location, o.minima, ora_loc));
  for (const auto& m : o.minima) worst = std::max(worst, nearest(m.point, set.points, sol_loc));
  a.max_position_error = worst;
  a.value_error = std::abs(o.global_value - set.objective_value);
  return a;
}

}  // namespace

CommandResult cmd_solve(const std::string& instance_path, const SolveFlags& flags) {
  return guarded([&] {
    const Instance inst = load_instance(instance_path, flags.seed);
    SolveOptions opt;
    opt.tol = flags.tol;
    const SolutionSet set = solve(inst.config, opt);
    SolveReport report = make_report(set);
    if (flags.oracle_check) {
      const OracleResult o = brute_force_minimize(inst.config, default_grid_spec(inst.config));
      report.oracle_agreement = agreement(set, o);
    }
    std::ostringstream out;
    if (flags.format == Format::Json) {
      out << to_json(report).dump(2) << "\n";
    } else {
      out << "x,y,role,objective,multiplicity,derivation,row\n";
      for (const auto& p : report.solutions)
        out << full(p.x) << ',' << full(p.y) << ',' << p.role << ',' << full(report.objective) << ','
            << report.multiplicity << ',' << report.derivation << ',' << report.row << "\n";
    }
    return CommandResult{kOk, out.str(), {}};
  });
}

CommandResult cmd_table(const std::string& fixture) {
  return guarded([&] {
    const auto rows = table_fixtures(fixture);
    if (rows.empty()) fail(ErrorKind::SchemaError, "unknown table " + fixture + " (table2, table3, table4)");
    std::ostringstream out;
    out << "id,r,s,d1,d3";
    for (const char* c : rows.front().columns) out << ",O(" << c << ")";
    out << ",minima\n";
    for (const auto& f : rows) {
      const auto entries = objective_table(f.config());
      out << f.id << ',' << fixed(f.r, 4) << ',' << fixed(f.s, 4) << ',' << fixed(f.d1, 4) << ','
          << fixed(f.d3, 4);
      std::string minima;
      for (const char* c : f.columns) {
        for (const auto& e : entries) {
          if (std::string(e.label) != c) continue;
          out << ',' << fixed(e.value, 4);
          if (e.minimal) minima += (minima.empty() ? "" : ";") + std::string(c);
        }
      }
      out << ',' << minima << "\n";
    }
    return CommandResult{kOk, out.str(), {}};
  });
}

CommandResult cmd_sweep(const SweepSpec& spec) {
  return guarded([&] {
    if (!(spec.r > 0 && spec.s > 0 && spec.d1_lo > 0 && spec.d3_lo > 0 && spec.d1_hi > spec.d1_lo &&
          spec.d3_hi > spec.d3_lo && spec.steps >= 1))
      fail(ErrorKind::SchemaError, "sweep needs positive r, s, ranges and steps");
    SolveOptions opt;
    opt.tol = spec.tol;
    const double h1 = (spec.d1_hi - spec.d1_lo) / spec.steps;
    const double h3 = (spec.d3_hi - spec.d3_lo) / spec.steps;
    std::ostringstream out;
    out << "d1,d3,multiplicity,derivation\n";
    // cell centers; each cell reports the largest multiplicity any table row reaches inside it
    for (int i = 0; i < spec.steps; ++i) {
      const double d1 = spec.d1_lo + (i + 0.5) * h1;
      for (int k = 0; k < spec.steps; ++k) {
        const double d3 = spec.d3_lo + (k + 0.5) * h3;
        const CellVerdict v = classify_cell(spec.r, spec.s, d1, d3, h1 / 2, h3 / 2, opt);
        out << full(d1) << ',' << full(d3) << ',' << v.multiplicity << ',' << v.row << "\n";
      }
    }
    return CommandResult{kOk, out.str(), {}};
  });
}

CommandResult cmd_contour(const std::string& instance_path, int resolution, std::optional<std::uint64_t> seed) {
  return guarded([&] {
    if (resolution < 2) fail(ErrorKind::SchemaError, "contour resolution must be at least 2");
    const Instance inst = load_instance(instance_path, seed);
    inst.config.validate();
    std::ostringstream out;
    out << "x,y,O\n";
    for (const auto& p : contour_grid(inst.config, resolution))
      out << full(p.x) << ',' << full(p.y) << ',' << full(p.value) << "\n";
    return CommandResult{kOk, out.str(), {}};
  });
}

CommandResult cmd_thresholds(const std::string& instance_path, double tol) {
  return guarded([&] {
    const Instance inst = load_instance(instance_path);
    const IsoscelesParams p = require_isosceles(inst.config, tol);
    const ThresholdBundle b = compute_thresholds(p.r, p.s, p.d1, p.d3);
    json j;
    j["schema"] = kReportSchema;
    j["r"] = b.r;
    j["s"] = b.s;
    j["d1"] = b.d1;
    j["d3"] = b.d3;
    j["thresholds"] = json::object();
    for (const auto& t : b.all()) j["thresholds"][t.name] = {{"value", t.value}, {"applies_to", t.on_d1 ? "d1" : "d3"}};
    if (b.d3_star) j["d3_star_t"] = b.d3_star->t;
    j["signed_distance"] = json::object();
    for (const auto& d : threshold_distances(b)) j["signed_distance"][d.name] = d.signed_distance;
    return CommandResult{kOk, j.dump(2) + "\n", {}};
  });
}

CommandResult cmd_oracle(const std::string& instance_path, const OracleFlags& flags) {
  return guarded([&] {
    const Instance inst = load_instance(instance_path, flags.seed);
    inst.config.validate();
    GridSpec spec = default_grid_spec(inst.config, flags.resolution, flags.rounds);
    spec.refine_factor = flags.factor;
    const OracleResult o = brute_force_minimize(inst.config, spec);
    json j;
    j["schema"] = kReportSchema;
    j["global_value"] = o.global_value;
    j["cluster_radius"] = o.cluster_radius;
    j["clusters"] = o.minima.size();
    j["minima"] = json::array();
    for (const auto& m : o.minima) j["minima"].push_back({{"x", m.point.x}, {"y", m.point.y}, {"value", m.value}});
    j["round_best"] = o.round_best;
    return CommandResult{kOk, j.dump(2) + "\n", {}};
  });
}

}  // namespace trilat::cli
