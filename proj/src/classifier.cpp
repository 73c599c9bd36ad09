#include "trilat/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "trilat/errors.hpp"
#include "trilat/objective.hpp"
#include "trilat/regions.hpp"

namespace trilat {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt3 = std::sqrt(3.0);

double sq(double x) { return x * x; }

int role_rank(Role r) {
  switch (r) {
    case Role::S12Plus: case Role::S12Minus: case Role::S23Plus:
    case Role::S23Minus: case Role::S31Plus: case Role::S31Minus:
      return 0;
    case Role::Y0: case Role::Y1: case Role::Y2: case Role::Y3:
      return 1;
    case Role::N1: case Role::N2: case Role::N3:
      return 2;
    case Role::RegionProjection:
      return 3;
  }
  return 3;
}

bool is_intersection_role(Role r) { return role_rank(r) == 0; }

// circle pair and reference sensor of an intersection role
void pair_of(Role r, int& a, int& b, int& third, bool& plus) {
  switch (r) {
    case Role::S12Plus: case Role::S12Minus: a = 0, b = 1, third = 2; break;
    case Role::S23Plus: case Role::S23Minus: a = 1, b = 2, third = 0; break;
    default: a = 2, b = 0, third = 1; break;
  }
  plus = r == Role::S12Plus || r == Role::S23Plus || r == Role::S31Plus;
}

Role intersection_role(int a, int b, bool plus) {
  int lo = std::min(a, b), hi = std::max(a, b);
  if (lo == 0 && hi == 1) return plus ? Role::S12Plus : Role::S12Minus;
  if (lo == 1 && hi == 2) return plus ? Role::S23Plus : Role::S23Minus;
  return plus ? Role::S31Plus : Role::S31Minus;
}

struct Scored {
  CandidatePoint p;
  double value;
};

// keep the candidates tied with the minimum, one per location
SolutionSet select_minimizers(const SensorConfig& c, const std::vector<CandidatePoint>& cands, double tol) {
  if (cands.empty()) fail(ErrorKind::PreconditionViolation, "no candidate points");
  double scale = c.scale();
  std::vector<Scored> scored;
  double best = kInf;
  for (const CandidatePoint& p : cands) {
    double v = objective_value(c, p.location);
    scored.push_back({p, v});
    best = std::min(best, v);
  }
  double band = std::max(tol * best, 1e-3 * tol * scale * scale);
  std::vector<Scored> keep;
  for (const Scored& s : scored)
    if (s.value <= best + band) keep.push_back(s);
  std::stable_sort(keep.begin(), keep.end(),
                   [](const Scored& a, const Scored& b) { return role_rank(a.p.role) < role_rank(b.p.role); });

  SolutionSet out;
  out.objective_value = best;
  double merge = 1e-7 * scale;
  for (const Scored& s : keep) {
    bool dup = false;
    for (const CandidatePoint& q : out.points)
      if (distance(q.location, s.p.location) <= merge) dup = true;
    if (!dup) out.points.push_back(s.p);
  }
  return out;
}

void append_near_thresholds(SolutionSet& out, double r, double s, double d1, double d3, const SolveOptions& opt) {
  ThresholdBundle b = compute_thresholds(r, s, d1, d3);
  double scale = std::max({r, s, d1, d3});
  for (const ThresholdDistance& t : threshold_distances(b))
    if (std::abs(t.signed_distance) <= opt.near_window * scale) out.near_threshold.push_back({t.name, t.signed_distance});
}

// compass search on O; used as a certificate that a candidate is locally optimal
Point2 polish(const SensorConfig& c, Point2 p, double step, int max_iter) {
  double v = objective_value(c, p);
  static const Point2 dirs[8] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1},
                                 {0.7071067811865476, 0.7071067811865476}, {-0.7071067811865476, 0.7071067811865476},
                                 {0.7071067811865476, -0.7071067811865476}, {-0.7071067811865476, -0.7071067811865476}};
  for (int it = 0; it < max_iter && step > 1e-15; ++it) {
    bool moved = false;
    for (const Point2& d : dirs) {
      Point2 q = p + d * step;
      double w = objective_value(c, q);
      if (w < v) {
        p = q;
        v = w;
        moved = true;
        break;
      }
    }
    if (!moved) step *= 0.5;
  }
  return p;
}

// ---- tables ----------------------------------------------------------------

using R = Role;
const std::vector<Role> kY0{R::Y0}, kN3{R::N3}, kY3{R::Y3}, kS12p{R::S12Plus}, kS12m{R::S12Minus};
const std::vector<Role> kPairPlus{R::S23Plus, R::S31Plus}, kPairMinus{R::S23Minus, R::S31Minus};
const std::vector<Role> kTriplePlus{R::S12Plus, R::S23Plus, R::S31Plus};
const std::vector<Role> kPairPlusS12m{R::S23Plus, R::S31Plus, R::S12Minus};
const std::vector<Role> kS12pPairMinus{R::S12Plus, R::S23Minus, R::S31Minus};
const std::vector<Role> kS12Both{R::S12Plus, R::S12Minus};
const std::vector<Role> kS12BothPairPlus{R::S12Plus, R::S12Minus, R::S23Plus, R::S31Plus};
const std::vector<Role> kPairBoth{R::S23Plus, R::S23Minus, R::S31Plus, R::S31Minus};
const std::vector<Role> kFive{R::S12Plus, R::S23Plus, R::S23Minus, R::S31Plus, R::S31Minus};

Interval open(double lo, double hi) { return {lo, hi, false, false}; }
Interval open_closed(double lo, double hi) { return {lo, hi, false, true}; }
Interval closed_open(double lo, double hi) { return {lo, hi, true, false}; }
Interval closed(double lo, double hi) { return {lo, hi, true, true}; }

struct Levels {
  double h, R, M, Ep, Em, star;
};

Levels levels(double r, double s, double d1) {
  Levels l{};
  l.h = std::sqrt(std::max(0.0, sq(d1) - sq(r) / 4));
  double den_r = 4 * sq(s) + 9 * sq(r), den_m = 4 * sq(s) + sq(r);
  l.R = std::sqrt(std::max(0.0, sq(l.h) + sq(s) * (4 * sq(s) + sq(r)) / den_r -
                                    2 * s * l.h * (4 * sq(s) - 3 * sq(r)) / den_r));
  l.M = std::sqrt(std::max(0.0, sq(l.h) + 2 * s * l.h * (4 * sq(s) - 3 * sq(r)) / den_m +
                                    sq(s) * (4 * sq(s) + 9 * sq(r)) / den_m));
  l.Ep = std::sqrt(sq(l.h) + sq(s));
  l.Em = std::sqrt(std::max(0.0, sq(l.h) - sq(s)));
  l.star = l.Em;
  std::optional<double> p = threshold_P(r, s);
  if (p && d1 > *p * (1 + 1e-9)) {
    try {
      l.star = d3_star(r, s, d1).d3;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoBracket) throw;
    }
  }
  return l;
}

// rows for d1 up to |Z1Z3|, shared by the flat and sharp tables
void lower_rows(std::vector<TableRow>& rows, const std::string& pre, double r, double s, const Levels& l) {
  double A = std::sqrt(sq(r) / 4 + sq(s) / 9), B = std::sqrt(sq(r) / 4 + sq(s));
  Interval g1 = open_closed(0, r / 2), g2 = open_closed(r / 2, A), g3 = open_closed(A, B);
  rows.push_back({pre + "1", g1, open_closed(0, 2 * s / 3), kY0});
  rows.push_back({pre + "2", g1, closed(2 * s / 3, 2 * s), kN3});
  rows.push_back({pre + "3", g1, closed_open(2 * s, kInf), kY3});
  rows.push_back({pre + "4", g2, open_closed(0, 2 * s / 3), kY0});
  rows.push_back({pre + "5", g2, closed(2 * s / 3, s - l.h), kN3});
  rows.push_back({pre + "6", g2, open(s - l.h, s + l.h), kPairPlus});
  rows.push_back({pre + "7", g2, closed(s + l.h, 2 * s), kN3});
  rows.push_back({pre + "8", g2, closed_open(2 * s, kInf), kY3});
  rows.push_back({pre + "9", g3, open(0, l.R), kS12p});
  rows.push_back({pre + "10", g3, Interval::point(l.R), kTriplePlus});
  rows.push_back({pre + "11", g3, open(l.R, s + l.h), kPairPlus});
  rows.push_back({pre + "12", g3, closed(s + l.h, 2 * s), kN3});
  rows.push_back({pre + "13", g3, closed_open(2 * s, kInf), kY3});
}

// the five rows of a d1 band beyond |Z1Z3| where R and M bound the S23+/S31+ pair
void middle_rows(std::vector<TableRow>& rows, const std::string& pre, int first, Interval g, const Levels& l) {
  auto id = [&](int k) { return pre + std::to_string(first + k); };
  rows.push_back({id(0), g, open(0, l.R), kS12p});
  rows.push_back({id(1), g, Interval::point(l.R), kTriplePlus});
  rows.push_back({id(2), g, open(l.R, l.M), kPairPlus});
  rows.push_back({id(3), g, Interval::point(l.M), kPairPlusS12m});
  rows.push_back({id(4), g, open(l.M, kInf), kS12m});
}

DerivationKind derivation_for(TableKind k) {
  switch (k) {
    case TableKind::Equilateral: return DerivationKind::EquilateralTableRow;
    case TableKind::Flat: return DerivationKind::IsoscelesFlatRow;
    case TableKind::Sharp: return DerivationKind::IsoscelesSharpRow;
  }
  return DerivationKind::GeneralCandidateScan;
}

std::vector<TableRow> matching_rows(const std::vector<TableRow>& rows, double d1, double d3, double slack1,
                                    double slack3) {
  std::vector<TableRow> out;
  for (const TableRow& row : rows)
    if (row.d1.contains(d1, slack1) && row.d3.contains(d3, slack3)) out.push_back(row);
  return out;
}

void check_table_inputs(double r, double s, double d1, double d3) {
  for (double v : {r, s, d1, d3})
    if (!std::isfinite(v)) fail(ErrorKind::PreconditionViolation, "non-finite table input");
  if (!(r > 0) || !(s > 0)) fail(ErrorKind::PreconditionViolation, "r and s must be positive");
  if (d1 < 0 || d3 < 0) fail(ErrorKind::PreconditionViolation, "ranges must be nonnegative");
}

SolutionSet solve_table(TableKind kind, double r, double s, double d1, double d3, const SolveOptions& opt) {
  check_table_inputs(r, s, d1, d3);
  if (kind == TableKind::Sharp) {
    // both parameterizations of P must describe the same number
    double p1 = *threshold_P(r, s);
    double p2 = *threshold_P_sides(r, std::sqrt(sq(r) / 4 + sq(s)));
    if (std::abs(p1 - p2) > 1e-12 * p1) throw std::logic_error("P forms disagree");
  }
  std::vector<TableRow> rows = table_rows(kind, r, s, d1);
  std::vector<TableRow> hit =
      matching_rows(rows, d1, d3, opt.tol * std::max(r, d1), opt.tol * std::max(r, d3));
  if (hit.empty()) fail(ErrorKind::PreconditionViolation, "no table row contains the input");

  SensorConfig c = SensorConfig::canonical(r, s, d1, d1, d3);
  std::vector<CandidatePoint> cands;
  std::set<Role> seen;
  for (const TableRow& row : hit)
    for (Role role : row.roles) {
      if (!seen.insert(role).second) continue;
      Point2 p;
      if (materialize_role(c, role, p)) cands.push_back({p, role});
    }
  SolutionSet out = select_minimizers(c, cands, opt.tol);

  std::set<Role> chosen;
  for (const CandidatePoint& p : out.points) chosen.insert(p.role);
  std::string row_id;
  for (const TableRow& row : hit) {
    std::set<Role> rs(row.roles.begin(), row.roles.end());
    bool covers = std::includes(rs.begin(), rs.end(), chosen.begin(), chosen.end());
    if (covers && rs.size() == out.points.size()) row_id = row.id;
  }
  if (row_id.empty())
    for (const TableRow& row : hit) row_id += (row_id.empty() ? "" : "|") + row.id;
  out.derivation = {derivation_for(kind), row_id};
  if (hit.size() > 1) out.notes.push_back("endpoint shared by rows; merged by objective");
  append_near_thresholds(out, r, s, d1, d3, opt);
  return out;
}

TableKind isosceles_kind(double r, double s, const SolveOptions& opt, bool& equilateral) {
  equilateral = std::abs(s - kSqrt3 / 2 * r) <= opt.tol * r;
  if (equilateral) return opt.force_isosceles_table ? TableKind::Flat : TableKind::Equilateral;
  return s < kSqrt3 / 2 * r ? TableKind::Flat : TableKind::Sharp;
}

}  // namespace

const char* to_string(Role role) {
  switch (role) {
    case Role::S12Plus: return "S12+";
    case Role::S12Minus: return "S12-";
    case Role::S23Plus: return "S23+";
    case Role::S23Minus: return "S23-";
    case Role::S31Plus: return "S31+";
    case Role::S31Minus: return "S31-";
    case Role::Y0: return "Y0";
    case Role::Y1: return "Y1";
    case Role::Y2: return "Y2";
    case Role::Y3: return "Y3";
    case Role::N1: return "N1";
    case Role::N2: return "N2";
    case Role::N3: return "N3";
    case Role::RegionProjection: return "projection";
  }
  return "unknown";
}

const char* to_string(DerivationKind kind) {
  switch (kind) {
    case DerivationKind::GeneralCandidateScan: return "GeneralCandidateScan";
    case DerivationKind::EquilateralTableRow: return "EquilateralTableRow";
    case DerivationKind::IsoscelesFlatRow: return "IsoscelesFlatRow";
    case DerivationKind::IsoscelesSharpRow: return "IsoscelesSharpRow";
    case DerivationKind::Theorem3Branch: return "Theorem3Branch";
  }
  return "unknown";
}

bool materialize_role(const SensorConfig& c, Role role, Point2& out) {
  if (is_intersection_role(role)) {
    int a, b, third;
    bool plus;
    pair_of(role, a, b, third, plus);
    IntersectionPair ip;
    try {
      ip = circle_circle_intersect(c.circle(a), c.circle(b), c.z[third]);
    } catch (const Error&) {
      return false;
    }
    if (ip.count == 0) return false;
    out = plus ? ip.plus : ip.minus;
    return true;
  }
  switch (role) {
    case Role::Y0: out = y_point(c, 0); return true;
    case Role::Y1: out = y_point(c, 1); return true;
    case Role::Y2: out = y_point(c, 2); return true;
    case Role::Y3: out = y_point(c, 3); return true;
    case Role::N1: case Role::N2: case Role::N3: {
      int k = role == Role::N1 ? 1 : role == Role::N2 ? 2 : 3;
      try {
        out = n_point(c, k);
      } catch (const Error&) {
        return false;
      }
      return true;
    }
    default: return false;
  }
}

SolutionSet solve_general(const SensorConfig& c, const SolveOptions& opt) {
  c.validate();
  canonical_frame(c.z, opt.tol);  // rejects collinear sensors

  std::vector<CandidatePoint> cands;
  std::vector<std::string> notes;
  for (Role role : {R::S12Plus, R::S12Minus, R::S23Plus, R::S23Minus, R::S31Plus, R::S31Minus}) {
    Point2 p;
    if (materialize_role(c, role, p)) cands.push_back({p, role});
  }
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      try {
        if (circle_circle_intersect(c.circle(a), c.circle(b), c.z[3 - a - b]).equidistant)
          notes.push_back("equidistant intersection pair ordered lexicographically");
      } catch (const Error&) {
        notes.push_back("coincident range circles");
      }
    }
  std::array<Point2, 4> centers = centroid_points(c.z);
  for (int k = 0; k < 4; ++k) {
    cands.push_back({centers[k], static_cast<Role>(static_cast<int>(Role::Y0) + k)});
    // on circle j the objective is linear in W, so its extremes are the feet along c_k - Z_j
    for (int j = 0; j < 3; ++j) {
      Point2 v = centers[k] - c.z[j];
      double len = norm(v);
      if (len == 0) continue;
      Point2 u = v / len;
      Role near =
          (k >= 1 && j == k - 1) ? static_cast<Role>(static_cast<int>(Role::N1) + j) : Role::RegionProjection;
      cands.push_back({c.z[j] + u * c.d[j], near});
      cands.push_back({c.z[j] - u * c.d[j], Role::RegionProjection});
    }
  }
  SolutionSet out = select_minimizers(c, cands, opt.tol);

  // certificate: a descent step from any reported point must not improve the value
  double band = std::max(opt.tol * out.objective_value, 1e-3 * opt.tol * sq(c.scale()));
  for (const CandidatePoint& p : out.points) {
    Point2 q = polish(c, p.location, 1e-3 * c.scale(), 100);
    if (objective_value(c, q) < out.objective_value - band) notes.push_back("descent improved a candidate");
  }

  std::string row;
  if (outside_region_meets_triangle(c, opt.tol * c.scale())) {
    row = "nonempty-K";
  } else {
    try {
      RegionTopology topo = region_topology(c);
      bool singles = true;
      for (const char* l : {"100", "010", "001"}) {
        const LabelTopology& t = topo[RegionLabel::parse(l)];
        singles = singles && t.nonempty && t.connected;
      }
      if (topo.r3_nonempty() && singles) {
        row = "triple-overlap";
        for (const CandidatePoint& p : out.points)
          if (!is_intersection_role(p.role)) notes.push_back("minimizer outside the intersection candidates");
      } else {
        row = "candidate-scan";
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateArrangement) throw;
      row = "candidate-scan (degenerate arrangement)";
    }
  }
  out.derivation = {DerivationKind::GeneralCandidateScan, row};
  out.notes.insert(out.notes.end(), notes.begin(), notes.end());
  return out;
}

std::vector<TableRow> table_rows(TableKind kind, double r, double s, double d1) {
  std::vector<TableRow> rows;
  if (kind == TableKind::Equilateral) s = kSqrt3 / 2 * r;
  Levels l = levels(r, s, d1);
  double B = std::sqrt(sq(r) / 4 + sq(s));

  if (kind == TableKind::Equilateral) {
    // same boundaries as the lower rows with A = r/sqrt3 and B = r; R = d1, M = sqrt(d1^2 + 2r^2)
    l.R = d1;
    l.M = std::sqrt(sq(d1) + 2 * sq(r));
    lower_rows(rows, "E", r, s, l);
    middle_rows(rows, "E", 14, open(B, kInf), l);
    return rows;
  }
  lower_rows(rows, kind == TableKind::Flat ? "F" : "S", r, s, l);
  if (kind == TableKind::Flat) {
    std::optional<double> f = threshold_F(r, s);
    double F = f ? *f : kInf;
    middle_rows(rows, "F", 14, open(B, F), l);
    if (!f) return rows;
    Interval at = Interval::point(F), beyond = open(F, kInf);
    rows.push_back({"F19", at, open(0, l.Ep), kS12p});
    rows.push_back({"F20", at, Interval::point(l.Ep), kS12BothPairPlus});
    rows.push_back({"F21", at, open(l.Ep, kInf), kS12m});
    rows.push_back({"F22", beyond, open(0, l.Ep), kS12p});
    rows.push_back({"F23", beyond, Interval::point(l.Ep), kS12Both});
    rows.push_back({"F24", beyond, open(l.Ep, kInf), kS12m});
    return rows;
  }
  double P = *threshold_P(r, s);
  middle_rows(rows, "S", 14, open(B, P), l);
  Interval at = Interval::point(P), beyond = open(P, kInf);
  rows.push_back({"S19", at, open(0, l.Em), kS12p});
  rows.push_back({"S20", at, Interval::point(l.Em), kFive});
  rows.push_back({"S21", at, open(l.Em, l.M), kPairPlus});
  rows.push_back({"S22", at, Interval::point(l.M), kPairPlusS12m});
  rows.push_back({"S23", at, open(l.M, kInf), kS12m});
  rows.push_back({"S24", beyond, open(0, l.star), kS12p});
  rows.push_back({"S25", beyond, Interval::point(l.star), kS12pPairMinus});
  rows.push_back({"S26", beyond, open(l.star, l.Em), kPairMinus});
  rows.push_back({"S27", beyond, Interval::point(l.Em), kPairBoth});
  rows.push_back({"S28", beyond, open(l.Em, l.M), kPairPlus});
  rows.push_back({"S29", beyond, Interval::point(l.M), kPairPlusS12m});
  rows.push_back({"S30", beyond, open(l.M, kInf), kS12m});
  return rows;
}

SolutionSet solve_equilateral(double r, double d1, double d3, const SolveOptions& opt) {
  return solve_table(TableKind::Equilateral, r, kSqrt3 / 2 * r, d1, d3, opt);
}

SolutionSet solve_isosceles(double r, double s, double d1, double d3, const SolveOptions& opt) {
  check_table_inputs(r, s, d1, d3);
  bool equilateral;
  TableKind kind = isosceles_kind(r, s, opt, equilateral);
  return solve_table(kind, r, s, d1, d3, opt);
}

CellVerdict classify_cell(double r, double s, double d1, double d3, double half_d1, double half_d3,
                          const SolveOptions& opt) {
  check_table_inputs(r, s, std::max(d1, 0.0), std::max(d3, 0.0));
  bool equilateral;
  TableKind kind = isosceles_kind(r, s, opt, equilateral);
  std::vector<double> xs{d1 - half_d1, d1, d1 + half_d1};
  // single-point d1 bands must be sampled exactly
  for (std::optional<double> t : {threshold_P(r, s), threshold_F(r, s)})
    if (t && kind != TableKind::Equilateral && std::abs(*t - d1) <= half_d1) xs.push_back(*t);

  CellVerdict best;
  for (double x : xs) {
    if (x < 0) continue;
    double slack1 = opt.tol * std::max(r, x);
    for (const TableRow& row : table_rows(kind, r, s, x)) {
      if (!row.d1.contains(x, slack1) || !row.d3.contains(d3, half_d3)) continue;
      int m = static_cast<int>(row.roles.size());
      if (m > best.multiplicity) best = {m, row.id};
    }
  }
  return best;
}

MultiplicityVerdict multiplicity_conditions(double r, double s, double d1, double d3, const SolveOptions& opt) {
  check_table_inputs(r, s, d1, d3);
  double t1 = opt.tol * std::max(r, d1), t3 = opt.tol * std::max(r, d3);
  auto eq1 = [&](double a, double b) { return std::abs(a - b) <= t1; };
  auto gt1 = [&](double a, double b) { return a > b + t1; };
  auto ge1 = [&](double a, double b) { return a >= b - t1; };
  auto lt1 = [&](double a, double b) { return a < b - t1; };
  auto le1 = [&](double a, double b) { return a <= b + t1; };
  auto eq3 = [&](double b) { return std::abs(d3 - b) <= t3; };
  auto in3 = [&](double lo, double hi) { return d3 > lo + t3 && d3 < hi - t3; };

  bool equilateral = std::abs(s - kSqrt3 / 2 * r) <= opt.tol * r;
  bool flat = !equilateral && s < kSqrt3 / 2 * r;
  bool sharp = !equilateral && s > kSqrt3 / 2 * r;
  double A = std::sqrt(sq(r) / 4 + sq(s) / 9), B = std::sqrt(sq(r) / 4 + sq(s));
  double P = sharp ? *threshold_P(r, s) : kInf;
  double F = flat ? *threshold_F(r, s) : kInf;
  if (d1 <= r / 2 + t1) return {1, "unique"};

  Levels l = levels(r, s, d1);
  if (equilateral) {
    l.R = d1;
    l.M = std::sqrt(sq(d1) + 2 * sq(r));
  }
  double four_s = 4 * sq(s) - 3 * sq(r);
  if (sharp && eq1(d1, P) && eq3(4 * s * r * std::sqrt(4 * sq(s) + sq(r)) / four_s))
    return {5, "{S12+,S23+-,S31+-}: sharp, d1 = P, d3 = E-"};
  if (sharp && gt1(d1, P) && eq3(l.Em)) return {4, "{S23+-,S31+-}: sharp, d1 > P, d3 = E-"};
  if (flat && eq1(d1, F) &&
      eq3(s * std::sqrt(25 * sq(sq(r)) - 24 * sq(r) * sq(s) + 16 * sq(sq(s))) / (-four_s)))
    return {4, "{S12+-,S23+,S31+}: flat, d1 = F, d3 = E+"};
  if (gt1(d1, B) && eq3(l.M) && !(flat && gt1(d1, F))) return {3, "{S12-,S23+,S31+}: d1 > B, d3 = M"};
  if (sharp && gt1(d1, P) && eq3(l.star)) return {3, "{S12+,S23-,S31-}: sharp, d1 > P, d3 = d3*"};
  if (eq3(l.R) && ((gt1(d1, A) && le1(d1, B)) || (equilateral && gt1(d1, B)) ||
                   (flat && ge1(d1, B) && lt1(d1, F)) || (sharp && ge1(d1, B) && lt1(d1, P))))
    return {3, "{S12+,S23+,S31+}: d3 = R"};
  if (flat && gt1(d1, F) && eq3(l.Ep)) return {2, "{S12+,S12-}: flat, d1 > F, d3 = E+"};
  if (sharp && gt1(d1, P) && in3(l.star, l.Em)) return {2, "{S23-,S31-}: sharp, d1 > P, d3* < d3 < E-"};
  bool pair = (le1(d1, A) && in3(s - l.h, s + l.h)) || (gt1(d1, A) && le1(d1, B) && in3(l.R, s + l.h)) ||
              (equilateral && gt1(d1, B) && in3(l.R, l.M)) ||
              (flat && gt1(d1, B) && lt1(d1, F) && in3(l.R, l.M)) ||
              (sharp && gt1(d1, B) && in3(std::max(l.R, l.Em), l.M));
  if (pair) return {2, "{S23+,S31+}"};
  return {1, "unique"};
}

SolutionSet theorem3_branch(double r, double s, double d1, const SolveOptions& opt) {
  check_table_inputs(r, s, d1, 0.0);
  double B = std::sqrt(sq(r) / 4 + sq(s));
  if (!(d1 > B * (1 + opt.tol))) fail(ErrorKind::PreconditionViolation, "theorem3_branch: needs d1 > |Z1Z3|");
  double d3 = std::sqrt(sq(d1) - sq(B));
  std::optional<double> P = threshold_P(r, s);
  bool sharp = s > kSqrt3 / 2 * r * (1 + opt.tol) && P;

  std::vector<Role> roles;
  std::string branch;
  if (!sharp || d1 < *P - opt.tol * d1) {
    roles = kS12p;
    branch = "s <= sqrt3/2 r or d1 < P";
  } else if (d1 <= *P + opt.tol * d1) {
    roles = kFive;
    branch = "d1 = P";
  } else {
    roles = kPairBoth;
    branch = "d1 > P";
  }
  SensorConfig c = SensorConfig::canonical(r, s, d1, d1, d3);
  SolutionSet out;
  for (Role role : roles) {
    Point2 p;
    if (!materialize_role(c, role, p))
      fail(ErrorKind::MissingIntersection, std::string("theorem3_branch: ") + to_string(role) + " does not exist");
    out.points.push_back({p, role});
  }
  out.objective_value = objective_value(c, out.points.front().location);
  for (const CandidatePoint& p : out.points) out.objective_value = std::min(out.objective_value, objective_value(c, p.location));
  out.derivation = {DerivationKind::Theorem3Branch, branch};
  append_near_thresholds(out, r, s, d1, d3, opt);
  return out;
}

Theorem3Objectives closed_form_objectives_theorem3(double r, double s, double d3) {
  if (!(r > 0) || !(s > 0) || !(d3 >= 0) || !std::isfinite(d3))
    fail(ErrorKind::PreconditionViolation, "closed_form_objectives_theorem3: needs r, s > 0 and d3 >= 0");
  double root = std::sqrt(sq(d3) + sq(s));
  return {-2 * sq(s) + 2 * s * root, 2 * sq(s) + 2 * s * root, 2 * r * s * d3 / std::sqrt(sq(s) + sq(r) / 4)};
}

SolutionSet solve(const SensorConfig& c, const SolveOptions& opt) {
  c.validate();
  double scale = c.scale();
  for (int apex : {2, 0, 1}) {
    int i = (apex + 1) % 3, j = (apex + 2) % 3;
    if (i > j) std::swap(i, j);
    if (std::abs(c.d[i] - c.d[j]) > opt.tol * scale) continue;
    CanonicalFrame f = canonical_frame({c.z[i], c.z[j], c.z[apex]}, opt.tol);
    if (f.shape == TriangleShape::General) continue;

    double d1 = 0.5 * (c.d[i] + c.d[j]);
    SolutionSet out;
    try {
      out = f.shape == TriangleShape::Equilateral && !opt.force_isosceles_table
                ? solve_equilateral(f.r, d1, c.d[apex], opt)
                : solve_isosceles(f.r, f.s, d1, c.d[apex], opt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PreconditionViolation && e.kind() != ErrorKind::NoBracket) throw;
      SolutionSet g = solve_general(c, opt);
      g.notes.push_back(std::string("table path declined: ") + e.what());
      return g;
    }
    int perm[3] = {i, j, apex};
    for (CandidatePoint& p : out.points) {
      p.location = f.motion.to_world(p.location);
      if (is_intersection_role(p.role)) {
        int a, b, third;
        bool plus;
        pair_of(p.role, a, b, third, plus);
        p.role = intersection_role(perm[a], perm[b], plus);
      } else if (p.role >= Role::Y1 && p.role <= Role::Y3) {
        p.role = static_cast<Role>(static_cast<int>(Role::Y1) + perm[static_cast<int>(p.role) - static_cast<int>(Role::Y1)]);
      } else if (p.role == Role::N3) {
        p.role = static_cast<Role>(static_cast<int>(Role::N1) + perm[2]);
      }
    }
    out.objective_value = objective_value(c, out.points.front().location);
    for (const CandidatePoint& p : out.points) out.objective_value = std::min(out.objective_value, objective_value(c, p.location));
    return out;
  }
  return solve_general(c, opt);
}

}  // namespace trilat
