#pragma once

#include <array>
#include <string>
#include <vector>

#include "trilat/config.hpp"
#include "trilat/thresholds.hpp"

namespace trilat {

enum class Role {
  S12Plus, S12Minus, S23Plus, S23Minus, S31Plus, S31Minus,
  Y0, Y1, Y2, Y3,
  N1, N2, N3,
  RegionProjection,
};

const char* to_string(Role role);

struct CandidatePoint {
  Point2 location;
  Role role = Role::RegionProjection;
};

enum class DerivationKind {
  GeneralCandidateScan,
  EquilateralTableRow,
  IsoscelesFlatRow,
  IsoscelesSharpRow,
  Theorem3Branch,
};

const char* to_string(DerivationKind kind);

struct Derivation {
  DerivationKind kind = DerivationKind::GeneralCandidateScan;
  std::string row;
};

struct NearThreshold {
  std::string name;
  double signed_distance = 0.0;
};

struct SolutionSet {
  std::vector<CandidatePoint> points;
  double objective_value = 0.0;
  Derivation derivation;
  std::vector<NearThreshold> near_threshold;
  std::vector<std::string> notes;

  int multiplicity() const { return static_cast<int>(points.size()); }
};

struct SolveOptions {
  // relative tolerance for objective ties, threshold equalities and shape detection
  double tol = 1e-9;
  // |signed distance| / scale below which a threshold is reported as near
  double near_window = 1e-6;
  // an isosceles instance with s at the equilateral height takes the flat table (F = infinity)
  bool force_isosceles_table = false;
};

// Exact minimizers for any nondegenerate triangle: every minimizer is a circle intersection,
// the stationary point of a region quadratic, or the foot of such a point on one circle.
SolutionSet solve_general(const SensorConfig& c, const SolveOptions& opt = {});

// table paths work in the canonical frame Z1 = (-r/2, 0), Z2 = (r/2, 0), Z3 = (0, s)
SolutionSet solve_equilateral(double r, double d1, double d3, const SolveOptions& opt = {});
SolutionSet solve_isosceles(double r, double s, double d1, double d3, const SolveOptions& opt = {});

struct MultiplicityVerdict {
  int multiplicity = 1;
  std::string matched_condition;
};

// closed-form nonuniqueness conditions, evaluated without the table
MultiplicityVerdict multiplicity_conditions(double r, double s, double d1, double d3,
                                            const SolveOptions& opt = {});

// d1 > |Z1Z3| with d3 = sqrt(d1^2 - |Z1Z3|^2)
SolutionSet theorem3_branch(double r, double s, double d1, const SolveOptions& opt = {});

struct Theorem3Objectives {
  double s12_plus = 0.0;
  double s12_minus = 0.0;
  double s31_minus = 0.0;
};
Theorem3Objectives closed_form_objectives_theorem3(double r, double s, double d3);

// One row of a solution table: d1 and d3 intervals (possibly single points) and the roles.
struct Interval {
  double lo = 0.0, hi = 0.0;
  bool lo_closed = false, hi_closed = false;

  static Interval point(double x) { return {x, x, true, true}; }
  bool contains(double x, double slack) const { return x >= lo - slack && x <= hi + slack; }
};

struct TableRow {
  std::string id;
  Interval d1;
  Interval d3;
  std::vector<Role> roles;
};

enum class TableKind { Equilateral, Flat, Sharp };

// rows evaluated at this d1 (d3 bounds depend on d1)
std::vector<TableRow> table_rows(TableKind kind, double r, double s, double d1);

struct CellVerdict {
  int multiplicity = 0;
  std::string row;
};

// phase-diagram cell: the highest-multiplicity row passing through the rectangle
// [d1 - half_d1, d1 + half_d1] x [d3 - half_d3, d3 + half_d3]
CellVerdict classify_cell(double r, double s, double d1, double d3, double half_d1, double half_d3,
                          const SolveOptions& opt = {});

// location of a role in the canonical frame; false when the point does not exist
bool materialize_role(const SensorConfig& canonical, Role role, Point2& out);

// Routes by shape: equilateral and isosceles instances (any apex, any pose) use the tables,
// everything else the exact scan. Points come back in the input frame with input roles.
SolutionSet solve(const SensorConfig& c, const SolveOptions& opt = {});

}  // namespace trilat
