#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trilat/config.hpp"

namespace trilat {

// canonical parameters of an instance isosceles about the base Z1Z2 with d1 = d2;
// PreconditionViolation otherwise
struct IsoscelesParams {
  double r = 0.0, s = 0.0, d1 = 0.0, d3 = 0.0;
};
IsoscelesParams require_isosceles(const SensorConfig& c, double tol = 1e-9);

// Range thresholds of the isosceles configuration Z1 = (-r/2, 0), Z2 = (r/2, 0), Z3 = (0, s)
// with equal base ranges d1 = d2.

// d3 at which the two base-pair intersections tie: sqrt(d1^2 + |Z1Z3|^2 - r^2/2)
double d3_zero(const SensorConfig& c);
// same threshold from the intersection points, valid for any triangle
double d3_zero_general(const SensorConfig& c);
// d1 at which S23+ and S23- tie
double d1_zero(const SensorConfig& c);

double threshold_R(double r, double s, double d1);
double threshold_M(double r, double s, double d1);
// defined only when s > sqrt(3)/2 r
std::optional<double> threshold_P(double r, double s);
std::optional<double> threshold_P_sides(double base, double leg);
std::optional<double> threshold_Q(double r, double s);
// flat counterpart of P: d1 where R, M and E+ meet; defined only when s < sqrt(3)/2 r
std::optional<double> threshold_F(double r, double s);

// E+- = sqrt(d1^2 - r^2/4 +- s^2)
double threshold_E_plus(double r, double s, double d1);
double threshold_E_minus(double r, double s, double d1);

struct D3Star {
  double d3 = 0.0;
  double t = 0.0;
  int iterations = 0;
};

// scaled O(S31-) - O(S12+) along d3^2 = u^2 + 2 t s u, u = h - s
double d3_star_gap(double r, double s, double d1, double t);
D3Star d3_star(double r, double s, double d1, double tol = 1e-12);

struct NamedThreshold {
  std::string name;
  double value = 0.0;
  bool on_d1 = false;  // compared against d1 rather than d3
};

// Every threshold of the canonical isosceles instance (r, s, d1, d1, d3). A field is empty
// when its defining condition fails. A = |Y0 - Z1|, B = |Z1Z3|, h = half the base-pair chord.
struct ThresholdBundle {
  double r = 0.0, s = 0.0, d1 = 0.0, d3 = 0.0;
  double A = 0.0, B = 0.0;
  std::optional<double> h;
  std::optional<double> d3_0, d1_0;
  std::optional<double> R, M, P, Q, F, E_plus, E_minus;
  std::optional<D3Star> d3_star;

  std::vector<NamedThreshold> all() const;
};

ThresholdBundle compute_thresholds(double r, double s, double d1, double d3);

struct ThresholdDistance {
  std::string name;
  double signed_distance = 0.0;  // coordinate minus threshold
};

// signed distances of d1 and d3 to every defined threshold
std::vector<ThresholdDistance> threshold_distances(const ThresholdBundle& b);

}  // namespace trilat
