#pragma once

#include <array>
#include <cmath>
#include <random>

#include "trilat/config.hpp"

namespace trilat::testing {

// reference objective written out term by term, independent of objective.cpp
inline double ref_objective(const SensorConfig& c, Point2 w) {
  double sum = 0.0;
  for (int j = 0; j < 3; ++j) {
    double dx = w.x - c.z[j].x, dy = w.y - c.z[j].y;
    sum += std::fabs(dx * dx + dy * dy - c.d[j] * c.d[j]);
  }
  return sum;
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
  Point2 point(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
};

struct Motion {
  double angle = 0.0;
  Point2 shift;
  bool reflect = false;
  Point2 operator()(Point2 p) const {
    if (reflect) p.y = -p.y;
    double c = std::cos(angle), s = std::sin(angle);
    return {c * p.x - s * p.y + shift.x, s * p.x + c * p.y + shift.y};
  }
};

inline Motion random_motion(Rng& g) {
  return {g.uniform(0, 2 * M_PI), g.point(-20, 20), g.uniform(0, 1) < 0.5};
}

inline SensorConfig transformed(const SensorConfig& c, const Motion& m) {
  SensorConfig out = c;
  for (auto& p : out.z) p = m(p);
  return out;
}

// triangle whose smallest angle and side are bounded away from degeneracy
inline std::array<Point2, 3> random_triangle(Rng& g, double box = 5.0) {
  for (;;) {
    std::array<Point2, 3> z{g.point(-box, box), g.point(-box, box), g.point(-box, box)};
    double a = distance(z[0], z[1]), b = distance(z[1], z[2]), c = distance(z[2], z[0]);
    double area = std::fabs(cross(z[1] - z[0], z[2] - z[0])) / 2;
    double longest = std::max({a, b, c});
    if (std::min({a, b, c}) > 0.2 * box && area > 0.1 * longest * longest) return z;
  }
}

}  // namespace trilat::testing
