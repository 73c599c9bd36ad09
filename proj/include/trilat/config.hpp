#pragma once

#include <array>

#include "trilat/geometry.hpp"

namespace trilat {

struct SensorConfig {
  std::array<Point2, 3> z;
  std::array<double, 3> d{};

  Circle circle(int i) const { return {z[i], d[i]}; }

  // throws PreconditionViolation on NaN/inf or a negative range
  void validate() const;

  // length scale for default tolerances: largest sensor spread plus largest range
  double scale() const;

  static SensorConfig canonical(double r, double s, double d1, double d2, double d3);
};

// Y0 is the centroid; Y_k = 3 Y0 - 2 Z_k is the reflection of Z_k through the opposite midpoint
Point2 y_point(const SensorConfig& c, int k);  // k = 0 gives Y0, k = 1..3 gives Y_k

// point of circle k nearest to Y_k (k = 1..3)
Point2 n_point(const SensorConfig& c, int k);
inline Point2 n3_point(const SensorConfig& c) { return n_point(c, 3); }

}  // namespace trilat
