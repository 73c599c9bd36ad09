#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "trilat/config.hpp"

namespace trilat {

struct ObjectiveValue {
  double value = 0.0;
  std::array<double, 3> per_term{};  // ||W - Z_j||^2 - d_j^2, signed
};

ObjectiveValue objective(const SensorConfig& c, Point2 w);
double objective_value(const SensorConfig& c, Point2 w);

// bit j set means W lies in the closed disk j; first character of str() is disk 1
struct RegionLabel {
  std::uint8_t bits = 0;

  static RegionLabel from_flags(bool i1, bool i2, bool i3) {
    return {static_cast<std::uint8_t>((i1 ? 1 : 0) | (i2 ? 2 : 0) | (i3 ? 4 : 0))};
  }
  // "101" style
  static RegionLabel parse(const std::string& text);

  bool in(int j) const { return (bits >> j) & 1u; }
  int count() const { return in(0) + in(1) + in(2); }
  std::string str() const;
  bool operator==(const RegionLabel&) const = default;
};

// tol widens every disk; 0 means the closed disks themselves
RegionLabel classify_point(const SensorConfig& c, Point2 w, double tol = 0.0);

// O restricted to region `label`: sum of sigma_j (||W - Z_j||^2 - d_j^2), sigma_j = -1 inside disk j
double region_quadratic(const SensorConfig& c, RegionLabel label, Point2 w);

// constant in O = 3 ||W - Y0||^2 + C0 on the all-outside region
double outside_constant(const SensorConfig& c);

// closed form valid only when W is outside every open disk
double quadratic_form_check(const SensorConfig& c, Point2 w);

}  // namespace trilat
