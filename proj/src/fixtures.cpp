#include "trilat/fixtures.hpp"

#include <cmath>

#include "trilat/thresholds.hpp"

namespace trilat {
namespace {

constexpr std::array<const char*, 6> kPairOrder{"S12+", "S23+", "S31+", "S12-", "S23-", "S31-"};
constexpr std::array<const char*, 6> kMirrorOrder{"S12+", "S31+", "S23+", "S12-", "S31-", "S23-"};

TableFixture row(const char* id, double s, double d1, double d3, std::array<const char*, 6> cols) {
  return {id, 2.0, s, d1, d3, cols};
}

}  // namespace

double d3_from_s12_plus_objective(double s, double value) {
  double root = (value + 2 * s * s) / (2 * s);
  return std::sqrt(root * root - s * s);
}

std::vector<TableFixture> table_fixtures(const std::string& name) {
  const double r = 2.0;
  std::vector<TableFixture> out;
  if (name == "table2") {
    // only objective values are printed: O(S12-) - O(S12+) = 4 s^2 fixes s, O(S12+) fixes d3,
    // and d1^2 = d3^2 + |Z1Z3|^2
    auto base_leg_row = [&](const char* id, double s, double d3) {
      double d1 = std::sqrt(d3 * d3 + s * s + r * r / 4);
      return row(id, s, d1, d3, kPairOrder);
    };
    out.push_back(base_leg_row("2a", 1.5, 2.0));
    out.push_back(base_leg_row("2b", 5.0, d3_from_s12_plus_objective(5.0, 14.8862)));
    out.push_back(base_leg_row("2c", 5.0, d3_from_s12_plus_objective(5.0, 21.6750)));
    double p = *threshold_P(r, 5.0);
    out.push_back(row("2d", 5.0, p, threshold_E_minus(r, 5.0, p), kPairOrder));
    return out;
  }
  if (name == "table3") {
    const double s = std::sqrt(3.0);
    out.push_back(row("3a", s, 1.3333, 1.9737, kMirrorOrder));
    out.push_back(row("3b", s, 2.6, 1.3, kMirrorOrder));
    out.push_back(row("3c", s, 2.6, 2.6, kMirrorOrder));
    out.push_back(row("3d", s, 4.0, 4.4495, kMirrorOrder));
    out.push_back(row("3e", s, 4.0, std::sqrt(24.0), kMirrorOrder));
    out.push_back(row("3f", s, 4.0, 5.2520, kMirrorOrder));
    return out;
  }
  if (name == "table4") {
    // tie rows sit exactly on their threshold; the 4-decimal captions are roundings of these
    out.push_back(row("4-s1a", 1.0, 1.8251, threshold_R(r, 1.0, 1.8251), kMirrorOrder));
    out.push_back(row("4-s1b", 1.0, 1.8251, 1.9204, kMirrorOrder));
    out.push_back(row("4-s1c", 1.0, 2.2361, 1.2477, kMirrorOrder));
    out.push_back(row("4-s1d", 1.0, std::sqrt(5.0), std::sqrt(5.0), kMirrorOrder));
    out.push_back(row("4-s1e", 1.0, 4.4721, 3.9155, kMirrorOrder));
    out.push_back(row("4-s1f", 1.0, 2 * std::sqrt(5.0), std::sqrt(20.0), kMirrorOrder));
    out.push_back(row("4-s3a", 3.0, 5.1167, 3.2531, kMirrorOrder));
    out.push_back(row("4-s3b", 3.0, 5.1167, threshold_R(r, 3.0, 5.1167), kMirrorOrder));
    out.push_back(row("4-s3c", 3.0, 5.1167, 5.1673, kMirrorOrder));
    out.push_back(row("4-s3d", 3.0, 7.0711, 5.1623, kMirrorOrder));
    out.push_back(row("4-s3e", 3.0, std::sqrt(50.0), std::sqrt(40.0), kMirrorOrder));
    out.push_back(row("4-s3f", 3.0, 7.0711, 6.9702, kMirrorOrder));
    // the caption's d1 = 10.3158 is itself rounded; 10.31583 reproduces all three rows
    const double d1 = 10.31583;
    out.push_back(row("4-s3g", 3.0, d1, 9.0261, kMirrorOrder));
    out.push_back(row("4-s3h", 3.0, d1, d3_star(r, 3.0, d1).d3, kMirrorOrder));
    out.push_back(row("4-s3i", 3.0, d1, 9.7591, kMirrorOrder));
    return out;
  }
  return out;
}

}  // namespace trilat
