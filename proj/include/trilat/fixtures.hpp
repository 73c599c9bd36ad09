#pragma once

#include <array>
#include <string>
#include <vector>

#include "trilat/config.hpp"

namespace trilat {

// Stored inputs of the published objective tables (r = 2, canonical isosceles frame).
struct TableFixture {
  std::string id;
  double r = 2.0, s = 0.0, d1 = 0.0, d3 = 0.0;
  std::array<const char*, 6> columns{};  // intersection labels in the table's column order

  SensorConfig config() const { return SensorConfig::canonical(r, s, d1, d1, d3); }
};

// "table2", "table3", "table4"; empty for an unknown name
std::vector<TableFixture> table_fixtures(const std::string& name);

// d3 with -2 s^2 + 2 s sqrt(d3^2 + s^2) = value (the S12+ objective when d3^2 = d1^2 - |Z1Z3|^2)
double d3_from_s12_plus_objective(double s, double value);

}  // namespace trilat
