#pragma once

#include <array>
#include <vector>

#include "trilat/objective.hpp"

namespace trilat {

struct LabelTopology {
  bool nonempty = false;
  bool connected = false;  // vacuously false when empty
  int components = 0;
};

struct RegionTopology {
  std::array<LabelTopology, 8> labels;  // indexed by RegionLabel::bits

  const LabelTopology& operator[](RegionLabel l) const { return labels[l.bits]; }
  bool r3_nonempty() const { return labels[7].nonempty; }
};

// Exact arc-arrangement decomposition of the plane by the three closed disks.
// Throws DegenerateArrangement for identical circles or three circles through one point.
RegionTopology region_topology(const SensorConfig& c, double tol = 0.0);

// whether the all-outside region meets the closed sensor triangle
bool outside_region_meets_triangle(const SensorConfig& c, double tol = 0.0);

}  // namespace trilat
