#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "trilat/config.hpp"
#include "trilat/regions.hpp"

namespace trilat {

struct Box {
  Point2 lo, hi;
  double width() const { return hi.x - lo.x; }
  double height() const { return hi.y - lo.y; }
};

struct GridSpec {
  Box bounds;
  int resolution = 512;
  int refine_rounds = 6;
  double refine_factor = 4.0;  // rounded to an integer subdivision >= 2
};

// disks' bounding box grown by the largest range
GridSpec default_grid_spec(const SensorConfig& c, int resolution = 512, int refine_rounds = 6);

struct OracleMinimum {
  Point2 point;
  double value = 0.0;
};

struct OracleResult {
  std::vector<OracleMinimum> minima;
  double cluster_radius = 0.0;
  double global_value = 0.0;
  std::vector<double> round_best;  // running minimum after each round
  std::size_t survivors = 0;       // cells alive after the last round
};

// threads <= 0 means hardware concurrency capped by TRILAT_THREADS
OracleResult brute_force_minimize(const SensorConfig& c, const GridSpec& spec, int threads = 0);

// golden-section minimization of f on [a, b]; returns the abscissa
double golden_section_minimize(const std::function<double(double)>& f, double a, double b, int iterations);

enum class NoiseKind { None, Uniform, Normal };

struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  double amplitude = 0.0;  // a for uniform[-a, a], sigma for the normal law
};

SensorConfig generate_instance(Point2 source, const std::array<Point2, 3>& z, const NoiseSpec& noise,
                               std::uint64_t seed);
// same, with the additive errors taken from `draw`; negative ranges are redrawn up to 100 times
SensorConfig generate_instance(Point2 source, const std::array<Point2, 3>& z, const std::function<double()>& draw);

struct ObjectiveTableEntry {
  const char* label;  // "S12+", ...
  Point2 point;
  double value = 0.0;
  bool minimal = false;
};

// O at S12+-, S23+-, S31+- in that order, minima flagged within a relative tie tolerance
std::array<ObjectiveTableEntry, 6> objective_table(const SensorConfig& c, double tie_tol = 1e-9);

struct ContourSample {
  double x, y, value;
};

// resolution x resolution samples over the disks' bounding box plus margin * extent
std::vector<ContourSample> contour_grid(const SensorConfig& c, int resolution, double margin = 0.2);

// label topology by pixel sampling; test oracle for the arc decomposition. Components smaller
// than min_pixels are dropped (cusp tips next to a crossing break into stray pixels).
RegionTopology grid_region_topology(const SensorConfig& c, int resolution, double margin = 0.1,
                                    int min_pixels = 1);

int oracle_thread_count(int requested = 0);

}  // namespace trilat
