#pragma once

#include <array>
#include <cmath>
#include <string>

namespace trilat {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2 operator+(Point2 o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(Point2 o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double k) const { return {x * k, y * k}; }
  Point2 operator/(double k) const { return {x / k, y / k}; }
  Point2 operator-() const { return {-x, -y}; }
  bool operator==(const Point2&) const = default;
};

inline Point2 operator*(double k, Point2 p) { return p * k; }
inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Point2 p) { return dot(p, p); }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 perp(Point2 p) { return {-p.y, p.x}; }
inline bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

struct Circle {
  Point2 center;
  double radius = 0.0;
};

// plus is the point nearer the reference (third) sensor, minus the farther one
struct IntersectionPair {
  int count = 0;
  Point2 plus;
  Point2 minus;
  bool equidistant = false;
};

// 0 < tol: absolute tolerance; tol <= 0 selects 1e-9 * (ra + rb + D)
IntersectionPair circle_circle_intersect(const Circle& a, const Circle& b, Point2 reference,
                                         double tol = 0.0);

// {Y0, Y1, Y2, Y3}: centroid and Y_j = 3 Y0 - 2 Z_j
std::array<Point2, 4> centroid_points(const std::array<Point2, 3>& z);

// {L, M, N} = midpoints of Z1Z2, Z2Z3, Z3Z1
std::array<Point2, 3> side_midpoints(const std::array<Point2, 3>& z);

enum class TriangleShape { Equilateral, IsoscelesFlat, IsoscelesSharp, General };

const char* to_string(TriangleShape shape);

// proper rigid motion optionally composed with a reflection about the local x axis
struct RigidMotion {
  Point2 origin;
  Point2 ex{1.0, 0.0};
  Point2 ey{0.0, 1.0};
  bool reflected = false;

  Point2 to_local(Point2 p) const { return {dot(p - origin, ex), dot(p - origin, ey)}; }
  Point2 to_world(Point2 q) const { return origin + ex * q.x + ey * q.y; }
};

// Z1 = (-r/2, 0), Z2 = (r/2, 0), Z3 = (x3, y3) with y3 > 0; s = |Z3| measured from the base midpoint
struct CanonicalFrame {
  double r = 0.0;
  double s = 0.0;
  Point2 apex;
  TriangleShape shape = TriangleShape::General;
  RigidMotion motion;
};

CanonicalFrame canonical_frame(const std::array<Point2, 3>& z, double tol_shape = 1e-9);

}  // namespace trilat
