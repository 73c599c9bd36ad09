#include "trilat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trilat/config.hpp"
#include "trilat/errors.hpp"

namespace trilat {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ConcentricIdentical: return "ConcentricIdentical";
    case ErrorKind::DegenerateDirection: return "DegenerateDirection";
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::DegenerateArrangement: return "DegenerateArrangement";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::BoundsTooSmall: return "BoundsTooSmall";
    case ErrorKind::NoiseRejection: return "NoiseRejection";
    case ErrorKind::MissingIntersection: return "MissingIntersection";
    case ErrorKind::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

const char* to_string(TriangleShape shape) {
  switch (shape) {
    case TriangleShape::Equilateral: return "equilateral";
    case TriangleShape::IsoscelesFlat: return "isosceles-flat";
    case TriangleShape::IsoscelesSharp: return "isosceles-sharp";
    case TriangleShape::General: return "general";
  }
  return "unknown";
}

IntersectionPair circle_circle_intersect(const Circle& a, const Circle& b, Point2 reference,
                                         double tol) {
  if (!finite(a.center) || !finite(b.center) || !finite(reference) || !std::isfinite(a.radius) ||
      !std::isfinite(b.radius) || a.radius < 0 || b.radius < 0)
    fail(ErrorKind::PreconditionViolation, "circle_circle_intersect: non-finite or negative input");

  Point2 delta = b.center - a.center;
  double dist = norm(delta);
  if (!(tol > 0)) tol = 1e-9 * (a.radius + b.radius + dist);

  IntersectionPair out;
  if (dist <= tol) {
    if (std::abs(a.radius - b.radius) <= tol)
      fail(ErrorKind::ConcentricIdentical, "circles coincide");
    return out;
  }
  double outer = a.radius + b.radius;
  double inner = std::abs(a.radius - b.radius);
  if (dist > outer + tol || dist < inner - tol) return out;

  Point2 u = delta / dist;
  // signed distance from a's center to the radical line
  double along = (a.radius * a.radius - b.radius * b.radius + dist * dist) / (2.0 * dist);
  Point2 foot = a.center + u * along;

  if (std::abs(dist - outer) <= tol || std::abs(dist - inner) <= tol) {
    out.count = 1;
    out.plus = out.minus = foot;
    return out;
  }

  double h = std::sqrt(std::max(0.0, a.radius * a.radius - along * along));
  Point2 p = foot + perp(u) * h;
  Point2 q = foot - perp(u) * h;
  double dp = distance(p, reference);
  double dq = distance(q, reference);
  out.count = 2;
  if (std::abs(dp - dq) <= tol) {
    // reference on the line of centers: lexicographic (y, then x)
    out.equidistant = true;
    bool p_first = p.y > q.y || (p.y == q.y && p.x > q.x);
    out.plus = p_first ? p : q;
    out.minus = p_first ? q : p;
  } else if (dp < dq) {
    out.plus = p;
    out.minus = q;
  } else {
    out.plus = q;
    out.minus = p;
  }
  return out;
}

std::array<Point2, 4> centroid_points(const std::array<Point2, 3>& z) {
  Point2 y0 = (z[0] + z[1] + z[2]) / 3.0;
  return {y0, y0 * 3.0 - z[0] * 2.0, y0 * 3.0 - z[1] * 2.0, y0 * 3.0 - z[2] * 2.0};
}

std::array<Point2, 3> side_midpoints(const std::array<Point2, 3>& z) {
  return {(z[0] + z[1]) * 0.5, (z[1] + z[2]) * 0.5, (z[2] + z[0]) * 0.5};
}

CanonicalFrame canonical_frame(const std::array<Point2, 3>& z, double tol_shape) {
  for (const auto& p : z)
    if (!finite(p)) fail(ErrorKind::PreconditionViolation, "canonical_frame: non-finite sensor");

  CanonicalFrame f;
  f.r = distance(z[0], z[1]);
  double spread = std::max({f.r, distance(z[1], z[2]), distance(z[2], z[0])});
  if (spread == 0.0 || f.r <= 1e-12 * spread)
    fail(ErrorKind::DegenerateTriangle, "base sensors coincide");

  RigidMotion& m = f.motion;
  m.origin = (z[0] + z[1]) * 0.5;
  m.ex = (z[1] - z[0]) / f.r;
  m.ey = perp(m.ex);
  Point2 local = m.to_local(z[2]);
  if (local.y < 0) {
    m.ey = -m.ey;
    m.reflected = true;
    local.y = -local.y;
  }
  if (local.y <= 1e-9 * spread) fail(ErrorKind::DegenerateTriangle, "sensors are collinear");

  f.apex = local;
  f.s = norm(local);
  if (std::abs(local.x) <= tol_shape * f.r) {
    double equilateral_height = std::sqrt(3.0) / 2.0 * f.r;
    if (std::abs(f.s - equilateral_height) <= tol_shape * f.r)
      f.shape = TriangleShape::Equilateral;
    else if (f.s < equilateral_height)
      f.shape = TriangleShape::IsoscelesFlat;
    else
      f.shape = TriangleShape::IsoscelesSharp;
  }
  return f;
}

void SensorConfig::validate() const {
  for (int i = 0; i < 3; ++i) {
    if (!finite(z[i]) || !std::isfinite(d[i]))
      fail(ErrorKind::PreconditionViolation, "sensor configuration has non-finite entries");
    if (d[i] < 0) fail(ErrorKind::PreconditionViolation, "negative range d" + std::to_string(i + 1));
  }
}

double SensorConfig::scale() const {
  double spread = std::max({distance(z[0], z[1]), distance(z[1], z[2]), distance(z[2], z[0])});
  double s = spread + std::max({d[0], d[1], d[2]});
  return s > 0 ? s : 1.0;
}

SensorConfig SensorConfig::canonical(double r, double s, double d1, double d2, double d3) {
  SensorConfig c;
  c.z = {Point2{-r / 2, 0.0}, Point2{r / 2, 0.0}, Point2{0.0, s}};
  c.d = {d1, d2, d3};
  return c;
}

Point2 y_point(const SensorConfig& c, int k) { return centroid_points(c.z)[k]; }

Point2 n_point(const SensorConfig& c, int k) {
  c.validate();
  Point2 zk = c.z[k - 1];
  Point2 v = y_point(c, k) - zk;
  double len = norm(v);
  if (len <= 1e-12 * c.scale())
    fail(ErrorKind::DegenerateDirection, "Y" + std::to_string(k) + " coincides with Z" + std::to_string(k));
  return zk + v * (c.d[k - 1] / len);
}

}  // namespace trilat
