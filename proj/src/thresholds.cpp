#include "trilat/thresholds.hpp"

#include <cmath>

#include "trilat/errors.hpp"
#include "trilat/objective.hpp"
#include "trilat/regions.hpp"

namespace trilat {
namespace {

double sq(double x) { return x * x; }

void require_positive(double r, double s, const char* who) {
  if (!(r > 0) || !(s > 0) || !std::isfinite(r) || !std::isfinite(s))
    fail(ErrorKind::PreconditionViolation, std::string(who) + ": r and s must be positive and finite");
}

// 4 s^2 - 3 r^2 at the equilateral height is roundoff, not a sign
bool sharp(double r, double s) { return 4 * sq(s) - 3 * sq(r) > 1e-12 * sq(r); }
bool flat(double r, double s) { return 3 * sq(r) - 4 * sq(s) > 1e-12 * sq(r); }

double half_chord(double r, double d1, const char* who) {
  double h2 = d1 * d1 - r * r / 4;
  if (!(h2 >= 0)) fail(ErrorKind::PreconditionViolation, std::string(who) + ": base circles do not meet");
  return std::sqrt(h2);
}

}  // namespace

IsoscelesParams require_isosceles(const SensorConfig& c, double tol) {
  c.validate();
  CanonicalFrame f = canonical_frame(c.z, tol);
  if (f.shape == TriangleShape::General)
    fail(ErrorKind::PreconditionViolation, "sensors are not isosceles about Z1Z2");
  if (std::abs(c.d[0] - c.d[1]) > tol * c.scale())
    fail(ErrorKind::PreconditionViolation, "base ranges differ");
  return {f.r, f.s, 0.5 * (c.d[0] + c.d[1]), c.d[2]};
}

double d3_zero(const SensorConfig& c) {
  IsoscelesParams p = require_isosceles(c);
  if (p.d1 < p.r / 2 * (1 - 1e-12)) fail(ErrorKind::PreconditionViolation, "d3_zero: base circles do not meet");
  double b2 = sq(p.s) + sq(p.r) / 4;
  return std::sqrt(sq(p.d1) + b2 - sq(p.r) / 2);
}

double d3_zero_general(const SensorConfig& c) {
  c.validate();
  IntersectionPair ip = circle_circle_intersect(c.circle(0), c.circle(1), c.z[2]);
  if (ip.count == 0) fail(ErrorKind::MissingIntersection, "circles 1 and 2 do not meet");
  return std::sqrt(0.5 * norm2(c.z[2] - ip.plus) + 0.5 * norm2(c.z[2] - ip.minus));
}

double d1_zero(const SensorConfig& c) {
  IsoscelesParams p = require_isosceles(c);
  RegionTopology topo = region_topology(c);
  for (const LabelTopology& l : topo.labels)
    if (!l.nonempty || !l.connected)
      fail(ErrorKind::PreconditionViolation, "d1_zero: some region is empty or disconnected");
  double b2 = sq(p.s) + sq(p.r) / 4;
  return std::sqrt(sq(p.d1) + (b2 + sq(p.d3) - sq(p.d1)) * sq(p.r) / (2 * b2));
}

double threshold_R(double r, double s, double d1) {
  require_positive(r, s, "threshold_R");
  double h = half_chord(r, d1, "threshold_R");
  double den = 4 * sq(s) + 9 * sq(r);
  double r2 = sq(h) + sq(s) * (4 * sq(s) + sq(r)) / den - 2 * s * h * (4 * sq(s) - 3 * sq(r)) / den;
  return std::sqrt(r2);
}

double threshold_M(double r, double s, double d1) {
  require_positive(r, s, "threshold_M");
  if (d1 < std::sqrt(sq(r) / 4 + sq(s)) * (1 - 1e-9))
    fail(ErrorKind::PreconditionViolation, "threshold_M: d1 below |Z1Z3|");
  double h = half_chord(r, d1, "threshold_M");
  double den = 4 * sq(s) + sq(r);
  double m2 = sq(h) + 2 * s * h * (4 * sq(s) - 3 * sq(r)) / den + sq(s) * (4 * sq(s) + 9 * sq(r)) / den;
  return std::sqrt(m2);
}

std::optional<double> threshold_P(double r, double s) {
  require_positive(r, s, "threshold_P");
  if (!sharp(r, s)) return std::nullopt;
  double den = 4 * sq(s) - 3 * sq(r);
  return std::sqrt(sq(r) / 4 + sq(s) * sq((4 * sq(s) + 5 * sq(r)) / den));
}

std::optional<double> threshold_P_sides(double base, double leg) {
  if (!(sq(leg) - sq(base) > 0.25e-12 * sq(base))) return std::nullopt;
  double ratio = (sq(leg) + sq(base)) / (sq(leg) - sq(base));
  return std::sqrt(sq(base) / 4 + (sq(leg) - sq(base) / 4) * sq(ratio));
}

std::optional<double> threshold_Q(double r, double s) {
  require_positive(r, s, "threshold_Q");
  if (!sharp(r, s)) return std::nullopt;
  double den = sq(s) - 0.75 * sq(r);
  return 2 * sq(r) * s / den;
}

std::optional<double> threshold_F(double r, double s) {
  require_positive(r, s, "threshold_F");
  if (!flat(r, s)) return std::nullopt;
  double den = 3 * sq(r) - 4 * sq(s);
  return std::sqrt(sq(r) / 4 + sq(s) * sq(4 * sq(r) / den));
}

double threshold_E_plus(double r, double s, double d1) {
  return std::sqrt(sq(half_chord(r, d1, "threshold_E_plus")) + sq(s));
}

double threshold_E_minus(double r, double s, double d1) {
  double e2 = sq(half_chord(r, d1, "threshold_E_minus")) - sq(s);
  if (e2 < 0) fail(ErrorKind::PreconditionViolation, "threshold_E_minus: d1 below |Z1Z3|");
  return std::sqrt(e2);
}

double d3_star_gap(double r, double s, double d1, double t) {
  double h = half_chord(r, d1, "d3_star_gap");
  double u = h - s;
  double b2 = sq(s) + sq(r) / 4;
  double rad = -sq(s) * sq(u) * sq(t) + 2 * s * u * (sq(s) + sq(r) / 4 + s * u) * t + sq(r) * sq(u) / 4;
  return 2 * s / b2 * (-u * ((sq(s) - sq(r) / 4) * t + sq(r) / 2) + r * std::sqrt(std::max(0.0, rad)));
}

D3Star d3_star(double r, double s, double d1, double tol) {
  require_positive(r, s, "d3_star");
  std::optional<double> p = threshold_P(r, s);
  if (!p) fail(ErrorKind::PreconditionViolation, "d3_star: triangle is not sharp");
  if (d1 < *p * (1 - 1e-9)) fail(ErrorKind::PreconditionViolation, "d3_star: d1 below P");
  if (d1 <= *p * (1 + 1e-9) || d3_star_gap(r, s, d1, 1.0) >= 0)
    fail(ErrorKind::NoBracket, "d3_star: gap does not change sign on (0, 1]");
  if (!(tol > 0)) tol = 1e-12;

  // gap(0) = 0 and gap is concave with gap(1) < 0, so it is positive just right of 0
  double lo = 0.0, hi = 1.0;
  D3Star out;
  while (hi - lo > tol && out.iterations < 200) {
    double mid = 0.5 * (lo + hi);
    if (d3_star_gap(r, s, d1, mid) > 0)
      lo = mid;
    else
      hi = mid;
    ++out.iterations;
  }
  out.t = 0.5 * (lo + hi);
  double u = std::sqrt(sq(d1) - sq(r) / 4) - s;
  out.d3 = std::sqrt(sq(u) + 2 * out.t * s * u);
  return out;
}

ThresholdBundle compute_thresholds(double r, double s, double d1, double d3) {
  require_positive(r, s, "compute_thresholds");
  ThresholdBundle b;
  b.r = r;
  b.s = s;
  b.d1 = d1;
  b.d3 = d3;
  b.A = std::sqrt(sq(r) / 4 + sq(s) / 9);
  b.B = std::sqrt(sq(r) / 4 + sq(s));
  b.P = threshold_P(r, s);
  b.Q = threshold_Q(r, s);
  b.F = threshold_F(r, s);
  if (d1 * d1 < sq(r) / 4) return b;

  double h = std::sqrt(sq(d1) - sq(r) / 4);
  b.h = h;
  b.d3_0 = std::sqrt(sq(d1) + sq(b.B) - sq(r) / 2);
  b.d1_0 = std::sqrt(sq(d1) + (sq(b.B) + sq(d3) - sq(d1)) * sq(r) / (2 * sq(b.B)));
  b.R = threshold_R(r, s, d1);
  b.E_plus = std::sqrt(sq(h) + sq(s));
  if (h >= s) {
    b.E_minus = std::sqrt(sq(h) - sq(s));
    b.M = threshold_M(r, s, std::max(d1, b.B));
  }
  if (b.P && d1 > *b.P * (1 + 1e-9)) {
    try {
      b.d3_star = d3_star(r, s, d1);
    } catch (const Error&) {
    }
  }
  return b;
}

std::vector<NamedThreshold> ThresholdBundle::all() const {
  std::vector<NamedThreshold> out;
  out.push_back({"r/2", r / 2, true});
  out.push_back({"A", A, true});
  out.push_back({"B", B, true});
  if (P) out.push_back({"P", *P, true});
  if (F) out.push_back({"F", *F, true});
  if (d1_0) out.push_back({"d1_0", *d1_0, true});
  out.push_back({"2s/3", 2 * s / 3, false});
  out.push_back({"2s", 2 * s, false});
  if (h) {
    out.push_back({"s-h", std::abs(s - *h), false});
    out.push_back({"s+h", s + *h, false});
  }
  if (d3_0) out.push_back({"d3_0", *d3_0, false});
  if (R) out.push_back({"R", *R, false});
  if (M) out.push_back({"M", *M, false});
  if (E_plus) out.push_back({"E+", *E_plus, false});
  if (E_minus) out.push_back({"E-", *E_minus, false});
  if (d3_star) out.push_back({"d3*", d3_star->d3, false});
  return out;
}

std::vector<ThresholdDistance> threshold_distances(const ThresholdBundle& b) {
  std::vector<ThresholdDistance> out;
  for (const NamedThreshold& t : b.all())
    out.push_back({t.name, (t.on_d1 ? b.d1 : b.d3) - t.value});
  return out;
}

}  // namespace trilat
