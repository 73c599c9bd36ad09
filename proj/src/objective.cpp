#include "trilat/objective.hpp"

#include <cmath>

#include "trilat/errors.hpp"

namespace trilat {

ObjectiveValue objective(const SensorConfig& c, Point2 w) {
  ObjectiveValue out;
  for (int j = 0; j < 3; ++j) {
    out.per_term[j] = norm2(w - c.z[j]) - c.d[j] * c.d[j];
    out.value += std::abs(out.per_term[j]);
  }
  return out;
}

double objective_value(const SensorConfig& c, Point2 w) {
  double v = 0.0;
  for (int j = 0; j < 3; ++j) v += std::abs(norm2(w - c.z[j]) - c.d[j] * c.d[j]);
  return v;
}

RegionLabel RegionLabel::parse(const std::string& text) {
  if (text.size() != 3) fail(ErrorKind::PreconditionViolation, "region label needs three digits");
  RegionLabel l;
  for (int j = 0; j < 3; ++j) {
    if (text[j] == '1')
      l.bits |= static_cast<std::uint8_t>(1u << j);
    else if (text[j] != '0')
      fail(ErrorKind::PreconditionViolation, "region label digits are 0 or 1");
  }
  return l;
}

std::string RegionLabel::str() const {
  std::string s(3, '0');
  for (int j = 0; j < 3; ++j)
    if (in(j)) s[j] = '1';
  return s;
}

RegionLabel classify_point(const SensorConfig& c, Point2 w, double tol) {
  RegionLabel l;
  for (int j = 0; j < 3; ++j)
    if (distance(w, c.z[j]) <= c.d[j] + tol) l.bits |= static_cast<std::uint8_t>(1u << j);
  return l;
}

double region_quadratic(const SensorConfig& c, RegionLabel label, Point2 w) {
  double v = 0.0;
  for (int j = 0; j < 3; ++j) {
    double t = norm2(w - c.z[j]) - c.d[j] * c.d[j];
    v += label.in(j) ? -t : t;
  }
  return v;
}

double outside_constant(const SensorConfig& c) {
  Point2 y0 = y_point(c, 0);
  double v = -3.0 * norm2(y0);
  for (int j = 0; j < 3; ++j) v += norm2(c.z[j]) - c.d[j] * c.d[j];
  return v;
}

double quadratic_form_check(const SensorConfig& c, Point2 w) {
  double tol = 1e-12 * c.scale();
  for (int j = 0; j < 3; ++j)
    if (distance(w, c.z[j]) < c.d[j] - tol)
      fail(ErrorKind::PreconditionViolation, "point lies inside disk " + std::to_string(j + 1));
  return 3.0 * norm2(w - y_point(c, 0)) + outside_constant(c);
}

}  // namespace trilat
