#include <cmath>

#include "favlab/error.hpp"
#include "favlab/similitude.hpp"

namespace favlab {

Similitude::Similitude(double ratio, double angle, int orientation, Vec2 shift)
    : ratio_(ratio), angle_(normalize_angle(angle)), orientation_(orientation), shift_(shift) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(Errc::invalid_argument, "similitude ratio must lie in (0,1)");
  }
  if (orientation != 1 && orientation != -1) {
    throw Error(Errc::invalid_argument, "orientation must be +1 or -1");
  }
  if (!std::isfinite(angle) || !std::isfinite(shift.x) || !std::isfinite(shift.y)) {
    throw Error(Errc::invalid_argument, "similitude parameters must be finite");
  }
}

Vec2 Similitude::operator()(Vec2 p) const noexcept {
  return CylinderGeometry::from(*this)(p);
}

Vec2 Similitude::fixed_point() const noexcept {
  const double c = std::cos(angle_);
  const double s = std::sin(angle_);
  const double o = orientation_;
  // I - rM
  const double a = 1.0 - ratio_ * c;
  const double b = ratio_ * o * s;
  const double cc = -ratio_ * s;
  const double d = 1.0 - ratio_ * o * c;
  const double det = a * d - b * cc;
  return {(d * shift_.x - b * shift_.y) / det, (-cc * shift_.x + a * shift_.y) / det};
}

Vec2 CylinderGeometry::linear(Vec2 p) const noexcept {
  const double r = std::exp(log_ratio);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double o = orientation;
  return {r * (c * p.x - o * s * p.y), r * (s * p.x + o * c * p.y)};
}

Vec2 CylinderGeometry::pullback(double theta) const noexcept {
  const double d = theta - angle;
  return {std::cos(d), orientation * std::sin(d)};
}

CylinderGeometry CylinderGeometry::then(const CylinderGeometry& inner) const noexcept {
  CylinderGeometry out;
  out.log_ratio = log_ratio + inner.log_ratio;
  out.angle = normalize_angle(angle + orientation * inner.angle);
  out.orientation = orientation * inner.orientation;
  out.shift = shift + linear(inner.shift);
  return out;
}

std::array<double, 4> CylinderGeometry::matrix() const noexcept {
  const double r = std::exp(log_ratio);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double o = orientation;
  return {r * c, -r * o * s, r * s, r * o * c};
}

}  // namespace favlab
