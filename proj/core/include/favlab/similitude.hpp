#pragma once

#include <array>
#include <cmath>

#include "favlab/geometry.hpp"

namespace favlab {

/// A contracting planar similitude
///   z -> ratio * [cos a, -o sin a; sin a, o cos a] z + shift
/// with o = +1 for a rotation and o = -1 for a reflection about the line at
/// angle a/2.
class Similitude {
 public:
  /// Throws Errc::invalid_argument unless 0 < ratio < 1 and orientation is +-1.
  Similitude(double ratio, double angle, int orientation, Vec2 shift);

  double ratio() const noexcept { return ratio_; }
  double angle() const noexcept { return angle_; }
  int orientation() const noexcept { return orientation_; }
  bool reflects() const noexcept { return orientation_ < 0; }
  Vec2 shift() const noexcept { return shift_; }

  Vec2 operator()(Vec2 p) const noexcept;

  /// The fixed point, solving (I - rM) z = shift.
  Vec2 fixed_point() const noexcept;

 private:
  double ratio_;
  double angle_;
  int orientation_;
  Vec2 shift_;
};

/// Parameters of a composed map F_u = F_{u_1} o ... o F_{u_n}. The ratio is
/// kept in log form so that long words do not underflow.
struct CylinderGeometry {
  double log_ratio{0.0};
  double angle{0.0};
  int orientation{1};
  Vec2 shift{};

  static CylinderGeometry identity() noexcept { return {}; }
  static CylinderGeometry from(const Similitude& f) noexcept {
    return {std::log(f.ratio()), f.angle(), f.orientation(), f.shift()};
  }

  double ratio() const noexcept { return std::exp(log_ratio); }

  /// r_u * M_u * p, without the translation.
  Vec2 linear(Vec2 p) const noexcept;
  Vec2 operator()(Vec2 p) const noexcept { return linear(p) + shift; }

  /// M_u^T e_theta (no ratio): projecting M_u p onto l_theta equals
  /// dot(p, pullback(theta)).
  Vec2 pullback(double theta) const noexcept;

  /// this o inner. Angles compose as theta_uv = theta_u + O_u * theta_v.
  CylinderGeometry then(const CylinderGeometry& inner) const noexcept;

  /// Row-major entries of the full linear part r_u * M_u.
  std::array<double, 4> matrix() const noexcept;
};

}  // namespace favlab
