#pragma once

#include <cmath>
#include <numbers>

namespace favlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for every angle comparison in the library.
inline constexpr double kAngleTolerance = 1e-9;

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2& operator+=(Vec2 o) noexcept { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) noexcept { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) noexcept { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) noexcept { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) noexcept { return std::hypot(a.x, a.y); }

/// Unit vector e_theta = (cos theta, sin theta).
inline Vec2 unit(double theta) noexcept { return {std::cos(theta), std::sin(theta)}; }

/// Reduces an angle into [0, 2pi).
inline double normalize_angle(double theta) noexcept {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// Signed difference a - b reduced into [-pi, pi).
inline double angle_difference(double a, double b) noexcept {
  double d = normalize_angle(a - b);
  return d >= kPi ? d - kTwoPi : d;
}

/// Distance on the circle, in [0, pi].
inline double circular_distance(double a, double b) noexcept {
  return std::abs(angle_difference(a, b));
}

/// Orthogonal projection of a point onto the line l_theta through the origin.
inline double project(Vec2 p, double theta) noexcept { return dot(p, unit(theta)); }

}  // namespace favlab
