#include "favlab/convex.hpp"

#include <algorithm>
#include <cmath>

#include "favlab/error.hpp"
#include "favlab/ifs.hpp"

namespace favlab {

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 2) return points;
  std::vector<Vec2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = points[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

bool contains(const std::vector<Vec2>& hull, Vec2 p, double tolerance) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return norm(p - hull[0]) <= tolerance;
  if (hull.size() == 2) {
    const Vec2 d = hull[1] - hull[0];
    const double len2 = dot(d, d);
    const double t = std::clamp(dot(p - hull[0], d) / len2, 0.0, 1.0);
    return norm(p - (hull[0] + t * d)) <= tolerance;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 a = hull[i];
    const Vec2 b = hull[(i + 1) % hull.size()];
    const double edge = norm(b - a);
    if (cross(b - a, p - a) < -tolerance * edge) return false;
  }
  return true;
}

bool polygon_invariant(const Ifs& ifs, const std::vector<Vec2>& hull, double tolerance) {
  double scale = 1.0;
  for (const auto& v : hull) scale = std::max(scale, norm(v));
  for (const auto& f : ifs.maps()) {
    for (const auto& v : hull) {
      if (!contains(hull, f(v), tolerance * scale)) return false;
    }
  }
  return true;
}

std::vector<Vec2> certified_hull(const Ifs& ifs, std::size_t depth) {
  const auto cylinders = level_geometries(ifs, depth);
  std::vector<Vec2> sample;
  sample.reserve(cylinders.size() * ifs.size());
  for (const auto& g : cylinders) {
    for (const auto& f : ifs.maps()) sample.push_back(g(f.fixed_point()));
  }
  auto hull = convex_hull(std::move(sample));
  if (polygon_invariant(ifs, hull)) return hull;
  if (hull.size() < 3) {
    throw Error(Errc::verification_failed, "degenerate hull sample is not invariant");
  }
  Vec2 centroid{};
  for (const auto& v : hull) centroid += v;
  centroid *= 1.0 / static_cast<double>(hull.size());
  double scale = 1.0;
  for (int step = 0; step < 4000; ++step) {
    scale *= 1.001;
    std::vector<Vec2> grown;
    grown.reserve(hull.size());
    for (const auto& v : hull) grown.push_back(centroid + scale * (v - centroid));
    if (polygon_invariant(ifs, grown)) return grown;
  }
  throw Error(Errc::verification_failed, "could not certify a polygon hull");
}

}  // namespace favlab
