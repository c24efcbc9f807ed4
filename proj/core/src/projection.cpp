#include "favlab/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "favlab/error.hpp"
#include "favlab/ifs.hpp"
#include "favlab/rotation.hpp"

namespace favlab {

AtomicMeasure level_measure(const Ifs& ifs, double theta, std::size_t n, std::size_t cap) {
  const auto cylinders = level_geometries(ifs, n, cap);
  const Vec2 anchor = ifs.map(0).fixed_point();
  const Vec2 e = unit(theta);
  const double d = ifs.diameter_bound();
  AtomicMeasure out;
  out.level = n;
  out.atoms.reserve(cylinders.size());
  for (const auto& g : cylinders) {
    out.atoms.push_back({dot(g(anchor), e), std::exp(ifs.dimension() * g.log_ratio), d * g.ratio()});
  }
  std::stable_sort(out.atoms.begin(), out.atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.position < b.position; });
  out.total = 0.0;
  for (const auto& a : out.atoms) out.total += a.weight;
  return out;
}

std::vector<double> density_profile(const Ifs& ifs, double theta, double x, std::span<const double> radii,
                                    std::size_t n) {
  if (radii.empty()) return {};
  const double smallest = *std::min_element(radii.begin(), radii.end());
  if (!(smallest > 0.0)) throw Error(Errc::invalid_argument, "radii must be positive");
  const double worst = ifs.diameter_bound() * std::pow(ifs.max_ratio(), static_cast<double>(n));
  if (!(worst < smallest / 100.0)) {
    throw Error(Errc::resolution_too_coarse, "level " + std::to_string(n) + " atoms have error " +
                                                 std::to_string(worst) + " >= r/100");
  }
  const auto measure = level_measure(ifs, theta, n);
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) {
    const auto lo = std::upper_bound(measure.atoms.begin(), measure.atoms.end(), x - r,
                                     [](double v, const Atom& a) { return v < a.position; });
    double mass = 0.0;
    for (auto it = lo; it != measure.atoms.end() && it->position < x + r; ++it) {
      if (it->position > x - r) mass += it->weight;
    }
    out.push_back(mass / std::pow(2.0 * r, ifs.dimension()));
  }
  return out;
}

DensityWitness density_witness(const Ifs& ifs, const RelCloseCertificate& cert, double theta, std::size_t p_max) {
  if (cert.words.empty()) throw Error(Errc::precondition_violated, "empty certificate");
  const Word& u1 = cert.words.front();
  const auto g1 = compose(ifs, u1);
  const double window = g1.ratio();
  const double target = theta - cert.theta;

  DensityWitness out;
  Word a = steering_word(ifs, window, p_max);
  out.steering = steering_suffix(ifs, {}, target, window, a, p_max);
  const auto gs = compose(ifs, out.steering);
  if (gs.orientation != 1 || circular_distance(gs.angle + cert.theta, theta) >= window) {
    throw Error(Errc::steering_failed, "steering prefix misses the angle window");
  }

  // Everything below lives in the frame of s: absolute offsets are r_s times
  // the local ones, and the ratio is scale-free.
  const TailWord anchor = TailWord::periodic(Word{0});
  const Vec2 w = gs.pullback(theta);
  const double d = ifs.diameter_bound();
  const double r0 = ifs.disk().radius;
  const PiPoint p1 = pi_point(ifs, u1, anchor);
  const double scale = d * window;  // D r_{u_1}
  const double b_local = 5.0 * scale;

  out.points_inside = true;
  out.cylinders_inside = true;
  double far = 0.0;
  double log_mass_sum = -std::numeric_limits<double>::infinity();
  for (const auto& u : cert.words) {
    const auto gu = compose(ifs, u);
    const PiPoint pi = pi_point(ifs, u, anchor);
    const double slop = pi.error_radius + p1.error_radius + pi.rounding + p1.rounding;
    const double point_offset = std::abs(dot(pi.point - p1.point, w));
    if (!(point_offset + slop < b_local)) out.points_inside = false;
    const double cyl_reach = std::abs(dot(gu(ifs.disk().center) - p1.point, w)) + r0 * gu.ratio();
    far = std::max(far, cyl_reach + slop);
    if (!(cyl_reach + slop < b_local)) out.cylinders_inside = false;
    const double lm = ifs.dimension() * gu.log_ratio;
    log_mass_sum = std::max(log_mass_sum, lm) +
                   std::log1p(std::exp(std::min(log_mass_sum, lm) - std::max(log_mass_sum, lm)));
  }
  out.containment_factor = far / scale;

  const double log_rs = gs.log_ratio;
  out.log_b = std::log(5.0 * d) + log_rs + g1.log_ratio;
  out.b = std::exp(out.log_b);
  out.x = dot(gs(p1.point), unit(theta));
  // sum_i r_s^g r_{u_i}^g / (2b)^g; r_s^g cancels against (2b)^g
  out.ratio = std::exp(log_mass_sum - ifs.dimension() * std::log(2.0 * 5.0 * d * window));
  out.bound = static_cast<double>(cert.words.size()) / std::pow(10.0 * d * std::numbers::e, ifs.dimension());
  return out;
}

double radial_project(Vec2 x, Vec2 a) {
  const Vec2 d = x - a;
  if (norm(d) < 1e-12) throw Error(Errc::center_hit, "point coincides with the projection centre");
  return normalize_angle(std::atan2(d.y, d.x));
}

VisibilityEstimate visibility_estimate(const Ifs& ifs, Vec2 a, double s, std::size_t n,
                                       std::optional<std::size_t> exclusion_level) {
  if (!(s > 0.0 && s <= 2.0)) throw Error(Errc::invalid_argument, "s must lie in (0, 2]");
  const std::size_t ex_level = exclusion_level.value_or(n);
  if (ex_level > n) throw Error(Errc::invalid_argument, "exclusion level deeper than n");
  const auto cylinders = level_geometries(ifs, n);
  const Disk disk = ifs.disk();
  const std::size_t m = ifs.size();
  const double gamma = ifs.dimension();

  VisibilityEstimate out;
  out.center_inside = norm(a - disk.center) < disk.radius;

  // exclusion flags at the coarse level
  const auto coarse = level_geometries(ifs, ex_level);
  std::vector<char> excluded(coarse.size(), 0);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    const auto& g = coarse[i];
    if (norm(g(disk.center) - a) <= disk.radius * g.ratio() + 1e-9) {
      excluded[i] = 1;
      ++out.excluded;
      out.excluded_mass += std::exp(gamma * g.log_ratio);
    }
  }
  std::size_t fan = 1;
  for (std::size_t k = ex_level; k < n; ++k) fan *= m;

  struct Arc {
    double start;
    double length;
  };
  std::vector<Arc> arcs;
  arcs.reserve(cylinders.size());
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    if (excluded[i / fan]) continue;
    const auto& g = cylinders[i];
    const Vec2 c = g(disk.center);
    const double rho = disk.radius * g.ratio();
    const double dist = norm(c - a);
    if (dist <= rho) {
      arcs.push_back({0.0, kTwoPi});
      continue;
    }
    const double half = std::asin(std::min(1.0, rho / dist));
    arcs.push_back({normalize_angle(std::atan2(c.y - a.y, c.x - a.x) - half), 2.0 * half});
  }
  out.arcs = arcs.size();
  if (arcs.empty()) return out;
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
    return x.start < y.start || (x.start == y.start && x.length < y.length);
  });

  struct Component {
    double start;
    double end;
    double member_sum;
  };
  std::vector<Component> comps;
  for (const auto& arc : arcs) {
    out.max_arc = std::max(out.max_arc, arc.length);
    const double part = std::pow(arc.length, s);
    if (!comps.empty() && arc.start <= comps.back().end) {
      comps.back().end = std::max(comps.back().end, arc.start + arc.length);
      comps.back().member_sum += part;
    } else {
      comps.push_back({arc.start, arc.start + arc.length, part});
    }
  }
  // wrap-around: the last component may run past 2pi into the first ones
  while (comps.size() > 1 && comps.back().end - kTwoPi >= comps.front().start) {
    comps.back().end = std::max(comps.back().end, comps.front().end + kTwoPi);
    comps.back().member_sum += comps.front().member_sum;
    comps.erase(comps.begin());
  }
  out.components = comps.size();
  for (const auto& c : comps) {
    const double len = std::min(c.end - c.start, kTwoPi);
    out.covering_sum += std::min(std::pow(len, s), c.member_sum);
  }
  return out;
}

}  // namespace favlab
