#include "favlab/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "favlab/convex.hpp"
#include "favlab/error.hpp"
#include "favlab/parallel.hpp"

namespace favlab {

double similarity_dimension(std::span<const double> ratios) {
  if (ratios.empty()) throw Error(Errc::invalid_argument, "similarity dimension of an empty ratio list");
  for (double r : ratios) {
    if (!(r > 0.0 && r < 1.0)) throw Error(Errc::invalid_argument, "ratios must lie in (0,1)");
  }
  auto sum = [&](double g) {
    double s = 0.0;
    for (double r : ratios) s += std::pow(r, g);
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (sum(hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw Error(Errc::invalid_argument, "similarity dimension does not converge");
  }
  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sum(mid) >= 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Disk enclosing_disk(std::span<const Similitude> maps) {
  if (maps.empty()) throw Error(Errc::invalid_argument, "enclosing disk of an empty system");
  Disk d;
  d.center = maps.front().fixed_point();
  for (const auto& f : maps) {
    d.radius = std::max(d.radius, norm(f(d.center) - d.center) / (1.0 - f.ratio()));
  }
  return d;
}

Ifs::Ifs(std::vector<Similitude> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(Errc::invalid_argument, "an IFS needs at least one map");
  if (maps_.size() > 256) throw Error(Errc::invalid_argument, "at most 256 maps are supported");
  std::vector<double> ratios;
  for (const auto& f : maps_) {
    ratios.push_back(f.ratio());
    unit_.push_back(CylinderGeometry::from(f));
    r_min_ = std::min(r_min_, f.ratio());
    r_max_ = std::max(r_max_, f.ratio());
  }
  gamma_ = similarity_dimension(ratios);
  disk_ = enclosing_disk(maps_);
}

bool Ifs::homogeneous(double tolerance) const noexcept {
  return r_max_ - r_min_ <= tolerance * r_max_;
}

std::optional<Word::Symbol> Ifs::reflector() const noexcept {
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (maps_[i].reflects()) return static_cast<Word::Symbol>(i);
  }
  return std::nullopt;
}

Ifs Ifs::with_hull(std::vector<Vec2> polygon) const {
  auto hull = convex_hull(std::move(polygon));
  if (hull.empty()) throw Error(Errc::invalid_argument, "hull polygon is empty");
  if (!polygon_invariant(*this, hull)) {
    throw Error(Errc::verification_failed, "polygon is not mapped into itself by every F_i");
  }
  Ifs out = *this;
  out.hull_ = std::move(hull);
  return out;
}

void Ifs::check(const Word& u) const {
  for (auto s : u) {
    if (s >= maps_.size()) {
      throw Error(Errc::symbol_out_of_range,
                  "symbol " + std::to_string(s + 1) + " outside 1.." + std::to_string(maps_.size()));
    }
  }
}

CylinderGeometry compose(const Ifs& ifs, const Word& u) {
  ifs.check(u);
  CylinderGeometry g;
  for (auto s : u) g = g.then(ifs.geometry(s));
  return g;
}

PiPoint pi_point(const Ifs& ifs, const Word& u, const TailWord& anchor) {
  const CylinderGeometry gu = compose(ifs, u);
  CylinderGeometry gw;
  std::size_t used = 0;
  const double stop = std::log(1e-12);
  while (gw.log_ratio >= stop) {
    const auto s = anchor.at(used++);
    if (s >= ifs.size()) throw Error(Errc::symbol_out_of_range, "anchor symbol outside alphabet");
    gw = gw.then(ifs.geometry(s));
  }
  const Vec2 inner = gw(ifs.disk().center);
  PiPoint out;
  out.point = gu(inner);
  out.error_radius = ifs.diameter_bound() * std::exp(gu.log_ratio + gw.log_ratio);
  const double scale = std::max({1.0, norm(out.point), norm(inner), ifs.diameter_bound()});
  out.rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                 static_cast<double>(u.size() + used + 2) * scale;
  return out;
}

double log_mu_mass(const Ifs& ifs, const Word& u) {
  ifs.check(u);
  double lr = 0.0;
  for (auto s : u) lr += ifs.geometry(s).log_ratio;
  return ifs.dimension() * lr;
}

double mu_mass(const Ifs& ifs, const Word& u) { return std::exp(log_mu_mass(ifs, u)); }

std::vector<Word> mass_band(const Ifs& ifs, double r, std::size_t cap) {
  if (!(r > 0.0 && r < 1.0)) throw Error(Errc::invalid_argument, "mass band radius must lie in (0,1)");
  const double upper = std::log(r) + 1e-12;
  const double lower = std::log(r) + std::log(ifs.min_ratio()) + 1e-12;
  std::vector<Word> out;
  Word current;
  auto visit = [&](auto&& self, double log_r) -> void {
    if (log_r <= lower) return;
    if (log_r <= upper && !current.empty()) {
      if (out.size() >= cap) throw Error(Errc::enumeration_cap, "mass band exceeds enumeration cap");
      out.push_back(current);
    }
    for (std::size_t i = 0; i < ifs.size(); ++i) {
      current.push_back(static_cast<Word::Symbol>(i));
      self(self, log_r + ifs.geometry(i).log_ratio);
      current.pop_back();
    }
  };
  visit(visit, 0.0);
  return out;
}

std::optional<std::size_t> level_size(std::size_t m, std::size_t n, std::size_t cap) {
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (count > cap / m) return std::nullopt;
    count *= m;
  }
  if (count > cap) return std::nullopt;
  return count;
}

std::vector<CylinderGeometry> level_geometries(const Ifs& ifs, std::size_t n, std::size_t cap) {
  const std::size_t m = ifs.size();
  const auto total = level_size(m, n, cap);
  if (!total) {
    throw Error(Errc::level_too_large, "m^n = " + std::to_string(m) + "^" + std::to_string(n) +
                                           " exceeds the cap of " + std::to_string(cap));
  }
  std::vector<CylinderGeometry> out(*total);
  if (n == 0) return out;
  const std::size_t subtree = *total / m;
  parallel_for(m, [&](std::size_t first) {
    std::size_t slot = first * subtree;
    auto fill = [&](auto&& self, const CylinderGeometry& g, std::size_t depth) -> void {
      if (depth == n) {
        out[slot++] = g;
        return;
      }
      for (std::size_t i = 0; i < m; ++i) self(self, g.then(ifs.geometry(i)), depth + 1);
    };
    fill(fill, ifs.geometry(first), 1);
  });
  return out;
}

void for_each_word(std::size_t m, std::size_t n, const std::function<void(const Word&)>& visit) {
  std::vector<Word::Symbol> digits(n, 0);
  while (true) {
    visit(Word(digits));
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++digits[k] < m) break;
      digits[k] = 0;
      if (k == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace favlab
