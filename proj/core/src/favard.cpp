#include "favlab/favard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "favlab/error.hpp"
#include "favlab/parallel.hpp"

namespace favlab {

IntervalSet IntervalSet::merge(std::vector<Interval> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalSet out;
  for (const auto& p : pieces) {
    if (!out.intervals_.empty() && p.lo <= out.intervals_.back().hi) {
      out.intervals_.back().hi = std::max(out.intervals_.back().hi, p.hi);
    } else {
      out.intervals_.push_back(p);
    }
  }
  for (const auto& iv : out.intervals_) out.total_ += iv.hi - iv.lo;
  return out;
}

Interval cylinder_interval(const CylinderGeometry& geom, double theta, const Disk& disk) {
  const double c = project(geom(disk.center), theta);
  const double half = geom.ratio() * disk.radius;
  return {c - half, c + half};
}

Interval cylinder_interval(const CylinderGeometry& geom, double theta, std::span<const Vec2> polygon) {
  // <F_u(p), e> = <t_u, e> + r_u <p, pullback>
  const Vec2 w = geom.pullback(theta);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : polygon) {
    const double v = dot(p, w);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double base = project(geom.shift, theta);
  const double r = geom.ratio();
  return {base + r * lo, base + r * hi};
}

LevelCover::LevelCover(const Ifs& ifs, std::size_t n, std::size_t cap) : n_(n) {
  auto geoms = level_geometries(ifs, n, cap);
  if (ifs.has_hull()) {
    polygon_ = ifs.hull();
    geoms_ = std::move(geoms);
    centers_.resize(geoms_.size());
    return;
  }
  const Disk& disk = ifs.disk();
  centers_.reserve(geoms.size());
  radii_.reserve(geoms.size());
  for (const auto& g : geoms) {
    centers_.push_back(g(disk.center));
    radii_.push_back(g.ratio() * disk.radius);
  }
}

std::vector<Interval> LevelCover::pieces(double theta) const {
  std::vector<Interval> out(centers_.size());
  if (!polygon_.empty()) {
    for (std::size_t i = 0; i < geoms_.size(); ++i) out[i] = cylinder_interval(geoms_[i], theta, polygon_);
    return out;
  }
  const Vec2 e = unit(theta);
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double c = dot(centers_[i], e);
    out[i] = {c - radii_[i], c + radii_[i]};
  }
  return out;
}

std::pair<double, IntervalSet> level_projection_length(const Ifs& ifs, std::size_t n, double theta,
                                                       std::size_t cap) {
  auto set = LevelCover(ifs, n, cap).project(theta);
  const double len = set.total_length();
  return {len, std::move(set)};
}

double neighborhood_projection_length(const Ifs& ifs, double rho, double theta, std::size_t cap) {
  if (!(rho > 0.0)) throw Error(Errc::invalid_argument, "rho must be positive");
  std::vector<Word> band;
  if (rho >= 1.0) {
    band.push_back(Word{});
  } else {
    const auto n = static_cast<std::size_t>(std::ceil(std::log(rho) / std::log(ifs.min_ratio()) - 1e-12));
    if (!level_size(ifs.size(), n, cap)) {
      throw Error(Errc::rho_too_small, "rho " + std::to_string(rho) + " needs level " + std::to_string(n));
    }
    band = mass_band(ifs, rho, cap);
  }
  std::vector<Interval> pieces;
  pieces.reserve(band.size());
  const Disk& disk = ifs.disk();
  for (const auto& w : band) {
    const auto g = compose(ifs, w);
    Interval iv = ifs.has_hull() ? cylinder_interval(g, theta, std::span<const Vec2>(ifs.hull()))
                                 : cylinder_interval(g, theta, disk);
    pieces.push_back({iv.lo - rho, iv.hi + rho});
  }
  return IntervalSet::merge(std::move(pieces)).total_length();
}

FavardResult favard(const LevelCover& cover, std::size_t angles) {
  if (angles == 0) throw Error(Errc::invalid_argument, "need at least one angle");
  FavardResult out;
  out.n = cover.level();
  out.thetas.resize(angles);
  out.lengths.resize(angles);
  const double step = kPi / static_cast<double>(angles);
  for (std::size_t j = 0; j < angles; ++j) out.thetas[j] = (static_cast<double>(j) + 0.5) * step;
  parallel_for(angles, [&](std::size_t j) { out.lengths[j] = cover.length(out.thetas[j]); });
  double sum = 0.0;
  for (double len : out.lengths) {
    sum += len;
    out.max_length = std::max(out.max_length, len);
  }
  out.favard = sum * step;
  return out;
}

FavardResult favard(const Ifs& ifs, std::size_t n, std::size_t angles) {
  return favard(LevelCover(ifs, n), angles);
}

int log_star(double x) {
  if (!(x > 0.0)) throw Error(Errc::invalid_argument, "log_star needs x > 0");
  int k = 0;
  // the slack absorbs rounding in exp/log round trips such as x = e^e
  while (x > 1.0 + 1e-12) {
    x = std::log(x);
    ++k;
  }
  return k;
}

int log_star_of_log(double log_x) {
  if (std::isinf(log_x) && log_x > 0) throw Error(Errc::range, "log_star of an infinite argument");
  if (log_x <= 1e-12) return 0;
  return 1 + log_star(log_x);
}

double schedule_constant_B(std::size_t m, double k, double d, double delta) {
  return std::numbers::ln2 / ((1.0 + delta) * k * (d + 1.0) * std::log(static_cast<double>(m)));
}

FavardSchedule schedule(const Ifs& ifs, std::size_t n, double c1, double k, double d, double delta) {
  if (!ifs.homogeneous()) throw Error(Errc::non_homogeneous, "schedule needs a common ratio");
  if (!(c1 > 0 && k > 0 && d > 0 && delta > 0)) throw Error(Errc::invalid_argument, "parameters must be positive");
  FavardSchedule s;
  s.c1 = c1;
  s.k = k;
  s.d = d;
  s.delta = delta;
  s.n = n;
  s.m = ifs.size();
  s.log_r = std::log(ifs.map(0).ratio());
  const double log_m = std::log(static_cast<double>(s.m));
  s.log_s_n = std::log(2.0 * c1) + (d + 1.0) * k * static_cast<double>(n) * log_m;
  s.s_n = std::exp(s.log_s_n);
  s.log_L_n = s.s_n * log_m + 2.0 * s.log_s_n;
  s.log_neg_log_rho = s.log_L_n + std::log(-s.log_r);
  // s_n (1 + log m) >= s_n log m + 2 log s_n + log(-log r), cancelled in log space
  s.inequality_holds = std::isinf(s.s_n) || s.s_n >= 2.0 * s.log_s_n + std::log(-s.log_r);
  s.B = schedule_constant_B(s.m, k, d, delta);
  return s;
}

std::size_t schedule_threshold(const Ifs& ifs, std::size_t n_max, double c1, double k, double d, double delta) {
  std::size_t first = 0;
  for (std::size_t n = n_max; n >= 1; --n) {
    if (!schedule(ifs, n, c1, k, d, delta).inequality_holds) break;
    first = n;
  }
  return first;
}

DecayFit fit_decay(std::span<const DecaySample> samples) {
  DecayFit fit;
  for (const auto& s : samples) {
    if (s.n >= 3.0) {
      if (!(s.length > 0.0)) throw Error(Errc::invalid_argument, "lengths must be positive");
      fit.samples.push_back(s);
    }
  }
  const auto count = fit.samples.size();
  if (count < 3) throw Error(Errc::degenerate_fit, "need at least 3 samples with n >= 3");
  double mx = 0.0, my = 0.0;
  for (const auto& s : fit.samples) {
    mx += std::log(std::log(s.n));
    my += std::log(s.length);
  }
  mx /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& s : fit.samples) {
    const double dx = std::log(std::log(s.n)) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(s.length) - my);
  }
  if (!(sxx > 0.0)) throw Error(Errc::degenerate_fit, "sample n values have zero variance");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  fit.A_hat = std::exp(intercept);
  fit.B_hat = -slope;
  for (const auto& s : fit.samples) {
    const double e = std::log(s.length) - (intercept + slope * std::log(std::log(s.n)));
    fit.residual += e * e;
  }
  return fit;
}

BoundCurves bound_curves(const FavardSchedule& sched, double c_low, double C_ls, double a_ls,
                         std::span<const std::size_t> grid, double A) {
  if (!(c_low > 0 && C_ls > 0 && a_ls > 0 && A > 0)) throw Error(Errc::invalid_argument, "constants must be positive");
  BoundCurves out;
  for (std::size_t n : grid) {
    if (n < 2) throw Error(Errc::invalid_argument, "grid starts at n = 2");
    const double dn = static_cast<double>(n);
    out.grid.push_back(n);
    out.lower.push_back(c_low / dn);
    out.log_star.push_back(C_ls * std::exp(-a_ls * log_star_of_log(-sched.log_r * dn)));
    out.theorem.push_back(A / std::pow(std::log(dn), sched.B));
  }
  return out;
}

}  // namespace favlab
