#pragma once
// Independent reference computations for the tests. Nothing here calls the
// library's composition, coding map or merge code; only the raw map
// parameters are read from the Ifs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "favlab/config.hpp"
#include "favlab/ifs.hpp"
#include "favlab/word.hpp"

namespace oracle {

using Real = long double;

inline favlab::Ifs config(const std::string& name) {
  return favlab::load_ifs(std::string(FAVLAB_CONFIG_DIR) + "/" + name);
}

/// z -> A z + t with A = [[a, b], [c, d]].
struct Affine {
  Real a{1}, b{0}, c{0}, d{1}, tx{0}, ty{0};

  static Affine of(const favlab::Similitude& f) {
    const Real r = f.ratio();
    const Real th = f.angle();
    const Real o = f.orientation();
    return {r * std::cos(th), -o * r * std::sin(th), r * std::sin(th), o * r * std::cos(th), f.shift().x,
            f.shift().y};
  }
  // (*this) o g
  Affine after(const Affine& g) const {
    return {a * g.a + b * g.c, a * g.b + b * g.d, c * g.a + d * g.c, c * g.b + d * g.d,
            a * g.tx + b * g.ty + tx, c * g.tx + d * g.ty + ty};
  }
  void apply(Real& x, Real& y) const {
    const Real nx = a * x + b * y + tx;
    y = c * x + d * y + ty;
    x = nx;
  }
  Real det() const { return a * d - b * c; }
  Real ratio() const { return std::sqrt(std::abs(det())); }
  int orientation() const { return det() > 0 ? 1 : -1; }
  Real angle() const {
    Real t = std::atan2(c, a);
    if (t < 0) t += 2 * static_cast<Real>(M_PI);
    return t;
  }
};

inline Affine word_map(const favlab::Ifs& ifs, const favlab::Word& u) {
  Affine g;
  for (auto s : u) g = g.after(Affine::of(ifs.map(s)));
  return g;
}

/// Pi(u . tail) by applying the first |u| + depth symbols to the origin,
/// innermost first.
inline void pi(const favlab::Ifs& ifs, const favlab::Word& u, const favlab::TailWord& tail, Real& x, Real& y,
               std::size_t depth = 80) {
  std::vector<std::size_t> seq(u.begin(), u.end());
  for (std::size_t i = 0; i < depth; ++i) seq.push_back(tail.at(i));
  x = 0;
  y = 0;
  for (std::size_t k = seq.size(); k-- > 0;) Affine::of(ifs.map(seq[k])).apply(x, y);
}

/// Newton iteration on sum r^g = 1, started from the bisection-free guess 1.
inline Real dimension(const std::vector<double>& ratios) {
  Real g = 1;
  for (int it = 0; it < 200; ++it) {
    Real f = -1, df = 0;
    for (double r : ratios) {
      const Real p = std::pow(static_cast<Real>(r), g);
      f += p;
      df += p * std::log(static_cast<Real>(r));
    }
    const Real step = f / df;
    g -= step;
    if (std::abs(step) < 1e-18L) break;
  }
  return g;
}

struct Piece {
  double lo, hi;
};

/// Length of a union of intervals by marking grid cells whose centre lies in
/// some interval: `cells` cells over [min lo, max hi].
inline double raster_length(const std::vector<Piece>& pieces, std::size_t cells = std::size_t{1} << 20) {
  double lo = pieces.front().lo, hi = pieces.front().hi;
  for (const auto& p : pieces) {
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
  }
  const double h = (hi - lo) / static_cast<double>(cells);
  std::vector<int> diff(cells + 1, 0);
  for (const auto& p : pieces) {
    // cell k has centre lo + (k + 1/2) h
    const double first = std::ceil((p.lo - lo) / h - 0.5);
    const double last = std::floor((p.hi - lo) / h - 0.5);
    if (last < first) continue;
    const auto f = static_cast<std::size_t>(std::max(0.0, first));
    const auto l = static_cast<std::size_t>(std::min(static_cast<double>(cells - 1), last));
    ++diff[f];
    --diff[l + 1];
  }
  std::size_t marked = 0;
  int run = 0;
  for (std::size_t k = 0; k < cells; ++k) {
    run += diff[k];
    marked += run > 0 ? 1 : 0;
  }
  return static_cast<double>(marked) * h;
}

/// Maximal runs of marked cells, as [first cell lo edge, last cell hi edge].
inline std::vector<Piece> raster_runs(const std::vector<Piece>& pieces, std::size_t cells = std::size_t{1} << 20) {
  double lo = pieces.front().lo, hi = pieces.front().hi;
  for (const auto& p : pieces) {
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
  }
  const double h = (hi - lo) / static_cast<double>(cells);
  std::vector<int> diff(cells + 1, 0);
  for (const auto& p : pieces) {
    const double first = std::ceil((p.lo - lo) / h - 0.5);
    const double last = std::floor((p.hi - lo) / h - 0.5);
    if (last < first) continue;
    ++diff[static_cast<std::size_t>(std::max(0.0, first))];
    --diff[static_cast<std::size_t>(std::min(static_cast<double>(cells - 1), last)) + 1];
  }
  std::vector<Piece> runs;
  int run = 0;
  bool open = false;
  for (std::size_t k = 0; k < cells; ++k) {
    run += diff[k];
    const double left = lo + static_cast<double>(k) * h;
    if (run > 0 && !open) {
      runs.push_back({left, left + h});
      open = true;
    } else if (run > 0) {
      runs.back().hi = left + h;
    } else {
      open = false;
    }
  }
  return runs;
}

inline double cell_width(const std::vector<Piece>& pieces, std::size_t cells = std::size_t{1} << 20) {
  double lo = pieces.front().lo, hi = pieces.front().hi;
  for (const auto& p : pieces) {
    lo = std::min(lo, p.lo);
    hi = std::max(hi, p.hi);
  }
  return (hi - lo) / static_cast<double>(cells);
}

/// Joins neighbours closer than `gap`, for comparing against a grid.
template <class T>
std::vector<Piece> coalesce(const std::vector<T>& in, double gap) {
  std::vector<Piece> out;
  for (const auto& p : in) {
    if (!out.empty() && p.lo - out.back().hi <= gap) {
      out.back().hi = std::max(out.back().hi, p.hi);
    } else {
      out.push_back({p.lo, p.hi});
    }
  }
  return out;
}

/// m = 2, r = 1/2: map 1 turns by the golden angle, map 2 is z/2 + 1/2.
inline favlab::Ifs golden_toy() {
  return favlab::Ifs({favlab::Similitude(0.5, favlab::kPi * (std::sqrt(5.0) - 1), 1, {0, 0}),
                      favlab::Similitude(0.5, 0.0, 1, {0.5, 0})});
}

/// Follows one sequence x of the golden toy through the removal steps with
/// target word "2"; returns the step at which it is removed, or `steps`.
inline std::size_t golden_removal_step(const std::vector<int>& x, double phi, double eps, std::size_t steps) {
  const Real two_pi = 2 * static_cast<Real>(favlab::kPi);
  const Real alpha = static_cast<Real>(favlab::kPi) * (std::sqrt(5.0L) - 1);
  auto turned = [&](std::size_t zeros) {
    Real t = std::fmod(alpha * zeros - phi, two_pi);
    if (t < 0) t += two_pi;
    return std::min(t, two_pi - t);
  };
  std::size_t v = 1;  // current cylinder is x[0, v)
  for (std::size_t step = 0; step < steps; ++step) {
    std::size_t zeros = 0;
    for (std::size_t i = 0; i < v; ++i) zeros += x[i] == 0;
    std::size_t k = 0;
    while (turned(zeros + k) >= eps) ++k;
    // w = x[0, v) 1^k 2
    std::vector<int> w(x.begin(), x.begin() + static_cast<long>(v));
    w.insert(w.end(), k, 0);
    w.push_back(1);
    std::size_t j = v;
    while (j < w.size() && x[j] == w[j]) ++j;
    if (j == w.size()) return step;
    v = j + 1;
  }
  return steps;
}

/// Conditions (i)-(iii) of relative closeness from raw affine products.
inline bool relclose(const favlab::Ifs& ifs, const favlab::Word& u, const favlab::Word& v, double eps,
                     double theta, const favlab::TailWord& omega) {
  const Affine gu = word_map(ifs, u);
  const Affine gv = word_map(ifs, v);
  const Real ru = gu.ratio(), rv = gv.ratio();
  if (!(std::abs(std::log(ru / rv)) < eps)) return false;
  if (gu.orientation() != gv.orientation()) return false;
  Real dth = std::fmod(std::abs(gu.angle() - gv.angle()), 2 * static_cast<Real>(M_PI));
  dth = std::min(dth, 2 * static_cast<Real>(M_PI) - dth);
  if (!(dth < eps)) return false;
  // difference in the frame of the common prefix c, then mapped by A_c
  std::size_t k = 0;
  while (k < u.size() && k < v.size() && u[k] == v[k]) ++k;
  const Affine gc = word_map(ifs, u.prefix(k));
  Real xu, yu, xv, yv;
  pi(ifs, u.suffix_from(k), omega, xu, yu);
  pi(ifs, v.suffix_from(k), omega, xv, yv);
  const Real dx = gc.a * (xu - xv) + gc.b * (yu - yv);
  const Real dy = gc.c * (xu - xv) + gc.d * (yu - yv);
  const Real offset = std::abs(dx * std::cos(static_cast<Real>(theta)) + dy * std::sin(static_cast<Real>(theta)));
  return offset < eps * ifs.diameter_bound() * std::min(ru, rv);
}

}  // namespace oracle
