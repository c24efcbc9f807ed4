#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "favlab/geometry.hpp"
#include "favlab/similitude.hpp"
#include "favlab/word.hpp"

namespace favlab {

struct Disk {
  Vec2 center{};
  double radius{0.0};
};

/// Solves sum r_i^gamma = 1 by bisection on [0, gamma_hi], doubling gamma_hi
/// until the sum drops below one. Bracket width 1e-14.
double similarity_dimension(std::span<const double> ratios);

/// Disk centred at the fixed point of the first map with radius
/// max_i |F_i(c) - c| / (1 - r_i); every F_i maps it into itself.
Disk enclosing_disk(std::span<const Similitude> maps);

/// An iterated function system of planar similitudes, with its similarity
/// dimension and an invariant convex body (a disk, optionally refined by a
/// certified polygon).
class Ifs {
 public:
  explicit Ifs(std::vector<Similitude> maps);

  std::size_t size() const noexcept { return maps_.size(); }
  const Similitude& map(std::size_t i) const { return maps_.at(i); }
  /// Single-symbol geometry, cached.
  const CylinderGeometry& geometry(std::size_t i) const noexcept { return unit_[i]; }
  std::span<const Similitude> maps() const noexcept { return maps_; }

  double dimension() const noexcept { return gamma_; }
  double min_ratio() const noexcept { return r_min_; }
  double max_ratio() const noexcept { return r_max_; }
  const Disk& disk() const noexcept { return disk_; }
  /// D = 2 R0, an upper bound for diam E.
  double diameter_bound() const noexcept { return 2.0 * disk_.radius; }

  bool homogeneous(double tolerance = 1e-12) const noexcept;
  /// First orientation-reversing map, if any.
  std::optional<Word::Symbol> reflector() const noexcept;

  /// Optional polygon P with F_i(P) inside P for every i; empty means the disk
  /// is the convex body.
  const std::vector<Vec2>& hull() const noexcept { return hull_; }
  bool has_hull() const noexcept { return !hull_.empty(); }
  /// Returns a copy using `polygon` as convex body. Throws
  /// Errc::verification_failed unless the polygon is invariant.
  Ifs with_hull(std::vector<Vec2> polygon) const;

  /// Throws Errc::symbol_out_of_range for symbols outside the alphabet.
  void check(const Word& u) const;

 private:
  std::vector<Similitude> maps_;
  std::vector<CylinderGeometry> unit_;
  double gamma_{0.0};
  double r_min_{1.0};
  double r_max_{0.0};
  Disk disk_{};
  std::vector<Vec2> hull_;
};

/// Composed map parameters of F_u. Empty word gives the identity.
CylinderGeometry compose(const Ifs& ifs, const Word& u);

struct PiPoint {
  Vec2 point{};
  /// Truncation bound D * r_u * r_w for the anchor prefix w actually used.
  double error_radius{0.0};
  /// Floating point rounding estimate in absolute coordinates.
  double rounding{0.0};
};

/// Approximates Pi(u . anchor) = F_u(Pi(anchor)). The anchor is unrolled until
/// its composed ratio falls below 1e-12.
PiPoint pi_point(const Ifs& ifs, const Word& u, const TailWord& anchor);

/// mu([u]) = r_u^gamma.
double mu_mass(const Ifs& ifs, const Word& u);
double log_mu_mass(const Ifs& ifs, const Word& u);

/// The band C_r: words s with r * r_min < r_s <= r, depth-first lexicographic.
std::vector<Word> mass_band(const Ifs& ifs, double r, std::size_t cap = std::size_t{1} << 24);

/// m^n, or nullopt if it exceeds `cap`.
std::optional<std::size_t> level_size(std::size_t m, std::size_t n, std::size_t cap);

/// Geometries of all words of length n in lexicographic order. Built in
/// parallel over depth-one subtrees; the output order is fixed.
/// Throws Errc::level_too_large if m^n > cap.
std::vector<CylinderGeometry> level_geometries(const Ifs& ifs, std::size_t n,
                                               std::size_t cap = std::size_t{1} << 24);

/// Invokes `visit` on every word of length n, lexicographically.
void for_each_word(std::size_t m, std::size_t n, const std::function<void(const Word&)>& visit);

}  // namespace favlab
