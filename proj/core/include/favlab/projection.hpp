#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "favlab/geometry.hpp"
#include "favlab/relclose.hpp"
#include "favlab/word.hpp"

namespace favlab {

class Ifs;

struct Atom {
  double position{0.0};
  double weight{0.0};
  double error{0.0};  ///< positional error bound D * r_u
};

/// Discretisation of the projected measure mu_theta at a fixed level: one
/// atom per word of length `level`, sorted by position.
struct AtomicMeasure {
  std::vector<Atom> atoms;
  double total{0.0};
  std::size_t level{0};
};

/// Atoms at Pi_theta(u 1 1 1 ...) with weight r_u^gamma for every |u| = n.
/// Throws Errc::level_too_large when m^n exceeds `cap`.
AtomicMeasure level_measure(const Ifs& ifs, double theta, std::size_t n, std::size_t cap = std::size_t{1} << 22);

/// mu_theta(B(x, r)) / (2r)^gamma for each radius, using level-n atoms.
/// Throws Errc::resolution_too_coarse unless every atom error is below
/// min(radii) / 100.
std::vector<double> density_profile(const Ifs& ifs, double theta, double x, std::span<const double> radii,
                                    std::size_t n);

/// A ball B(x, b) on l_theta collecting the N cylinders s u_1, ..., s u_N of a
/// relatively close family, where s steers theta_s + theta_0 to theta.
struct DensityWitness {
  Word steering;
  double x{0.0};  ///< Pi_theta(s u_1 1 1 1 ...)
  double b{0.0};  ///< 5 D r_{s u_1}; may underflow to 0, see log_b
  double log_b{0.0};
  double ratio{0.0};  ///< sum_i mu([s u_i]) / (2b)^gamma
  double bound{0.0};  ///< N / (10 D e)^gamma
  /// max_i of the distance from x to the far end of the projected cylinder
  /// [s u_i], in units of D r_{s u_1}; the containment chain predicts <= 3.
  double containment_factor{0.0};
  /// every projected point Pi_theta(s u_i 1 1 1 ...) lies in B(x, b)
  bool points_inside{false};
  /// every projected cylinder disk lies in B(x, b)
  bool cylinders_inside{false};
};

DensityWitness density_witness(const Ifs& ifs, const RelCloseCertificate& cert, double theta,
                               std::size_t p_max = 1'000'000);

/// Direction of x seen from a, in [0, 2pi). Throws Errc::center_hit when
/// |x - a| < 1e-12.
double radial_project(Vec2 x, Vec2 a);

struct VisibilityEstimate {
  /// sum over merged arc components of min(len^s, sum of member arc^s)
  double covering_sum{0.0};
  double max_arc{0.0};  ///< the scale delta of the cover
  std::size_t arcs{0};
  std::size_t components{0};
  bool center_inside{false};  ///< a lies strictly inside the enclosing disk
  std::size_t excluded{0};    ///< cylinders dropped at the exclusion level
  double excluded_mass{0.0};
};

/// Covers pi_a(C_n) by the arcs pi_a(F_u(disk)), |u| = n. Cylinders whose
/// disk at `exclusion_level` (default n) comes within 1e-9 of a are dropped
/// with their whole subtree and reported; a fixed exclusion level keeps the
/// covers nested as n grows.
VisibilityEstimate visibility_estimate(const Ifs& ifs, Vec2 a, double s, std::size_t n,
                                       std::optional<std::size_t> exclusion_level = std::nullopt);

}  // namespace favlab
