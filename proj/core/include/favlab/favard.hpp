#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "favlab/geometry.hpp"
#include "favlab/ifs.hpp"
#include "favlab/similitude.hpp"

namespace favlab {

struct Interval {
  double lo{0.0};
  double hi{0.0};
};

/// Sorted, pairwise disjoint, non-touching intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Sort-and-sweep union; touching or overlapping intervals are joined.
  static IntervalSet merge(std::vector<Interval> pieces);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  double total_length() const noexcept { return total_; }

 private:
  std::vector<Interval> intervals_;
  double total_{0.0};
};

/// Projection of F_u(disk) onto l_theta: the centre projection plus or minus r_u R0.
Interval cylinder_interval(const CylinderGeometry& geom, double theta, const Disk& disk);
/// Projection of F_u(P) for a convex polygon P.
Interval cylinder_interval(const CylinderGeometry& geom, double theta, std::span<const Vec2> polygon);

/// Level-n cover C_n = union of F_u(C), |u| = n, prepared once and projected
/// at any angle. C is the polygon hull when the system has one, else the disk.
class LevelCover {
 public:
  LevelCover(const Ifs& ifs, std::size_t n, std::size_t cap = std::size_t{1} << 24);

  std::size_t level() const noexcept { return n_; }
  std::size_t size() const noexcept { return centers_.size(); }
  std::vector<Interval> pieces(double theta) const;
  IntervalSet project(double theta) const { return IntervalSet::merge(pieces(theta)); }
  double length(double theta) const { return project(theta).total_length(); }

 private:
  std::size_t n_{0};
  std::vector<Vec2> centers_;  // F_u(disk centre), disk mode only
  std::vector<double> radii_;  // r_u R0, disk mode only
  std::vector<CylinderGeometry> geoms_;  // polygon mode only
  std::vector<Vec2> polygon_;
};

/// Length of the projection of C_n onto l_theta, with the merged intervals.
std::pair<double, IntervalSet> level_projection_length(const Ifs& ifs, std::size_t n, double theta,
                                                       std::size_t cap = std::size_t{1} << 24);

/// Merged length of the band-rho cylinder intervals, each padded by rho on
/// both sides. Throws Errc::rho_too_small when m^ceil(log rho / log r_min)
/// exceeds `cap`.
double neighborhood_projection_length(const Ifs& ifs, double rho, double theta,
                                      std::size_t cap = std::size_t{1} << 24);

struct FavardResult {
  std::size_t n{0};
  std::vector<double> thetas;   ///< (j + 1/2) pi / K
  std::vector<double> lengths;  ///< projection length at each theta
  double favard{0.0};           ///< midpoint-rule integral over [0, pi)
  double max_length{0.0};
};

/// Angles are processed in parallel, each angle sequentially, so the result
/// does not depend on the worker count.
FavardResult favard(const Ifs& ifs, std::size_t n, std::size_t angles);
FavardResult favard(const LevelCover& cover, std::size_t angles);

/// min k >= 0 such that the k-fold natural log of x is <= 1.
int log_star(double x);
/// log_star(exp(log_x)), for arguments too large for a double.
int log_star_of_log(double log_x);

struct FavardSchedule {
  double c1{0.0};
  double k{0.0};
  double d{0.0};
  double delta{0.0};
  std::size_t n{0};
  std::size_t m{0};
  double log_r{0.0};
  double log_s_n{0.0};  ///< log(2 c1) + (d + 1) k n log m
  double s_n{0.0};      ///< may be +inf
  double log_L_n{0.0};  ///< s_n log m + 2 log s_n
  double log_neg_log_rho{0.0};  ///< log L_n + log(-log r)
  double B{0.0};
  /// s_n (1 + log m) >= log(-log rho_n)
  bool inequality_holds{false};
};

/// Throws Errc::non_homogeneous unless all ratios agree.
FavardSchedule schedule(const Ifs& ifs, std::size_t n, double c1, double k, double d, double delta);
double schedule_constant_B(std::size_t m, double k, double d, double delta);
/// Smallest n in [1, n_max] from which the schedule inequality holds for all
/// n up to n_max, or 0 if it fails at n_max.
std::size_t schedule_threshold(const Ifs& ifs, std::size_t n_max, double c1, double k, double d, double delta);

struct DecaySample {
  double n{0.0};
  double length{0.0};
};

struct DecayFit {
  std::vector<DecaySample> samples;  ///< the samples used, n >= 3
  double A_hat{0.0};
  double B_hat{0.0};
  double residual{0.0};  ///< sum of squared log residuals
};

/// Least squares of log(length) on log(log n) over samples with n >= 3.
/// Throws Errc::degenerate_fit on fewer than 3 such samples or zero variance.
DecayFit fit_decay(std::span<const DecaySample> samples);

struct BoundCurves {
  std::vector<std::size_t> grid;
  std::vector<double> lower;     ///< c_low / n
  std::vector<double> log_star;  ///< C_ls exp(-a_ls log_*(1/rho_n)), rho_n = r^n
  std::vector<double> theorem;   ///< A / (log n)^B
};

BoundCurves bound_curves(const FavardSchedule& sched, double c_low, double C_ls, double a_ls,
                         std::span<const std::size_t> grid, double A);

}  // namespace favlab
