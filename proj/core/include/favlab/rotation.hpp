#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "favlab/word.hpp"

namespace favlab {

class Ifs;

/// 50 decimal digits; enough headroom for 30-digit rational approximations.
using Real = boost::multiprecision::cpp_bin_float_50;

struct NetResult {
  std::size_t p{0};
  double max_gap{0.0};
  /// p * eps^(d+1); bounded in eps for a (c,d)-Diophantine rotation.
  double c1_hat{0.0};
};

/// Largest circular gap between consecutive angles (sorted internally).
double max_circular_gap(std::vector<double> angles);

/// Smallest p <= p_max such that {k * theta1 mod 2pi : k = 1..p} has maximal
/// circular gap below eps. Throws Errc::no_net_within_bound otherwise.
NetResult epsilon_net(double theta1, double eps, std::size_t p_max, double d = 2.0);

struct Approximation {
  std::int64_t n{0};
  std::int64_t m{0};
  double residual{0.0};
};

/// Smallest 1 <= N <= ceil(1/eps) with |N alpha - M| < eps, M nearest to N alpha.
Approximation pigeonhole_approx(double alpha, double eps);

struct Convergent {
  std::int64_t n{0};  ///< denominator
  std::int64_t m{0};  ///< numerator
  double residual{0.0};
};

struct DiophProfile {
  std::vector<Convergent> convergents;
  double d{0.0};
  /// min over convergents of |N alpha - M| * N^d.
  double c_hat{0.0};
  /// Same minimum restricted to the tail N >= sqrt(N_max); estimates the liminf.
  double tail_c_hat{0.0};
  /// max over tail convergents (N >= max(2, sqrt(N_max))) of -log|N alpha - M| / log N.
  double d_hat{0.0};
};

/// Continued-fraction profile of alpha up to denominator n_max, computed with
/// exact integers on a 30-significant-digit rational approximation. A residual
/// at the input's precision counts as zero: Errc::rational_alpha.
DiophProfile diophantine_profile(const Real& alpha, std::int64_t n_max, double d, double precision = 1e-30);
DiophProfile diophantine_profile(double alpha, std::int64_t n_max, double d);

/// Suffix t with O_{base t} = +1 and |theta_{base t} - phi| < eps: at most p
/// copies of `a_word` (p from epsilon_net), preceded by one reflecting symbol
/// when O_base = -1. The empty word when base already qualifies.
Word steering_suffix(const Ifs& ifs, const Word& base, double phi, double eps, const Word& a_word,
                     std::size_t p_max = 1'000'000);

/// First word (by length, then lexicographically, up to `max_length`) with
/// O = +1 whose angle orbit forms an eps-net within p_max steps.
Word steering_word(const Ifs& ifs, double eps, std::size_t p_max = 1'000'000, std::size_t max_length = 3);

/// A word a with O_a = +1 and 0 < |theta_a| < eps, built as a power of
/// steering_word(). Throws Errc::no_net_within_bound if none is found.
Word small_rotation(const Ifs& ifs, double eps, std::size_t p_max = 1'000'000);

/// Largest sigma with every value within tol of an integer multiple of sigma,
/// found by scanning integer relations q v_i ~ p v_min with q <= 1e6.
std::optional<double> sigma_arithmetic(std::span<const double> values, double tol);

}  // namespace favlab
