#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "favlab/word.hpp"

namespace favlab {

class Ifs;

using BigInt = boost::multiprecision::cpp_int;

struct RemovalTrace {
  std::vector<double> masses;  ///< mu(Omega_0) = 1, mu(Omega_1), ...
  /// one entry per step: the mass removed, sum over v of mu([v t_v target])
  std::vector<double> removed;
  double c{0.0};               ///< r_min^(gamma N0) mu([target])
  std::size_t block_bound{0};  ///< N0, the a priori bound on |t_v|
  std::size_t longest_suffix{0};
  std::size_t depth{0};        ///< longest surviving cylinder word
  std::vector<Word> survivors;  ///< cylinders partitioning Omega_steps
  Word steering;               ///< the word a whose powers steer
};

/// Omega_{i+1} = Omega_i minus the union over v in S_i of [v t_v target], where
/// S_0 is the alphabet, S_i partitions Omega_i into cylinders and t_v steers
/// theta_{v t_v} to within eps of phi. Masses are summed over the survivors.
/// Throws Errc::enumeration_cap when the survivor list outgrows `cap`.
RemovalTrace removal_recursion(const Ifs& ifs, const Word& target, double phi, double eps, std::size_t steps,
                               std::size_t cap = std::size_t{1} << 22);

struct AvoidanceCount {
  BigInt exact;  ///< dynamic programme over (position, still-matching) states
  BigInt bound;  ///< (m^s - 1)^blocks
  std::optional<BigInt> brute;  ///< full enumeration when m^L <= 2^24
  /// log of m^L (1 - m^-s)^(m^s s) and of m^L e^-s
  double log_relaxed{0.0};
  double log_e_bound{0.0};
  bool relaxation_holds{false};
};

/// Words of length L = blocks * s in which block k never equals the
/// designated word f_k (symbol j of f_k is (k + j) mod m).
/// Throws Errc::range for m < 2, s < 1, blocks < 1 or L > 4096.
AvoidanceCount avoidance_count(std::size_t m, std::size_t s, std::size_t blocks);

struct H2Bound {
  double value{0.0};  ///< #G2 * 3 r^L
  double limit{0.0};  ///< 3 e^-s
  bool within{false};
};

/// Requires r = 1/m.
H2Bound h2_length_bound(std::size_t m, std::size_t s, std::size_t blocks, double r);

}  // namespace favlab
