#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "favlab/word.hpp"

namespace favlab {

class Ifs;

enum class Verdict { pass, fail, indeterminate };

/// Outcome of checking conditions (i)-(iii) of (eps, theta)-relative closeness
/// for one pair of words.
struct RelCloseReport {
  Verdict verdict{Verdict::fail};
  double ratio_gap{0.0};     ///< |log(r_u / r_v)|
  double angle_gap{0.0};     ///< circular |theta_u - theta_v|
  bool same_orientation{true};
  double offset{0.0};        ///< |Pi_theta(u w) - Pi_theta(v w)| / (D min(r_u, r_v))
  double offset_error{0.0};  ///< numeric error bound on `offset`, same units
  /// eps minus the residual of each condition; positive means satisfied.
  double slack_i{0.0};
  double slack_ii{0.0};
  double slack_iii{0.0};

  bool passed() const noexcept { return verdict == Verdict::pass; }
};

/// Evaluates the three conditions directly. Condition (iii) is computed after
/// stripping the common prefix of u and v, and is only judged when its error
/// bound is below 1% of the threshold; otherwise the verdict is indeterminate.
RelCloseReport check_relclose(const Ifs& ifs, const Word& u, const Word& v, double eps, double theta,
                              const TailWord& omega);

using PairIndex = std::pair<std::size_t, std::size_t>;

struct PairSlack {
  double ratio{0.0};
  double angle{0.0};
  double offset{0.0};
};

struct Provenance {
  std::string construction;
  std::optional<double> eps1;
  std::optional<double> eps2;
  /// The two upper bounds eps2 must stay below: min{e^{-eps/6}(eps/3 - eps1) r_min, eps/6}
  /// and the root of |1 - e^x| + x = (eps/3) r_min.
  std::optional<double> eps2_bound_a;
  std::optional<double> eps2_bound_b;
  std::optional<std::size_t> band_depth;
  std::optional<double> sigma;
  std::string steering_word;
  std::size_t steering_steps{0};
};

/// A family of mutually (eps, theta)-relatively close words together with the
/// tail used for each pair and the slacks found when it was verified.
struct RelCloseCertificate {
  std::vector<Word> words;
  double eps{0.0};
  double theta{0.0};
  std::map<PairIndex, TailWord> omegas;
  std::map<PairIndex, PairSlack> slacks;
  Provenance provenance;

  /// A single word is trivially a family.
  static RelCloseCertificate singleton(Word word, double theta = 0.0);

  /// Throws std::out_of_range for a missing pair.
  const TailWord& omega(std::size_t i, std::size_t j) const;
  std::size_t pair_count() const noexcept { return words.size() * (words.size() - 1) / 2; }
};

/// Re-checks every pair of the certificate; returns the reports in pair order.
std::vector<RelCloseReport> verify_certificate(const Ifs& ifs, const RelCloseCertificate& cert);
bool certificate_valid(const Ifs& ifs, const RelCloseCertificate& cert);

struct PairBudget {
  std::size_t max_depth{12};             ///< deepest mass band r_min^k scanned
  std::size_t max_band_words{std::size_t{1} << 22};
  std::size_t max_net{1'000'000};        ///< p_max for steering nets
};

/// Searches for distinct u, v and theta satisfying (i)-(iii) at eps plus
/// (iv) |phi(theta) - theta_u|, |phi(theta) - theta_v| < eps and
/// (v) coincidence of Pi_theta(u w), Pi_theta(v w) to 1e-9 D min(r_u, r_v).
RelCloseCertificate find_pair(const Ifs& ifs, double eps, const std::function<double(double)>& phi,
                              const PairBudget& budget = {});

/// Doubles a family verified at eps1 < eps/6 into 2N words verified at eps.
/// Never returns an unverified family (Errc::verification_failed).
RelCloseCertificate double_family(const Ifs& ifs, const RelCloseCertificate& cert, double eps,
                                  const PairBudget& budget = {});

/// Seed pair followed by `levels` doublings, ending at eps; eps shrinks by a
/// factor 0.15 per level going backwards so each step meets eps1 < eps/6.
std::vector<RelCloseCertificate> doubling_chain(const Ifs& ifs, double eps, std::size_t levels,
                                                const PairBudget& budget = {});

/// All 2^n words of length k n built from blocks u, v (non-rotating, equal
/// length), with omega = u u u ... and theta perpendicular to
/// Pi(u omega) Pi(v omega). Every pair is verified at `eps`.
RelCloseCertificate power_family(const Ifs& ifs, const Word& u, const Word& v, std::size_t n,
                                 double eps = 1e-6);

}  // namespace favlab
