#include "favlab/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <map>
#include <set>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "favlab/error.hpp"
#include "favlab/geometry.hpp"
#include "favlab/ifs.hpp"

namespace favlab {

namespace mp = boost::multiprecision;

double max_circular_gap(std::vector<double> angles) {
  if (angles.empty()) return kTwoPi;
  for (auto& a : angles) a = normalize_angle(a);
  std::sort(angles.begin(), angles.end());
  double gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) gap = std::max(gap, angles[i] - angles[i - 1]);
  return gap;
}

NetResult epsilon_net(double theta1, double eps, std::size_t p_max, double d) {
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "net width must be positive");
  if (p_max < 1) throw Error(Errc::invalid_argument, "p_max must be at least 1");
  // gap_after[a] is the forward gap from point a to its circular successor
  std::map<double, double> gap_after;
  std::multiset<double> gaps;
  auto forward = [](double from, double to) {
    const double g = to - from;
    return g > 0.0 ? g : g + kTwoPi;
  };
  for (std::size_t p = 1; p <= p_max; ++p) {
    const double x = normalize_angle(std::fmod(static_cast<double>(p) * theta1, kTwoPi));
    if (gap_after.empty()) {
      gap_after.emplace(x, kTwoPi);
      gaps.insert(kTwoPi);
    } else if (!gap_after.contains(x)) {
      auto succ = gap_after.upper_bound(x);
      const double next = succ == gap_after.end() ? gap_after.begin()->first : succ->first;
      auto pred = succ == gap_after.begin() ? std::prev(gap_after.end()) : std::prev(succ);
      gaps.erase(gaps.find(pred->second));
      pred->second = forward(pred->first, x);
      gaps.insert(pred->second);
      const double tail = forward(x, next);
      gap_after.emplace(x, tail);
      gaps.insert(tail);
    }
    const double gap = *gaps.rbegin();
    if (gap < eps) return {p, gap, static_cast<double>(p) * std::pow(eps, d + 1.0)};
  }
  throw Error(Errc::no_net_within_bound,
              "no eps-net with eps=" + std::to_string(eps) + " within p <= " + std::to_string(p_max));
}

Approximation pigeonhole_approx(double alpha, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::invalid_argument, "eps must lie in (0,1)");
  const auto n_max = static_cast<std::int64_t>(std::ceil(1.0 / eps));
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const double x = static_cast<double>(n) * alpha;
    const double m = std::nearbyint(x);
    const double residual = std::abs(x - m);
    if (residual < eps) return {n, static_cast<std::int64_t>(m), residual};
  }
  // unreachable for finite alpha: pigeonhole guarantees a hit
  throw Error(Errc::invalid_argument, "pigeonhole approximation failed (non-finite alpha?)");
}

DiophProfile diophantine_profile(const Real& alpha, std::int64_t n_max, double d, double precision) {
  if (n_max < 2) throw Error(Errc::invalid_argument, "N_max must be at least 2");
  // 30 significant digits as an exact rational P / Q
  const Real mag = mp::abs(alpha);
  int int_digits = mag >= 1 ? static_cast<int>(mp::floor(mp::log10(mag)).convert_to<double>()) + 1 : 0;
  const int frac_digits = std::max(0, 30 - int_digits);
  const mp::cpp_int q0 = mp::pow(mp::cpp_int(10), frac_digits);
  const mp::cpp_int p0 = static_cast<mp::cpp_int>(mp::round(alpha * Real(q0)));

  DiophProfile out;
  out.d = d;
  out.c_hat = std::numeric_limits<double>::infinity();
  out.tail_c_hat = std::numeric_limits<double>::infinity();
  out.d_hat = 0.0;
  const double tail_from = std::sqrt(static_cast<double>(n_max));
  const double zero_scale = std::max(1.0, mag.convert_to<double>());

  // floor-based continued fraction of p0/q0
  mp::cpp_int num = p0;
  mp::cpp_int den = q0;
  // p_{-2} = 0, p_{-1} = 1, q_{-2} = 1, q_{-1} = 0
  mp::cpp_int p_prev = 0, p_cur = 1;
  mp::cpp_int q_prev = 1, q_cur = 0;
  while (den != 0) {
    mp::cpp_int a = num / den;
    if (num % den != 0 && num < 0) a -= 1;  // floor for negatives
    const mp::cpp_int rem = num - a * den;
    const mp::cpp_int p_next = a * p_cur + p_prev;
    const mp::cpp_int q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    num = den;
    den = rem;
    if (q_cur > n_max) break;
    if (q_cur < 1) continue;
    const Real residual_exact = mp::abs(Real(q_cur) * alpha - Real(p_cur));
    const double residual = residual_exact.convert_to<double>();
    const double n = q_cur.convert_to<double>();
    if (residual <= 4.0 * n * precision * zero_scale) {
      throw Error(Errc::rational_alpha, "alpha is rational at working precision: " +
                                            p_cur.convert_to<std::string>() + "/" +
                                            q_cur.convert_to<std::string>());
    }
    out.convergents.push_back({q_cur.convert_to<std::int64_t>(), p_cur.convert_to<std::int64_t>(), residual});
    const double scaled = residual * std::pow(n, d);
    out.c_hat = std::min(out.c_hat, scaled);
    if (n >= tail_from) out.tail_c_hat = std::min(out.tail_c_hat, scaled);
    if (n >= std::max(2.0, tail_from)) out.d_hat = std::max(out.d_hat, -std::log(residual) / std::log(n));
  }
  return out;
}

DiophProfile diophantine_profile(double alpha, std::int64_t n_max, double d) {
  return diophantine_profile(Real(alpha), n_max, d, std::numeric_limits<double>::epsilon());
}

Word steering_suffix(const Ifs& ifs, const Word& base, double phi, double eps, const Word& a_word,
                     std::size_t p_max) {
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "steering tolerance must be positive");
  CylinderGeometry g = compose(ifs, base);
  Word lead;
  if (g.orientation < 0) {
    const auto r = ifs.reflector();
    if (!r) throw Error(Errc::no_reflector_available, "O_base = -1 but no map reverses orientation");
    lead.push_back(*r);
    g = g.then(ifs.geometry(*r));
  }
  if (circular_distance(g.angle, phi) < eps) return lead;
  const CylinderGeometry ga = compose(ifs, a_word);
  if (ga.orientation < 0) throw Error(Errc::precondition_violated, "steering word must preserve orientation");
  const NetResult net = epsilon_net(ga.angle, eps, p_max);
  for (std::size_t j = 1; j <= net.p; ++j) {
    const double theta = g.angle + static_cast<double>(j) * ga.angle;
    if (circular_distance(theta, phi) < eps) return lead + a_word.power(j);
  }
  throw Error(Errc::steering_failed, "net found but no orbit point within eps of the target");
}

Word steering_word(const Ifs& ifs, double eps, std::size_t p_max, std::size_t max_length) {
  for (std::size_t len = 1; len <= max_length; ++len) {
    Word found;
    bool ok = false;
    for_each_word(ifs.size(), len, [&](const Word& w) {
      if (ok) return;
      const auto g = compose(ifs, w);
      if (g.orientation < 0 || circular_distance(g.angle, 0.0) < kAngleTolerance) return;
      try {
        epsilon_net(g.angle, eps, p_max);
        found = w;
        ok = true;
      } catch (const Error&) {
      }
    });
    if (ok) return found;
  }
  throw Error(Errc::no_net_within_bound, "no orientation-preserving word generates an eps-net");
}

Word small_rotation(const Ifs& ifs, double eps, std::size_t p_max) {
  const Word g = steering_word(ifs, eps, p_max);
  const double theta = compose(ifs, g).angle;
  for (std::size_t k = 1; k <= p_max; ++k) {
    const double t = normalize_angle(std::fmod(static_cast<double>(k) * theta, kTwoPi));
    const double dist = circular_distance(t, 0.0);
    if (dist < eps && dist > 0.0) return g.power(k);
  }
  throw Error(Errc::no_net_within_bound, "no power of the steering word rotates by less than eps");
}

std::optional<double> sigma_arithmetic(std::span<const double> values, double tol) {
  if (values.empty()) throw Error(Errc::invalid_argument, "sigma_arithmetic needs at least one value");
  for (double v : values) {
    if (!(v > 0.0)) throw Error(Errc::invalid_argument, "sigma_arithmetic expects positive values");
  }
  constexpr std::int64_t kMaxDenominator = 1'000'000;
  const double base = *std::min_element(values.begin(), values.end());
  std::int64_t lcm = 1;
  for (double v : values) {
    std::int64_t found = 0;
    for (std::int64_t q = 1; q <= kMaxDenominator; ++q) {
      const double p = std::nearbyint(static_cast<double>(q) * v / base);
      if (std::abs(static_cast<double>(q) * v - p * base) <= tol) {
        found = q;
        break;
      }
    }
    if (found == 0) return std::nullopt;
    lcm = std::lcm(lcm, found);
    if (lcm > kMaxDenominator) return std::nullopt;
  }
  const double sigma = base / static_cast<double>(lcm);
  for (double v : values) {
    if (std::abs(v - std::nearbyint(v / sigma) * sigma) > tol) return std::nullopt;
  }
  return sigma;
}

}  // namespace favlab
