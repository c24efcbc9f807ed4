#include "favlab/relclose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "favlab/error.hpp"
#include "favlab/geometry.hpp"
#include "favlab/ifs.hpp"
#include "favlab/rotation.hpp"

namespace favlab {

namespace {

/// Pi(u w) - Pi(v w) expressed in the frame of the common prefix c of u and v:
/// the absolute difference equals r_c M_c * diff.
struct StrippedDifference {
  Vec2 diff{};
  CylinderGeometry common{};
  double error{0.0};       ///< absolute error on diff (truncation + rounding)
  double log_min_ratio{0.0};  ///< log min(r_u', r_v') of the stripped words
};

StrippedDifference stripped_difference(const Ifs& ifs, const Word& u, const Word& v, const TailWord& omega) {
  const std::size_t k = common_prefix_length(u, v);
  const Word us = u.suffix_from(k);
  const Word vs = v.suffix_from(k);
  const PiPoint pu = pi_point(ifs, us, omega);
  const PiPoint pv = pi_point(ifs, vs, omega);
  StrippedDifference out;
  out.diff = pu.point - pv.point;
  out.common = compose(ifs, u.prefix(k));
  out.error = pu.error_radius + pv.error_radius + pu.rounding + pv.rounding;
  out.log_min_ratio = std::min(compose(ifs, us).log_ratio, compose(ifs, vs).log_ratio);
  return out;
}

/// Absolute direction of Pi(u w) - Pi(v w); nullopt when the points coincide
/// at working resolution.
std::optional<double> segment_direction(const Ifs& ifs, const Word& u, const Word& v, const TailWord& omega) {
  const auto sd = stripped_difference(ifs, u, v, omega);
  const double scale = ifs.diameter_bound() * std::exp(sd.log_min_ratio);
  if (norm(sd.diff) <= std::max(1e-12 * scale, 2.0 * sd.error)) return std::nullopt;
  CylinderGeometry frame = sd.common;
  frame.log_ratio = 0.0;
  const Vec2 d = frame.linear(sd.diff);
  return std::atan2(d.y, d.x);
}

double min_log_ratio(const Ifs& ifs, const std::vector<Word>& words) {
  double lr = std::numeric_limits<double>::infinity();
  for (const auto& w : words) lr = std::min(lr, compose(ifs, w).log_ratio);
  return lr;
}

/// Verifies every pair, records slacks; returns false on the first non-pass.
bool verify_and_record(const Ifs& ifs, RelCloseCertificate& cert, std::string* failure) {
  cert.slacks.clear();
  for (std::size_t i = 0; i < cert.words.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.words.size(); ++j) {
      const auto rep = check_relclose(ifs, cert.words[i], cert.words[j], cert.eps, cert.theta, cert.omega(i, j));
      if (!rep.passed()) {
        if (failure) {
          *failure = "pair (" + cert.words[i].to_string() + ", " + cert.words[j].to_string() + ") " +
                     (rep.verdict == Verdict::indeterminate ? "indeterminate" : "fails") +
                     ": slacks " + std::to_string(rep.slack_i) + ", " + std::to_string(rep.slack_ii) + ", " +
                     std::to_string(rep.slack_iii);
        }
        return false;
      }
      cert.slacks[{i, j}] = {rep.slack_i, rep.slack_ii, rep.slack_iii};
    }
  }
  return true;
}

// Root of |1 - e^x| + x = target for x >= 0 (left side increasing).
double solve_exp_bound(double target) {
  double lo = 0.0;
  double hi = target;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::expm1(mid) + mid < target) lo = mid; else hi = mid;
  }
  return lo;
}

}  // namespace

RelCloseReport check_relclose(const Ifs& ifs, const Word& u, const Word& v, double eps, double theta,
                              const TailWord& omega) {
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  const auto gu = compose(ifs, u);
  const auto gv = compose(ifs, v);
  RelCloseReport rep;
  rep.ratio_gap = std::abs(gu.log_ratio - gv.log_ratio);
  rep.same_orientation = gu.orientation == gv.orientation;
  rep.angle_gap = circular_distance(gu.angle, gv.angle);
  rep.slack_i = eps - rep.ratio_gap;
  rep.slack_ii = rep.same_orientation ? eps - rep.angle_gap : -std::numeric_limits<double>::infinity();

  const auto sd = stripped_difference(ifs, u, v, omega);
  const double scale = ifs.diameter_bound() * std::exp(sd.log_min_ratio);
  const Vec2 w = sd.common.pullback(theta);
  if (scale > 0.0) {
    rep.offset = std::abs(dot(sd.diff, w)) / scale;
    rep.offset_error = sd.error / scale;
  } else {
    // single-point attractor: every projection coincides
    rep.offset = 0.0;
    rep.offset_error = 0.0;
  }
  rep.slack_iii = eps - rep.offset;

  if (rep.slack_i <= 0.0 || rep.slack_ii <= 0.0) {
    rep.verdict = Verdict::fail;
  } else if (rep.offset_error >= 0.01 * eps) {
    rep.verdict = Verdict::indeterminate;
  } else {
    rep.verdict = rep.slack_iii > 0.0 ? Verdict::pass : Verdict::fail;
  }
  return rep;
}

RelCloseCertificate RelCloseCertificate::singleton(Word word, double theta) {
  RelCloseCertificate c;
  c.words.push_back(std::move(word));
  c.eps = 0.0;
  c.theta = normalize_angle(theta);
  c.provenance.construction = "singleton";
  return c;
}

const TailWord& RelCloseCertificate::omega(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  return omegas.at({i, j});
}

std::vector<RelCloseReport> verify_certificate(const Ifs& ifs, const RelCloseCertificate& cert) {
  std::vector<RelCloseReport> out;
  out.reserve(cert.pair_count());
  for (std::size_t i = 0; i < cert.words.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.words.size(); ++j) {
      out.push_back(check_relclose(ifs, cert.words[i], cert.words[j], cert.eps, cert.theta, cert.omega(i, j)));
    }
  }
  return out;
}

bool certificate_valid(const Ifs& ifs, const RelCloseCertificate& cert) {
  const auto reports = verify_certificate(ifs, cert);
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed(); });
}

RelCloseCertificate find_pair(const Ifs& ifs, double eps, const std::function<double(double)>& phi,
                              const PairBudget& budget) {
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  const double half = 0.5 * eps;

  std::vector<double> logs;
  for (std::size_t i = 0; i < ifs.size(); ++i) logs.push_back(-ifs.geometry(i).log_ratio);
  const auto sigma = sigma_arithmetic(logs, 1e-9);

  // The pair sequence (u a^j, v a^j) walks theta_u by theta_a; a net of width
  // eps/2 guarantees a hit of the eps window around phi(theta).
  const Word a = steering_word(ifs, half, budget.max_net);
  const auto ga = compose(ifs, a);
  const NetResult net = epsilon_net(ga.angle, half, budget.max_net);
  const TailWord omega = TailWord::periodic(a);

  for (std::size_t depth = 1; depth <= budget.max_depth; ++depth) {
    const double log_top = static_cast<double>(depth) * std::log(ifs.min_ratio());
    if (log_top < std::log(std::numeric_limits<double>::min())) break;
    const auto band = mass_band(ifs, std::exp(log_top), budget.max_band_words);
    using Key = std::tuple<std::int64_t, std::int64_t, int>;
    std::map<Key, std::vector<std::size_t>> buckets;
    std::optional<std::pair<std::size_t, std::size_t>> hit;
    std::vector<CylinderGeometry> geo;
    geo.reserve(band.size());
    for (std::size_t idx = 0; idx < band.size() && !hit; ++idx) {
      geo.push_back(compose(ifs, band[idx]));
      const auto& g = geo.back();
      const Key key{static_cast<std::int64_t>(std::floor((log_top - g.log_ratio) / half)),
                    static_cast<std::int64_t>(std::floor(g.angle / half)), g.orientation};
      auto& slot = buckets[key];
      for (std::size_t prev : slot) {
        if (!band[prev].is_prefix_of(band[idx]) && !band[idx].is_prefix_of(band[prev])) {
          hit = {prev, idx};
          break;
        }
      }
      slot.push_back(idx);
    }
    if (!hit) continue;

    Word u = band[hit->first];
    Word v = band[hit->second];
    if (geo[hit->first].orientation < 0) {
      const auto r = ifs.reflector();
      if (!r) throw Error(Errc::no_reflector_available, "colliding pair reverses orientation and no reflector exists");
      u.push_back(*r);
      v.push_back(*r);
    }
    const auto gu = compose(ifs, u);
    const auto gv = compose(ifs, v);

    std::vector<double> candidates;
    if (const auto dir = segment_direction(ifs, u, v, omega)) {
      candidates = {normalize_angle(*dir + 0.5 * kPi), normalize_angle(*dir - 0.5 * kPi)};
    } else {
      candidates = {0.0};
    }
    std::optional<std::pair<double, std::size_t>> best;
    for (double theta : candidates) {
      const double target = phi(theta);
      for (std::size_t j = 0; j <= net.p; ++j) {
        if (best && j >= best->second) break;
        const double shift = static_cast<double>(j) * ga.angle;
        if (circular_distance(gu.angle + shift, target) < eps && circular_distance(gv.angle + shift, target) < eps) {
          best = {theta, j};
          break;
        }
      }
    }
    if (!best) throw Error(Errc::steering_failed, "no steering power reaches phi(theta) within eps");

    RelCloseCertificate cert;
    cert.words = {u + a.power(best->second), v + a.power(best->second)};
    cert.eps = eps;
    cert.theta = best->first;
    cert.omegas.insert_or_assign(PairIndex{0, 1}, omega);
    cert.provenance.construction = "find_pair";
    cert.provenance.band_depth = depth;
    cert.provenance.sigma = sigma;
    cert.provenance.steering_word = a.to_string();
    cert.provenance.steering_steps = best->second;

    std::string why;
    if (!verify_and_record(ifs, cert, &why)) throw Error(Errc::verification_failed, "find_pair: " + why);
    const double target = phi(cert.theta);
    for (const auto& w : cert.words) {
      if (circular_distance(compose(ifs, w).angle, target) >= eps) {
        throw Error(Errc::verification_failed, "find_pair: condition (iv) fails for " + w.to_string());
      }
    }
    const auto rep = check_relclose(ifs, cert.words[0], cert.words[1], eps, cert.theta, omega);
    if (!(rep.offset < 1e-9)) {
      throw Error(Errc::verification_failed, "find_pair: condition (v) offset " + std::to_string(rep.offset));
    }
    return cert;
  }
  throw Error(Errc::budget_exhausted,
              "no relatively close pair within mass-band depth " + std::to_string(budget.max_depth));
}

RelCloseCertificate double_family(const Ifs& ifs, const RelCloseCertificate& cert, double eps,
                                  const PairBudget& budget) {
  if (cert.words.empty()) throw Error(Errc::precondition_violated, "cannot double an empty family");
  if (!(eps > 0.0)) throw Error(Errc::invalid_argument, "eps must be positive");
  const double eps1 = cert.eps;
  if (!(eps1 < eps / 6.0)) {
    throw Error(Errc::precondition_violated,
                "family verified at eps1=" + std::to_string(eps1) + " but doubling needs eps1 < eps/6");
  }
  const double r_min = std::exp(min_log_ratio(ifs, cert.words));
  const double bound_a = std::min(std::exp(-eps / 6.0) * (eps / 3.0 - eps1) * r_min, eps / 6.0);
  const double bound_b = solve_exp_bound(eps / 3.0 * r_min);
  const double eps2 = 0.9 * std::min(bound_a, bound_b);
  const double theta1 = cert.theta;

  const auto pair = find_pair(ifs, eps2, [theta1](double t) { return t - theta1; }, budget);
  const Word& s = pair.words[0];
  const Word& t = pair.words[1];
  const TailWord& omega_tilde = pair.omegas.at({0, 1});

  const std::size_t n = cert.words.size();
  RelCloseCertificate out;
  out.eps = eps;
  out.theta = pair.theta;
  for (const auto& w : cert.words) out.words.push_back(s + w);
  for (const auto& w : cert.words) out.words.push_back(t + w);

  std::size_t i0 = 0;
  double lr0 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double lr = compose(ifs, cert.words[i]).log_ratio;
    if (lr < lr0) {
      lr0 = lr;
      i0 = i;
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      out.omegas.insert_or_assign(PairIndex{i, j}, cert.omega(i, j));
      out.omegas.insert_or_assign(PairIndex{n + i, n + j}, cert.omega(i, j));
    }
  }
  // across the blocks: omega(u_i, u_j) first, then the bridging
  // word u_{i0} and omega~ as fallbacks
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<TailWord> options;
      if (i != j) options.push_back(cert.omega(i, j));
      if (i != i0) options.push_back(cert.omega(i, i0));
      if (j != i0) options.push_back(cert.omega(j, i0));
      options.push_back(omega_tilde);
      const TailWord* chosen = &options.back();
      for (const auto& o : options) {
        if (check_relclose(ifs, out.words[i], out.words[n + j], eps, out.theta, o).passed()) {
          chosen = &o;
          break;
        }
      }
      out.omegas.insert_or_assign(PairIndex{i, n + j}, *chosen);
    }
  }

  out.provenance.construction = "double_family";
  out.provenance.eps1 = eps1;
  out.provenance.eps2 = eps2;
  out.provenance.eps2_bound_a = bound_a;
  out.provenance.eps2_bound_b = bound_b;
  out.provenance.band_depth = pair.provenance.band_depth;
  out.provenance.sigma = pair.provenance.sigma;
  out.provenance.steering_word = pair.provenance.steering_word;
  out.provenance.steering_steps = pair.provenance.steering_steps;

  std::string why;
  if (!verify_and_record(ifs, out, &why)) throw Error(Errc::verification_failed, "double_family: " + why);
  return out;
}

std::vector<RelCloseCertificate> doubling_chain(const Ifs& ifs, double eps, std::size_t levels,
                                                const PairBudget& budget) {
  std::vector<double> schedule(levels + 1);
  schedule[levels] = eps;
  for (std::size_t k = levels; k > 0; --k) schedule[k - 1] = 0.9 * schedule[k] / 6.0;
  std::vector<RelCloseCertificate> chain;
  chain.push_back(find_pair(ifs, schedule[0], [](double) { return 0.0; }, budget));
  for (std::size_t k = 1; k <= levels; ++k) {
    chain.push_back(double_family(ifs, chain.back(), schedule[k], budget));
  }
  return chain;
}

RelCloseCertificate power_family(const Ifs& ifs, const Word& u, const Word& v, std::size_t n, double eps) {
  if (u == v || u.empty() || u.size() != v.size()) {
    throw Error(Errc::precondition_violated, "power_family needs distinct words of equal positive length");
  }
  if (n < 1 || n > 20) throw Error(Errc::precondition_violated, "power_family supports 1 <= n <= 20");
  for (const Word* w : {&u, &v}) {
    const auto g = compose(ifs, *w);
    if (g.orientation != 1 || circular_distance(g.angle, 0.0) >= kAngleTolerance) {
      throw Error(Errc::precondition_violated, "block " + w->to_string() + " must be non-rotating and non-reflecting");
    }
  }
  const TailWord omega = TailWord::periodic(u);
  RelCloseCertificate cert;
  cert.eps = eps;
  const auto dir = segment_direction(ifs, u, v, omega);
  cert.theta = dir ? normalize_angle(*dir + 0.5 * kPi) : 0.0;
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t idx = 0; idx < count; ++idx) {
    Word w;
    for (std::size_t bit = n; bit-- > 0;) w += ((idx >> bit) & 1U) ? v : u;
    cert.words.push_back(std::move(w));
  }
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) cert.omegas.emplace(PairIndex{i, j}, omega);
  }
  cert.provenance.construction = "power_family";
  std::string why;
  if (!verify_and_record(ifs, cert, &why)) throw Error(Errc::verification_failed, "power_family: " + why);
  return cert;
}

}  // namespace favlab
