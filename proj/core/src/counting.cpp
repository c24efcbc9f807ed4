#include "favlab/counting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "favlab/error.hpp"
#include "favlab/ifs.hpp"
#include "favlab/rotation.hpp"

namespace favlab {

RemovalTrace removal_recursion(const Ifs& ifs, const Word& target, double phi, double eps, std::size_t steps,
                               std::size_t cap) {
  ifs.check(target);
  RemovalTrace trace;
  trace.steering = steering_word(ifs, eps);
  const auto ga = compose(ifs, trace.steering);
  const auto net = epsilon_net(ga.angle, eps, 1'000'000);
  trace.block_bound = net.p * trace.steering.size() + (ifs.reflector() ? 1 : 0);
  const double gamma = ifs.dimension();
  trace.c = std::exp(gamma * (static_cast<double>(trace.block_bound) * std::log(ifs.min_ratio()) +
                              compose(ifs, target).log_ratio));

  std::vector<Word> current;
  for (std::size_t i = 0; i < ifs.size(); ++i) current.push_back(Word{static_cast<Word::Symbol>(i)});
  trace.masses.push_back(1.0);
  for (std::size_t step = 0; step < steps; ++step) {
    std::vector<Word> next;
    double removed = 0.0;
    for (const auto& v : current) {
      const Word t = steering_suffix(ifs, v, phi, eps, trace.steering);
      trace.longest_suffix = std::max(trace.longest_suffix, t.size());
      const Word w = v + t + target;
      removed += mu_mass(ifs, w);
      // [v] minus [w] is the disjoint union of [w_1..w_k c], c != w_{k+1}
      for (std::size_t k = v.size(); k < w.size(); ++k) {
        for (std::size_t c = 0; c < ifs.size(); ++c) {
          if (c == w[k]) continue;
          Word child = w.prefix(k);
          child.push_back(static_cast<Word::Symbol>(c));
          next.push_back(std::move(child));
        }
      }
      if (next.size() > cap) {
        throw Error(Errc::enumeration_cap, "survivor list exceeds " + std::to_string(cap) + " cylinders");
      }
    }
    double mass = 0.0;
    for (const auto& u : next) {
      mass += mu_mass(ifs, u);
      trace.depth = std::max(trace.depth, u.size());
    }
    trace.removed.push_back(removed);
    trace.masses.push_back(mass);
    current = std::move(next);
  }
  trace.survivors = std::move(current);
  return trace;
}

namespace {

BigInt big_pow(std::size_t base, std::size_t exp) {
  BigInt r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t forbidden_symbol(std::size_t m, std::size_t block, std::size_t j) { return (block + j) % m; }

}  // namespace

AvoidanceCount avoidance_count(std::size_t m, std::size_t s, std::size_t blocks) {
  if (m < 2 || s < 1 || blocks < 1) throw Error(Errc::range, "need m >= 2, s >= 1, blocks >= 1");
  const std::size_t length = blocks * s;
  if (length > 4096) throw Error(Errc::range, "word length above 4096");
  AvoidanceCount out;

  // states: total words so far, and those whose current block still matches
  // the forbidden word
  BigInt total = 1;
  BigInt matching = 0;
  for (std::size_t pos = 0; pos < length; ++pos) {
    const std::size_t j = pos % s;
    if (j == 0) matching = total;  // a new block starts matching the empty prefix
    BigInt next_total = total * m;
    BigInt next_matching = matching;  // exactly one continuation keeps matching
    if (j == s - 1) {
      next_total -= next_matching;  // completing the forbidden block is not allowed
      next_matching = 0;
    }
    total = std::move(next_total);
    matching = std::move(next_matching);
  }
  out.exact = total;
  out.bound = big_pow(big_pow(m, s).convert_to<std::size_t>() - 1, blocks);

  const double log_cap = 24.0 * std::log(2.0);
  if (static_cast<double>(length) * std::log(static_cast<double>(m)) <= log_cap + 1e-9) {
    std::size_t words = 1;
    for (std::size_t i = 0; i < length; ++i) words *= m;
    std::size_t count = 0;
    std::vector<std::size_t> digits(length);
    for (std::size_t code = 0; code < words; ++code) {
      std::size_t x = code;
      for (std::size_t i = length; i-- > 0;) {
        digits[i] = x % m;
        x /= m;
      }
      bool ok = true;
      for (std::size_t b = 0; b < blocks && ok; ++b) {
        bool equal = true;
        for (std::size_t j = 0; j < s && equal; ++j) equal = digits[b * s + j] == forbidden_symbol(m, b, j);
        ok = !equal;
      }
      count += ok ? 1 : 0;
    }
    out.brute = BigInt(count);
  }

  const double log_m = std::log(static_cast<double>(m));
  const double ms = std::exp(static_cast<double>(s) * log_m);
  out.log_relaxed = static_cast<double>(length) * log_m + ms * static_cast<double>(s) * std::log1p(-1.0 / ms);
  out.log_e_bound = static_cast<double>(length) * log_m - static_cast<double>(s);
  out.relaxation_holds = out.log_relaxed <= out.log_e_bound;
  return out;
}

H2Bound h2_length_bound(std::size_t m, std::size_t s, std::size_t blocks, double r) {
  if (m < 2 || s < 1 || blocks < 1) throw Error(Errc::range, "need m >= 2, s >= 1, blocks >= 1");
  if (std::abs(r - 1.0 / static_cast<double>(m)) > 1e-12) throw Error(Errc::invalid_argument, "r must equal 1/m");
  // (m^s - 1)^blocks * 3 * m^-(s blocks) = 3 (1 - m^-s)^blocks
  const double ms = std::pow(static_cast<double>(m), static_cast<double>(s));
  H2Bound out;
  out.value = 3.0 * std::exp(static_cast<double>(blocks) * std::log1p(-1.0 / ms));
  out.limit = 3.0 * std::exp(-static_cast<double>(s));
  out.within = out.value <= out.limit;
  return out;
}

}  // namespace favlab
