// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "favlab/counting.hpp"
#include "favlab/expr.hpp"
#include "favlab/favard.hpp"
#include "favlab/ifs.hpp"
#include "favlab/parallel.hpp"
#include "favlab/projection.hpp"
#include "favlab/relclose.hpp"
#include "favlab/rotation.hpp"
#include "oracles.hpp"

using namespace favlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass{true};
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += "failed: " + what;
    }
  }
  void note(const std::string& s) {
    if (pass) detail += (detail.empty() ? "" : "; ") + s;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double bisect_dimension(const std::vector<double>& r) {
  double lo = 0.0, hi = 10.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    double s = 0.0;
    for (double x : r) s += std::pow(x, mid);
    (s > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Word random_word(std::mt19937_64& rng, std::size_t m, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), sym(0, m - 1);
  Word w;
  for (std::size_t k = len(rng); k > 0; --k) w.push_back(static_cast<Word::Symbol>(sym(rng)));
  return w;
}

bool family_verified(const Ifs& ifs, const RelCloseCertificate& cert, double eps) {
  for (std::size_t i = 0; i < cert.words.size(); ++i)
    for (std::size_t j = i + 1; j < cert.words.size(); ++j)
      if (!oracle::relclose(ifs, cert.words[i], cert.words[j], eps, cert.theta, cert.omega(i, j))) return false;
  return true;
}

double max_gap_oracle(double theta, std::size_t p) {
  std::vector<double> a;
  for (std::size_t k = 1; k <= p; ++k) a.push_back(normalize_angle(std::fmod(double(k) * theta, kTwoPi)));
  std::sort(a.begin(), a.end());
  double gap = a.front() + kTwoPi - a.back();
  for (std::size_t i = 1; i < a.size(); ++i) gap = std::max(gap, a[i] - a[i - 1]);
  return gap;
}

Outcome dimension_solver() {
  Outcome o;
  const auto t0 = Clock::now();
  const double g3 = similarity_dimension(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
  const double g4 = similarity_dimension(std::vector<double>{0.5, 0.5, 0.5, 0.5});
  const double g2 = similarity_dimension(std::vector<double>{0.5, 0.25});
  const double elapsed = seconds_since(t0);
  const double oracle = bisect_dimension({0.5, 0.25});
  o.require(std::abs(g3 - 1.0) <= 1e-12, "{1/3 x3} -> 1");
  o.require(std::abs(g4 - 2.0) <= 1e-12, "{1/2 x4} -> 2");
  o.require(std::abs(g2 - oracle) <= 1e-12, "{1/2,1/4} vs bisection");
  o.require(elapsed < 1e-3, "runtime < 1 ms");
  o.note("gamma{1/2,1/4}=" + fmt("%.15f", g2) + " |diff|=" + fmt("%.1e", std::abs(g2 - oracle)) +
         " time=" + fmt("%.1e", elapsed) + "s");
  return o;
}

Outcome homomorphism() {
  Outcome o;
  const Ifs mixed({Similitude(0.45, 1.1, 1, {0, 0}), Similitude(0.3, 2.7, -1, {0.9, 0.2}),
                   Similitude(0.3, 0.0, 1, {0.2, 0.85})});
  std::mt19937_64 rng(2024);
  int bad_hom = 0, bad_angle = 0;
  double worst = 0.0;
  for (int t = 0; t < 10'000; ++t) {
    const Word a = random_word(rng, 3, 10), u = random_word(rng, 3, 10), v = random_word(rng, 3, 10);
    const auto guv = compose(mixed, u + v);
    const auto prod = compose(mixed, u).then(compose(mixed, v));
    const auto ref = oracle::word_map(mixed, u + v);
    const double err = std::max({std::abs(guv.log_ratio - prod.log_ratio),
                                 circular_distance(guv.angle, prod.angle), norm(guv.shift - prod.shift),
                                 std::abs(guv.shift.x - static_cast<double>(ref.tx)),
                                 std::abs(guv.shift.y - static_cast<double>(ref.ty))});
    worst = std::max(worst, err);
    if (err > 1e-9 || guv.orientation != prod.orientation || guv.orientation != ref.orientation()) ++bad_hom;

    const auto ga = compose(mixed, a), gu = compose(mixed, u), gv = compose(mixed, v);
    const auto gau = compose(mixed, a + u), gav = compose(mixed, a + v);
    const double lhs = normalize_angle(gau.angle - gav.angle);
    const double rhs = normalize_angle(ga.orientation * (gu.angle - gv.angle));
    if (circular_distance(lhs, rhs) > 1e-9 ||
        std::abs((gau.log_ratio - gav.log_ratio) - (gu.log_ratio - gv.log_ratio)) > 1e-9)
      ++bad_angle;
  }
  o.require(bad_hom == 0, std::to_string(bad_hom) + " homomorphism trials");
  o.require(bad_angle == 0, std::to_string(bad_angle) + " angle-difference trials");
  o.note("10000 + 10000 trials, worst error " + fmt("%.1e", worst));
  return o;
}

Outcome power_family_check(const Ifs& fig) {
  Outcome o;
  const auto t0 = Clock::now();
  const auto cert = power_family(fig, Word{1}, Word{2}, 5);
  std::size_t pairs = 0, passed = 0;
  for (std::size_t i = 0; i < cert.words.size(); ++i) {
    for (std::size_t j = i + 1; j < cert.words.size(); ++j) {
      ++pairs;
      const bool ok = cert.omega(i, j) == TailWord::periodic(Word{1}) &&
                      oracle::relclose(fig, cert.words[i], cert.words[j], 1e-6, cert.theta, cert.omega(i, j));
      passed += ok ? 1 : 0;
    }
  }
  const double elapsed = seconds_since(t0);
  o.require(cert.words.size() == 32, "32 words");
  o.require(pairs == 496 && passed == 496, std::to_string(passed) + "/" + std::to_string(pairs) + " pairs");
  o.require(elapsed < 5.0, "runtime < 5 s");
  o.note("32 words, 496/496 pairs at eps=1e-6, theta=" + fmt("%.6f", cert.theta) + " time=" + fmt("%.3f", elapsed) +
         "s");
  return o;
}

Outcome doubling(const Ifs& fig) {
  Outcome o;
  PairBudget budget;
  budget.max_depth = 12;
  const double eps = 1.0;
  const auto chain = doubling_chain(fig, eps, 2, budget);
  const auto& last = chain.back();
  o.require(last.words.size() >= 8, ">= 8 words");
  o.require(last.eps == eps, "final eps = 1");
  o.require(family_verified(fig, last, eps), "independent verification of the final family");
  o.require(chain.front().provenance.band_depth.value_or(99) <= 12, "seed within depth 12");
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const auto& c = chain[k];
    const auto& p = c.provenance;
    if (!p.eps1 || !p.eps2) {
      o.require(false, "provenance at level " + std::to_string(k));
      continue;
    }
    double r_umin = 1.0;
    for (const auto& w : chain[k - 1].words)
      r_umin = std::min(r_umin, static_cast<double>(oracle::word_map(fig, w).ratio()));
    const double e = c.eps, e1 = *p.eps1, e2 = *p.eps2;
    o.require(e1 < e / 6, "eps1 < eps/6 at level " + std::to_string(k));
    o.require(e2 > 0 && e2 < std::min(std::exp(-e / 6) * (e / 3 - e1) * r_umin, e / 6),
              "first eps2 inequality at level " + std::to_string(k));
    o.require(std::abs(1 - std::exp(e2)) + e2 < (e / 3) * r_umin, "second eps2 inequality at level " + std::to_string(k));
    o.require(family_verified(fig, c, e), "level " + std::to_string(k) + " verified");
  }
  o.note(std::to_string(last.words.size()) + " words at eps=1, eps1=" + fmt("%.4g", last.provenance.eps1.value_or(0)) +
         " eps2=" + fmt("%.4g", last.provenance.eps2.value_or(0)));
  return o;
}

Outcome density(const Ifs& fig) {
  Outcome o;
  const auto cert = power_family(fig, Word{1}, Word{2}, 4);
  const double gamma = fig.dimension();
  const double bound = 16.0 / std::pow(10 * fig.diameter_bound() * std::exp(1.0), gamma);
  double worst = INFINITY;
  for (double theta : {0.3, 1.0, 1.9, 2.8}) {
    const auto w = density_witness(fig, cert, theta);
    worst = std::min(worst, w.ratio);
    o.require(w.ratio >= 0.99 * bound, "ratio at theta=" + fmt("%.2f", theta));
    o.require(w.points_inside, "points inside B(x, b) at theta=" + fmt("%.2f", theta));
  }
  o.note("min ratio " + fmt("%.4f", worst) + " >= 0.99 * " + fmt("%.4f", bound));
  return o;
}

Outcome favard_sweep(const Ifs& fig, std::vector<DecaySample>& samples) {
  Outcome o;
  const std::size_t K = 64;
  set_worker_count(4);
  const auto t0 = Clock::now();
  std::vector<FavardResult> sweep;
  for (std::size_t n = 2; n <= 12; ++n) sweep.push_back(favard(fig, n, K));
  const double elapsed = seconds_since(t0);
  set_worker_count(1);
  std::vector<FavardResult> serial;
  for (std::size_t n = 2; n <= 12; ++n) serial.push_back(favard(fig, n, K));
  set_worker_count(0);

  bool identical = true;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    identical = identical && std::memcmp(sweep[i].lengths.data(), serial[i].lengths.data(), K * sizeof(double)) == 0 &&
                std::memcmp(&sweep[i].favard, &serial[i].favard, sizeof(double)) == 0;
  }
  o.require(identical, "bit-identical across 1 and 4 workers");

  std::size_t non_monotone = 0;
  for (std::size_t i = 1; i < sweep.size(); ++i)
    for (std::size_t j = 0; j < K; ++j) non_monotone += sweep[i].lengths[j] > sweep[i - 1].lengths[j] + 1e-9;
  o.require(non_monotone == 0, std::to_string(non_monotone) + " increases in n");

  // rasterization oracle for n <= 6, 2^20 cells
  std::size_t raster_bad = 0;
  const Disk& disk = fig.disk();
  for (std::size_t n = 2; n <= 6; ++n) {
    const auto& res = sweep[n - 2];
    for (std::size_t j = 0; j < K; ++j) {
      const double theta = res.thetas[j];
      std::vector<oracle::Piece> pieces;
      for_each_word(fig.size(), n, [&](const Word& u) {
        const auto g = oracle::word_map(fig, u);
        oracle::Real x = disk.center.x, y = disk.center.y;
        g.apply(x, y);
        const double c = static_cast<double>(x * std::cos(static_cast<oracle::Real>(theta)) +
                                             y * std::sin(static_cast<oracle::Real>(theta)));
        const double rad = static_cast<double>(g.ratio()) * disk.radius;
        pieces.push_back({c - rad, c + rad});
      });
      const double h = oracle::cell_width(pieces);
      const auto runs = oracle::coalesce(oracle::raster_runs(pieces), 2 * h);
      const auto lib = oracle::coalesce(LevelCover(fig, n).project(theta).intervals(), 2 * h);
      bool ok = runs.size() == lib.size();
      for (std::size_t i = 0; ok && i < lib.size(); ++i)
        ok = std::abs(lib[i].lo - runs[i].lo) <= 2 * h && std::abs(lib[i].hi - runs[i].hi) <= 2 * h;
      raster_bad += ok ? 0 : 1;
    }
  }
  o.require(raster_bad == 0, std::to_string(raster_bad) + " raster mismatches");
  o.require(elapsed < 60.0, "n = 12 sweep < 60 s");
  for (const auto& r : sweep) samples.push_back({double(r.n), r.favard});
  o.note("favard n=2 " + fmt("%.4f", sweep.front().favard) + " -> n=12 " + fmt("%.4f", sweep.back().favard) +
         ", sweep " + fmt("%.2f", elapsed) + "s on " + std::to_string(std::thread::hardware_concurrency()) + " core(s)");
  return o;
}

Outcome bound_constant(const std::vector<DecaySample>& fig_samples) {
  Outcome o;
  const double B = schedule_constant_B(3, 1, 2, 0.1);
  const double expect = std::log(2.0) / (3.3 * std::log(3.0));
  o.require(std::abs(B - expect) <= 1e-12, "B = log2/(3.3 log3)");
  std::vector<DecaySample> synth;
  for (int n = 3; n <= 40; ++n) synth.push_back({double(n), 2.0 / std::pow(std::log(double(n)), 0.5)});
  const auto fit = fit_decay(synth);
  o.require(std::abs(fit.A_hat - 2.0) <= 1e-12 && std::abs(fit.B_hat - 0.5) <= 1e-12, "exact recovery of (2, 0.5)");
  const auto fig = fit_decay(fig_samples);
  o.require(fig.B_hat > 0, "B_hat > 0 on the fig1 sweep");
  o.note("B=" + fmt("%.15f", B) + " synthetic (" + fmt("%.12f", fit.A_hat) + ", " + fmt("%.12f", fit.B_hat) +
         ") fig1 B_hat=" + fmt("%.4f", fig.B_hat));
  return o;
}

Outcome counting() {
  Outcome o;
  // independent enumeration for (2, 2, 8)
  std::size_t brute = 0;
  for (unsigned code = 0; code < (1u << 16); ++code) {
    bool hit = false;
    for (unsigned b = 0; b < 8 && !hit; ++b) {
      const unsigned s0 = (code >> (2 * b)) & 1, s1 = (code >> (2 * b + 1)) & 1;
      hit = s0 == b % 2 && s1 == (b + 1) % 2;
    }
    brute += hit ? 0 : 1;
  }
  const auto c = avoidance_count(2, 2, 8);
  o.require(c.exact == brute, "DP equals enumeration for (2,2,8)");

  std::size_t relax_fail = 0, tested = 0;
  for (std::size_t m = 2; m <= 6; ++m) {
    std::size_t ms = 1;
    for (std::size_t s = 1; s <= 5; ++s) {
      ms *= m;
      if (ms * s > 4096) break;
      ++tested;
      relax_fail += avoidance_count(m, s, ms).relaxation_holds ? 0 : 1;
    }
  }
  o.require(relax_fail == 0, std::to_string(relax_fail) + " relaxation failures");

  const Ifs toy = oracle::golden_toy();
  const double eps = 2.5;
  const std::size_t steps = 4;
  const auto trace = removal_recursion(toy, Word{1}, 0.0, eps, steps);
  for (std::size_t i = 0; i < steps; ++i)
    o.require(trace.masses[i + 1] < (1 - trace.c) * trace.masses[i], "strict decrease at step " + std::to_string(i));
  const std::size_t depth = trace.depth;
  std::vector<double> alive(steps + 1, 0.0);
  const double weight = std::ldexp(1.0, -static_cast<int>(depth));
  std::vector<int> x(depth + 1, 0);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << depth); ++code) {
    for (std::size_t i = 0; i < depth; ++i) x[i] = static_cast<int>((code >> i) & 1);
    const std::size_t dead = oracle::golden_removal_step(x, 0.0, eps, steps);
    for (std::size_t i = 0; i <= dead; ++i) alive[i] += weight;
  }
  for (std::size_t i = 0; i <= steps; ++i)
    o.require(std::abs(alive[i] - trace.masses[i]) <= 1e-12, "enumeration match at step " + std::to_string(i));
  o.note("(2,2,8): " + std::to_string(brute) + ", relaxation on " + std::to_string(tested) +
         " parameter sets, removal masses " + fmt("%.4f", trace.masses[1]) + " .. " + fmt("%.4f", trace.masses.back()) +
         " (c=" + fmt("%.2e", trace.c) + ")");
  return o;
}

Outcome diophantine() {
  Outcome o;
  const auto golden = diophantine_profile(eval_expr("(1 + sqrt(5)) / 2"), 1'000'000, 1.0);
  const double target = 1.0 / std::sqrt(5.0);
  o.require(std::abs(golden.tail_c_hat - target) <= 0.05 * target, "golden liminf within 5% of 1/sqrt5");
  const double theta = kTwoPi * eval_expr_double("(1 + sqrt(2)) / 2");
  std::string ps;
  for (double eps : {0.5, 0.2, 0.1, 0.05}) {
    const auto net = epsilon_net(theta, eps, 1'000'000);
    o.require(net.max_gap < eps && max_gap_oracle(theta, net.p) < eps, "net at eps=" + fmt("%.2f", eps));
    ps += (ps.empty() ? "" : ",") + std::to_string(net.p);
  }
  o.note("golden liminf " + fmt("%.5f", golden.tail_c_hat) + " vs " + fmt("%.5f", target) + ", net sizes " + ps);
  return o;
}

Outcome visibility(const Ifs& fig) {
  Outcome o;
  const Disk& disk = fig.disk();
  struct Center {
    const char* name;
    Vec2 a;
  };
  const std::vector<Center> centers{{"outside", {3, 3}},
                                    {"on", {disk.center.x + disk.radius, disk.center.y}},
                                    {"inside", disk.center}};
  std::string summary;
  for (const auto& c : centers) {
    double prev = INFINITY, first = 0, last = 0;
    bool excluded_path = false;
    for (std::size_t n = 4; n <= 12; ++n) {
      const auto v = visibility_estimate(fig, c.a, 1.0, n, std::size_t{4});
      o.require(v.covering_sum <= prev + 1e-12, std::string(c.name) + " increases at n=" + std::to_string(n));
      if (n == 4) first = v.covering_sum;
      last = v.covering_sum;
      prev = v.covering_sum;
      excluded_path = excluded_path || v.excluded > 0;
    }
    if (std::string(c.name) == "inside") o.require(excluded_path, "inside centre uses the exclusion path");
    summary += std::string(summary.empty() ? "" : ", ") + c.name + " " + fmt("%.4f", first) + "->" + fmt("%.4f", last);
  }
  o.note(summary);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& f) {
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  };
  const Ifs fig = oracle::config("fig1.json");
  std::vector<DecaySample> samples;
  report(1, "dimension solver", dimension_solver);
  report(2, "homomorphism and angle invariance", homomorphism);
  report(3, "power family n=5", [&] { return power_family_check(fig); });
  report(4, "doubling from a find_pair seed", [&] { return doubling(fig); });
  report(5, "density witness", [&] { return density(fig); });
  report(6, "Favard sweep n=2..12", [&] { return favard_sweep(fig, samples); });
  report(7, "bound constant and decay fit", [&] { return bound_constant(samples); });
  report(8, "counting", counting);
  report(9, "Diophantine profile and nets", diophantine);
  report(10, "visibility", [&] { return visibility(fig); });
  return failures == 0 ? 0 : 1;
}
