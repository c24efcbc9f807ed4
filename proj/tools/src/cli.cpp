#include "cli.hpp"

#include <CLI11.hpp>
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "favlab/config.hpp"
#include "favlab/convex.hpp"
#include "favlab/counting.hpp"
#include "favlab/error.hpp"
#include "favlab/expr.hpp"
#include "favlab/favard.hpp"
#include "favlab/parallel.hpp"
#include "favlab/projection.hpp"
#include "favlab/relclose.hpp"
#include "favlab/rotation.hpp"

namespace favlab::cli {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_comment(std::string_view config_hash, std::uint64_t seed) {
  return "# favlab " FAVLAB_VERSION " config=" + std::string(config_hash) + " seed=" + std::to_string(seed);
}

namespace {

// Every option of every subcommand lands here; unused fields keep defaults.
struct Options {
  std::string ifs;
  std::size_t depth{4};
  std::size_t n{1};
  std::optional<std::size_t> n_from;
  std::size_t angles{64};
  bool hull{false};
  std::string csv;
  std::string svg;
  std::string out;
  std::string cert;
  std::string theta = "0";
  std::string phi = "0";
  std::string alpha;
  std::string theta_over_pi;
  double eps{1.0};
  double power_eps{1e-6};
  std::string u;
  std::string v;
  std::string target;
  std::size_t steps{4};
  std::size_t levels{2};
  std::size_t max_depth{12};
  std::size_t p_max{1'000'000};
  std::size_t chaos{0};
  double ax{0.0};
  double ay{0.0};
  double s{1.0};
  std::optional<std::size_t> exclusion_level;
  std::int64_t n_max{1'000'000};
  double d{2.0};
  std::size_t m{2};
  std::size_t block{2};
  std::size_t blocks{2};
  double c1{1.0};
  double k{1.0};
  double delta{0.1};
  double c_low{1.0};
  double c_ls{1.0};
  double a_ls{1.0};
};

bool usage_error(Errc code) {
  return code == Errc::config || code == Errc::io || code == Errc::invalid_argument ||
         code == Errc::symbol_out_of_range;
}

class Runner {
 public:
  Runner(const Options& opt, std::uint64_t seed, std::ostream& out, std::ostream& err)
      : opt_(opt), seed_(seed), out_(out), err_(err) {}

  void set_resolved(std::string text) { resolved_ = std::move(text); }

  int dim() {
    const Ifs ifs = load();
    out_ << "gamma " << short_double(ifs.dimension()) << '\n'
         << "maps " << ifs.size() << '\n'
         << "r_min " << format_double(ifs.min_ratio()) << '\n'
         << "r_max " << format_double(ifs.max_ratio()) << '\n'
         << "disk_center " << format_double(ifs.disk().center.x) << ' ' << format_double(ifs.disk().center.y)
         << '\n'
         << "disk_radius " << format_double(ifs.disk().radius) << '\n';
    return 0;
  }

  int render() {
    const Ifs ifs = load();
    SvgOptions svg;
    svg.chaos_points = opt_.chaos;
    svg.seed = seed_;
    if (opt_.theta != "0") {
      svg.bar_thetas.push_back(eval_expr_double(opt_.theta));
      svg.bar_level = opt_.depth;
    }
    const std::string doc = render_svg(ifs, opt_.depth, svg);
    if (opt_.svg.empty() || opt_.svg == "-") {
      out_ << doc;
    } else {
      write_file(opt_.svg, doc);
      out_ << "glyphs " << level_geometries(ifs, opt_.depth, std::size_t{1} << 20).size() << '\n';
    }
    return 0;
  }

  int favard_sweep() {
    Ifs ifs = load();
    if (opt_.hull && !ifs.has_hull()) ifs = ifs.with_hull(certified_hull(ifs));
    const std::size_t first = opt_.n_from.value_or(opt_.n);
    if (first > opt_.n) throw Error(Errc::invalid_argument, "--n-from exceeds --n");
    std::ostringstream rows;
    std::ostringstream summary;
    rows << "n,theta,length\n";
    summary << "n,favard,max_over_theta\n";
    std::vector<FavardResult> results;
    for (std::size_t n = first; n <= opt_.n; ++n) {
      results.push_back(favard(ifs, n, opt_.angles));
      const auto& r = results.back();
      for (std::size_t j = 0; j < r.thetas.size(); ++j) {
        rows << n << ',' << format_double(r.thetas[j]) << ',' << format_double(r.lengths[j]) << '\n';
      }
      summary << n << ',' << format_double(r.favard) << ',' << format_double(r.max_length) << '\n';
      out_ << "n " << n << " favard " << format_double(r.favard) << " max_over_theta "
           << format_double(r.max_length) << '\n';
    }
    if (!opt_.csv.empty()) write_file(opt_.csv, csv_comment(hash(ifs), seed_) + '\n' + rows.str() + summary.str());
    if (!opt_.svg.empty()) {
      SvgOptions svg;
      svg.bar_thetas = results.back().thetas;
      svg.bar_level = opt_.n;
      write_file(opt_.svg, render_svg(ifs, std::min<std::size_t>(opt_.n, 6), svg));
    }
    return 0;
  }

  int decay_fit() {
    const Ifs ifs = load();
    const auto samples = read_samples(opt_.csv);
    const DecayFit fit = fit_decay(samples);
    out_ << "A_hat " << format_double(fit.A_hat) << '\n'
         << "B_hat " << format_double(fit.B_hat) << '\n'
         << "residual " << format_double(fit.residual) << '\n';
    const auto sched = schedule(ifs, 1, opt_.c1, opt_.k, opt_.d, opt_.delta);
    std::vector<std::size_t> grid;
    std::vector<double> observed;
    for (const auto& s : samples) {
      if (s.n < 2) continue;
      grid.push_back(static_cast<std::size_t>(s.n));
      observed.push_back(s.length);
    }
    if (grid.empty()) return 0;
    const double A = observed.front() * std::pow(std::log(static_cast<double>(grid.front())), sched.B);
    const auto curves = bound_curves(sched, opt_.c_low, opt_.c_ls, opt_.a_ls, grid, A);
    std::ostringstream table;
    table << "n,observed,lower,log_star,theorem\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      table << grid[i] << ',' << format_double(observed[i]) << ',' << format_double(curves.lower[i]) << ','
            << format_double(curves.log_star[i]) << ',' << format_double(curves.theorem[i]) << '\n';
    }
    out_ << "B_schedule " << format_double(sched.B) << '\n' << "A_calibrated " << format_double(A) << '\n';
    if (opt_.out.empty()) {
      out_ << table.str();
    } else {
      write_file(opt_.out, csv_comment(hash(ifs), seed_) + '\n' + table.str());
    }
    return 0;
  }

  int relclose_find() {
    const Ifs ifs = load();
    const double phi = eval_expr_double(opt_.phi);
    PairBudget budget;
    budget.max_depth = opt_.max_depth;
    budget.max_net = opt_.p_max;
    return emit(ifs, find_pair(ifs, opt_.eps, [phi](double) { return phi; }, budget));
  }

  int relclose_double() {
    const Ifs ifs = load();
    const auto seed_cert = load_certificate(opt_.cert, ifs.size());
    PairBudget budget;
    budget.max_depth = opt_.max_depth;
    budget.max_net = opt_.p_max;
    return emit(ifs, double_family(ifs, seed_cert, opt_.eps, budget));
  }

  int relclose_chain() {
    const Ifs ifs = load();
    PairBudget budget;
    budget.max_depth = opt_.max_depth;
    budget.max_net = opt_.p_max;
    const auto chain = doubling_chain(ifs, opt_.eps, opt_.levels, budget);
    for (const auto& c : chain) out_ << "level words " << c.words.size() << " eps " << format_double(c.eps) << '\n';
    return emit(ifs, chain.back());
  }

  int relclose_power() {
    const Ifs ifs = load();
    const Word u = Word::parse(opt_.u, ifs.size());
    const Word v = Word::parse(opt_.v, ifs.size());
    return emit(ifs, power_family(ifs, u, v, opt_.n, opt_.power_eps));
  }

  int density() {
    const Ifs ifs = load();
    const double theta = eval_expr_double(opt_.theta);
    const auto cert = load_certificate(opt_.cert, ifs.size());
    const auto w = density_witness(ifs, cert, theta, opt_.p_max);
    out_ << "steering " << (w.steering.empty() ? "-" : w.steering.to_string()) << '\n'
         << "x " << format_double(w.x) << '\n'
         << "b " << format_double(w.b) << '\n'
         << "log_b " << format_double(w.log_b) << '\n'
         << "ratio " << format_double(w.ratio) << '\n'
         << "bound " << format_double(w.bound) << '\n'
         << "containment_factor " << format_double(w.containment_factor) << '\n'
         << "points_inside " << (w.points_inside ? "true" : "false") << '\n'
         << "cylinders_inside " << (w.cylinders_inside ? "true" : "false") << '\n';
    // profile around x on radii the level-n atoms resolve
    const double atom_error = ifs.diameter_bound() * std::pow(ifs.max_ratio(), static_cast<double>(opt_.n));
    std::vector<double> radii;
    for (double r = 2.0 * ifs.disk().radius; r > 100.0 * atom_error && radii.size() < 64; r /= 2.0) {
      radii.push_back(r);
    }
    if (radii.empty()) throw Error(Errc::resolution_too_coarse, "level " + std::to_string(opt_.n) + " resolves no radius");
    const auto ratios = density_profile(ifs, theta, w.x, radii, opt_.n);
    std::ostringstream table;
    table << "r,ratio\n";
    for (std::size_t i = 0; i < radii.size(); ++i) table << format_double(radii[i]) << ',' << format_double(ratios[i]) << '\n';
    if (opt_.csv.empty()) {
      out_ << table.str();
    } else {
      write_file(opt_.csv, csv_comment(hash(ifs), seed_) + '\n' + table.str());
    }
    return 0;
  }

  int visible() {
    const Ifs ifs = load();
    const std::size_t first = opt_.n_from.value_or(opt_.n);
    if (first > opt_.n) throw Error(Errc::invalid_argument, "--n-from exceeds --n");
    const std::size_t ex = opt_.exclusion_level.value_or(first);
    std::ostringstream table;
    table << "n,covering_sum,max_arc,components,excluded\n";
    for (std::size_t n = first; n <= opt_.n; ++n) {
      const auto v = visibility_estimate(ifs, {opt_.ax, opt_.ay}, opt_.s, n, std::min(ex, n));
      table << n << ',' << format_double(v.covering_sum) << ',' << format_double(v.max_arc) << ',' << v.components
            << ',' << v.excluded << '\n';
      out_ << "n " << n << " covering_sum " << format_double(v.covering_sum) << " excluded " << v.excluded
           << (v.center_inside ? " center_inside" : "") << '\n';
    }
    if (!opt_.csv.empty()) write_file(opt_.csv, csv_comment(hash(ifs), seed_) + '\n' + table.str());
    return 0;
  }

  int dioph() {
    const auto profile = diophantine_profile(eval_expr(opt_.alpha), opt_.n_max, opt_.d);
    out_ << "convergents " << profile.convergents.size() << '\n'
         << "c_hat " << format_double(profile.c_hat) << '\n'
         << "tail_c_hat " << format_double(profile.tail_c_hat) << '\n'
         << "d_hat " << format_double(profile.d_hat) << '\n';
    if (!opt_.csv.empty()) {
      std::ostringstream table;
      table << "n,m,residual\n";
      for (const auto& c : profile.convergents) table << c.n << ',' << c.m << ',' << format_double(c.residual) << '\n';
      write_file(opt_.csv, csv_comment(content_hash(opt_.alpha), seed_) + '\n' + table.str());
    }
    return 0;
  }

  int net() {
    const Real pi = boost::math::constants::pi<Real>();
    double theta = eval_expr_double(opt_.theta);
    if (!opt_.alpha.empty()) theta = (eval_expr(opt_.alpha) * 2 * pi).convert_to<double>();
    if (!opt_.theta_over_pi.empty()) theta = (eval_expr(opt_.theta_over_pi) * pi).convert_to<double>();
    const auto r = epsilon_net(theta, opt_.eps, opt_.p_max, opt_.d);
    out_ << "p " << r.p << '\n'
         << "max_gap " << format_double(r.max_gap) << '\n'
         << "c1_hat " << format_double(r.c1_hat) << '\n';
    return 0;
  }

  int count_avoid() {
    const auto c = avoidance_count(opt_.m, opt_.block, opt_.blocks);
    out_ << "exact " << c.exact << '\n' << "bound " << c.bound << '\n';
    if (c.brute) out_ << "brute " << *c.brute << '\n';
    out_ << "log_relaxed " << format_double(c.log_relaxed) << '\n'
         << "log_e_bound " << format_double(c.log_e_bound) << '\n'
         << "relaxation_holds " << (c.relaxation_holds ? "true" : "false") << '\n';
    return 0;
  }

  int count_removal() {
    const Ifs ifs = load();
    const Word target = Word::parse(opt_.target, ifs.size());
    const auto trace = removal_recursion(ifs, target, eval_expr_double(opt_.phi), opt_.eps, opt_.steps);
    out_ << "steering " << trace.steering.to_string() << '\n'
         << "block_bound " << trace.block_bound << '\n'
         << "c " << format_double(trace.c) << '\n';
    for (std::size_t i = 0; i < trace.masses.size(); ++i) {
      out_ << "mass " << i << ' ' << format_double(trace.masses[i]) << '\n';
    }
    return 0;
  }

  int schedule_cmd() {
    const Ifs ifs = load();
    const auto s = schedule(ifs, opt_.n, opt_.c1, opt_.k, opt_.d, opt_.delta);
    out_ << "s_n " << format_double(s.s_n) << '\n'
         << "log_s_n " << format_double(s.log_s_n) << '\n'
         << "log_L_n " << format_double(s.log_L_n) << '\n'
         << "log_neg_log_rho " << format_double(s.log_neg_log_rho) << '\n'
         << "B " << format_double(s.B) << '\n'
         << "inequality_holds " << (s.inequality_holds ? "true" : "false") << '\n'
         << "threshold " << schedule_threshold(ifs, opt_.n, opt_.c1, opt_.k, opt_.d, opt_.delta) << '\n';
    return 0;
  }

 private:
  Ifs load() {
    Ifs ifs = load_ifs(opt_.ifs);
    err_ << "favlab: ifs " << ifs_to_json(ifs) << '\n';
    return ifs;
  }

  std::string hash(const Ifs& ifs) const { return content_hash(ifs_to_json(ifs) + '\n' + resolved_); }

  static std::string short_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    std::string s = buf;
    if (s.find_first_of(".eni") == std::string::npos) s += ".0";
    return s;
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(Errc::io, "cannot write " + path);
    f << text;
    if (!f) throw Error(Errc::io, "write failed for " + path);
  }

  // Samples from the "favard" column if some section has one, else "length".
  static std::vector<DecaySample> read_samples(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<DecaySample> by_favard;
    std::vector<DecaySample> by_length;
    std::string line;
    int n_col = -1;
    int favard_col = -1;
    int length_col = -1;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
      if (fields.empty()) continue;
      if (fields[0] == "n") {
        n_col = 0;
        favard_col = length_col = -1;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (fields[i] == "favard") favard_col = static_cast<int>(i);
          if (fields[i] == "length") length_col = static_cast<int>(i);
        }
        continue;
      }
      if (n_col < 0) throw Error(Errc::config, path + ": data before a header row");
      try {
        const double n = std::stod(fields.at(0));
        if (favard_col >= 0) by_favard.push_back({n, std::stod(fields.at(favard_col))});
        if (length_col >= 0) by_length.push_back({n, std::stod(fields.at(length_col))});
      } catch (const std::exception&) {
        throw Error(Errc::config, path + ": malformed row '" + line + "'");
      }
    }
    return by_favard.empty() ? by_length : by_favard;
  }

  int emit(const Ifs& ifs, const RelCloseCertificate& cert) {
    const bool valid = certificate_valid(ifs, cert);
    out_ << "words " << cert.words.size() << '\n'
         << "pairs " << cert.pair_count() << '\n'
         << "eps " << format_double(cert.eps) << '\n'
         << "theta " << format_double(cert.theta) << '\n'
         << "valid " << (valid ? "true" : "false") << '\n';
    for (const auto& w : cert.words) out_ << "word " << w.to_string() << '\n';
    if (!opt_.out.empty()) write_file(opt_.out, certificate_to_json(cert));
    if (!valid) throw Error(Errc::verification_failed, "certificate failed re-verification");
    return 0;
  }

  const Options& opt_;
  std::uint64_t seed_;
  std::ostream& out_;
  std::ostream& err_;
  std::string resolved_;
};

std::string describe(const CLI::App& app) {
  std::ostringstream s;
  for (const CLI::Option* o : app.get_options()) {
    if (o->get_name() == "--help" || o->get_name().empty()) continue;
    std::string value;
    if (o->count() > 0) {
      const auto& res = o->results();
      for (std::size_t i = 0; i < res.size(); ++i) value += (i ? " " : "") + res[i];
      if (o->get_type_size() == 0) value = "true";
    } else {
      value = o->get_type_size() == 0 ? "false" : o->get_default_str();
    }
    s << ' ' << o->get_name().substr(o->get_name().find_first_not_of('-')) << '=' << (value.empty() ? "-" : value);
  }
  return s.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"favlab: self-similar sets, relatively close cylinders, projections and Favard length"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
  app.add_option("--seed", seed, "seed for all randomness");
  app.add_option("--threads", threads, "worker cap (0: FAVLAB_THREADS or hardware)");

  auto ifs_opt = [&](CLI::App* sub) { sub->add_option("--ifs", opt.ifs, "IFS JSON file")->required(); };

  auto* dim = app.add_subcommand("dim", "similarity dimension and enclosing disk");
  ifs_opt(dim);

  auto* render = app.add_subcommand("render", "SVG of the level cover");
  ifs_opt(render);
  render->add_option("--depth", opt.depth, "cylinder level");
  render->add_option("--svg", opt.svg, "output path (default stdout)");
  render->add_option("--theta", opt.theta, "projection bars at this angle");
  render->add_option("--chaos", opt.chaos, "chaos-game points");

  auto* fav = app.add_subcommand("favard", "projection lengths of C_n and the Favard integral");
  ifs_opt(fav);
  fav->add_option("--n", opt.n, "level")->required();
  fav->add_option("--n-from", opt.n_from, "sweep levels n-from..n");
  fav->add_option("--angles", opt.angles, "midpoint-rule angles");
  fav->add_flag("--hull", opt.hull, "use a certified polygon hull as convex body");
  fav->add_option("--csv", opt.csv);
  fav->add_option("--svg", opt.svg);

  auto* decay = app.add_subcommand("decay", "decay fits");
  decay->require_subcommand(1);
  auto* fit = decay->add_subcommand("fit", "fit A/(log n)^B to a favard sweep");
  ifs_opt(fit);
  fit->add_option("--csv", opt.csv, "favard sweep CSV")->required();
  fit->add_option("--out", opt.out, "bound curves CSV (default stdout)");
  fit->add_option("--c-low", opt.c_low);
  fit->add_option("--c-ls", opt.c_ls);
  fit->add_option("--a-ls", opt.a_ls);
  fit->add_option("--c1", opt.c1);
  fit->add_option("--k", opt.k);
  fit->add_option("--d", opt.d);
  fit->add_option("--delta", opt.delta);

  auto* rel = app.add_subcommand("relclose", "relatively close cylinder families");
  rel->require_subcommand(1);
  auto* find = rel->add_subcommand("find", "search a relatively close pair");
  ifs_opt(find);
  find->add_option("--eps", opt.eps)->required();
  find->add_option("--phi", opt.phi, "target angle expression");
  find->add_option("--max-depth", opt.max_depth);
  find->add_option("--p-max", opt.p_max);
  find->add_option("--out", opt.out, "certificate JSON");
  auto* dbl = rel->add_subcommand("double", "double a certified family");
  ifs_opt(dbl);
  dbl->add_option("--cert", opt.cert)->required();
  dbl->add_option("--eps", opt.eps)->required();
  dbl->add_option("--max-depth", opt.max_depth);
  dbl->add_option("--p-max", opt.p_max);
  dbl->add_option("--out", opt.out);
  auto* chain = rel->add_subcommand("chain", "seed pair plus repeated doubling");
  ifs_opt(chain);
  chain->add_option("--eps", opt.eps)->required();
  chain->add_option("--levels", opt.levels);
  chain->add_option("--max-depth", opt.max_depth);
  chain->add_option("--p-max", opt.p_max);
  chain->add_option("--out", opt.out);
  auto* power = rel->add_subcommand("power", "the family {u,v}^n");
  ifs_opt(power);
  power->add_option("--u", opt.u)->required();
  power->add_option("--v", opt.v)->required();
  power->add_option("--n", opt.n)->required();
  power->add_option("--eps", opt.power_eps);
  power->add_option("--out", opt.out);

  auto* dens = app.add_subcommand("density", "density witness and profile of mu_theta");
  ifs_opt(dens);
  dens->add_option("--theta", opt.theta)->required();
  dens->add_option("--n", opt.n, "atom level")->required();
  dens->add_option("--cert", opt.cert)->required();
  dens->add_option("--p-max", opt.p_max);
  dens->add_option("--csv", opt.csv);

  auto* vis = app.add_subcommand("visible", "radial projection covering sums");
  ifs_opt(vis);
  vis->add_option("--ax", opt.ax)->required();
  vis->add_option("--ay", opt.ay)->required();
  vis->add_option("--s", opt.s);
  vis->add_option("--n", opt.n)->required();
  vis->add_option("--n-from", opt.n_from);
  vis->add_option("--exclusion-level", opt.exclusion_level);
  vis->add_option("--csv", opt.csv);

  auto* dio = app.add_subcommand("dioph", "continued-fraction profile of a rotation number");
  dio->add_option("--alpha", opt.alpha)->required();
  dio->add_option("--nmax,--n-max", opt.n_max);
  dio->add_option("--d", opt.d);
  dio->add_option("--csv", opt.csv);

  auto* net = app.add_subcommand("net", "eps-net of a rotation orbit");
  net->add_option("--theta", opt.theta, "rotation angle in radians");
  net->add_option("--alpha", opt.alpha, "rotation number; theta = 2 pi alpha");
  net->add_option("--theta-over-pi", opt.theta_over_pi, "rotation angle over pi");
  net->add_option("--eps", opt.eps)->required();
  net->add_option("--p-max", opt.p_max);
  net->add_option("--d", opt.d);

  auto* count = app.add_subcommand("count", "counting bounds");
  count->require_subcommand(1);
  auto* avoid = count->add_subcommand("avoid", "words avoiding one block per stage");
  avoid->add_option("--m", opt.m)->required();
  avoid->add_option("--s", opt.block)->required();
  avoid->add_option("--blocks", opt.blocks)->required();
  auto* removal = count->add_subcommand("removal", "cylinder removal recursion");
  ifs_opt(removal);
  removal->add_option("--target", opt.target)->required();
  removal->add_option("--steps", opt.steps)->required();
  removal->add_option("--phi", opt.phi);
  removal->add_option("--eps", opt.eps);

  auto* sched = app.add_subcommand("schedule", "s(n), L_n, rho_n and the constant B");
  ifs_opt(sched);
  sched->add_option("--n", opt.n)->required();
  sched->add_option("--c1", opt.c1);
  sched->add_option("--k", opt.k);
  sched->add_option("--d", opt.d);
  sched->add_option("--delta", opt.delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "ERROR usage: " << e.what() << '\n';
    return 2;
  }

  // the chosen subcommand path, e.g. "relclose power"
  std::string path;
  std::string resolved = describe(app);
  for (const CLI::App* sub = &app; !sub->get_subcommands().empty();) {
    sub = sub->get_subcommands().front();
    path += (path.empty() ? "" : " ") + sub->get_name();
    resolved += describe(*sub);
  }

  try {
    if (threads > 0) set_worker_count(threads);
    err << "favlab " FAVLAB_VERSION " " << path << ':' << resolved << " workers=" << worker_count() << '\n';
    Runner r(opt, seed, out, err);
    r.set_resolved(path + resolved);
    if (path == "dim") return r.dim();
    if (path == "render") return r.render();
    if (path == "favard") return r.favard_sweep();
    if (path == "decay fit") return r.decay_fit();
    if (path == "relclose find") return r.relclose_find();
    if (path == "relclose double") return r.relclose_double();
    if (path == "relclose chain") return r.relclose_chain();
    if (path == "relclose power") return r.relclose_power();
    if (path == "density") return r.density();
    if (path == "visible") return r.visible();
    if (path == "dioph") return r.dioph();
    if (path == "net") return r.net();
    if (path == "count avoid") return r.count_avoid();
    if (path == "count removal") return r.count_removal();
    if (path == "schedule") return r.schedule_cmd();
    err << "ERROR usage: unknown subcommand " << path << '\n';
    return 2;
  } catch (const Error& e) {
    err << "ERROR " << code_name(e.code()) << ": " << e.what() << '\n';
    return usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    err << "ERROR internal: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace favlab::cli
