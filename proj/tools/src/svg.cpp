#include <cstdio>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "favlab/error.hpp"
#include "favlab/favard.hpp"

namespace favlab::cli {
namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Ifs& ifs, std::size_t depth, const SvgOptions& options) {
  const Disk& disk = ifs.disk();
  const double half = disk.radius * 1.02;
  const double min_x = disk.center.x - half;
  const double max_y = disk.center.y + half;
  const double scale = options.size / (2.0 * half);
  auto px = [&](Vec2 p) { return Vec2{(p.x - min_x) * scale, (max_y - p.y) * scale}; };

  const double row = 6.0;
  const double panel = options.bar_thetas.empty() ? 0.0 : 8.0 + row * static_cast<double>(options.bar_thetas.size());
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(options.size) << "\" height=\""
      << fixed(options.size + panel) << "\" viewBox=\"0 0 " << fixed(options.size) << ' '
      << fixed(options.size + panel) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g class=\"cylinders\" fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"0.5\">\n";

  const auto cylinders = level_geometries(ifs, depth, std::size_t{1} << 20);
  for (const auto& g : cylinders) {
    const Vec2 c = px(g(disk.center));
    svg << "<circle cx=\"" << fixed(c.x) << "\" cy=\"" << fixed(c.y) << "\" r=\""
        << fixed(g.ratio() * disk.radius * scale) << "\"/>\n";
  }
  svg << "</g>\n";

  if (options.chaos_points > 0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<std::size_t> pick(0, ifs.size() - 1);
    Vec2 p = ifs.map(0).fixed_point();
    svg << "<g class=\"points\" fill=\"#b22222\">\n";
    for (std::size_t k = 0; k < options.chaos_points + 20; ++k) {
      p = ifs.map(pick(rng))(p);
      if (k < 20) continue;
      const Vec2 q = px(p);
      svg << "<rect x=\"" << fixed(q.x) << "\" y=\"" << fixed(q.y) << "\" width=\"1\" height=\"1\"/>\n";
    }
    svg << "</g>\n";
  }

  if (!options.bar_thetas.empty()) {
    const LevelCover cover(ifs, options.bar_level);
    svg << "<g class=\"bars\" fill=\"#444\">\n";
    for (std::size_t j = 0; j < options.bar_thetas.size(); ++j) {
      const double theta = options.bar_thetas[j];
      const double origin = project(disk.center, theta) - half;
      const double y = options.size + 8.0 + row * static_cast<double>(j);
      for (const auto& iv : cover.project(theta).intervals()) {
        svg << "<rect x=\"" << fixed((iv.lo - origin) * scale) << "\" y=\"" << fixed(y) << "\" width=\""
            << fixed((iv.hi - iv.lo) * scale) << "\" height=\"" << fixed(row - 1.0) << "\"/>\n";
      }
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace favlab::cli
