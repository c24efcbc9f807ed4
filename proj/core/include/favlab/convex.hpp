#pragma once

#include <cstddef>
#include <vector>

#include "favlab/geometry.hpp"

namespace favlab {

class Ifs;

/// Counter-clockwise convex hull (Andrew's monotone chain). Collinear input
/// collapses to its two extreme points, coincident input to one point.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Containment in a convex polygon (or segment / point) up to `tolerance`.
bool contains(const std::vector<Vec2>& hull, Vec2 p, double tolerance);

/// F_i(P) inside P for every map, checked on the images of the vertices.
bool polygon_invariant(const Ifs& ifs, const std::vector<Vec2>& hull, double tolerance = 1e-12);

/// Hull of the level-`depth` images of the disk centre, scaled about its
/// centroid until the vertex check certifies invariance. Degenerate
/// (collinear) attractors keep their segment hull when it is invariant.
std::vector<Vec2> certified_hull(const Ifs& ifs, std::size_t depth = 8);

}  // namespace favlab
