#pragma once

#include <set>
#include <vector>

#include "inc3/geometry.hpp"
#include "inc3/unipoly.hpp"

namespace inc3 {

// A surface g restricted to a circle's chart and reduced modulo the circle's
// conic q(s,t) = |u|^2 s^2 + |w|^2 t^2 - r2: on the circle, g agrees with
// alpha(s) + beta(s) t. gamma = |w|^2 and c(s) = |u|^2 s^2 - r2 carry the
// conic, so t^2 = -c(s)/gamma on the circle.
struct ReducedRestriction {
    UniPoly alpha, beta;
    Rat gamma;
    UniPoly c;
};

ReducedRestriction reduce_on_circle(const MultiPoly& g, const Circle3& circle);

// Eliminant of (conic, alpha + beta t) in t: vanishes at exactly the chart
// abscissas of circle points lying on the surface.
UniPoly crossing_resultant(const ReducedRestriction& r);

struct Crossings {
    bool contained = false;  // the circle lies inside the surface
    long points = 0;         // distinct real intersection points otherwise
};

// Exact number of distinct points of circle ∩ Z(g), or containment.
Crossings circle_surface_crossings(const MultiPoly& g, const Circle3& circle);

// Sign of lam + mu * sqrt(disc) for rational inputs, disc >= 0.
int quadratic_sign(const Rat& lam, const Rat& mu, const Rat& disc);

// All sign vectors (entries +1/-1) attained by (g_1, ..., g_k) at circle
// points where no g_i vanishes. Empty when some g_i contains the circle.
std::set<std::vector<int>> circle_sign_vectors(const std::vector<MultiPoly>& gs,
                                               const Circle3& circle);

// Combined routing of one circle against a list of surfaces: the sign vectors
// it attains plus the total crossing-point count, computed from a single
// restriction pass per surface. Matches circle_sign_vectors and the sum of
// per-surface circle_surface_crossings exactly.
struct CircleRoute {
    bool contained = false;  // some surface contains the circle
    long crossings = 0;      // sum over surfaces of distinct crossing points
    std::set<std::vector<int>> cells;
};

CircleRoute circle_route(const std::vector<MultiPoly>& gs, const Circle3& circle);

}  // namespace inc3
