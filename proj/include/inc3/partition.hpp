#pragma once

#include <cstdint>
#include <vector>

#include "inc3/geometry.hpp"

namespace inc3 {

// Number of non-constant monomials of degree <= d in three variables.
long veronese_dim(int degree);
// Smallest degree whose polynomial space can simultaneously bisect the
// given number of point classes.
int min_bisection_degree(long num_classes);

// A polynomial of the requested degree whose positive and negative sides each
// hold at most ceil(|S|/2) points of every class S. Points where it vanishes
// count for neither side. The search is seeded and deterministic: an annealed
// Gauss-Newton pass on a smoothed balance map proposes a direction in the
// space of scaled monomials, an exact pass intersects the classes' feasible
// threshold intervals, and the result is verified by exact sign counts.
// Throws budget_too_small when the degree cannot bisect that many classes.
MultiPoly bisecting_polynomial(const std::vector<std::vector<Point3>>& classes, int degree,
                               std::uint64_t seed);

// Sign-vector partition of space: a point's cell is the vector of signs of
// the stage polynomials; any zero sign puts the point on the zero set of the
// product instead. Each halving round leaves every class produced by the
// earlier rounds with at most half its points on either side, so ceil(log2 r)
// rounds bound every cell by ceil(m / r). A round usually contributes one
// polynomial; when the simultaneous search cannot realize a single surface it
// contributes several that divide the classes between them, still within the
// stated degree budget.
struct Partition {
    std::vector<MultiPoly> stages;
    long target_r = 1;

    MultiPoly product() const;
    int degree() const;  // total degree of the product
};

Partition build_partition(const std::vector<Point3>& pts, long r, std::uint64_t seed);

// Stage signs per point, entries in {-1, 0, +1}. The parallel kernel and the
// serial reference perform identical exact arithmetic.
std::vector<std::vector<int>> assign_point_cells(const Partition& part,
                                                 const std::vector<Point3>& pts);
std::vector<std::vector<int>> assign_point_cells_serial(const Partition& part,
                                                        const std::vector<Point3>& pts);

struct PartitionStats {
    long points_total = 0;
    long on_surface = 0;     // points with some stage sign zero
    long cells_nonempty = 0;
    long max_cell = 0;       // largest cell population
    int degree = 0;
};

PartitionStats partition_stats(const Partition& part, const std::vector<Point3>& pts);

}  // namespace inc3
