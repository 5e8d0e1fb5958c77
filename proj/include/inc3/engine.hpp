#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "inc3/geometry.hpp"

namespace inc3 {

// One exact incidence count, split by the role the partition surface gives
// each point and circle: surface points on circles inside the surface,
// surface points on circles crossing it, and everything counted inside the
// open cells (recursively). total always equals the sum of the three parts.
struct CountReport {
    long total = 0;
    long on_surface_contained = 0;
    long on_surface_crossing = 0;
    long in_cells = 0;
    int recursion_depth = 0;      // deepest subinstance level processed
    long cells_visited = 0;       // subinstances recursed into, all levels
    long crossing_total = 0;      // circle/stage-surface crossing points, all levels
    std::vector<long> cell_caps;  // realized coplanar/cospherical cap per top-level cell
};

// Exact pair count over points x circles. The two kernels perform identical
// arithmetic; the first distributes the outer loop across threads.
long count_bruteforce(const IncidenceInstance& inst);
long count_bruteforce_serial(const IncidenceInstance& inst);

// Exact count through a seeded partition: each circle is routed to exactly
// the sign cells it enters (decided by root isolation along the circle),
// surface points are tested directly, and cells recurse until the brute-force
// cutoff. Every r >= 2 returns the same total; r only shapes the recursion.
CountReport count_partitioned(const IncidenceInstance& inst, long r = 8, std::uint64_t seed = 1);

// Points lying on at least k circles (k >= 1), with exact multiplicities,
// in input order.
std::vector<std::pair<Point3, long>> rich_points(const IncidenceInstance& inst, long k);

// Frozen-constant ceiling on the incidence count of m points and n circles:
// no two circles share three points, so counting point triples per circle
// bounds any count by 2 (m n^(2/3) + n). Used as a sanity ceiling in tests.
long k32_bound(long m, long n);

}  // namespace inc3
