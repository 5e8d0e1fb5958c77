#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "inc3/crossings.hpp"
#include "inc3/engine.hpp"
#include "inc3/errors.hpp"
#include "inc3/partition.hpp"

using namespace inc3;

namespace {

Rng rng(0xe7617e);

std::vector<Point3> random_points(int n, std::uint64_t seed) {
    Rng r(seed);
    std::vector<Point3> pts;
    std::set<std::array<std::string, 3>> seen;
    while (static_cast<int>(pts.size()) < n) {
        Point3 p{r.rat(60, 6), r.rat(60, 6), r.rat(60, 6)};
        if (seen.insert({rat_str(p.x), rat_str(p.y), rat_str(p.z)}).second) pts.push_back(p);
    }
    return pts;
}

// Circles through random point triples, so incidences actually occur.
IncidenceInstance random_instance(int m, int n, std::uint64_t seed) {
    IncidenceInstance inst;
    inst.points = random_points(m, seed);
    Rng r(seed ^ 0xc1c1e5);
    while (static_cast<int>(inst.circles.size()) < n) {
        const Point3& a = inst.points[r.below(inst.points.size())];
        const Point3& b = inst.points[r.below(inst.points.size())];
        const Point3& c = inst.points[r.below(inst.points.size())];
        try {
            Circle3 circ = circle_through_three_points(a, b, c);
            bool dup = false;
            for (const Circle3& o : inst.circles) dup = dup || o == circ;
            if (!dup) inst.circles.push_back(circ);
        } catch (const domain_error&) {
            continue;  // degenerate triple, draw again
        }
    }
    inst.q = static_cast<long>(inst.circles.size());
    return inst;
}

// Planar grid fixture: side x side integer grid in z = 0 plus circles through
// grid point triples.
IncidenceInstance grid_instance(int side, int n_circles) {
    IncidenceInstance inst;
    for (int x = 0; x < side; ++x)
        for (int y = 0; y < side; ++y) inst.points.push_back({Rat(x), Rat(y), Rat(0)});
    Rng r(0x9216d);
    while (static_cast<int>(inst.circles.size()) < n_circles) {
        const Point3& a = inst.points[r.below(inst.points.size())];
        const Point3& b = inst.points[r.below(inst.points.size())];
        const Point3& c = inst.points[r.below(inst.points.size())];
        try {
            Circle3 circ = circle_through_three_points(a, b, c);
            bool dup = false;
            for (const Circle3& o : inst.circles) dup = dup || o == circ;
            if (!dup) inst.circles.push_back(circ);
        } catch (const domain_error&) {
            continue;
        }
    }
    inst.q = static_cast<long>(inst.circles.size());
    return inst;
}

void check_report(const IncidenceInstance& inst, const CountReport& rep) {
    CHECK(rep.total == rep.on_surface_contained + rep.on_surface_crossing + rep.in_cells);
    CHECK(rep.total == count_bruteforce(inst));
}

}  // namespace

TEST_CASE("brute force oracle basics") {
    IncidenceInstance inst;
    CHECK(count_bruteforce(inst) == 0);

    // Three points on one circle, that single circle.
    Circle3 unit(Vec3{0, 0, 1}, Point3{0, 0, 0}, 1);
    inst.circles.push_back(unit);
    inst.points = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}, {5, 5, 5}};
    inst.q = 1;
    CHECK(count_bruteforce(inst) == 3);
    CHECK(count_bruteforce_serial(inst) == 3);

    inst.circles.clear();
    CHECK(count_bruteforce(inst) == 0);  // empty circle list
}

TEST_CASE("parallel and serial brute force agree") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        IncidenceInstance inst = random_instance(40, 25, seed);
        CHECK(count_bruteforce(inst) == count_bruteforce_serial(inst));
    }
}

TEST_CASE("partitioned count equals the oracle on small instances") {
    // Below the recursion cutoff the partitioned path is pure brute force;
    // these exercise the report contract on trivial shapes.
    Circle3 unit(Vec3{0, 0, 1}, Point3{0, 0, 0}, 1);
    IncidenceInstance inst;
    inst.circles.push_back(unit);
    inst.points = {{1, 0, 0}, {0, 1, 0}, {-1, 0, 0}};
    inst.q = 1;
    CountReport rep = count_partitioned(inst, 8);
    CHECK(rep.total == 3);
    check_report(inst, rep);
    CHECK_THROWS_AS(count_partitioned(inst, 1), domain_error);
}

TEST_CASE("partitioned count equals the oracle on random instances") {
    for (long r : {2L, 8L, 32L}) {
        IncidenceInstance inst = random_instance(120, 40, 7000 + r);
        CountReport rep = count_partitioned(inst, r);
        check_report(inst, rep);
        CHECK(rep.cells_visited >= 0);
    }
    // A denser one where recursion certainly fires.
    IncidenceInstance big = random_instance(260, 60, 424242);
    CountReport rep = count_partitioned(big, 8, 5);
    check_report(big, rep);
    CHECK(rep.recursion_depth >= 1);
    CHECK(rep.cells_visited >= 1);
}

TEST_CASE("partitioned count is deterministic") {
    IncidenceInstance inst = random_instance(150, 30, 998);
    CountReport a = count_partitioned(inst, 8, 77);
    CountReport b = count_partitioned(inst, 8, 77);
    CHECK(a.total == b.total);
    CHECK(a.on_surface_contained == b.on_surface_contained);
    CHECK(a.on_surface_crossing == b.on_surface_crossing);
    CHECK(a.in_cells == b.in_cells);
    CHECK(a.recursion_depth == b.recursion_depth);
    CHECK(a.cells_visited == b.cells_visited);
    CHECK(a.crossing_total == b.crossing_total);
    CHECK(a.cell_caps == b.cell_caps);
}

TEST_CASE("all points on the surface leave nothing in the cells") {
    // Every point identical: the first balancing stage must put them all on
    // its zero set, so the whole count comes from surface points.
    IncidenceInstance inst;
    Point3 p{1, 2, 0};
    for (int i = 0; i < 100; ++i) inst.points.push_back(p);
    Rng r(31337);
    for (int i = 0; i < 12; ++i) {
        Rat rad(1 + static_cast<long>(r.below(5)), 1 + static_cast<long>(r.below(3)));
        Vec3 normal{Rat(static_cast<long>(r.below(3))), Rat(static_cast<long>(r.below(3))),
                    Rat(1)};
        Point3 center = p;
        center.x += rad;
        inst.circles.push_back(Circle3(normal, center, norm2(center - p)));
    }
    inst.q = 12;
    CountReport rep = count_partitioned(inst, 8);
    check_report(inst, rep);
    CHECK(rep.in_cells == 0);
    CHECK(rep.total == rep.on_surface_contained + rep.on_surface_crossing);
}

TEST_CASE("grid fixture census") {
    IncidenceInstance inst = grid_instance(3, 4);  // 9 points, 4 circles
    long oracle = count_bruteforce(inst);
    CHECK(oracle == count_bruteforce_serial(inst));
    CountReport rep = count_partitioned(inst, 4);
    check_report(inst, rep);

    // The unit circle about the grid center passes through exactly the four
    // axis neighbors.
    IncidenceInstance one;
    one.points = inst.points;
    one.circles.push_back(Circle3(Vec3{0, 0, 1}, Point3{1, 1, 0}, 1));
    one.q = 1;
    CHECK(count_bruteforce(one) == 4);
}

TEST_CASE("no two circles share three points on any fixture") {
    for (IncidenceInstance inst :
         {grid_instance(4, 12), random_instance(60, 30, 5150)}) {
        for (std::size_t i = 0; i < inst.circles.size(); ++i)
            for (std::size_t j = i + 1; j < inst.circles.size(); ++j) {
                int shared = 0;
                for (const Point3& p : inst.points)
                    shared += incidence_test(p, inst.circles[i]) &&
                              incidence_test(p, inst.circles[j]);
                CHECK(shared <= 2);
            }
    }
}

TEST_CASE("cell-entry bound per circle") {
    IncidenceInstance inst = random_instance(90, 20, 616);
    Partition part = build_partition(inst.points, 8, 99);
    int degf = 0;
    for (const MultiPoly& g : part.stages) degf += g.degree();
    for (const Circle3& c : inst.circles) {
        auto cells = circle_sign_vectors(part.stages, c);
        if (cells.empty()) continue;  // contained in a stage surface
        long crossings = 0;
        for (const MultiPoly& g : part.stages) {
            Crossings cr = circle_surface_crossings(g, c);
            REQUIRE(!cr.contained);
            CHECK(cr.points <= 2 * g.degree());
            crossings += cr.points;
        }
        CHECK(static_cast<long>(cells.size()) <= 1 + crossings);
        CHECK(crossings <= 2 * degf);
    }
}

TEST_CASE("rich points") {
    // Three circles through a common point.
    Point3 p{0, 0, 0};
    IncidenceInstance inst;
    inst.points = {p, {2, 0, 0}, {9, 9, 9}};
    inst.circles.push_back(Circle3(Vec3{0, 0, 1}, Point3{1, 0, 0}, 1));
    inst.circles.push_back(Circle3(Vec3{0, 1, 0}, Point3{2, 0, 0}, 4));
    inst.circles.push_back(Circle3(Vec3{1, 0, 0}, Point3{0, 3, 0}, 9));
    inst.q = 3;
    auto rich3 = rich_points(inst, 3);
    REQUIRE(rich3.size() == 1);
    CHECK(rich3[0].first == p);
    CHECK(rich3[0].second == 3);

    // k = 1 returns every point with at least one incidence; (2,0,0) lies on
    // the first circle and nothing else.
    auto rich1 = rich_points(inst, 1);
    REQUIRE(rich1.size() == 2);
    CHECK(rich1[0].first == p);
    CHECK(rich1[1].first == Point3{2, 0, 0});
    CHECK(rich1[1].second == 1);
    CHECK_THROWS_AS(rich_points(inst, 0), domain_error);

    // Census against a direct per-point count on the grid fixture.
    IncidenceInstance grid = grid_instance(4, 10);
    auto rich = rich_points(grid, 2);
    std::map<std::array<std::string, 3>, long> expect;
    for (const Point3& q : grid.points) {
        long hits = 0;
        for (const Circle3& c : grid.circles) hits += incidence_test(q, c);
        if (hits >= 2) expect[{rat_str(q.x), rat_str(q.y), rat_str(q.z)}] = hits;
    }
    CHECK(rich.size() == expect.size());
    for (const auto& [pt, mult] : rich) {
        auto it = expect.find({rat_str(pt.x), rat_str(pt.y), rat_str(pt.z)});
        REQUIRE(it != expect.end());
        CHECK(it->second == mult);
    }
}

TEST_CASE("incidence ceiling") {
    CHECK(k32_bound(0, 10) == 2 * 10);
    CHECK(k32_bound(10, 0) == 0);
    CHECK(k32_bound(5, 8) == 2 * (5 * 4 + 8));  // floor(8^(2/3)) = 4
    CHECK_THROWS_AS(k32_bound(-1, 3), domain_error);

    for (IncidenceInstance inst : {grid_instance(5, 30), random_instance(80, 40, 2024),
                                   grid_instance(3, 4)}) {
        long count = count_bruteforce(inst);
        CHECK(count <= k32_bound(static_cast<long>(inst.points.size()),
                                 static_cast<long>(inst.circles.size())));
    }
}
