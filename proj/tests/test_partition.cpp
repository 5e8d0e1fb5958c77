#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "inc3/errors.hpp"
#include "inc3/partition.hpp"

using namespace inc3;

static std::vector<Point3> random_points(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Point3> pts;
    pts.reserve(n);
    while (pts.size() < n) {
        Point3 p{rng.rat(100, 8), rng.rat(100, 8), rng.rat(100, 8)};
        pts.push_back(p);
    }
    return pts;
}

TEST_CASE("polynomial space dimensions") {
    CHECK(veronese_dim(1) == 3);
    CHECK(veronese_dim(2) == 9);
    CHECK(veronese_dim(3) == 19);
    CHECK(veronese_dim(4) == 34);
    CHECK(veronese_dim(6) == 83);
    CHECK(min_bisection_degree(1) == 1);
    CHECK(min_bisection_degree(3) == 1);
    CHECK(min_bisection_degree(4) == 2);
    CHECK(min_bisection_degree(9) == 2);
    CHECK(min_bisection_degree(16) == 3);
    CHECK(min_bisection_degree(32) == 4);
    CHECK(min_bisection_degree(64) == 6);
}

static void check_bisects(const MultiPoly& p, const std::vector<std::vector<Point3>>& classes) {
    for (const auto& cls : classes) {
        long pos = 0, neg = 0;
        for (const Point3& x : cls) {
            int s = sgn(p.eval(x.arr()));
            pos += s > 0;
            neg += s < 0;
        }
        long cap = (static_cast<long>(cls.size()) + 1) / 2;
        CHECK(pos <= cap);
        CHECK(neg <= cap);
    }
}

TEST_CASE("single class is bisected by a plane") {
    auto pts = random_points(101, 7);
    MultiPoly p = bisecting_polynomial({pts}, 1, 11);
    CHECK(p.degree() == 1);
    check_bisects(p, {pts});
}

TEST_CASE("simultaneous bisection of several classes") {
    SUBCASE("two classes, degree 1") {
        std::vector<std::vector<Point3>> classes = {random_points(60, 1), random_points(41, 2)};
        MultiPoly p = bisecting_polynomial(classes, 1, 5);
        CHECK(p.degree() <= 1);
        check_bisects(p, classes);
    }
    SUBCASE("four classes, degree 2") {
        std::vector<std::vector<Point3>> classes = {random_points(30, 3), random_points(25, 4),
                                                    random_points(40, 5), random_points(17, 6)};
        MultiPoly p = bisecting_polynomial(classes, 2, 5);
        CHECK(p.degree() <= 2);
        check_bisects(p, classes);
    }
    SUBCASE("clustered classes") {
        // Classes concentrated around distant sites, sizes 2 and 3.
        std::vector<std::vector<Point3>> classes;
        Rng rng(99);
        for (int c = 0; c < 8; ++c) {
            Point3 site{Rat(100 * (c % 4)), Rat(100 * (c / 4)), Rat(50 * c)};
            std::vector<Point3> cls;
            for (int i = 0; i < 2 + (c % 2); ++i)
                cls.push_back(site + Point3{rng.rat(3, 4), rng.rat(3, 4), rng.rat(3, 4)});
            classes.push_back(cls);
        }
        MultiPoly p = bisecting_polynomial(classes, 2, 17);
        check_bisects(p, classes);
    }
}

TEST_CASE("degree budget is enforced") {
    std::vector<std::vector<Point3>> classes;
    for (int c = 0; c < 4; ++c) classes.push_back(random_points(4, 20 + c));
    CHECK_THROWS_AS(bisecting_polynomial(classes, 1, 3), budget_too_small);
    CHECK_THROWS_AS(bisecting_polynomial(classes, 0, 3), budget_too_small);
}

TEST_CASE("partition guarantees") {
    auto pts = random_points(200, 41);
    for (long r : {2L, 8L, 32L}) {
        Partition part = build_partition(pts, r, 1234);
        PartitionStats st = partition_stats(part, pts);
        CAPTURE(r);
        long cap = (200 + r - 1) / r;
        CHECK(st.max_cell <= cap);
        CHECK(st.degree <= static_cast<int>(std::ceil(6 * std::cbrt(double(r)))));
        CHECK(st.on_surface + [&] {
            auto cells = assign_point_cells(part, pts);
            long in_cells = 0;
            for (auto& s : cells) {
                bool zero = s.empty();
                for (int v : s) zero = zero || v == 0;
                in_cells += !zero;
            }
            return in_cells;
        }() == 200);
        long cellcap = 1;
        for (int i = 0; i < 3; ++i) cellcap *= 2 * std::max(st.degree, 1);
        CHECK(st.cells_nonempty <= cellcap);
    }
}

TEST_CASE("stage degree sums for power-of-two targets") {
    auto pts = random_points(512, 4242);
    CHECK(build_partition(pts, 8, 7).degree() <= 4);
    CHECK(build_partition(pts, 32, 7).degree() <= 9);
    CHECK(build_partition(pts, 64, 7).degree() <= 13);
}

TEST_CASE("determinism and kernel agreement") {
    auto pts = random_points(150, 314);
    Partition a = build_partition(pts, 16, 99);
    Partition b = build_partition(pts, 16, 99);
    REQUIRE(a.stages.size() == b.stages.size());
    for (std::size_t i = 0; i < a.stages.size(); ++i) CHECK(a.stages[i] == b.stages[i]);
    CHECK(assign_point_cells(a, pts) == assign_point_cells_serial(a, pts));
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(build_partition({}, 0, 1), domain_error);
    Partition empty = build_partition({}, 8, 1);
    CHECK(empty.stages.empty());
    PartitionStats st = partition_stats(empty, {});
    CHECK(st.cells_nonempty == 0);

    // All-identical points can never be split; they land on the surface or
    // in one tiny cell, and the builder must not loop forever.
    std::vector<Point3> same(5, Point3{1, 2, 3});
    Partition p = build_partition(same, 4, 3);
    PartitionStats st2 = partition_stats(p, same);
    CHECK(st2.max_cell + st2.on_surface >= 5);
}
