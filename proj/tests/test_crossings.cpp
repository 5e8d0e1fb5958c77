#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "inc3/crossings.hpp"
#include "inc3/transforms.hpp"

using namespace inc3;

static Rng rng(0x5eed5eed);

static MultiPoly mp_x() { return MultiPoly::var(0); }
static MultiPoly mp_y() { return MultiPoly::var(1); }
static MultiPoly mp_z() { return MultiPoly::var(2); }
static MultiPoly mp_c(const Rat& a) { return MultiPoly::constant(a); }

static const Circle3 kUnit(Vec3{0, 0, 1}, Point3{0, 0, 0}, 1);

TEST_CASE("plane sections of the unit circle") {
    CHECK(circle_surface_crossings(mp_x() - mp_c(Rat(1, 2)), kUnit).points == 2);  // secant
    CHECK(circle_surface_crossings(mp_x() - mp_c(1), kUnit).points == 1);          // tangent
    CHECK(circle_surface_crossings(mp_x() - mp_c(2), kUnit).points == 0);          // misses
    // The same three cases where the surface contains whole chart lines.
    CHECK(circle_surface_crossings(mp_y() - mp_c(Rat(1, 2)), kUnit).points == 2);
    CHECK(circle_surface_crossings(mp_y() - mp_c(1), kUnit).points == 1);
    CHECK(circle_surface_crossings(mp_y() - mp_c(2), kUnit).points == 0);
    CHECK_FALSE(circle_surface_crossings(mp_x() - mp_c(1), kUnit).contained);
}

TEST_CASE("containment") {
    CHECK(circle_surface_crossings(mp_z(), kUnit).contained);
    MultiPoly sphere = mp_x() * mp_x() + mp_y() * mp_y() + mp_z() * mp_z() - mp_c(1);
    CHECK(circle_surface_crossings(sphere, kUnit).contained);
    // Any multiple of a containing surface also contains the circle.
    CHECK(circle_surface_crossings(sphere * (mp_x() - mp_c(7)), kUnit).contained);
    CHECK_FALSE(circle_surface_crossings(sphere + mp_c(1), kUnit).contained);
}

TEST_CASE("sphere sections") {
    MultiPoly shifted = (mp_x() - mp_c(1)) * (mp_x() - mp_c(1)) + mp_y() * mp_y() +
                        mp_z() * mp_z() - mp_c(1);
    CHECK(circle_surface_crossings(shifted, kUnit).points == 2);
    MultiPoly tangent_in = (mp_x() - mp_c(1)) * (mp_x() - mp_c(1)) + mp_y() * mp_y() +
                           mp_z() * mp_z() - mp_c(4);
    CHECK(circle_surface_crossings(tangent_in, kUnit).points == 1);
}

TEST_CASE("products accumulate distinct points") {
    MultiPoly g = (mp_x() - mp_c(Rat(1, 2))) * (mp_y() - mp_c(Rat(1, 2)));
    CHECK(circle_surface_crossings(g, kUnit).points == 4);
    // Shared point (1,0,0): x-1 tangent there, y secant through it.
    MultiPoly h = (mp_x() - mp_c(1)) * mp_y();
    CHECK(circle_surface_crossings(h, kUnit).points == 2);
}

// Independent oracle for circles with a rational parametrization
//   P(tau) = center + rho * ((1 - tau^2) u0 + 2 tau w0) / (1 + tau^2),
// where u0, w0 are rational unit vectors spanning the plane. Crossings with g
// are the distinct real roots of the numerator of g(P(tau)), plus the point at
// tau = infinity when g vanishes there.
struct ParamCircle {
    Point3 center;
    Rat rho;  // rational radius
    Vec3 u0, w0;

    Circle3 circle() const { return Circle3(cross(u0, w0), center, rho * rho); }

    Crossings oracle(const MultiPoly& g) const {
        UniPoly den({1, 0, 1});            // 1 + tau^2
        UniPoly one_minus({1, 0, -1});     // 1 - tau^2
        UniPoly two_tau({0, 2});
        std::array<UniPoly, 3> num;
        std::array<Rat, 3> cen = center.arr(), u = u0.arr(), w = w0.arr();
        for (int i = 0; i < 3; ++i)
            num[i] = den.scaled(cen[i]) + one_minus.scaled(rho * u[i]) + two_tau.scaled(rho * w[i]);
        int d = g.degree();
        UniPoly n;
        for (const auto& [e, coef] : g.terms) {
            UniPoly term = UniPoly::constant(coef);
            for (int i = 0; i < 3; ++i) term = term * num[i].pow(e.e[i]);
            n = n + term * den.pow(d - (e.e[0] + e.e[1] + e.e[2]));
        }
        Point3 at_inf = center - u0.scaled(rho);  // limit of P as tau -> infinity
        bool inf_on = sgn(g.eval(at_inf.arr())) == 0;
        if (n.is_zero()) return {true, 0};
        return {false, sturm_count_all(n) + (inf_on ? 1 : 0)};
    }
};

static MultiPoly random_poly(int max_deg) {
    MultiPoly g;
    for (int a = 0; a <= max_deg; ++a)
        for (int b = 0; a + b <= max_deg; ++b)
            for (int c = 0; a + b + c <= max_deg; ++c)
                if (rng.below(5) < 2)
                    g = g + MultiPoly::var(0, a) * MultiPoly::var(1, b) * MultiPoly::var(2, c) *
                                mp_c(rng.rat(6, 3));
    return g;
}

TEST_CASE("random surfaces against the parametrization oracle") {
    // A flat circle and a tilted one (rotated by a rational rotation).
    ParamCircle flat{Point3{Rat(1, 3), -2, Rat(5, 7)}, Rat(3, 2), Vec3{1, 0, 0}, Vec3{0, 1, 0}};
    ParamCircle tilted{Point3{1, 1, -1},
                       Rat(7, 5),
                       Vec3{Rat(3, 5), Rat(4, 5), 0},
                       Vec3{Rat(-12, 25), Rat(9, 25), Rat(4, 5)}};
    REQUIRE(norm2(tilted.u0) == 1);
    REQUIRE(norm2(tilted.w0) == 1);
    REQUIRE(dot(tilted.u0, tilted.w0) == 0);

    for (const ParamCircle& pc : {flat, tilted}) {
        Circle3 circ = pc.circle();
        int checked = 0;
        while (checked < 60) {
            MultiPoly g = random_poly(3);
            if (g.is_zero()) continue;
            Crossings expect = pc.oracle(g);
            Crossings got = circle_surface_crossings(g, circ);
            CHECK(got.contained == expect.contained);
            CHECK(got.points == expect.points);
            if (!got.contained) CHECK(got.points <= 2 * g.degree());
            ++checked;
        }
    }
}

TEST_CASE("sign vectors on the unit circle") {
    using SV = std::set<std::vector<int>>;
    CHECK(circle_sign_vectors({mp_x(), mp_y()}, kUnit) ==
          SV{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}});
    CHECK(circle_sign_vectors({mp_x() - mp_c(2)}, kUnit) == SV{{-1}});
    CHECK(circle_sign_vectors({mp_x() - mp_c(1)}, kUnit) == SV{{-1}});  // tangent
    CHECK(circle_sign_vectors({mp_z()}, kUnit).empty());                // vanishes on circle
    CHECK(circle_sign_vectors({mp_x() * mp_x() + mp_y() * mp_y() - mp_c(Rat(1, 4))}, kUnit) ==
          SV{{1}});
    CHECK(circle_sign_vectors({mp_x(), mp_x() * mp_x() + mp_y() * mp_y() - mp_c(2)}, kUnit) ==
          SV{{1, -1}, {-1, -1}});
    CHECK(circle_sign_vectors({}, kUnit).empty());
}

TEST_CASE("sign vectors cover every arc found by dense sampling") {
    ParamCircle tilted{Point3{-1, Rat(1, 2), 2},
                       Rat(6, 5),
                       Vec3{Rat(3, 5), Rat(4, 5), 0},
                       Vec3{Rat(-12, 25), Rat(9, 25), Rat(4, 5)}};
    Circle3 circ = tilted.circle();
    for (int iter = 0; iter < 12; ++iter) {
        std::vector<MultiPoly> gs;
        for (int k = 0; k < 3; ++k) {
            MultiPoly g = random_poly(2);
            if (!g.is_zero()) gs.push_back(g);
        }
        if (gs.empty()) continue;
        auto exact = circle_sign_vectors(gs, circ);

        std::set<std::vector<int>> sampled;
        double cx = rat_double(tilted.center.x), cy = rat_double(tilted.center.y),
               cz = rat_double(tilted.center.z), r = rat_double(tilted.rho);
        for (int i = 0; i < 4000; ++i) {
            double th = 2 * M_PI * i / 4000;
            double px = cx + r * (std::cos(th) * rat_double(tilted.u0.x) + std::sin(th) * rat_double(tilted.w0.x));
            double py = cy + r * (std::cos(th) * rat_double(tilted.u0.y) + std::sin(th) * rat_double(tilted.w0.y));
            double pz = cz + r * (std::cos(th) * rat_double(tilted.u0.z) + std::sin(th) * rat_double(tilted.w0.z));
            std::vector<int> v;
            bool near_zero = false;
            for (const MultiPoly& g : gs) {
                double val = 0;
                for (const auto& [e, coef] : g.terms)
                    val += rat_double(coef) * std::pow(px, e.e[0]) * std::pow(py, e.e[1]) *
                           std::pow(pz, e.e[2]);
                if (std::fabs(val) < 1e-7) {
                    near_zero = true;
                    break;
                }
                v.push_back(val > 0 ? 1 : -1);
            }
            if (!near_zero) sampled.insert(v);
        }
        for (const auto& v : sampled) CHECK(exact.count(v) == 1);
    }
}
