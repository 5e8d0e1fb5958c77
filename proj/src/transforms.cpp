#include "inc3/transforms.hpp"

#include "inc3/errors.hpp"

namespace inc3 {

Point3 invert_point(const Point3& p) {
    Rat s = norm2(p);
    if (sgn(s) == 0) throw domain_error("cannot invert the inversion center");
    return p.scaled(1 / s);
}

namespace {

// n.x = d and a sphere |x - c|^2 = q, given by center and squared radius.
struct PlaneEq {
    Vec3 n;
    Rat d;
};
struct SphereEq {
    Point3 c;
    Rat q;
};

// Inversion image of the plane n.x = d.
// Through the origin it is fixed; otherwise it is a sphere through the origin.
bool invert_plane(const PlaneEq& p, PlaneEq& out_p, SphereEq& out_s) {
    if (sgn(p.d) == 0) {
        out_p = p;
        return true;
    }
    Point3 c = p.n.scaled(1 / (2 * p.d));
    out_s = SphereEq{c, norm2(c)};
    return false;
}

// Inversion image of a sphere. Through the origin it becomes the radical
// plane 2c.x = 1; otherwise a sphere, scaled by the power of the origin.
bool invert_sphere(const SphereEq& s, PlaneEq& out_p, SphereEq& out_s) {
    Rat e = norm2(s.c) - s.q;
    if (sgn(e) == 0) {
        out_p = PlaneEq{s.c.scaled(2), 1};
        return true;
    }
    out_s = SphereEq{s.c.scaled(1 / e), s.q / (e * e)};
    return false;
}

Circle3 circle_from_plane_sphere(const PlaneEq& p, const SphereEq& s) {
    Rat h = (p.d - dot(p.n, s.c)) / norm2(p.n);
    Point3 center = s.c + p.n.scaled(h);
    return Circle3(p.n, center, s.q - h * h * norm2(p.n));
}

Circle3 circle_from_two_spheres(const SphereEq& a, const SphereEq& b) {
    Vec3 n = (b.c - a.c).scaled(2);
    Rat d = (norm2(b.c) - b.q) - (norm2(a.c) - a.q);
    return circle_from_plane_sphere(PlaneEq{n, d}, a);
}

Line3 line_from_two_planes(const PlaneEq& a, const PlaneEq& b) {
    Vec3 dir = cross(a.n, b.n);
    Rat det = norm2(a.n) * norm2(b.n) - dot(a.n, b.n) * dot(a.n, b.n);
    Rat alpha = (a.d * norm2(b.n) - b.d * dot(a.n, b.n)) / det;
    Rat beta = (b.d * norm2(a.n) - a.d * dot(a.n, b.n)) / det;
    return Line3(a.n.scaled(alpha) + b.n.scaled(beta), dir);
}

// The two defining surfaces of a circle: its plane and its diameter sphere.
PlaneEq circle_plane(const Circle3& c) { return PlaneEq{c.n, c.d}; }
SphereEq circle_diameter_sphere(const Circle3& c) { return SphereEq{c.c, c.r2}; }

}  // namespace

Circle3 invert_circle(const Circle3& c) {
    if (incidence_test(Point3{0, 0, 0}, c)) throw origin_on_circle();
    PlaneEq p1, p2;
    SphereEq s1, s2;
    bool plane1 = invert_plane(circle_plane(c), p1, s1);
    bool plane2 = invert_sphere(circle_diameter_sphere(c), p2, s2);
    if (plane1 && plane2) throw origin_on_circle();  // unreachable: both imply 0 on c
    if (plane1) return circle_from_plane_sphere(p1, s2);
    if (plane2) return circle_from_plane_sphere(p2, s1);
    return circle_from_two_spheres(s1, s2);
}

Line3 invert_circle_to_line(const Circle3& c) {
    if (!incidence_test(Point3{0, 0, 0}, c))
        throw domain_error("circle misses the inversion center; its image is a circle");
    // Both defining surfaces pass through the origin, so both images are planes.
    return line_from_two_planes(PlaneEq{c.n, 0}, PlaneEq{c.c.scaled(2), 1});
}

Circle3 invert_line(const Line3& l) {
    if (l.contains(Point3{0, 0, 0}))
        throw domain_error("line through the inversion center is its own image");
    Point3 a = l.base;
    Point3 b = l.base + l.dir;
    if (a.is_zero()) a = l.base - l.dir;
    if (b.is_zero()) b = l.base + l.dir.scaled(2);
    return circle_through_three_points(invert_point(a), invert_point(b), Point3{0, 0, 0});
}

MultiPoly invert_surface(const MultiPoly& g) {
    if (g.is_zero()) throw origin_on_surface_required();
    std::array<Rat, 3> zero = {Rat(0), Rat(0), Rat(0)};
    if (sgn(g.eval(zero)) != 0) throw origin_on_surface_required();
    MultiPoly s;
    for (int v = 0; v < 3; ++v) s = s + MultiPoly::var(v) * MultiPoly::var(v);
    int dg = g.degree();
    // g(x/S) * S^dg: each monomial x^e picks up the cofactor S^(dg - |e|).
    MultiPoly out;
    for (const auto& [e, coef] : g.terms) {
        MultiPoly term = MultiPoly::constant(coef);
        for (int v = 0; v < 3; ++v) term = term * MultiPoly::var(v, e.e[v]);
        out = out + term * s.pow(dg - (e.e[0] + e.e[1] + e.e[2]));
    }
    MultiPoly q;
    while (mp_divides(s, out, &q)) out = q;
    return out;
}

bool on_sphere(const Sphere& s, const Point3& p) { return norm2(p - s.center) == s.r2; }

bool circle_on_sphere(const Circle3& c, const Sphere& s) {
    return cross(s.center - c.c, c.n).is_zero() && norm2(s.center - c.c) + c.r2 == s.r2;
}

namespace {

void check_pole(const Sphere& s, const Point3& pole) {
    if (sgn(s.r2) <= 0) throw domain_error("sphere squared radius must be positive");
    if (!on_sphere(s, pole)) throw pole_on_input("pole does not lie on the sphere");
}

}  // namespace

Point3 stereographic_map(const Sphere& s, const Point3& pole, const Point3& p) {
    check_pole(s, pole);
    Vec3 v = p - pole;
    Rat q = norm2(v);
    if (sgn(q) == 0) throw pole_on_input("cannot project the pole itself");
    return pole + v.scaled(2 * s.r2 / q);
}

Circle3 stereographic_circle(const Sphere& s, const Point3& pole, const Circle3& c) {
    check_pole(s, pole);
    if (!circle_on_sphere(c, s)) throw not_contained();
    if (incidence_test(pole, c)) throw pole_on_input("circle passes through the pole");
    Circle3 shifted(c.n, c.c - pole, c.r2);
    Circle3 k = invert_circle(shifted);
    Rat lam = 2 * s.r2;
    return Circle3(k.n, k.c.scaled(lam) + pole, k.r2 * lam * lam);
}

Line3 stereographic_circle_to_line(const Sphere& s, const Point3& pole, const Circle3& c) {
    check_pole(s, pole);
    if (!circle_on_sphere(c, s)) throw not_contained();
    if (!incidence_test(pole, c)) throw pole_on_input("circle misses the pole; its image is a circle");
    Circle3 shifted(c.n, c.c - pole, c.r2);
    Line3 img = invert_circle_to_line(shifted);
    return Line3(img.base.scaled(2 * s.r2) + pole, img.dir);
}

}  // namespace inc3
