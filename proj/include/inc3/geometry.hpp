#pragma once

#include <optional>
#include <vector>

#include "inc3/multipoly.hpp"
#include "inc3/rational.hpp"

namespace inc3 {

struct Vec3 {
    Rat x, y, z;

    Vec3() : x(0), y(0), z(0) {}
    Vec3(Rat px, Rat py, Rat pz) : x(std::move(px)), y(std::move(py)), z(std::move(pz)) {}

    friend bool operator==(const Vec3& a, const Vec3& b) = default;
    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 scaled(const Rat& a) const { return {x * a, y * a, z * a}; }
    bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0 && sgn(z) == 0; }
    std::array<Rat, 3> arr() const { return {x, y, z}; }
};

using Point3 = Vec3;

Rat dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
Rat norm2(const Vec3& a);
bool vec_less(const Vec3& a, const Vec3& b);  // lexicographic, for deterministic ordering

// Rational affine frame of a plane: origin + span{u, w} with u . w = 0.
struct PlaneChart {
    Vec3 origin, u, w;

    friend bool operator==(const PlaneChart& a, const PlaneChart& b) = default;
    Vec3 normal() const { return cross(u, w); }
    Point3 point_at(const Rat& s, const Rat& t) const { return origin + u.scaled(s) + w.scaled(t); }
};

// Chart whose origin is `origin`, spanning the plane with the given normal.
// The basis is a deterministic function of the normal, scaled to primitive
// integer vectors so chart coordinates keep coefficients small.
PlaneChart chart_for_plane(const Vec3& normal, const Point3& origin);

// Circle in the plane n.x = d with center c and squared radius r2.
struct Circle3 {
    Vec3 n;  // primitive integer normal, first nonzero component positive
    Rat d;
    Point3 c;
    Rat r2;

    Circle3(const Vec3& normal, const Point3& center, const Rat& radius_sq);
    friend bool operator==(const Circle3& a, const Circle3& b) = default;
    bool less(const Circle3& o) const;  // deterministic total order
    PlaneChart chart() const { return chart_for_plane(n, c); }
};

struct Line3 {
    Point3 base;
    Vec3 dir;  // nonzero

    Line3(const Point3& b, const Vec3& v);
    bool contains(const Point3& p) const;
    bool same_line(const Line3& o) const;  // equality as point sets
};

struct IncidenceInstance {
    std::vector<Point3> points;
    std::vector<Circle3> circles;
    long q = 0;  // declared coplanarity/cosphericality cap
};

bool incidence_test(const Point3& p, const Circle3& c);

// Restriction of a trivariate polynomial to a chart, as a bivariate in (s, t).
struct ChartPoly {
    PlaneChart chart;
    MultiPoly p;  // variables 0 = s, 1 = t; variable 2 unused
};

ChartPoly restrict_to_chart(const MultiPoly& f, const PlaneChart& chart);
// The circle as a conic in its own chart: |u|^2 s^2 + |w|^2 t^2 - r2.
ChartPoly circle_to_conic(const Circle3& c);

Circle3 circle_through_three_points(const Point3& a, const Point3& b, const Point3& c);

// Sphere or plane realizing the coplanarity/cosphericality maximum. The
// defining polynomial is canonical, so witnesses compare deterministically.
struct CapWitness {
    bool is_sphere = false;
    MultiPoly surface;                  // canonical defining polynomial
    std::vector<std::size_t> members;   // indices of contained circles
};

// Maximum number of input circles lying in one common plane or sphere.
// Witness ties break toward the lexicographically smallest coefficient vector.
std::pair<long, std::optional<CapWitness>> max_coplanar_cospherical(const std::vector<Circle3>& circles);

// The same maximum for several index subsets of one circle list at once,
// without witnesses; sphere computations for pairs appearing in more than one
// subset are shared.
std::vector<long> max_coplanar_cospherical_groups(const std::vector<Circle3>& circles,
                                                  const std::vector<std::vector<std::size_t>>& groups);

// Throws unless points are distinct, circles are distinct, and the declared
// cap is at least the realized maximum.
void validate_instance(const IncidenceInstance& inst);

}  // namespace inc3
