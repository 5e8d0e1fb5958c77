#include "inc3/geometry.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "inc3/errors.hpp"

namespace inc3 {

Rat dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

Rat norm2(const Vec3& a) { return dot(a, a); }

bool vec_less(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}

// Scale a nonzero rational vector to a primitive integer vector whose first
// nonzero component is positive; returns the multiplier applied.
static Rat make_primitive(Vec3& v) {
    Int den = lcm(lcm(v.x.get_den(), v.y.get_den()), v.z.get_den());
    Int num = gcd(gcd(v.x.get_num(), v.y.get_num()), v.z.get_num());
    Rat mult(den, abs(num));
    mult.canonicalize();
    Rat lead = sgn(v.x) != 0 ? v.x : (sgn(v.y) != 0 ? v.y : v.z);
    if (sgn(lead) < 0) mult = -mult;
    v = v.scaled(mult);
    return mult;
}

PlaneChart chart_for_plane(const Vec3& normal, const Point3& origin) {
    if (normal.is_zero()) throw invalid_circle("plane normal is zero");
    std::array<Rat, 3> comp = {rat_abs(normal.x), rat_abs(normal.y), rat_abs(normal.z)};
    int i = 0;
    for (int k = 1; k < 3; ++k)
        if (comp[k] < comp[i]) i = k;
    Vec3 e;
    (i == 0 ? e.x : i == 1 ? e.y : e.z) = 1;
    Vec3 u = cross(normal, e);
    make_primitive(u);
    Vec3 w = cross(normal, u);
    make_primitive(w);
    return PlaneChart{origin, u, w};
}

Circle3::Circle3(const Vec3& normal, const Point3& center, const Rat& radius_sq)
    : n(normal), c(center), r2(radius_sq) {
    if (n.is_zero()) throw invalid_circle("circle normal is zero");
    if (sgn(r2) <= 0) throw invalid_circle("circle squared radius must be positive");
    make_primitive(n);
    d = dot(n, c);
}

bool Circle3::less(const Circle3& o) const {
    if (!(n == o.n)) return vec_less(n, o.n);
    if (d != o.d) return d < o.d;
    if (!(c == o.c)) return vec_less(c, o.c);
    return r2 < o.r2;
}

Line3::Line3(const Point3& b, const Vec3& v) : base(b), dir(v) {
    if (dir.is_zero()) throw degenerate_pair();
    make_primitive(dir);
}

bool Line3::contains(const Point3& p) const { return cross(p - base, dir).is_zero(); }

bool Line3::same_line(const Line3& o) const {
    return cross(dir, o.dir).is_zero() && contains(o.base);
}

bool incidence_test(const Point3& p, const Circle3& c) {
    return dot(c.n, p) == c.d && norm2(p - c.c) == c.r2;
}

ChartPoly restrict_to_chart(const MultiPoly& f, const PlaneChart& chart) {
    std::array<MultiPoly, 3> sub;
    std::array<Rat, 3> o = chart.origin.arr(), u = chart.u.arr(), w = chart.w.arr();
    for (int k = 0; k < 3; ++k) {
        sub[k] = MultiPoly::constant(o[k]);
        sub[k] = sub[k] + MultiPoly::var(0).scaled(u[k]) + MultiPoly::var(1).scaled(w[k]);
    }
    return ChartPoly{chart, f.compose(sub)};
}

ChartPoly circle_to_conic(const Circle3& c) {
    PlaneChart ch = c.chart();
    MultiPoly s2 = MultiPoly::var(0) * MultiPoly::var(0);
    MultiPoly t2 = MultiPoly::var(1) * MultiPoly::var(1);
    return ChartPoly{ch, s2.scaled(norm2(ch.u)) + t2.scaled(norm2(ch.w)) - MultiPoly::constant(c.r2)};
}

static Rat det3(const Vec3& r0, const Vec3& r1, const Vec3& r2) { return dot(r0, cross(r1, r2)); }

Circle3 circle_through_three_points(const Point3& a, const Point3& b, const Point3& c) {
    Vec3 n = cross(b - a, c - a);
    if (n.is_zero()) throw collinear_points();
    // Center: equidistance from a,b and a,c, plus membership in the plane.
    Vec3 r0 = (b - a).scaled(2), r1 = (c - a).scaled(2);
    Rat v0 = norm2(b) - norm2(a), v1 = norm2(c) - norm2(a), v2 = dot(n, a);
    Rat det = det3(r0, r1, n);
    Point3 center{det3({v0, r0.y, r0.z}, {v1, r1.y, r1.z}, {v2, n.y, n.z}) / det,
                  det3({r0.x, v0, r0.z}, {r1.x, v1, r1.z}, {n.x, v2, n.z}) / det,
                  det3({r0.x, r0.y, v0}, {r1.x, r1.y, v1}, {n.x, n.y, v2}) / det};
    return Circle3(n, center, norm2(a - center));
}

namespace {

struct PlaneKey {
    Vec3 n;
    Rat d;
    bool operator<(const PlaneKey& o) const {
        if (!(n == o.n)) return vec_less(n, o.n);
        return d < o.d;
    }
};

struct SphereKey {
    Point3 center;
    Rat r2;
    bool operator<(const SphereKey& o) const {
        if (!(center == o.center)) return vec_less(center, o.center);
        return r2 < o.r2;
    }
};

MultiPoly plane_poly(const PlaneKey& k) {
    MultiPoly p = MultiPoly::var(0).scaled(k.n.x) + MultiPoly::var(1).scaled(k.n.y) +
                  MultiPoly::var(2).scaled(k.n.z) - MultiPoly::constant(k.d);
    return p.canonical();
}

MultiPoly sphere_poly(const SphereKey& k) {
    MultiPoly p;
    for (int v = 0; v < 3; ++v) p = p + MultiPoly::var(v) * MultiPoly::var(v);
    p = p - MultiPoly::var(0).scaled(2 * k.center.x) - MultiPoly::var(1).scaled(2 * k.center.y) -
        MultiPoly::var(2).scaled(2 * k.center.z) + MultiPoly::constant(norm2(k.center) - k.r2);
    return p.canonical();
}

// Compare polynomials as dense coefficient vectors indexed by descending
// monomial order; used only to break witness ties deterministically.
bool poly_coeffs_less(const MultiPoly& a, const MultiPoly& b) {
    auto ia = a.terms.rbegin();
    auto ib = b.terms.rbegin();
    while (ia != a.terms.rend() || ib != b.terms.rend()) {
        if (ia == a.terms.rend()) return Rat(0) < ib->second;
        if (ib == b.terms.rend()) return ia->second < Rat(0);
        if (!(ia->first == ib->first)) {
            bool a_higher = ib->first < ia->first;
            return a_higher ? ia->second < Rat(0) : Rat(0) < ib->second;
        }
        if (ia->second != ib->second) return ia->second < ib->second;
        ++ia, ++ib;
    }
    return false;
}

// Unique sphere containing both circles, if one exists. The sphere's center
// must lie on both circle axes (center + span{normal}).
std::optional<SphereKey> common_sphere(const Circle3& a, const Circle3& b) {
    Vec3 delta = b.c - a.c;
    Vec3 w = cross(a.n, b.n);
    Point3 x;
    if (w.is_zero()) {
        // Parallel axes: a common axis needs delta parallel to the normal.
        if (!cross(delta, a.n).is_zero()) return std::nullopt;
        Rat a1 = 2 * dot(a.n, -delta);
        if (sgn(a1) == 0) return std::nullopt;  // concentric, equal planes were excluded
        Rat t = (a.r2 - b.r2 - norm2(delta)) / a1;
        x = a.c + a.n.scaled(t);
    } else {
        if (sgn(dot(delta, w)) != 0) return std::nullopt;  // skew axes
        Rat t = dot(cross(delta, b.n), w) / norm2(w);
        x = a.c + a.n.scaled(t);
        if (!cross(x - b.c, b.n).is_zero()) return std::nullopt;
    }
    Rat r2 = norm2(x - a.c) + a.r2;
    if (r2 != norm2(x - b.c) + b.r2) return std::nullopt;
    return SphereKey{x, r2};
}

bool circle_on_sphere(const Circle3& c, const SphereKey& s) {
    return cross(s.center - c.c, c.n).is_zero() && norm2(s.center - c.c) + c.r2 == s.r2;
}

long group_size_from_pairs(long pairs) {
    long k = 2;
    while (k * (k - 1) / 2 < pairs) ++k;
    return k * (k - 1) / 2 == pairs ? k : 2;
}

}  // namespace

std::vector<long> max_coplanar_cospherical_groups(
    const std::vector<Circle3>& circles, const std::vector<std::vector<std::size_t>>& groups) {
    std::map<std::pair<std::size_t, std::size_t>, std::optional<SphereKey>> pair_cache;
    std::vector<long> out;
    out.reserve(groups.size());
    for (const auto& members : groups) {
        if (members.empty()) {
            out.push_back(0);
            continue;
        }
        std::map<PlaneKey, long> planes;
        for (std::size_t i : members) ++planes[PlaneKey{circles[i].n, circles[i].d}];
        std::map<SphereKey, long> sphere_pairs;
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b) {
                std::size_t i = members[a], j = members[b];
                if (circles[i].n == circles[j].n && circles[i].d == circles[j].d) continue;
                auto key = std::minmax(i, j);
                auto it = pair_cache.find(key);
                if (it == pair_cache.end())
                    it = pair_cache.emplace(key, common_sphere(circles[i], circles[j])).first;
                if (it->second) ++sphere_pairs[*it->second];
            }
        long best = 0;
        for (const auto& [key, count] : planes) best = std::max(best, count);
        for (const auto& [key, pairs] : sphere_pairs)
            best = std::max(best, group_size_from_pairs(pairs));
        out.push_back(best);
    }
    return out;
}

std::pair<long, std::optional<CapWitness>> max_coplanar_cospherical(const std::vector<Circle3>& circles) {
    if (circles.empty()) return {0, std::nullopt};

    std::map<PlaneKey, std::vector<std::size_t>> planes;
    for (std::size_t i = 0; i < circles.size(); ++i)
        planes[PlaneKey{circles[i].n, circles[i].d}].push_back(i);

    std::map<SphereKey, long> sphere_pairs;
    for (std::size_t i = 0; i < circles.size(); ++i)
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            if (circles[i].n == circles[j].n && circles[i].d == circles[j].d) continue;
            if (auto s = common_sphere(circles[i], circles[j])) ++sphere_pairs[*s];
        }

    long best = 0;
    for (const auto& [key, members] : planes) best = std::max(best, (long)members.size());
    for (const auto& [key, pairs] : sphere_pairs) best = std::max(best, group_size_from_pairs(pairs));

    std::optional<CapWitness> witness;
    auto consider = [&](CapWitness cand) {
        if (!witness || poly_coeffs_less(cand.surface, witness->surface)) witness = std::move(cand);
    };
    for (const auto& [key, members] : planes)
        if ((long)members.size() == best) consider(CapWitness{false, plane_poly(key), members});
    for (const auto& [key, pairs] : sphere_pairs)
        if (group_size_from_pairs(pairs) == best) {
            CapWitness cand{true, sphere_poly(key), {}};
            for (std::size_t i = 0; i < circles.size(); ++i)
                if (circle_on_sphere(circles[i], key)) cand.members.push_back(i);
            consider(std::move(cand));
        }
    return {best, witness};
}

void validate_instance(const IncidenceInstance& inst) {
    std::vector<Point3> pts = inst.points;
    std::sort(pts.begin(), pts.end(), vec_less);
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw domain_error("instance has duplicate points");
    std::vector<Circle3> cs = inst.circles;
    std::sort(cs.begin(), cs.end(), [](const Circle3& a, const Circle3& b) { return a.less(b); });
    if (std::adjacent_find(cs.begin(), cs.end()) != cs.end())
        throw domain_error("instance has duplicate circles");
    long realized = max_coplanar_cospherical(inst.circles).first;
    if (inst.q < realized)
        throw domain_error("declared coplanarity/cosphericality cap " + std::to_string(inst.q) +
                           " is below the realized maximum " + std::to_string(realized));
}

}  // namespace inc3
