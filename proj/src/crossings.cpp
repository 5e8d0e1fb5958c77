#include "inc3/crossings.hpp"

#include <algorithm>
#include <cassert>

#include "inc3/errors.hpp"

namespace inc3 {

ReducedRestriction reduce_on_circle(const MultiPoly& g, const Circle3& circle) {
    PlaneChart chart = circle.chart();
    MultiPoly restricted = restrict_to_chart(g, chart).p;

    ReducedRestriction out;
    out.gamma = norm2(chart.w);
    out.c = UniPoly({-circle.r2, Rat(0), norm2(chart.u)});

    // Fold t^j down with t^2 = -c/gamma: track t^j mod conic as a_j + b_j t.
    std::vector<MultiPoly> coefs = restricted.coeffs_wrt(1);
    UniPoly tc = out.c.scaled(-1 / out.gamma);  // t^2 equals this in s
    UniPoly a = UniPoly::constant(1), b;        // t^0
    UniPoly alpha, beta;
    for (std::size_t j = 0; j < coefs.size(); ++j) {
        if (j == 1) std::swap(a, b);  // t^1: (0, 1)
        if (j >= 2) {                 // (a + b t) t = b*tc + a t
            UniPoly na = b * tc;
            b = a;
            a = na;
        }
        if (coefs[j].is_zero()) continue;
        UniPoly cj = coefs[j].to_unipoly(0);
        alpha = alpha + cj * a;
        beta = beta + cj * b;
    }
    out.alpha = alpha;
    out.beta = beta;
    return out;
}

UniPoly crossing_resultant(const ReducedRestriction& r) {
    return r.alpha * r.alpha.scaled(r.gamma) + r.c * r.beta * r.beta;
}

namespace {

// Scale alpha and beta by one shared positive rational making both integral
// and jointly coprime. The pair only ever enters sign tests, gcds, and the
// crossing resultant, all of which are invariant under a positive common
// scale, and integer coefficients keep that downstream arithmetic cheap.
void primitive_pair(UniPoly& a, UniPoly& b) {
    Int num_gcd(0), den_lcm(1);
    auto absorb = [&](const UniPoly& p) {
        for (const auto& c : p.coef) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        }
    };
    absorb(a);
    absorb(b);
    if (sgn(num_gcd) == 0) return;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    a = a.scaled(scale);
    b = b.scaled(scale);
}

// Distinct circle points on the surface, given the reduction and the Sturm
// chain of its (square-free) crossing resultant.
long crossing_count(const ReducedRestriction& r, const SturmChain& chain) {
    long points = chain.count_all();
    UniPoly h = uni_gcd(r.alpha, r.beta);
    if (!h.is_zero() && h.deg() > 0) {
        UniPoly hs = uni_square_free(h).primitive();
        SturmChain hchain = SturmChain::from_square_free(hs);
        points -= hchain.count_all();
        // Over a common root of alpha and beta the whole vertical chart line
        // lies in the surface; it meets the circle in 2, 1, or 0 points.
        for (RootInterval root : isolate_roots(hs, hchain)) {
            int sc = sign_at_root(r.c, hs, root);
            if (sc < 0) points += 2;
            if (sc == 0) points += 1;
        }
    }
    return points;
}

}  // namespace

Crossings circle_surface_crossings(const MultiPoly& g, const Circle3& circle) {
    ReducedRestriction r = reduce_on_circle(g, circle);
    if (r.alpha.is_zero() && r.beta.is_zero()) return {true, 0};
    primitive_pair(r.alpha, r.beta);
    UniPoly phi = uni_square_free(crossing_resultant(r).primitive());
    return {false, crossing_count(r, SturmChain::from_square_free(phi))};
}

int quadratic_sign(const Rat& lam, const Rat& mu, const Rat& disc) {
    if (sgn(mu) == 0 || sgn(disc) == 0) return sgn(lam);
    if (sgn(lam) == 0) return sgn(mu);
    if (sgn(lam) == sgn(mu)) return sgn(lam);
    return sgn(lam) * sgn(lam * lam - mu * mu * disc);
}

namespace {

CircleRoute route_impl(const std::vector<MultiPoly>& gs, const Circle3& circle,
                       bool want_crossings) {
    CircleRoute out;
    if (gs.empty()) return out;
    std::vector<ReducedRestriction> rs;
    rs.reserve(gs.size());
    // One low-degree factor per surface (plus the conic bound c) instead of
    // their product: isolating small factors separately keeps every Sturm
    // computation on small coefficients.
    std::vector<UniPoly> factors;
    std::vector<SturmChain> chains;
    for (const MultiPoly& g : gs) {
        rs.push_back(reduce_on_circle(g, circle));
        if (rs.back().alpha.is_zero() && rs.back().beta.is_zero()) {
            out.contained = true;
            out.crossings = 0;
            return out;
        }
        primitive_pair(rs.back().alpha, rs.back().beta);
        factors.push_back(uni_square_free(crossing_resultant(rs.back()).primitive()).primitive());
        chains.push_back(SturmChain::from_square_free(factors.back()));
        if (want_crossings) out.crossings += crossing_count(rs.back(), chains.back());
    }
    const ReducedRestriction& r0 = rs.front();
    factors.push_back(uni_square_free(r0.c.primitive()).primitive());
    chains.push_back(SturmChain::from_square_free(factors.back()));
    // Make the factors pairwise coprime, so their root sets are disjoint and
    // interval refinement is guaranteed to separate roots of different owners.
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].deg() < 1) continue;
        for (std::size_t j = i + 1; j < factors.size(); ++j) {
            if (factors[j].deg() < 1) continue;
            UniPoly g = uni_gcd(factors[i], factors[j]);
            if (g.deg() > 0) {
                UniPoly q, rem;
                uni_divrem(factors[j], g, q, rem);
                factors[j] = q.primitive();
                chains[j] = SturmChain::from_square_free(factors[j]);
            }
        }
    }

    struct OwnedRoot {
        RootInterval iv;
        std::size_t owner;
    };
    std::vector<OwnedRoot> roots;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].deg() < 1) continue;
        for (RootInterval iv : isolate_roots(factors[i], chains[i])) roots.push_back({iv, i});
    }
    auto separated = [](const RootInterval& a, const RootInterval& b) {
        return a.hi < b.lo || b.hi < a.lo || (a.exact && b.exact);
    };
    auto tighten = [&](OwnedRoot& r) {
        if (!r.iv.exact) refine_root(factors[r.owner], chains[r.owner], r.iv);
    };
    // Refine until all isolating intervals are pairwise disjoint (all roots
    // are distinct after the coprime pass), then order them.
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            while (!separated(roots[i].iv, roots[j].iv)) {
                tighten(roots[i]);
                tighten(roots[j]);
            }
    std::sort(roots.begin(), roots.end(),
              [](const OwnedRoot& a, const OwnedRoot& b) { return a.iv.lo < b.iv.lo; });

    // Signs along a fixed branch t = ±sqrt(-c/gamma) can only flip across a
    // root of some crossing factor or of c, so one rational sample per gap
    // between consecutive roots meets every sign-constant arc of the circle.
    // The simplest rational in the gap keeps the evaluations cheap.
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        Rat s = simplest_between(roots[i].iv.hi, roots[i + 1].iv.lo);
        Rat cval = r0.c.eval(s);
        if (sgn(cval) >= 0) continue;  // sample is outside the circle's s-range
        Rat disc = -cval / r0.gamma;
        for (int branch : {1, -1}) {
            std::vector<int> vec;
            vec.reserve(rs.size());
            bool zero = false;
            for (const ReducedRestriction& r : rs) {
                int sg = quadratic_sign(r.alpha.eval(s), r.beta.eval(s) * branch, disc);
                if (sg == 0) {
                    zero = true;
                    break;
                }
                vec.push_back(sg);
            }
            assert(!zero && "sample abscissa collides with a crossing");
            if (!zero) out.cells.insert(std::move(vec));
        }
    }
    return out;
}

}  // namespace

std::set<std::vector<int>> circle_sign_vectors(const std::vector<MultiPoly>& gs,
                                               const Circle3& circle) {
    return route_impl(gs, circle, false).cells;
}

CircleRoute circle_route(const std::vector<MultiPoly>& gs, const Circle3& circle) {
    return route_impl(gs, circle, true);
}

}  // namespace inc3
