#pragma once

#include <vector>

#include "inc3/rational.hpp"

namespace inc3 {

// Dense univariate polynomial over Q. coef[i] multiplies x^i; no trailing zeros.
struct UniPoly {
    std::vector<Rat> coef;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rat> c) : coef(std::move(c)) { trim(); }
    static UniPoly constant(const Rat& a);
    static UniPoly linear(const Rat& c0, const Rat& c1);  // c0 + c1*x

    void trim();
    bool is_zero() const { return coef.empty(); }
    int deg() const { return static_cast<int>(coef.size()) - 1; }
    const Rat& lc() const { return coef.back(); }
    Rat eval(const Rat& x) const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const Rat& a) const;
    UniPoly derivative() const;
    UniPoly pow(unsigned e) const;

    // Scales by the positive rational that makes coefficients integral,
    // coprime, with the chosen sign convention left untouched.
    UniPoly primitive() const;
};

// Euclidean division over Q; g must be nonzero.
void uni_divrem(const UniPoly& f, const UniPoly& g, UniPoly& q, UniPoly& r);
bool uni_divides(const UniPoly& g, const UniPoly& f);

// Monic-free gcd: primitive with positive leading coefficient; gcd(0,0) = 0.
UniPoly uni_gcd(UniPoly a, UniPoly b);
UniPoly uni_square_free(const UniPoly& f);

// Signed remainder chain built from the square-free part, with content
// stripped after every pseudo-remainder step so coefficients stay small.
struct SturmChain {
    std::vector<UniPoly> seq;

    explicit SturmChain(const UniPoly& f);
    // Skips the square-free pass; the caller must pass a square-free polynomial.
    static SturmChain from_square_free(const UniPoly& f);
    int variations_at(const Rat& x) const;  // zeros in the sign sequence are dropped
    int variations_neg_inf() const;
    int variations_pos_inf() const;
    // Distinct real roots in (a, b]; the zero-dropping convention makes the
    // count exact even when chain members vanish at a or b.
    long count_halfopen(const Rat& a, const Rat& b) const;
    long count_all() const;
    long count_below(const Rat& b) const;  // roots in (-inf, b]

  private:
    SturmChain() = default;
    void build(UniPoly s0);
};

long sturm_count(const UniPoly& f, const Rat& a, const Rat& b);
long sturm_count_all(const UniPoly& f);

// One real root of a square-free polynomial: either the exact rational point
// (lo == hi) or the open interval (lo, hi) containing exactly one root.
struct RootInterval {
    Rat lo, hi;
    bool exact = false;
};

std::vector<RootInterval> isolate_roots(const UniPoly& f);  // sorted ascending
// Same, for a caller that already holds the square-free primitive polynomial
// and its Sturm chain (avoids rebuilding the chain).
std::vector<RootInterval> isolate_roots(const UniPoly& square_free_primitive, const SturmChain& chain);
void refine_root(const UniPoly& square_free, const SturmChain& chain, RootInterval& r);
// Exact sign of g at the root of square_free p described by r.
int sign_at_root(const UniPoly& g, const UniPoly& p, RootInterval r);

}  // namespace inc3
