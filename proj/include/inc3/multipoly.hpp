#pragma once

#include <array>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "inc3/rational.hpp"
#include "inc3/unipoly.hpp"

namespace inc3 {

// Exponent vector over at most three variables. Bivariate polynomials (chart
// restrictions in (s, t)) keep e[2] = 0.
struct Expo {
    std::array<int, 3> e{0, 0, 0};

    int total() const { return e[0] + e[1] + e[2]; }
    friend bool operator==(const Expo& a, const Expo& b) = default;
    // Graded lexicographic: compare total degree, then exponents left to right.
    friend std::strong_ordering operator<=>(const Expo& a, const Expo& b) {
        if (auto c = a.total() <=> b.total(); c != 0) return c;
        for (int i = 0; i < 3; ++i)
            if (auto c = a.e[i] <=> b.e[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
};

// Sparse exponent-map polynomial over Q in x0, x1, x2.
struct MultiPoly {
    std::map<Expo, Rat> terms;  // ascending graded lex; leading term = rbegin

    MultiPoly() = default;
    static MultiPoly constant(const Rat& a);
    static MultiPoly var(int i, int power = 1);

    bool is_zero() const { return terms.empty(); }
    int degree() const;           // total degree, -1 for zero
    int deg_in(int var) const;    // -1 for zero
    bool depends_on(int var) const { return deg_in(var) > 0; }
    const Rat& lc() const { return terms.rbegin()->second; }
    const Expo& lm() const { return terms.rbegin()->first; }

    void add_term(const Expo& e, const Rat& c);
    MultiPoly operator-() const;
    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly scaled(const Rat& a) const;
    MultiPoly pow(unsigned n) const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

    Rat eval(const std::array<Rat, 3>& x) const;
    MultiPoly derivative(int var) const;

    // Coefficients of powers of `var`, as polynomials free of `var`.
    std::vector<MultiPoly> coeffs_wrt(int var) const;
    static MultiPoly from_coeffs_wrt(int var, const std::vector<MultiPoly>& coefs);

    // Substitutes subs[i] for variable i.
    MultiPoly compose(const std::array<MultiPoly, 3>& subs) const;
    // Restriction to a parametrized line: f(base + t*dir) as a univariate.
    UniPoly restrict_line(const std::array<Rat, 3>& base, const std::array<Rat, 3>& dir) const;
    // View as a univariate when only `var` occurs.
    UniPoly to_unipoly(int var) const;

    // Scales to coprime integer coefficients with a positive leading
    // coefficient: the canonical representative among all scalings, so equal
    // zero sets written with proportional equations compare equal.
    MultiPoly canonical() const;

    std::string to_text() const;            // "coeff e0 e1 e2" lines, leading term first
    static MultiPoly from_text(const std::string& text);
};

inline MultiPoly operator*(const Rat& a, const MultiPoly& p) { return p.scaled(a); }

// v . grad f for a fixed rational direction.
MultiPoly directional_derivative(const MultiPoly& f, const std::array<Rat, 3>& v);

// True iff g divides f exactly; quotient returned through q when non-null.
bool mp_divides(const MultiPoly& g, const MultiPoly& f, MultiPoly* q = nullptr);

// Primitive positive-leading gcd over Q[x0,x1,x2]; gcd(0,0) = 0.
MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b);

MultiPoly square_free_part(const MultiPoly& f);

// Resultant eliminating `var`, computed from the Sylvester matrix by
// fraction-free Bareiss elimination over the polynomial ring.
MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g, int var);

}  // namespace inc3
