#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace inc3 {

using Rat = mpq_class;
using Int = mpz_class;

inline int sign(const Rat& a) { return sgn(a); }
inline Rat rat_abs(const Rat& a) { return sgn(a) < 0 ? Rat(-a) : a; }

// Accepts "p", "-p", or "p/q"; the result is canonicalized with q > 0.
Rat rat_parse(const std::string& s);
std::string rat_str(const Rat& a);

// Nearest double, used only for reporting and search heuristics.
inline double rat_double(const Rat& a) { return a.get_d(); }

Int int_pow(const Int& base, unsigned long e);

// The rational with the smallest denominator (then smallest magnitude)
// strictly inside the open interval (a, b); requires a < b.
Rat simplest_between(const Rat& a, const Rat& b);

// Deterministic splitmix64; the lab never uses platform RNG state.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next();
    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    // Uniform rational with numerator in [-num_range, num_range] and
    // denominator in [1, den_range].
    Rat rat(long num_range, long den_range);
    double unit();  // uniform in [0, 1)
};

}  // namespace inc3
