#include "inc3/rational.hpp"

#include "inc3/errors.hpp"

namespace inc3 {

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational");
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (sgn(den) == 0) throw parse_error("zero denominator in '" + s + "'");
        Rat r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("bad rational '" + s + "'");
    }
}

std::string rat_str(const Rat& a) { return a.get_str(); }

Int int_pow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

namespace {
Int rat_floor(const Rat& a) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return out;
}
}  // namespace

Rat simplest_between(const Rat& a, const Rat& b) {
    if (!(a < b)) throw domain_error("simplest_between needs a < b");
    if (sgn(a) < 0 && sgn(b) > 0) return Rat(0);
    if (sgn(b) <= 0) return -simplest_between(-b, -a);
    // 0 <= a < b: take the smallest integer inside if one exists, otherwise
    // peel off the shared whole part and recurse on the reciprocal interval
    // (the continued-fraction step; reciprocation preserves simplicity).
    Int n = rat_floor(a) + 1;
    if (Rat(n) < b) return Rat(n);
    Rat fa = a - Rat(n - 1);  // in [0, 1)
    Rat fb = b - Rat(n - 1);  // in (fa, 1]
    if (sgn(fa) == 0) {
        Rat inv = 1 / fb;
        Rat r(1, rat_floor(inv) + 1);
        r.canonicalize();
        return Rat(n - 1) + r;
    }
    return Rat(n - 1) + 1 / simplest_between(1 / fb, 1 / fa);
}

std::uint64_t Rng::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

Rat Rng::rat(long num_range, long den_range) {
    long num = static_cast<long>(below(2 * static_cast<std::uint64_t>(num_range) + 1)) - num_range;
    long den = 1 + static_cast<long>(below(static_cast<std::uint64_t>(den_range)));
    Rat r(num, den);
    r.canonicalize();
    return r;
}

double Rng::unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace inc3
