#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "inc3/errors.hpp"
#include "inc3/rational.hpp"

using namespace inc3;

TEST_CASE("parsing accepts integers and fractions") {
    CHECK(rat_parse("7") == Rat(7));
    CHECK(rat_parse("-7") == Rat(-7));
    CHECK(rat_parse("3/4") == Rat(3, 4));
    CHECK(rat_parse("-3/4") == Rat(-3, 4));
    // Canonicalization: common factors removed, denominator positive.
    CHECK(rat_parse("6/8") == Rat(3, 4));
    CHECK(rat_parse("3/-4") == Rat(-3, 4));
    CHECK(rat_parse("0/9") == Rat(0));
    CHECK(rat_parse("123456789123456789123456789/3") ==
          Rat(Int("41152263041152263041152263")));
}

TEST_CASE("parsing rejects malformed input") {
    CHECK_THROWS_AS(rat_parse(""), parse_error);
    CHECK_THROWS_AS(rat_parse("abc"), parse_error);
    CHECK_THROWS_AS(rat_parse("1/0"), parse_error);
    CHECK_THROWS_AS(rat_parse("1.5"), parse_error);
    CHECK_THROWS_AS(rat_parse("1/x"), parse_error);
}

TEST_CASE("string round trip") {
    for (const char* s : {"0", "1", "-1", "3/4", "-22/7", "1000000007"}) {
        Rat r = rat_parse(s);
        CHECK(rat_str(r) == s);
        CHECK(rat_parse(rat_str(r)) == r);
    }
}

TEST_CASE("sign and absolute value") {
    CHECK(sign(Rat(3, 5)) == 1);
    CHECK(sign(Rat(-3, 5)) == -1);
    CHECK(sign(Rat(0)) == 0);
    CHECK(rat_abs(Rat(-3, 5)) == Rat(3, 5));
    CHECK(rat_abs(Rat(3, 5)) == Rat(3, 5));
}

TEST_CASE("integer powers") {
    CHECK(int_pow(Int(2), 10) == Int(1024));
    CHECK(int_pow(Int(-3), 3) == Int(-27));
    CHECK(int_pow(Int(7), 0) == Int(1));
    CHECK(int_pow(Int(0), 5) == Int(0));
    CHECK(int_pow(Int(10), 30) == Int("1000000000000000000000000000000"));
}

TEST_CASE("rng determinism and ranges") {
    Rng a(42), b(42), c(43);
    std::set<std::uint64_t> seen;
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        std::uint64_t x = a.next();
        CHECK(x == b.next());
        differs = differs || x != c.next();
        seen.insert(x);
    }
    CHECK(differs);
    CHECK(seen.size() == 1000);  // no collision in a short stream

    Rng r(7);
    for (int i = 0; i < 500; ++i) {
        CHECK(r.below(10) < 10);
        double u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        Rat q = r.rat(100, 8);
        CHECK(rat_abs(q) <= Rat(100));
        CHECK(q.get_den() <= 8);
    }
    CHECK(r.below(0) == 0);
}

TEST_CASE("simplest rational in an open interval") {
    CHECK(simplest_between(Rat(1, 3), Rat(1, 2)) == Rat(2, 5));
    CHECK(simplest_between(Rat(1, 4), Rat(1, 3)) == Rat(2, 7));
    CHECK(simplest_between(Rat(-1, 2), Rat(1, 3)) == Rat(0));
    CHECK(simplest_between(Rat(5, 2), Rat(7, 2)) == Rat(3));
    CHECK(simplest_between(Rat(2), Rat(3)) == Rat(5, 2));
    CHECK(simplest_between(Rat(0), Rat(1)) == Rat(1, 2));
    CHECK(simplest_between(Rat(0), Rat(1, 7)) == Rat(1, 8));
    CHECK(simplest_between(Rat(-3), Rat(-2)) == Rat(-5, 2));
    CHECK(simplest_between(Rat(-7, 3), Rat(-1, 5)) == Rat(-1));
    CHECK_THROWS_AS(simplest_between(Rat(1), Rat(1)), domain_error);
    CHECK_THROWS_AS(simplest_between(Rat(2), Rat(1)), domain_error);

    // Containment plus denominator minimality against a direct scan.
    Rng rng(99);
    for (int i = 0; i < 200; ++i) {
        Rat a = rng.rat(40, 9), b = rng.rat(40, 9);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        Rat s = simplest_between(a, b);
        CHECK(a < s);
        CHECK(s < b);
        for (Int q(1); q < s.get_den(); ++q) {
            // Smallest numerator giving p/q > a; the interval must miss it.
            Int p;
            mpz_fdiv_q(p.get_mpz_t(), Rat(a * q).get_num().get_mpz_t(),
                       Rat(a * q).get_den().get_mpz_t());
            ++p;
            Rat cand(p, q);
            cand.canonicalize();
            CHECK(!(a < cand && cand < b));
        }
    }
}
