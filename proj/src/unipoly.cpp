#include "inc3/unipoly.hpp"

#include <algorithm>

#include "inc3/errors.hpp"

namespace inc3 {

UniPoly UniPoly::constant(const Rat& a) {
    UniPoly p;
    if (sgn(a) != 0) p.coef.push_back(a);
    return p;
}

UniPoly UniPoly::linear(const Rat& c0, const Rat& c1) { return UniPoly({c0, c1}); }

void UniPoly::trim() {
    while (!coef.empty() && sgn(coef.back()) == 0) coef.pop_back();
}

Rat UniPoly::eval(const Rat& x) const {
    Rat acc(0);
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * x + *it;
    return acc;
}

UniPoly UniPoly::operator-() const {
    UniPoly p(*this);
    for (auto& a : p.coef) a = -a;
    return p;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly p;
    p.coef.resize(std::max(coef.size(), o.coef.size()), Rat(0));
    for (size_t i = 0; i < coef.size(); ++i) p.coef[i] += coef[i];
    for (size_t i = 0; i < o.coef.size(); ++i) p.coef[i] += o.coef[i];
    p.trim();
    return p;
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    UniPoly p;
    p.coef.assign(coef.size() + o.coef.size() - 1, Rat(0));
    for (size_t i = 0; i < coef.size(); ++i) {
        if (sgn(coef[i]) == 0) continue;
        for (size_t j = 0; j < o.coef.size(); ++j) p.coef[i + j] += coef[i] * o.coef[j];
    }
    p.trim();
    return p;
}

UniPoly UniPoly::scaled(const Rat& a) const {
    if (sgn(a) == 0) return {};
    UniPoly p(*this);
    for (auto& c : p.coef) c *= a;
    return p;
}

UniPoly UniPoly::derivative() const {
    UniPoly p;
    for (size_t i = 1; i < coef.size(); ++i) p.coef.push_back(coef[i] * Rat(static_cast<long>(i)));
    p.trim();
    return p;
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly acc = UniPoly::constant(Rat(1));
    UniPoly base(*this);
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

UniPoly UniPoly::primitive() const {
    if (is_zero()) return {};
    Int num_gcd(0), den_lcm(1);
    for (const auto& c : coef) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    return scaled(scale);
}

void uni_divrem(const UniPoly& f, const UniPoly& g, UniPoly& q, UniPoly& r) {
    if (g.is_zero()) throw domain_error("division by zero polynomial");
    q = {};
    r = f;
    if (f.deg() >= g.deg()) q.coef.assign(f.deg() - g.deg() + 1, Rat(0));
    while (!r.is_zero() && r.deg() >= g.deg()) {
        int shift = r.deg() - g.deg();
        Rat factor = r.lc() / g.lc();
        q.coef[shift] = factor;
        for (int i = 0; i <= g.deg(); ++i) r.coef[i + shift] -= factor * g.coef[i];
        r.trim();
    }
    q.trim();
}

bool uni_divides(const UniPoly& g, const UniPoly& f) {
    if (f.is_zero()) return true;
    if (g.is_zero() || g.deg() > f.deg()) return false;
    UniPoly q, r;
    uni_divrem(f, g, q, r);
    return r.is_zero();
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
        UniPoly q, r;
        uni_divrem(a, b, q, r);
        a = std::move(b);
        b = r.primitive();
    }
    if (a.is_zero()) return a;
    a = a.primitive();
    if (sgn(a.lc()) < 0) a = -a;
    return a;
}

UniPoly uni_square_free(const UniPoly& f) {
    if (f.deg() <= 0) return f;
    UniPoly g = uni_gcd(f, f.derivative());
    if (g.deg() == 0) return f;
    UniPoly q, r;
    uni_divrem(f, g, q, r);
    return q;
}

SturmChain::SturmChain(const UniPoly& f) {
    if (f.is_zero()) throw domain_error("sturm chain of the zero polynomial");
    build(uni_square_free(f).primitive());
}

SturmChain SturmChain::from_square_free(const UniPoly& f) {
    if (f.is_zero()) throw domain_error("sturm chain of the zero polynomial");
    SturmChain c;
    c.build(f.primitive());
    return c;
}

void SturmChain::build(UniPoly s0) {
    seq.push_back(std::move(s0));
    if (seq.front().deg() == 0) return;
    seq.push_back(seq.front().derivative().primitive());
    while (seq.back().deg() >= 0) {
        const UniPoly& a = seq[seq.size() - 2];
        const UniPoly& b = seq.back();
        if (b.deg() == 0) break;
        UniPoly q, r;
        uni_divrem(a, b, q, r);
        if (r.is_zero()) break;
        seq.push_back((-r).primitive());
    }
}

namespace {
int count_changes(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

// Sign of f at num/den via homogeneous integer Horner when the coefficients
// are integral (the chain members always are): pure mpz steps skip the
// per-operation canonicalization that rational Horner pays.
int sign_eval(const UniPoly& f, const Rat& x) {
    if (f.is_zero()) return 0;
    for (const auto& c : f.coef)
        if (c.get_den() != 1) return sgn(f.eval(x));
    const Int& num = x.get_num();
    const Int& den = x.get_den();
    Int acc = f.coef.back().get_num();
    Int dk(1);
    for (auto it = std::next(f.coef.rbegin()); it != f.coef.rend(); ++it) {
        dk *= den;
        acc = acc * num + it->get_num() * dk;
    }
    return sgn(acc);
}
}  // namespace

int SturmChain::variations_at(const Rat& x) const {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq) signs.push_back(sign_eval(p, x));
    return count_changes(signs);
}

int SturmChain::variations_neg_inf() const {
    std::vector<int> signs;
    for (const auto& p : seq) {
        int s = sgn(p.lc());
        if (p.deg() % 2 != 0) s = -s;
        signs.push_back(s);
    }
    return count_changes(signs);
}

int SturmChain::variations_pos_inf() const {
    std::vector<int> signs;
    for (const auto& p : seq) signs.push_back(sgn(p.lc()));
    return count_changes(signs);
}

long SturmChain::count_halfopen(const Rat& a, const Rat& b) const {
    if (a >= b) throw domain_error("sturm interval must have a < b");
    return variations_at(a) - variations_at(b);
}

long SturmChain::count_all() const { return variations_neg_inf() - variations_pos_inf(); }

long SturmChain::count_below(const Rat& b) const { return variations_neg_inf() - variations_at(b); }

long sturm_count(const UniPoly& f, const Rat& a, const Rat& b) {
    return SturmChain(f).count_halfopen(a, b);
}

long sturm_count_all(const UniPoly& f) { return SturmChain(f).count_all(); }

std::vector<RootInterval> isolate_roots(const UniPoly& f) {
    UniPoly p = uni_square_free(f).primitive();
    if (p.deg() <= 0) return {};
    return isolate_roots(p, SturmChain(p));
}

std::vector<RootInterval> isolate_roots(const UniPoly& p, const SturmChain& chain) {
    std::vector<RootInterval> out;
    if (p.deg() <= 0) return out;

    Rat mag(1);
    for (const auto& c : p.coef) {
        Rat m = rat_abs(c / p.lc());
        if (m > mag) mag = m;
    }
    // Round the Cauchy bound up to an integer: integer endpoints keep the
    // bisection abscissas small dyadics.
    Int whole;
    mpz_fdiv_q(whole.get_mpz_t(), mag.get_num().get_mpz_t(), mag.get_den().get_mpz_t());
    Rat bound(whole + 2);

    struct Seg {
        Rat lo, hi;
        long n;
    };
    std::vector<Seg> stack;
    long total = chain.count_halfopen(-bound, bound);
    if (total > 0) stack.push_back({-bound, bound, total});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 1) {
            RootInterval r;
            if (sgn(p.eval(s.hi)) == 0) {
                r.lo = r.hi = s.hi;
                r.exact = true;
            } else {
                r.lo = s.lo;
                r.hi = s.hi;
            }
            out.push_back(std::move(r));
            continue;
        }
        Rat mid = (s.lo + s.hi) / 2;
        long left = chain.count_halfopen(s.lo, mid);
        long right = s.n - left;
        // Push right first so the output comes out sorted ascending.
        if (right > 0) stack.push_back({mid, s.hi, right});
        if (left > 0) stack.push_back({s.lo, mid, left});
    }
    return out;
}

void refine_root(const UniPoly& square_free, const SturmChain& chain, RootInterval& r) {
    if (r.exact) return;
    Rat mid = (r.lo + r.hi) / 2;
    if (sgn(square_free.eval(mid)) == 0) {
        r.lo = r.hi = mid;
        r.exact = true;
        return;
    }
    if (chain.count_halfopen(r.lo, mid) == 1)
        r.hi = mid;
    else
        r.lo = mid;
}

int sign_at_root(const UniPoly& g, const UniPoly& p, RootInterval r) {
    if (g.is_zero()) return 0;
    if (r.exact) return sgn(g.eval(r.lo));
    UniPoly ps = uni_square_free(p).primitive();
    UniPoly common = uni_gcd(ps, g);
    SturmChain pchain(ps);
    if (common.deg() >= 1) {
        SturmChain cchain(common);
        // The only root of p inside (lo, hi) is ours, so any common root there
        // certifies g = 0 at it. Shave the endpoint to keep the interval open.
        RootInterval probe = r;
        while (sgn(common.eval(probe.hi)) == 0 || sgn(common.eval(probe.lo)) == 0) refine_root(ps, pchain, probe);
        if (probe.exact) return sgn(g.eval(probe.lo));
        if (cchain.count_halfopen(probe.lo, probe.hi) > 0) return 0;
        r = probe;
    }
    SturmChain gchain(g);
    while (true) {
        if (r.exact) return sgn(g.eval(r.lo));
        bool endpoint_zero = sgn(g.eval(r.lo)) == 0 || sgn(g.eval(r.hi)) == 0;
        if (!endpoint_zero && gchain.count_halfopen(r.lo, r.hi) == 0) {
            return sgn(g.eval((r.lo + r.hi) / 2));
        }
        refine_root(ps, pchain, r);
    }
}

}  // namespace inc3
