#include "inc3/multipoly.hpp"

#include <sstream>

#include "inc3/errors.hpp"

namespace inc3 {

MultiPoly MultiPoly::constant(const Rat& a) {
    MultiPoly p;
    if (sgn(a) != 0) p.terms.emplace(Expo{}, a);
    return p;
}

MultiPoly MultiPoly::var(int i, int power) {
    if (i < 0 || i > 2) throw dimension_mismatch("variable index out of range");
    MultiPoly p;
    Expo e;
    e.e[i] = power;
    p.terms.emplace(e, Rat(1));
    return p;
}

int MultiPoly::degree() const {
    return terms.empty() ? -1 : terms.rbegin()->first.total();
}

int MultiPoly::deg_in(int var) const {
    if (terms.empty()) return -1;
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e.e[var]);
    return d;
}

void MultiPoly::add_term(const Expo& e, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms.erase(it);
    }
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly p(*this);
    for (auto& [e, c] : p.terms) c = -c;
    return p;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly p(*this);
    for (const auto& [e, c] : o.terms) p.add_term(e, c);
    return p;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly p(*this);
    for (const auto& [e, c] : o.terms) p.add_term(e, -c);
    return p;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly p;
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            Expo e;
            for (int i = 0; i < 3; ++i) e.e[i] = ea.e[i] + eb.e[i];
            p.add_term(e, ca * cb);
        }
    return p;
}

MultiPoly MultiPoly::scaled(const Rat& a) const {
    MultiPoly p;
    if (sgn(a) == 0) return p;
    for (const auto& [e, c] : terms) p.terms.emplace(e, c * a);
    return p;
}

MultiPoly MultiPoly::pow(unsigned n) const {
    MultiPoly acc = constant(Rat(1));
    MultiPoly base(*this);
    while (n) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Rat MultiPoly::eval(const std::array<Rat, 3>& x) const {
    std::array<std::vector<Rat>, 3> pows;
    for (int i = 0; i < 3; ++i) pows[i].push_back(Rat(1));
    auto power = [&](int v, int e) -> const Rat& {
        while (static_cast<int>(pows[v].size()) <= e) pows[v].push_back(pows[v].back() * x[v]);
        return pows[v][e];
    };
    Rat acc(0);
    for (const auto& [e, c] : terms) acc += c * power(0, e.e[0]) * power(1, e.e[1]) * power(2, e.e[2]);
    return acc;
}

MultiPoly MultiPoly::derivative(int var) const {
    MultiPoly p;
    for (const auto& [e, c] : terms) {
        if (e.e[var] == 0) continue;
        Expo d = e;
        d.e[var] -= 1;
        p.add_term(d, c * Rat(e.e[var]));
    }
    return p;
}

std::vector<MultiPoly> MultiPoly::coeffs_wrt(int var) const {
    std::vector<MultiPoly> out(static_cast<size_t>(std::max(deg_in(var), -1) + 1));
    for (const auto& [e, c] : terms) {
        Expo d = e;
        int k = d.e[var];
        d.e[var] = 0;
        out[k].add_term(d, c);
    }
    return out;
}

MultiPoly MultiPoly::from_coeffs_wrt(int var, const std::vector<MultiPoly>& coefs) {
    MultiPoly p;
    for (size_t k = 0; k < coefs.size(); ++k)
        for (const auto& [e, c] : coefs[k].terms) {
            Expo d = e;
            d.e[var] += static_cast<int>(k);
            p.add_term(d, c);
        }
    return p;
}

MultiPoly MultiPoly::compose(const std::array<MultiPoly, 3>& subs) const {
    std::array<std::vector<MultiPoly>, 3> pows;
    for (int i = 0; i < 3; ++i) pows[i].push_back(constant(Rat(1)));
    auto power = [&](int v, int e) -> const MultiPoly& {
        while (static_cast<int>(pows[v].size()) <= e) pows[v].push_back(pows[v].back() * subs[v]);
        return pows[v][e];
    };
    MultiPoly acc;
    for (const auto& [e, c] : terms) {
        MultiPoly term = power(0, e.e[0]) * power(1, e.e[1]);
        term = term * power(2, e.e[2]);
        acc = acc + term.scaled(c);
    }
    return acc;
}

UniPoly MultiPoly::restrict_line(const std::array<Rat, 3>& base, const std::array<Rat, 3>& dir) const {
    std::array<std::vector<UniPoly>, 3> pows;
    for (int i = 0; i < 3; ++i) pows[i].push_back(UniPoly::constant(Rat(1)));
    std::array<UniPoly, 3> lin;
    for (int i = 0; i < 3; ++i) lin[i] = UniPoly::linear(base[i], dir[i]);
    auto power = [&](int v, int e) -> const UniPoly& {
        while (static_cast<int>(pows[v].size()) <= e) pows[v].push_back(pows[v].back() * lin[v]);
        return pows[v][e];
    };
    UniPoly acc;
    for (const auto& [e, c] : terms) {
        UniPoly term = power(0, e.e[0]) * power(1, e.e[1]) * power(2, e.e[2]);
        acc = acc + term.scaled(c);
    }
    return acc;
}

UniPoly MultiPoly::to_unipoly(int var) const {
    std::vector<Rat> c(static_cast<size_t>(std::max(deg_in(var), -1) + 1), Rat(0));
    for (const auto& [e, coef] : terms) {
        for (int i = 0; i < 3; ++i)
            if (i != var && e.e[i] != 0) throw dimension_mismatch("polynomial is not univariate");
        c[e.e[var]] = coef;
    }
    return UniPoly(std::move(c));
}

MultiPoly MultiPoly::canonical() const {
    if (is_zero()) return {};
    Int num_gcd(0), den_lcm(1);
    for (const auto& [e, c] : terms) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    if (sgn(lc()) < 0) scale = -scale;
    return scaled(scale);
}

std::string MultiPoly::to_text() const {
    std::ostringstream os;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        os << rat_str(it->second) << ' ' << it->first.e[0] << ' ' << it->first.e[1] << ' ' << it->first.e[2]
           << '\n';
    return os.str();
}

MultiPoly MultiPoly::from_text(const std::string& text) {
    MultiPoly p;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        std::string coef;
        Expo e;
        if (!(ls >> coef >> e.e[0] >> e.e[1] >> e.e[2]))
            throw parse_error("bad polynomial line '" + line + "'");
        if (e.e[0] < 0 || e.e[1] < 0 || e.e[2] < 0) throw parse_error("negative exponent");
        p.add_term(e, rat_parse(coef));
    }
    return p;
}

MultiPoly directional_derivative(const MultiPoly& f, const std::array<Rat, 3>& v) {
    MultiPoly acc;
    for (int i = 0; i < 3; ++i) acc = acc + f.derivative(i).scaled(v[i]);
    return acc;
}

bool mp_divides(const MultiPoly& g, const MultiPoly& f, MultiPoly* q) {
    if (g.is_zero()) return f.is_zero();
    MultiPoly rem(f), quot;
    const Expo& ge = g.lm();
    while (!rem.is_zero()) {
        const Expo& re = rem.lm();
        Expo d;
        for (int i = 0; i < 3; ++i) {
            d.e[i] = re.e[i] - ge.e[i];
            if (d.e[i] < 0) return false;
        }
        Rat factor = rem.lc() / g.lc();
        MultiPoly t;
        t.terms.emplace(d, factor);
        quot = quot + t;
        rem = rem - t * g;
    }
    if (q) *q = std::move(quot);
    return true;
}

namespace {

// Pseudo-division bookkeeping for the primitive PRS, with f and g viewed as
// univariates in `var` over the remaining variables.
struct VarPoly {
    std::vector<MultiPoly> c;

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
};

VarPoly to_varpoly(const MultiPoly& f, int var) {
    VarPoly v;
    v.c = f.coeffs_wrt(var);
    v.trim();
    return v;
}

MultiPoly from_varpoly(const VarPoly& v, int var) { return MultiPoly::from_coeffs_wrt(var, v.c); }

VarPoly vp_scale(const VarPoly& a, const MultiPoly& s) {
    VarPoly r;
    r.c.reserve(a.c.size());
    for (const auto& x : a.c) r.c.push_back(x * s);
    r.trim();
    return r;
}

VarPoly vp_sub(const VarPoly& a, const VarPoly& b) {
    VarPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
    r.trim();
    return r;
}

// r = lc(b)^(deg a - deg b + 1) * a mod b.
VarPoly vp_prem(VarPoly a, const VarPoly& b) {
    const MultiPoly& d = b.c.back();
    while (!a.is_zero() && a.deg() >= b.deg()) {
        int shift = a.deg() - b.deg();
        MultiPoly top = a.c.back();
        a = vp_scale(a, d);
        VarPoly sub;
        sub.c.assign(static_cast<size_t>(shift), MultiPoly{});
        for (const auto& x : b.c) sub.c.push_back(x * top);
        a = vp_sub(a, sub);
    }
    return a;
}

MultiPoly mp_content(const VarPoly& v);

MultiPoly mp_gcd_impl(MultiPoly a, MultiPoly b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int var = -1;
    for (int i = 2; i >= 0; --i)
        if (a.deg_in(i) > 0 || b.deg_in(i) > 0) {
            var = i;
            break;
        }
    if (var < 0) return MultiPoly::constant(Rat(1));  // both constants

    VarPoly fa = to_varpoly(a, var), fb = to_varpoly(b, var);
    MultiPoly ca = mp_content(fa), cb = mp_content(fb);
    MultiPoly c = mp_gcd_impl(ca, cb);
    for (auto& x : fa.c) {
        MultiPoly q;
        mp_divides(ca, x, &q);
        x = q;
    }
    for (auto& x : fb.c) {
        MultiPoly q;
        mp_divides(cb, x, &q);
        x = q;
    }
    if (fa.deg() < fb.deg()) std::swap(fa, fb);
    while (true) {
        if (fb.is_zero()) {
            VarPoly pp = fa;
            MultiPoly cont = mp_content(pp);
            for (auto& x : pp.c) {
                MultiPoly q;
                mp_divides(cont, x, &q);
                x = q;
            }
            return c * from_varpoly(pp, var);
        }
        if (fb.deg() == 0) return c;  // v-free remainder: primitive parts are coprime
        VarPoly r = vp_prem(fa, fb);
        MultiPoly cont = mp_content(r);
        if (!cont.is_zero())
            for (auto& x : r.c) {
                MultiPoly q;
                mp_divides(cont, x, &q);
                x = q;
            }
        fa = std::move(fb);
        fb = std::move(r);
    }
}

MultiPoly mp_content(const VarPoly& v) {
    MultiPoly c;
    for (const auto& x : v.c) c = mp_gcd_impl(c, x);
    return c;
}

}  // namespace

MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly g = mp_gcd_impl(a, b);
    return g.canonical();
}

MultiPoly square_free_part(const MultiPoly& f) {
    if (f.is_zero() || f.degree() == 0) return f;
    MultiPoly g = f;
    MultiPoly common = f;
    for (int i = 0; i < 3; ++i) common = mp_gcd_impl(common, f.derivative(i));
    if (common.degree() <= 0) return f;
    MultiPoly q;
    mp_divides(common, f, &q);
    return q.canonical();
}

MultiPoly sylvester_resultant(const MultiPoly& f, const MultiPoly& g, int var) {
    if (var < 0 || var > 2) throw dimension_mismatch("variable index out of range");
    if (f.is_zero() || g.is_zero()) return {};
    int p = f.deg_in(var), q = g.deg_in(var);
    if (p == 0 && q == 0) throw dimension_mismatch("neither polynomial involves the variable");
    if (p == 0) return f.pow(static_cast<unsigned>(q));
    if (q == 0) return g.pow(static_cast<unsigned>(p));

    auto fc = f.coeffs_wrt(var), gc = g.coeffs_wrt(var);
    int n = p + q;
    std::vector<std::vector<MultiPoly>> m(static_cast<size_t>(n), std::vector<MultiPoly>(static_cast<size_t>(n)));
    for (int row = 0; row < q; ++row)
        for (int k = 0; k <= p; ++k) m[row][row + k] = fc[static_cast<size_t>(p - k)];
    for (int row = 0; row < p; ++row)
        for (int k = 0; k <= q; ++k) m[q + row][row + k] = gc[static_cast<size_t>(q - k)];

    // Fraction-free Bareiss; every division is exact over the polynomial ring.
    MultiPoly prev = MultiPoly::constant(Rat(1));
    int det_sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            int pivot = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) return {};
            std::swap(m[k], m[pivot]);
            det_sign = -det_sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                MultiPoly div;
                if (!mp_divides(prev, num, &div)) throw domain_error("bareiss division failed");
                m[i][j] = std::move(div);
            }
            m[i][k] = MultiPoly{};
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return det_sign < 0 ? -det : det;
}

}  // namespace inc3
