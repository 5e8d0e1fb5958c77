#include "inc3/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "inc3/errors.hpp"

namespace inc3 {

long veronese_dim(int degree) {
    long d = degree;
    return (d + 1) * (d + 2) * (d + 3) / 6 - 1;
}

int min_bisection_degree(long num_classes) {
    int d = 1;
    while (veronese_dim(d) < num_classes) ++d;
    return d;
}

namespace {

std::vector<Expo> monomials_upto(int degree) {
    std::vector<Expo> out;
    for (int t = 1; t <= degree; ++t)
        for (int a = t; a >= 0; --a)
            for (int b = t - a; b >= 0; --b) out.push_back(Expo{{a, b, t - a - b}});
    return out;
}

// Affine change of coordinates mapping the points' bounding box into
// [-1,1]^3, with dyadic scale so exact arithmetic stays cheap.
struct BoxScale {
    Point3 center{0, 0, 0};
    Rat scale = 1;

    static BoxScale fit(const std::vector<Point3>& pts) {
        BoxScale b;
        if (pts.empty()) return b;
        std::array<Rat, 3> lo = pts[0].arr(), hi = pts[0].arr();
        for (const Point3& p : pts) {
            std::array<Rat, 3> a = p.arr();
            for (int i = 0; i < 3; ++i) {
                if (a[i] < lo[i]) lo[i] = a[i];
                if (hi[i] < a[i]) hi[i] = a[i];
            }
        }
        b.center = Point3{(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2, (lo[2] + hi[2]) / 2};
        Rat half = 0;
        for (int i = 0; i < 3; ++i) {
            Rat w = (hi[i] - lo[i]) / 2;
            if (half < w) half = w;
        }
        Rat s = 1;
        while (s * half > 1) s /= 2;  // dyadic: x -> (x - center) * s lands in [-1,1]
        b.scale = s;
        return b;
    }

    Point3 apply(const Point3& p) const { return (p - center).scaled(scale); }

    // Express a polynomial of the scaled coordinates in the original ones.
    MultiPoly unapply(const MultiPoly& scaled_poly) const {
        std::array<MultiPoly, 3> subs;
        std::array<Rat, 3> c = center.arr();
        for (int i = 0; i < 3; ++i)
            subs[i] = (MultiPoly::var(i) - MultiPoly::constant(c[i])).scaled(scale);
        return scaled_poly.compose(subs);
    }
};

// Exact monomial values of one scaled point, in monomial order.
std::vector<Rat> exact_lift(const Point3& p, const std::vector<Expo>& monos, int degree) {
    std::array<std::vector<Rat>, 3> pw;
    std::array<Rat, 3> a = p.arr();
    for (int i = 0; i < 3; ++i) {
        pw[i].assign(degree + 1, 1);
        for (int e = 1; e <= degree; ++e) pw[i][e] = pw[i][e - 1] * a[i];
    }
    std::vector<Rat> out;
    out.reserve(monos.size());
    for (const Expo& m : monos) out.push_back(pw[0][m.e[0]] * pw[1][m.e[1]] * pw[2][m.e[2]]);
    return out;
}

// Solve the damped k x k system G y = rhs in place (partial pivoting).
bool solve_dense(std::vector<std::vector<double>>& g, std::vector<double>& rhs) {
    std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(g[r][col]) > std::fabs(g[piv][col])) piv = r;
        if (std::fabs(g[piv][col]) < 1e-14) return false;
        std::swap(g[piv], g[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = g[r][col] / g[col][col];
            for (std::size_t cc = col; cc < n; ++cc) g[r][cc] -= f * g[col][cc];
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t col = n; col-- > 0;) {
        for (std::size_t cc = col + 1; cc < n; ++cc) rhs[col] -= g[col][cc] * rhs[cc];
        rhs[col] /= g[col][col];
    }
    return true;
}

struct FeasibleThreshold {
    bool ok = false;
    Rat theta;
};

// Intersection of the classes' exact balanced-threshold intervals for the
// direction values w; classes index into w via flat offsets.
FeasibleThreshold pick_threshold(const std::vector<Rat>& w,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& spans) {
    std::optional<Rat> lo, hi;
    for (auto [begin, end] : spans) {
        std::vector<Rat> v(w.begin() + begin, w.begin() + end);
        std::sort(v.begin(), v.end());
        long s = static_cast<long>(v.size());
        long u = (s + 1) / 2;
        if (s - u >= 1) {
            Rat cand = v[s - u - 1];
            if (!lo || cand > *lo) lo = cand;
        }
        if (u < s) {
            Rat cand = v[u];
            if (!hi || cand < *hi) hi = cand;
        }
    }
    FeasibleThreshold out;
    if (lo && hi && *lo > *hi) return out;
    out.ok = true;
    if (lo && hi)
        out.theta = (*lo + *hi) / 2;
    else if (lo)
        out.theta = *lo + 1;
    else if (hi)
        out.theta = *hi - 1;
    else
        out.theta = 0;
    return out;
}

}  // namespace

MultiPoly bisecting_polynomial(const std::vector<std::vector<Point3>>& classes, int degree,
                               std::uint64_t seed) {
    if (degree < 1) throw budget_too_small("degree must be at least 1");
    if (veronese_dim(degree) < static_cast<long>(classes.size()))
        throw budget_too_small(std::to_string(classes.size()) + " classes need degree " +
                               std::to_string(min_bisection_degree(classes.size())));

    // Flatten, keeping only classes that actually constrain the split.
    std::vector<Point3> pts;
    std::vector<std::pair<std::size_t, std::size_t>> spans;
    for (const auto& cls : classes) {
        if (cls.size() < 2) continue;
        std::size_t begin = pts.size();
        pts.insert(pts.end(), cls.begin(), cls.end());
        spans.emplace_back(begin, pts.size());
    }
    std::vector<Expo> monos = monomials_upto(degree);
    // The constant belongs to the search space too: it lets the numeric phase
    // slide all classes' split levels to a common value, which the final
    // exact threshold then refines.
    monos.push_back(Expo{{0, 0, 0}});
    const std::size_t m = pts.size(), M = monos.size(), k = spans.size();

    BoxScale box = BoxScale::fit(pts);
    std::vector<std::vector<Rat>> ex(m);
    std::vector<std::vector<double>> dx(m, std::vector<double>(M));
    for (std::size_t i = 0; i < m; ++i) {
        ex[i] = exact_lift(box.apply(pts[i]), monos, degree);
        for (std::size_t j = 0; j < M; ++j) dx[i][j] = rat_double(ex[i][j]);
    }
    // Equalize column magnitudes (high powers are much smaller on [-1,1]^3
    // than linear terms). Dyadic factors keep the exact lift exact; the
    // final polynomial undoes them coefficient-wise.
    std::vector<Rat> colscale(M, Rat(1));
    for (std::size_t j = 0; j < M && m > 0; ++j) {
        double rms = 0;
        for (std::size_t i = 0; i < m; ++i) rms += dx[i][j] * dx[i][j];
        rms = std::sqrt(rms / static_cast<double>(m));
        if (!(rms > 0)) continue;
        int ex2 = static_cast<int>(std::lround(std::log2(rms)));
        Rat c(Int(1) << static_cast<unsigned>(ex2 >= 0 ? ex2 : -ex2));
        if (ex2 < 0) c = 1 / c;
        colscale[j] = c;
        for (std::size_t i = 0; i < m; ++i) {
            ex[i][j] /= c;
            dx[i][j] = rat_double(ex[i][j]);
        }
    }

    auto finish = [&](const std::vector<Rat>& dir, const Rat& theta) {
        MultiPoly p;
        for (std::size_t j = 0; j < M; ++j)
            if (sgn(dir[j]) != 0) p.add_term(monos[j], dir[j] / colscale[j]);
        p = box.unapply(p) - MultiPoly::constant(theta);
        // Exact verification straight from the returned polynomial.
        for (auto [begin, end] : spans) {
            long pos = 0, neg = 0;
            for (std::size_t i = begin; i < end; ++i) {
                int sg = sgn(p.eval(pts[i].arr()));
                pos += sg > 0;
                neg += sg < 0;
            }
            long cap = (static_cast<long>(end - begin) + 1) / 2;
            if (pos > cap || neg > cap) throw domain_error("bisection verification failed");
        }
        return p.canonical();
    };

    auto exact_phase = [&](const std::vector<double>& a) -> std::optional<MultiPoly> {
        double amax = 0;
        for (double x : a) amax = std::max(amax, std::fabs(x));
        if (!(amax > 0) || !std::isfinite(amax)) return std::nullopt;
        std::vector<Rat> dir(M);
        bool nonzero = false;
        for (std::size_t j = 0; j < M; ++j) {
            long num = std::lround(a[j] / amax * 1048576.0);
            dir[j] = Rat(num, 1048576);
            dir[j].canonicalize();
            nonzero = nonzero || num != 0;
        }
        if (!nonzero) return std::nullopt;
        std::vector<Rat> w(m, Rat(0));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < M; ++j)
                if (sgn(dir[j]) != 0) w[i] += dir[j] * ex[i][j];
        FeasibleThreshold t = pick_threshold(w, spans);
        if (!t.ok) return std::nullopt;
        return finish(dir, t.theta);
    };

    // Trivial inputs: nothing to balance, any simple surface qualifies.
    if (k == 0) return MultiPoly::var(0) - MultiPoly::constant(0);

    auto values_of = [&](const std::vector<double>& a, std::vector<double>& v) {
        for (std::size_t i = 0; i < m; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < M; ++j) s += a[j] * dx[i][j];
            v[i] = s;
        }
    };
    // Scale the direction so the projected values have unit rms; keeps the
    // smoothing sharpness lambda meaningful across iterations.
    auto normalize = [&](std::vector<double>& a, std::vector<double>& v) {
        double rms = 0;
        for (double x : v) rms += x * x;
        rms = std::sqrt(rms / static_cast<double>(m));
        if (rms < 1e-300) return false;
        for (double& x : a) x /= rms;
        for (double& x : v) x /= rms;
        return true;
    };
    auto total_residual = [&](const std::vector<double>& v, double lambda) {
        double total = 0;
        for (auto [begin, end] : spans) {
            double r = 0;
            for (std::size_t i = begin; i < end; ++i) r += std::tanh(lambda * v[i]);
            r /= static_cast<double>(end - begin);
            total += r * r;
        }
        return total;
    };
    // Floating-point rehearsal of the exact feasibility test. A threshold
    // works iff every class's balanced-split interval [lower, upper] shares a
    // point, i.e. the worst lower bound stays below the best upper bound.
    // Returns that slack (positive = feasible) plus the pinning extremes.
    struct Slack {
        double gap = -1e300;          // min upper - max lower
        std::size_t at_lo = 0;        // point pinning the worst lower bound
        std::size_t at_hi = 0;        // point pinning the best upper bound
        int cl_lo = -1, cl_hi = -1;   // classes those points belong to
    };
    std::vector<std::size_t> order(m);
    auto slack_of = [&](const std::vector<double>& v) {
        Slack out;
        double lo = -1e300, hi = 1e300;
        int ci = 0;
        for (auto [begin, end] : spans) {
            order.resize(end - begin);
            for (std::size_t i = begin; i < end; ++i) order[i - begin] = i;
            long s = static_cast<long>(order.size());
            long u = (s + 1) / 2;
            auto by_v = [&](std::size_t x, std::size_t y) { return v[x] < v[y]; };
            if (s - u >= 1) {
                std::nth_element(order.begin(), order.begin() + (s - u - 1), order.end(), by_v);
                std::size_t i = order[s - u - 1];
                if (v[i] > lo) {
                    lo = v[i];
                    out.at_lo = i;
                    out.cl_lo = ci;
                }
            }
            if (u < s) {
                std::nth_element(order.begin(), order.begin() + u, order.end(), by_v);
                std::size_t i = order[u];
                if (v[i] < hi) {
                    hi = v[i];
                    out.at_hi = i;
                    out.cl_hi = ci;
                }
            }
            ++ci;
        }
        out.gap = hi - lo;
        return out;
    };

    std::vector<double> global_a;  // best direction over all attempts
    double global_gap = -1e300;
    for (std::uint64_t attempt = 0; attempt < 6; ++attempt) {
        Rng rg(seed ^ (0x9e3779b97f4a7c15ULL * (attempt + 1)));
        std::vector<double> a(M, 0.0), v(m);
        if (attempt == 0) {
            a[0] = 1;  // deterministic first guess: the first scaled coordinate
        } else if (attempt % 2 == 1 && !global_a.empty()) {
            // Restart near the best direction found so far.
            a = global_a;
            for (double& x : a) x += 0.25 * (2 * rg.unit() - 1);
        } else {
            for (double& x : a) x = 2 * rg.unit() - 1;
        }
        values_of(a, v);
        if (!normalize(a, v)) {
            // All lifted values vanish: every point already lies on the surface.
            if (auto p = exact_phase(a)) return *p;
            continue;
        }

        int exact_tries = 0;
        auto feasible_check = [&]() -> std::optional<MultiPoly> {
            if (slack_of(v).gap < -1e-7 || exact_tries >= 80) return std::nullopt;
            ++exact_tries;
            return exact_phase(a);
        };

        // Smooth balance phase: damped Gauss-Newton on the per-class means
        // of tanh(lambda * value), annealing lambda toward a hard sign count.
        auto balance_phase = [&]() -> std::optional<MultiPoly> {
            double lambda = 2.0, mu = 1e-3;
            for (int it = 0; it < 80; ++it) {
                if (auto p = feasible_check()) return p;
                std::vector<double> res(k);
                std::vector<std::vector<double>> jac(k, std::vector<double>(M, 0.0));
                double total = 0;
                for (std::size_t ci = 0; ci < k; ++ci) {
                    auto [begin, end] = spans[ci];
                    double inv = 1.0 / static_cast<double>(end - begin);
                    for (std::size_t i = begin; i < end; ++i) {
                        double t = std::tanh(lambda * v[i]);
                        res[ci] += inv * t;
                        double dcoef = inv * lambda * (1 - t * t);
                        for (std::size_t j = 0; j < M; ++j) jac[ci][j] += dcoef * dx[i][j];
                    }
                    total += res[ci] * res[ci];
                }
                bool stepped = false;
                for (int damp = 0; damp < 6 && !stepped; ++damp) {
                    std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
                    double diag = 1e-300;
                    for (std::size_t r = 0; r < k; ++r)
                        for (std::size_t c = 0; c < k; ++c) {
                            for (std::size_t j = 0; j < M; ++j) g[r][c] += jac[r][j] * jac[c][j];
                            if (r == c) diag += g[r][c];
                        }
                    std::vector<double> rhs(k);
                    for (std::size_t r = 0; r < k; ++r) {
                        g[r][r] += mu * diag / static_cast<double>(k);
                        rhs[r] = -res[r];
                    }
                    if (!solve_dense(g, rhs)) {
                        mu *= 10;
                        continue;
                    }
                    std::vector<double> cand = a;
                    for (std::size_t j = 0; j < M; ++j) {
                        double step = 0;
                        for (std::size_t r = 0; r < k; ++r) step += jac[r][j] * rhs[r];
                        cand[j] += step;
                    }
                    std::vector<double> cv(m);
                    values_of(cand, cv);
                    if (total_residual(cv, lambda) <= total || damp == 5) {
                        a = std::move(cand);
                        v = std::move(cv);
                        if (!normalize(a, v)) return std::nullopt;
                        mu = std::max(mu * 0.4, 1e-9);
                        stepped = true;
                    } else {
                        mu *= 10;
                    }
                }
                if (!stepped) break;
                if (it % 6 == 5) lambda = std::min(lambda * 1.6, 60.0);
            }
            return std::nullopt;
        };

        // Polish phase: subgradient steps directly on the feasibility slack.
        // Each class pins a lower bound (its balanced-split floor) and an
        // upper bound (its ceiling); the slack is min ceiling - max floor.
        // Push the pinned floor points down and ceiling points up, weighting
        // classes by softmax proximity to the active extremes so several
        // tight classes move together instead of trading places forever.
        auto polish_phase = [&]() -> std::optional<MultiPoly> {
            double kappa = 8.0;
            std::vector<std::size_t> ord;
            for (int it = 0; it < 200; ++it) {
                if (auto p = feasible_check()) return p;
                double maxlo = -1e300, minhi = 1e300;
                std::vector<std::pair<std::size_t, double>> los, his;  // point, value
                for (auto [begin, end] : spans) {
                    ord.resize(end - begin);
                    for (std::size_t i = begin; i < end; ++i) ord[i - begin] = i;
                    std::sort(ord.begin(), ord.end(),
                              [&](std::size_t x, std::size_t y) { return v[x] < v[y]; });
                    long s = static_cast<long>(ord.size());
                    long u = (s + 1) / 2;
                    if (s - u >= 1) {
                        los.emplace_back(ord[s - u - 1], v[ord[s - u - 1]]);
                        maxlo = std::max(maxlo, los.back().second);
                    }
                    if (u < s) {
                        his.emplace_back(ord[u], v[ord[u]]);
                        minhi = std::min(minhi, his.back().second);
                    }
                }
                if (los.empty() || his.empty()) break;
                std::vector<double> grad(M, 0.0);
                double wsum = 0;
                for (auto [i, val] : los) wsum += std::exp(kappa * (val - maxlo));
                for (auto [i, val] : los) {
                    double w = std::exp(kappa * (val - maxlo)) / wsum;
                    for (std::size_t j = 0; j < M; ++j) grad[j] += w * dx[i][j];
                }
                wsum = 0;
                for (auto [i, val] : his) wsum += std::exp(-kappa * (val - minhi));
                for (auto [i, val] : his) {
                    double w = std::exp(-kappa * (val - minhi)) / wsum;
                    for (std::size_t j = 0; j < M; ++j) grad[j] -= w * dx[i][j];
                }
                double den = 0;
                for (double gj : grad) den += gj * gj;
                if (den < 1e-24) break;  // floors and ceilings coincide in the lift
                double gap = minhi - maxlo;
                double overshoot = std::max(0.004, 0.3 * std::fabs(gap));
                double eta = (-gap + overshoot) / den;
                if (eta > 0.5 / std::sqrt(den)) eta = 0.5 / std::sqrt(den);
                if (eta < 0) eta = 0;
                for (std::size_t j = 0; j < M; ++j) a[j] -= eta * grad[j];
                values_of(a, v);
                if (!normalize(a, v)) break;
                if (it % 50 == 49) kappa = std::min(kappa * 1.5, 200.0);
            }
            return std::nullopt;
        };

        // Separation phase: commit to the half/half split each class's
        // current values suggest (medians stay free), then drive a convex
        // logistic loss with Newton steps until that split is realized with
        // positive margin. Convexity makes this immune to the traps the
        // other phases can fall into; if the committed split turns out
        // unrealizable, the caller re-derives it from the moved values.
        std::vector<std::size_t> ord;
        auto assignment_from = [&]() {
            std::vector<int> y(m, 0);
            for (auto [begin, end] : spans) {
                ord.resize(end - begin);
                for (std::size_t i = begin; i < end; ++i) ord[i - begin] = i;
                std::sort(ord.begin(), ord.end(),
                          [&](std::size_t x, std::size_t yy) { return v[x] < v[yy]; });
                std::size_t s = ord.size();
                std::size_t half = s / 2;
                for (std::size_t t = 0; t < half; ++t) y[ord[t]] = -1;
                for (std::size_t t = s - half; t < s; ++t) y[ord[t]] = 1;
                // Odd size: the middle point stays unassigned.
            }
            return y;
        };
        // Interval phase: damped Gauss-Newton aimed straight at the exact
        // feasibility condition. Each iteration re-pins every class's split
        // floor and ceiling (the order statistics the threshold must fall
        // between), then solves for the least-squares direction change that
        // pushes violated pins past the midpoint level with a small margin.
        auto interval_phase = [&]() -> std::optional<MultiPoly> {
            std::vector<std::size_t> ilo, ihi;  // pinned points per class
            auto repin = [&]() {
                ilo.clear();
                ihi.clear();
                for (auto [begin, end] : spans) {
                    order.resize(end - begin);
                    for (std::size_t i = begin; i < end; ++i) order[i - begin] = i;
                    long s = static_cast<long>(order.size());
                    long u = (s + 1) / 2;
                    auto by_v = [&](std::size_t x, std::size_t y) { return v[x] < v[y]; };
                    if (s - u >= 1) {
                        std::nth_element(order.begin(), order.begin() + (s - u - 1), order.end(),
                                         by_v);
                        ilo.push_back(order[s - u - 1]);
                    }
                    if (u < s) {
                        std::nth_element(order.begin(), order.begin() + u, order.end(), by_v);
                        ihi.push_back(order[u]);
                    }
                }
            };
            // Violation energy of the pinned configuration around level t.
            auto energy = [&](const std::vector<double>& vv, double t) {
                double e = 0;
                for (std::size_t i : ilo) {
                    double r = vv[i] - t;
                    if (r > 0) e += r * r;
                }
                for (std::size_t i : ihi) {
                    double r = t - vv[i];
                    if (r > 0) e += r * r;
                }
                return e;
            };
            double mu = 1e-4;
            for (int it = 0; it < 80; ++it) {
                if (auto p = feasible_check()) return p;
                repin();
                if (ilo.empty() || ihi.empty()) break;
                double maxlo = -1e300, minhi = 1e300;
                for (std::size_t i : ilo) maxlo = std::max(maxlo, v[i]);
                for (std::size_t i : ihi) minhi = std::min(minhi, v[i]);
                // Aim the pins at the midpoint level, with a touch of slack.
                double t = (maxlo + minhi) / 2;
                double slack = 0.05 * std::max(1e-6, maxlo - minhi);
                std::vector<std::pair<std::size_t, int>> rows;  // point, sense
                for (std::size_t i : ilo)
                    if (v[i] - (t - slack) > 0) rows.emplace_back(i, +1);
                for (std::size_t i : ihi)
                    if ((t + slack) - v[i] > 0) rows.emplace_back(i, -1);
                if (rows.empty()) break;  // feasible with slack; check caught it
                std::vector<std::vector<double>> g(M, std::vector<double>(M, 0.0));
                std::vector<double> rhs(M, 0.0);
                double diag = 1e-300;
                for (auto [i, sense] : rows) {
                    double r = sense > 0 ? v[i] - (t - slack) : (t + slack) - v[i];
                    for (std::size_t j = 0; j < M; ++j) {
                        double xj = sense > 0 ? dx[i][j] : -dx[i][j];
                        rhs[j] -= r * xj;
                        for (std::size_t l = 0; l <= j; ++l) {
                            double xl = sense > 0 ? dx[i][l] : -dx[i][l];
                            g[j][l] += xj * xl;
                        }
                    }
                }
                for (std::size_t j = 0; j < M; ++j) {
                    for (std::size_t l = j + 1; l < M; ++l) g[j][l] = g[l][j];
                    diag += g[j][j];
                }
                bool stepped = false;
                double e0 = energy(v, t);
                for (int damp = 0; damp < 5 && !stepped; ++damp) {
                    std::vector<std::vector<double>> gd = g;
                    std::vector<double> step = rhs;
                    for (std::size_t j = 0; j < M; ++j)
                        gd[j][j] += mu * diag / static_cast<double>(M);
                    if (!solve_dense(gd, step)) {
                        mu *= 10;
                        continue;
                    }
                    std::vector<double> cand = a;
                    for (std::size_t j = 0; j < M; ++j) cand[j] += step[j];
                    std::vector<double> cv(m);
                    values_of(cand, cv);
                    if (energy(cv, t) < e0) {
                        a = std::move(cand);
                        v = std::move(cv);
                        if (!normalize(a, v)) return std::nullopt;
                        mu = std::max(mu * 0.3, 1e-8);
                        stepped = true;
                    } else {
                        mu *= 10;
                    }
                }
                if (!stepped) break;
            }
            return std::nullopt;
        };

        auto separate_phase = [&](const std::vector<int>& y) -> std::optional<MultiPoly> {
            const std::size_t n = M + 1;  // direction plus the split level
            std::vector<double> z(n, 0.0);
            for (std::size_t j = 0; j < M; ++j) z[j] = a[j];
            auto loss_of = [&](const std::vector<double>& zz) {
                double loss = 0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (y[i] == 0) continue;
                    double val = 0;
                    for (std::size_t j = 0; j < M; ++j) val += zz[j] * dx[i][j];
                    double margin = y[i] * (val - zz[M]);
                    if (margin > 30)
                        loss += 0;
                    else if (margin < -30)
                        loss += -margin;
                    else
                        loss += std::log1p(std::exp(-margin));
                }
                return loss;
            };
            double loss = loss_of(z);
            int plateau = 0;
            for (int it = 0; it < 30; ++it) {
                for (std::size_t j = 0; j < M; ++j) a[j] = z[j];
                values_of(a, v);
                if (auto p = feasible_check()) return p;
                std::vector<double> grad(n, 0.0);
                std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
                for (std::size_t i = 0; i < m; ++i) {
                    if (y[i] == 0) continue;
                    double margin = y[i] * (v[i] - z[M]);
                    double p1 = 1.0 / (1.0 + std::exp(margin));  // sigma(-margin)
                    double curv = p1 * (1 - p1) + 1e-9;
                    for (std::size_t j = 0; j < n; ++j) {
                        double xj = j < M ? dx[i][j] : -1.0;
                        grad[j] -= y[i] * p1 * xj;
                        for (std::size_t l = 0; l <= j; ++l) {
                            double xl = l < M ? dx[i][l] : -1.0;
                            hess[j][l] += curv * xj * xl;
                        }
                    }
                }
                for (std::size_t j = 0; j < n; ++j) {
                    for (std::size_t l = j + 1; l < n; ++l) hess[j][l] = hess[l][j];
                    hess[j][j] += 1e-8;
                }
                std::vector<double> step(n);
                for (std::size_t j = 0; j < n; ++j) step[j] = -grad[j];
                if (!solve_dense(hess, step)) break;
                double scale = 1.0;
                bool improved = false;
                double loss_before = loss;
                for (int bt = 0; bt < 20; ++bt) {
                    std::vector<double> cand(n);
                    for (std::size_t j = 0; j < n; ++j) cand[j] = z[j] + scale * step[j];
                    double cl = loss_of(cand);
                    if (cl < loss) {
                        z = std::move(cand);
                        loss = cl;
                        improved = true;
                        break;
                    }
                    scale /= 2;
                }
                if (!improved || loss < 1e-9) break;
                if (loss_before - loss < 1e-5 * (1 + loss)) {
                    if (++plateau >= 2) break;
                } else {
                    plateau = 0;
                }
            }
            for (std::size_t j = 0; j < M; ++j) a[j] = z[j];
            values_of(a, v);
            if (!normalize(a, v)) return std::nullopt;
            return feasible_check();
        };

        // Orchestrate the phases, remembering the best direction seen. The
        // balance and polish phases produce a decent start; the convex
        // separation rounds then walk assignment-by-assignment toward a
        // realizable split, with occasional boundary releases to break the
        // cycles the alternation can fall into.
        std::vector<double> best_a = a;
        double best_gap = slack_of(v).gap;
        auto remember = [&]() {
            double g = slack_of(v).gap;
            if (g > best_gap) {
                best_gap = g;
                best_a = a;
            }
        };

        if (auto p = balance_phase()) return *p;
        remember();
        if (auto p = interval_phase()) return *p;
        remember();
        if (k <= 12) {
            // The slack subgradient helps on sparse classes but thrashes on
            // dense ones, where the other phases do better.
            if (auto p = polish_phase()) return *p;
            remember();
            if (auto p = balance_phase()) return *p;
            remember();
        }

        std::vector<int> prev;
        double stall_ref = best_gap;
        int stall = 0;
        for (int round = 0; round < 32; ++round) {
            std::vector<int> y = assignment_from();
            bool kicked = false;
            if (round > 0) {
                // Release the straddling pair in a few random classes so the
                // convex phase may discover a different half/half split.
                for (int kick = 0; kick < (round % 4); ++kick) {
                    auto [begin, end] = spans[rg.below(k)];
                    ord.resize(end - begin);
                    for (std::size_t i = begin; i < end; ++i) ord[i - begin] = i;
                    std::sort(ord.begin(), ord.end(),
                              [&](std::size_t x, std::size_t yy) { return v[x] < v[yy]; });
                    std::size_t half = ord.size() / 2;
                    if (half >= 1) {
                        y[ord[half - 1]] = 0;
                        y[ord[half]] = 0;
                        kicked = true;
                    }
                }
            }
            if (!kicked && y == prev) break;
            if (auto p = separate_phase(y)) return *p;
            remember();
            if (auto p = interval_phase()) return *p;
            remember();
            if (best_gap > stall_ref + 1e-6) {
                stall_ref = best_gap;
                stall = 0;
            } else if (++stall >= 8) {
                break;
            }
            prev = std::move(y);
        }

        a = best_a;
        values_of(a, v);
        if (auto p = feasible_check()) return *p;
        if (auto p = exact_phase(a)) return *p;
        if (best_gap > global_gap) {
            global_gap = best_gap;
            global_a = best_a;
        }
    }
    throw search_failed("bisection search did not converge");
}

MultiPoly Partition::product() const {
    MultiPoly f = MultiPoly::constant(1);
    for (const MultiPoly& s : stages) f = f * s;
    return f;
}

int Partition::degree() const {
    int d = 0;
    for (const MultiPoly& s : stages) d += s.degree();
    return d;
}

namespace {

// Polynomials that together halve every class of one stage. A single search
// over all classes at the minimal degree is tried first. When the numeric
// search cannot realize that simultaneous bisection, the classes are divided
// between two polynomials found recursively: each class is still median-split
// by the polynomial responsible for it, and the other one only refines cells
// further, so the per-class cap survives while the summed degree grows only
// slightly. A lone class always succeeds at degree one (a coordinate plane
// through its median works), so the recursion terminates.
void stage_polynomials(const std::vector<std::vector<Point3>>& active, std::uint64_t seed,
                       int depth, std::vector<MultiPoly>& out) {
    int d = min_bisection_degree(static_cast<long>(active.size()));
    try {
        out.push_back(bisecting_polynomial(active, d, seed));
        return;
    } catch (const search_failed&) {
        if (active.size() < 2 || depth >= 5) throw;
    }
    std::size_t half = active.size() / 2;
    std::vector<std::vector<Point3>> lo(active.begin(), active.begin() + half);
    std::vector<std::vector<Point3>> hi(active.begin() + half, active.end());
    stage_polynomials(lo, seed ^ (0x94d049bb133111ebULL * (2 * depth + 1)), depth + 1, out);
    stage_polynomials(hi, seed ^ (0x94d049bb133111ebULL * (2 * depth + 2)), depth + 1, out);
}

}  // namespace

Partition build_partition(const std::vector<Point3>& pts, long r, std::uint64_t seed) {
    if (r < 1) throw domain_error("partition target must be at least 1");
    Partition part;
    part.target_r = r;
    int k = 0;
    while ((1L << k) < r) ++k;

    std::vector<std::vector<Point3>> classes = {pts};
    for (int j = 0; j < k; ++j) {
        std::vector<std::vector<Point3>> active;
        for (const auto& c : classes)
            if (c.size() >= 2) active.push_back(c);
        if (active.empty()) break;
        std::vector<MultiPoly> polys;
        stage_polynomials(active, seed ^ (0xbf58476d1ce4e5b9ULL * (j + 1)), 0, polys);
        for (MultiPoly& stage : polys) {
            std::vector<std::vector<Point3>> next;
            for (const auto& c : classes) {
                std::vector<Point3> pos, neg;
                for (const Point3& p : c) {
                    int sg = sgn(stage.eval(p.arr()));
                    if (sg > 0) pos.push_back(p);
                    if (sg < 0) neg.push_back(p);
                }
                if (!pos.empty()) next.push_back(std::move(pos));
                if (!neg.empty()) next.push_back(std::move(neg));
            }
            part.stages.push_back(std::move(stage));
            classes = std::move(next);
        }
    }
    return part;
}

std::vector<std::vector<int>> assign_point_cells(const Partition& part,
                                                 const std::vector<Point3>& pts) {
    std::vector<std::vector<int>> out(pts.size());
    const long n = static_cast<long>(pts.size());
#pragma omp parallel for schedule(dynamic, 32)
    for (long i = 0; i < n; ++i) {
        std::vector<int> signs;
        signs.reserve(part.stages.size());
        for (const MultiPoly& s : part.stages) signs.push_back(sgn(s.eval(pts[i].arr())));
        out[i] = std::move(signs);
    }
    return out;
}

std::vector<std::vector<int>> assign_point_cells_serial(const Partition& part,
                                                        const std::vector<Point3>& pts) {
    std::vector<std::vector<int>> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<int> signs;
        signs.reserve(part.stages.size());
        for (const MultiPoly& s : part.stages) signs.push_back(sgn(s.eval(pts[i].arr())));
        out[i] = std::move(signs);
    }
    return out;
}

PartitionStats partition_stats(const Partition& part, const std::vector<Point3>& pts) {
    PartitionStats st;
    st.points_total = static_cast<long>(pts.size());
    st.degree = part.degree();
    std::map<std::vector<int>, long> cells;
    for (const auto& signs : assign_point_cells(part, pts)) {
        bool zero = false;
        for (int s : signs) zero = zero || s == 0;
        if (zero || signs.empty())
            ++st.on_surface;
        else
            ++cells[signs];
    }
    if (part.stages.empty()) {
        // No stages: everything shares the single trivial cell.
        st.on_surface = 0;
        st.cells_nonempty = pts.empty() ? 0 : 1;
        st.max_cell = st.points_total;
        return st;
    }
    st.cells_nonempty = static_cast<long>(cells.size());
    for (const auto& [key, count] : cells) st.max_cell = std::max(st.max_cell, count);
    return st;
}

}  // namespace inc3
