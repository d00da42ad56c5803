#pragma once

#include "cae/error.hpp"
#include "cae/series/asym_expansion.hpp"
#include "cae/series/combined_series.hpp"
#include "cae/series/laurent_poly.hpp"
#include "cae/special/quadrature.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cae {

/// Depth used for the tail of l'(X) = X^{p-1}/(X^p+1) when it enters exact computations.
inline constexpr int kLogTailDepth = 40;

namespace detail {

template <class T>
void check_same_p(const CombinedSeries<T>& y, const CombinedSeries<T>& z) {
    if (y.p() != z.p()) throw InputError("combined series with different root powers p");
}

/// Sum of two fast coefficients; the evaluator survives only when every nonzero summand has one.
template <class T>
FastFn<T> add_fast(const FastFn<T>& a, const FastFn<T>& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    FastFn<T> out(a.tail + b.tail);
    if (a.evaluator && b.evaluator) out.evaluator = *a.evaluator + *b.evaluator;
    if (!a.basis.empty() && !b.basis.empty()) {
        out.basis = a.basis;
        out.basis.insert(out.basis.end(), b.basis.begin(), b.basis.end());
    }
    return out;
}

template <class T>
FastFn<T> scale_fast(const FastFn<T>& a, const T& c) {
    if (c == T(0)) return {};
    FastFn<T> out(a.tail * c);
    if (a.evaluator) out.evaluator = a.evaluator->scaled(to_double(c));
    for (auto b : a.basis) {
        if (b.kind == BasisTerm<T>::Kind::exp_poly) {
            b.poly *= c;
        } else {
            b.coeff *= c;
        }
        out.basis.push_back(b);
    }
    return out;
}

/// T^k h: tail shifted k times, evaluator X^k h(X) - sum_{j<=k} h_j X^{k-j}.
template <class T>
FastFn<T> shift_T_fast(const FastFn<T>& h, int k) {
    if (k == 0) return h;
    AsymTail<T> t = h.tail;
    for (int i = 0; i < k; ++i) t = shift_T(t);
    FastFn<T> out(t);
    if (h.evaluator) {
        std::vector<double> hj;
        for (int j = 1; j <= k; ++j) hj.push_back(to_double(h.tail.coeff(j)));
        const Evaluator e = *h.evaluator;
        out.evaluator = Evaluator(
            [e, hj, k](double X) {
                double v = std::pow(X, k) * e(X);
                for (int j = 1; j <= k; ++j) v -= hj[static_cast<std::size_t>(j - 1)] * std::pow(X, k - j);
                return v;
            },
            e.sigma(), e.lo(), e.hi());
    }
    return out;
}

template <class T>
FastFn<T> multiply_fast(const FastFn<T>& a, const FastFn<T>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    FastFn<T> out(a.tail * b.tail);
    if (a.evaluator && b.evaluator) out.evaluator = *a.evaluator * *b.evaluator;
    return out;
}

template <class T>
FastFn<T> derivative_fast(const FastFn<T>& a) {
    if (a.is_zero()) return {};
    FastFn<T> out(a.tail.derivative());
    if (a.evaluator) {
        const Evaluator e = *a.evaluator;
        out.evaluator = Evaluator([e](double X) { return e.derivative(X); }, e.sigma(), e.lo(), e.hi());
    }
    return out;
}

/// Tail of l'(X) = X^{p-1}/(X^p+1) = sum_k (-1)^k X^{-1-kp}, to the given depth.
template <class T>
AsymTail<T> log_kernel_derivative_tail(int p, int depth) {
    std::vector<T> g(static_cast<std::size_t>(depth), T(0));
    T s(1);
    for (int m = 1; m <= depth; m += p) {
        g[static_cast<std::size_t>(m - 1)] = s;
        s = -s;
    }
    return AsymTail<T>(std::move(g), depth);
}

inline Evaluator log_kernel_derivative_evaluator(int p, Sign sigma) {
    return Evaluator([p](double X) { return std::pow(X, p - 1) / (std::pow(X, p) + 1.0); }, sigma);
}

/// G(X) = integral from sigma*infinity to X of q, where q has the given tail (leading X^{-2} or smaller).
double integrate_from_infinity(const Evaluator& q, const std::vector<double>& G_tail, double X);

}  // namespace detail

/// Product, truncated at min(N_y, N_z).
template <class T>
[[nodiscard]] CombinedSeries<T> multiply(const CombinedSeries<T>& y, const CombinedSeries<T>& z) {
    detail::check_same_p(y, z);
    if (y.log() || z.log()) throw InputError("products of series carrying a log component are not supported");
    const int N = std::min(y.N(), z.N());
    CombinedSeries<T> out(y.p(), N);
    auto mixed = [&](const TaylorPoly<T>& a, const FastFn<T>& h, int base) {
        if (a.is_zero() || h.is_zero()) return;
        const int kmax = std::min(a.degree(), N - 1 - base);
        TaylorPoly<T> Ska = a;
        for (int k = 0; k <= kmax; ++k) {
            if (k >= 1) {
                Ska = shift_S(Ska);
                if (!h.tail.has(k)) throw InputError("fast tail too short for the product at order " + std::to_string(base + k));
                T hk = h.tail.coeff(k);
                if (hk != T(0)) out.slow(base + k) += Ska * hk;
            }
            T ak = a.coeff(k);
            if (ak != T(0)) {
                if (k > h.tail.depth()) throw InputError("fast tail too short for the product at order " + std::to_string(base + k));
                out.fast(base + k) = detail::add_fast(out.fast(base + k), detail::scale_fast(detail::shift_T_fast(h, k), ak));
            }
        }
    };
    for (int n = 0; n < N; ++n) {
        for (int m = 0; n + m < N; ++m) {
            const auto& a = y.slow(n);
            const auto& g = y.fast(n);
            const auto& b = z.slow(m);
            const auto& h = z.fast(m);
            if (!a.is_zero() && !b.is_zero()) out.slow(n + m) += a * b;
            if (!g.is_zero() && !h.is_zero()) out.fast(n + m) = detail::add_fast(out.fast(n + m), detail::multiply_fast(g, h));
            mixed(a, h, n + m);
            mixed(b, g, n + m);
        }
    }
    return out;
}

template <class T>
[[nodiscard]] CombinedSeries<T> add(const CombinedSeries<T>& y, const CombinedSeries<T>& z) {
    detail::check_same_p(y, z);
    const int N = std::min(y.N(), z.N());
    CombinedSeries<T> out(y.p(), N);
    for (int n = 0; n < N; ++n) {
        out.slow(n) = y.slow(n) + z.slow(n);
        out.fast(n) = detail::add_fast(y.fast(n), z.fast(n));
    }
    if (y.log() || z.log()) {
        LogComponent<T> l{std::vector<T>(static_cast<std::size_t>(N), T(0)), y.p()};
        for (const auto* s : {&y, &z})
            if (s->log())
                for (int n = 0; n < N && n < static_cast<int>(s->log()->residues.size()); ++n)
                    l.residues[static_cast<std::size_t>(n)] += s->log()->residues[static_cast<std::size_t>(n)];
        out.set_log(l);
    }
    return out;
}

template <class T>
[[nodiscard]] CombinedSeries<T> scale(const CombinedSeries<T>& y, const T& c) {
    CombinedSeries<T> out(y.p(), y.N());
    for (int n = 0; n < y.N(); ++n) {
        out.slow(n) = y.slow(n) * c;
        out.fast(n) = detail::scale_fast(y.fast(n), c);
    }
    if (y.log()) {
        auto l = *y.log();
        for (auto& r : l.residues) r *= c;
        out.set_log(l);
    }
    return out;
}

/// eta^k * y, keeping the truncation order N of y.
template <class T>
[[nodiscard]] CombinedSeries<T> shift_order(const CombinedSeries<T>& y, int k) {
    CombinedSeries<T> out(y.p(), y.N());
    for (int n = 0; n + k < y.N(); ++n) {
        out.slow(n + k) = y.slow(n);
        out.fast(n + k) = y.fast(n);
    }
    return out;
}

/// Constant series c (slow_0 = c).
template <class T>
[[nodiscard]] CombinedSeries<T> constant_series(int p, int N, const T& c) {
    CombinedSeries<T> out(p, N);
    if (N > 0) out.slow(0) = TaylorPoly<T>::constant(c);
    return out;
}

/// Order-n output a_n' + g_{n+1}'; the result has N-1 orders.
template <class T>
[[nodiscard]] CombinedSeries<T> differentiate(const CombinedSeries<T>& y) {
    if (y.N() > 0 && !y.fast(0).is_zero())
        throw InputError("combined series with nonzero fast part at order 0 is not differentiable");
    const int N = std::max(0, y.N() - 1);
    CombinedSeries<T> out(y.p(), N);
    for (int n = 0; n < N; ++n) {
        out.slow(n) = y.slow(n).derivative();
        out.fast(n) = detail::derivative_fast(y.fast(n + 1));
    }
    if (y.log()) {
        const auto& res = y.log()->residues;
        const int p = y.log()->kernel_p;
        for (int n = 0; n < N; ++n) {
            if (n + 1 >= static_cast<int>(res.size())) break;
            const T r = res[static_cast<std::size_t>(n + 1)];
            if (r == T(0)) continue;
            Sign sigma = out.fast(n).evaluator ? out.fast(n).evaluator->sigma() : Sign::plus;
            FastFn<T> k(detail::log_kernel_derivative_tail<T>(p, kLogTailDepth),
                        detail::log_kernel_derivative_evaluator(p, sigma));
            out.fast(n) = detail::add_fast(out.fast(n), detail::scale_fast(k, r));
        }
    }
    return out;
}

/// Primitive in x: slow parts integrate from r, fast parts are anchored at infinity on their ray
/// and move one order up; residues g_{n,1} go into the log component.
template <class T>
[[nodiscard]] std::pair<CombinedSeries<T>, LogComponent<T>> antiderivative(const CombinedSeries<T>& y, const T& r) {
    if (y.log()) throw InputError("antiderivative of a series carrying a log component is not supported");
    const int N = y.N();
    const int p = y.p();
    CombinedSeries<T> out(p, N);
    LogComponent<T> log{std::vector<T>(static_cast<std::size_t>(N), T(0)), p};
    for (int n = 0; n < N; ++n) {
        out.slow(n) = y.slow(n).antiderivative(r);
        const FastFn<T>& g = y.fast(n);
        if (n + 1 >= N || g.is_zero()) continue;
        const T rho = g.tail.has(1) ? g.tail.coeff(1) : T(0);
        AsymTail<T> q = g.tail;
        if (rho != T(0)) {
            if (!g.evaluator) throw InputError("fast coefficient with nonzero residue needs an evaluator");
            const int depth = g.tail.is_exact() ? kLogTailDepth : g.tail.depth();
            q = q - detail::log_kernel_derivative_tail<T>(p, depth) * rho;
            log.residues[static_cast<std::size_t>(n + 1)] = rho;
        }
        std::vector<T> G;
        const int hi = q.is_exact() ? q.size() : q.depth();
        for (int m = 2; m <= hi; ++m) G.push_back(-q.coeff(m) / T(m - 1));
        FastFn<T> out_g(AsymTail<T>(G, q.is_exact() ? kExactDepth : std::max(0, q.depth() - 1)));
        if (g.evaluator) {
            Evaluator qe = *g.evaluator;
            if (rho != T(0)) qe = qe + detail::log_kernel_derivative_evaluator(p, qe.sigma()).scaled(-to_double(rho));
            std::vector<double> Gd;
            for (const auto& v : G) Gd.push_back(to_double(v));
            out_g.evaluator = Evaluator([qe, Gd](double X) { return detail::integrate_from_infinity(qe, Gd, X); },
                                        qe.sigma(), qe.lo(), qe.hi(), qe.fn());
        }
        out.fast(n + 1) = out_g;
    }
    if (!log.is_zero()) out.set_log(log);
    return {out, log};
}

/// One term p_{jk} y^j eta^k of a left composition.
template <class T>
struct PowerTerm {
    int j = 0;
    int k = 0;
    CombinedSeries<T> coeff;
};

/// sum p_{jk} y^j eta^k truncated at the smallest N involved; requires val(y) >= 1.
template <class T>
[[nodiscard]] CombinedSeries<T> compose_left(const std::vector<PowerTerm<T>>& P, const CombinedSeries<T>& y) {
    if (y.valuation() == 0) throw InputError("left composition needs a series without eta^0 term");
    int N = y.N();
    int maxj = 0;
    for (const auto& t : P) {
        detail::check_same_p(t.coeff, y);
        N = std::min(N, t.coeff.N());
        maxj = std::max(maxj, t.j);
    }
    std::vector<CombinedSeries<T>> pw;
    pw.push_back(constant_series<T>(y.p(), N, T(1)));
    for (int j = 1; j <= maxj; ++j) pw.push_back(multiply(pw.back(), y.truncated(N)));
    CombinedSeries<T> out(y.p(), N);
    for (const auto& t : P) {
        if (t.j < 0 || t.k < 0) throw InputError("negative power in composition");
        out = add(out, shift_order(multiply(t.coeff.truncated(N), pw[static_cast<std::size_t>(t.j)]), t.k));
    }
    return out;
}

/// Outer coefficient c_n = a_n + sum_{l<n} g_{l,n-l} x^{l-n}.
template <class T>
[[nodiscard]] LaurentPoly<T> extract_outer(const CombinedSeries<T>& y, int n) {
    if (n < 0 || n >= y.N()) throw InputError("order out of range");
    LaurentPoly<T> c(y.slow(n));
    for (int l = 0; l < n; ++l) {
        const auto& t = y.fast(l).tail;
        if (!t.has(n - l)) throw InputError("tail of fast order " + std::to_string(l) + " too short to extract outer order " + std::to_string(n));
        T v = t.coeff(n - l);
        if (v != T(0)) c = c + LaurentPoly<T>::monomial(l - n, v);
    }
    return c;
}

/// Inner coefficient h_n = g_n + sum_{l<=n} a_{n-l,l} X^l as (polynomial part, tail).
template <class T>
[[nodiscard]] std::pair<TaylorPoly<T>, AsymTail<T>> extract_inner(const CombinedSeries<T>& y, int n) {
    if (n < 0 || n >= y.N()) throw InputError("order out of range");
    std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
    for (int l = 0; l <= n; ++l) c[static_cast<std::size_t>(l)] = y.slow(n - l).coeff(l);
    return {TaylorPoly<T>(std::move(c)), y.fast(n).tail};
}

template <class T>
[[nodiscard]] T default_matching_tolerance() {
    if constexpr (is_exact_v<T>) {
        return T(0);
    } else {
        return T(1e-9);
    }
}

/// Rebuilds a combined series from outer coefficients c_n and inner coefficients h_n,
/// checking pole orders, polynomial degrees and c_{nm} = z_{n+m,-m} on every overlap.
template <class T>
[[nodiscard]] CombinedSeries<T> reconstruct_from_matching(const std::vector<LaurentPoly<T>>& outer,
                                                          const std::vector<std::pair<TaylorPoly<T>, AsymTail<T>>>& inner,
                                                          int p, T tol = default_matching_tolerance<T>()) {
    const int N = static_cast<int>(std::min(outer.size(), inner.size()));
    for (int n = 0; n < N; ++n) {
        const int K = outer[static_cast<std::size_t>(n)].pole_order();
        if (K > n)
            throw InfeasibleError("pole order " + std::to_string(K) + " at n=" + std::to_string(n) + " exceeds n", n, K - n);
        const int d = inner[static_cast<std::size_t>(n)].first.degree();
        if (d > n)
            throw InfeasibleError("polynomial degree " + std::to_string(d) + " at n=" + std::to_string(n) + " exceeds n", n, d - n);
    }
    auto mismatch = [&](const T& a, const T& b) { return abs_value(T(a - b)) > tol; };
    for (int n = 0; n < N; ++n) {
        const auto& c = outer[static_cast<std::size_t>(n)];
        // pole coefficients of c_n against tails z_{n+m,-m}, m < 0
        for (int m = -n; m < 0; ++m) {
            const auto& tail = inner[static_cast<std::size_t>(n + m)].second;
            if (!tail.has(-m)) continue;
            if (mismatch(c.coeff(m), tail.coeff(-m)))
                throw CompatibilityError("incompatible matching data at (n, m) = (" + std::to_string(n) + ", " + std::to_string(m) + ")", n, m);
        }
        // regular coefficients of c_n against polynomial parts z_{n+m,-m}, m >= 0
        for (int m = 0; n + m < N; ++m) {
            if (m > c.valid_through()) break;
            const auto& poly = inner[static_cast<std::size_t>(n + m)].first;
            if (mismatch(c.coeff(m), poly.coeff(m)))
                throw CompatibilityError("incompatible matching data at (n, m) = (" + std::to_string(n) + ", " + std::to_string(m) + ")", n, m);
        }
    }
    CombinedSeries<T> out(p, N);
    for (int n = 0; n < N; ++n) {
        out.slow(n) = outer[static_cast<std::size_t>(n)].regular_part();
        out.fast(n) = FastFn<T>(inner[static_cast<std::size_t>(n)].second);
    }
    return out;
}

/// l(X) = (1/p) log(X^p + 1).
[[nodiscard]] inline double log_kernel(int p, double X) { return std::log1p(std::pow(X, p)) / p; }

/// sum_{n<N} (a_n(x) + g_n(x/eta)) eta^n, plus the log component when present.
template <class T>
[[nodiscard]] double evaluate_partial_sum(const CombinedSeries<T>& y, double x, double eta, int N) {
    if (N > y.N()) throw InputError("partial sum beyond the truncation order");
    if (eta <= 0.0) throw InputError("eta must be positive");
    const double X = x / eta;
    double sum = 0.0;
    double en = 1.0;
    for (int n = 0; n < N; ++n) {
        double v = y.slow(n)(x);
        const auto& g = y.fast(n);
        if (g.evaluator) {
            v += (*g.evaluator)(X);
        } else if (!g.tail.is_zero()) {
            if (!g.tail.is_exact()) throw InputError("fast coefficient at order " + std::to_string(n) + " has no evaluator");
            v += g.tail.partial_sum(X, g.tail.size());
        }
        if (y.log() && n < static_cast<int>(y.log()->residues.size())) {
            const double r = to_double(y.log()->residues[static_cast<std::size_t>(n)]);
            if (r != 0.0) v += r * log_kernel(y.log()->kernel_p, X);
        }
        sum += v * en;
        en *= eta;
    }
    return sum;
}

template <class U, class T>
[[nodiscard]] CombinedSeries<U> convert_series(const CombinedSeries<T>& y) {
    CombinedSeries<U> out(y.p(), y.N());
    for (int n = 0; n < y.N(); ++n) {
        out.slow(n) = convert_poly<U>(y.slow(n));
        FastFn<U> f(convert_tail<U>(y.fast(n).tail), y.fast(n).evaluator);
        for (const auto& b : y.fast(n).basis) {
            BasisTerm<U> c;
            c.kind = static_cast<typename BasisTerm<U>::Kind>(b.kind);
            c.k = b.k;
            c.sigma = b.sigma;
            if constexpr (std::is_same_v<U, double>) {
                c.coeff = to_double(b.coeff);
            } else {
                c.coeff = from_double<U>(b.coeff);
            }
            c.poly = convert_poly<U>(b.poly);
            f.basis.push_back(c);
        }
        out.fast(n) = f;
    }
    return out;
}

}  // namespace cae
