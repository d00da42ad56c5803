#pragma once

#include "cae/series/combined_series.hpp"
#include "cae/special/special.hpp"
#include "cae/turning_point/inner.hpp"
#include "cae/turning_point/ode_spec.hpp"

#include <memory>
#include <vector>

namespace cae {

enum class Example1Variant {
    attractive,  ///< eps y' = 2xy + eps g, solution bounded on the sigma side
    repulsive,   ///< eps y' = -2xy + eps g, y(0) = c(eps) = sum ic[n] eta^n
};

template <class T>
struct Example1Options {
    Example1Variant variant = Example1Variant::attractive;
    Sign sigma = Sign::minus;
    std::vector<T> ic;
    int depth = 0;  ///< tail depth, 0 for the default
};

namespace detail {

template <class T>
TaylorPoly<T> half_DS(const TaylorPoly<T>& q, const T& sign) {
    return shift_S(q).derivative() * (sign / T(2));
}

template <class T>
AsymTail<T> dawson_tail(int depth) {
    // (2n-1)!! / 2^{n+1} at X^{-(2n+1)}
    std::vector<T> g(static_cast<std::size_t>(depth), T(0));
    T c = T(1) / T(2);
    for (int n = 0; 2 * n + 1 <= depth; ++n) {
        g[static_cast<std::size_t>(2 * n)] = c;
        c = c * T(2 * n + 1) / T(2);
    }
    return AsymTail<T>(std::move(g), depth);
}

}  // namespace detail

/// Closed-form combined series of the linear example: slow parts by iterating D and S on g,
/// fast parts as multiples of U^sigma (attractive) or of the Dawson function and e^{-X^2} (repulsive).
template <class T>
[[nodiscard]] CombinedSeries<T> example1_closed_form(const TaylorPoly<T>& g, int N, const Example1Options<T>& opt = {}) {
    if (N < 0) throw InputError("order must be >= 0");
    const int depth = opt.depth > 0 ? opt.depth : default_tail_depth(2);
    CombinedSeries<T> y(2, N);
    const bool attractive = opt.variant == Example1Variant::attractive;
    const T sign = attractive ? T(1) : T(-1);
    const Sign sigma = opt.sigma;

    const AsymTail<T> u_tail =
        attractive ? tail_of_J<T>(2, sigma, AsymExpansion<T>::polynomial(TaylorPoly<T>{T(1)}), depth).tail() : detail::dawson_tail<T>(depth);

    auto ic = [&](int n) { return n < static_cast<int>(opt.ic.size()) ? opt.ic[static_cast<std::size_t>(n)] : T(0); };
    auto set_fast = [&](int n, const T& b, const T& d) {
        if (n >= N) return;
        FastFn<T> f;
        if (b != T(0)) f.tail = u_tail * b;
        const double bd = to_double(b), dd = to_double(d);
        if (b != T(0)) {
            BasisTerm<T> t;
            t.kind = attractive ? BasisTerm<T>::Kind::U : BasisTerm<T>::Kind::dawson;
            t.sigma = sigma;
            t.coeff = b;
            f.basis.push_back(t);
        }
        if (d != T(0)) {
            BasisTerm<T> t;
            t.kind = BasisTerm<T>::Kind::exp_poly;
            t.poly = TaylorPoly<T>{d};
            f.basis.push_back(t);
        }
        if (f.basis.empty()) return;
        if (attractive) {
            f.evaluator = Evaluator([bd, sigma](double X) { return bd * eval_U(2, 1, sigma, X); }, sigma,
                                    -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                                    [bd, sigma](double X) { return bd * (2 * X * eval_U(2, 1, sigma, X) + 1.0); });
        } else {
            f.evaluator = Evaluator([bd, dd](double X) { return bd * eval_dawson(X) + dd * std::exp(-X * X); }, sigma,
                                    -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                                    [bd, dd](double X) { return bd * (1.0 - 2 * X * eval_dawson(X)) - 2 * X * dd * std::exp(-X * X); });
        }
        y.fast(n) = std::move(f);
    };

    TaylorPoly<T> q = g;  // (sign/2 DS)^n g
    if (!attractive) set_fast(0, T(0), ic(0));
    for (int n = 0; 2 * n + 1 < N; ++n) {
        const TaylorPoly<T> Sq = shift_S(q);
        if (2 * n + 2 < N) y.slow(2 * n + 2) = Sq * (-sign / T(2));
        const T b = q.coeff(0);
        set_fast(2 * n + 1, b, attractive ? T(0) : ic(2 * n + 1));
        if (!attractive) set_fast(2 * n + 2, T(0), ic(2 * n + 2) - Sq.coeff(0) / T(2));
        q = detail::half_DS(q, sign);
    }
    return y;
}

/// Control alpha(eps) per eta-power and, for p = 2, the pole-free outer coefficients y_n (per eps-power).
template <class T>
struct ControlExpansion {
    int p = 2;
    std::vector<T> alpha_eta;
    std::vector<TaylorPoly<T>> y;

    [[nodiscard]] T eps_coeff(int n) const {
        const auto k = static_cast<std::size_t>(p * n);
        return k < alpha_eta.size() ? alpha_eta[k] : T(0);
    }
};

/// eps y' = p x^{p-1} y + eps (g + alpha): alpha(eps) through eps^{N-1}.
/// p = 2 uses alpha_n = y_n'(0); other p go through the inner moment conditions.
template <class T>
[[nodiscard]] ControlExpansion<T> control_expansion(const TaylorPoly<T>& g, int p, int N) {
    if (N < 1) throw InputError("control expansion order must be >= 1");
    ControlExpansion<T> out;
    out.p = p;
    if (p == 2) {
        out.alpha_eta.assign(static_cast<std::size_t>(2 * N), T(0));
        out.y.assign(static_cast<std::size_t>(N) + 1, TaylorPoly<T>());
        out.alpha_eta[0] = -g.coeff(0);
        if (N >= 1) out.y[1] = shift_S(g) * T(T(-1) / T(2));
        for (int n = 1; n < N; ++n) {
            const TaylorPoly<T> d = out.y[static_cast<std::size_t>(n)].derivative();
            const T a = d.coeff(0);
            out.alpha_eta[static_cast<std::size_t>(2 * n)] = a;
            out.y[static_cast<std::size_t>(n + 1)] = shift_S(d) * T(T(1) / T(2));
        }
        return out;
    }
    if constexpr (is_exact_v<T>) {
        throw InputError("control expansion for p != 2 needs floating-point mode");
    } else {
        const ControlSeries s = inner_control_series(linear_spec<double>(p, g, true), N);
        out.alpha_eta = s.alpha_eta;
        return out;
    }
}

}  // namespace cae
