#pragma once

#include "cae/error.hpp"
#include "cae/series/laurent_poly.hpp"
#include "cae/turning_point/ode_spec.hpp"

#include <string>
#include <vector>

namespace cae {

/// Outer (Poincare) expansion y ~ sum c_n(x) eta^n, eps = eta^p.
/// Coefficients are stored per eta-power; the eps-coefficients are v_n = c_{pn}.
template <class T>
struct OuterExpansion {
    int p = 2;
    std::vector<LaurentPoly<T>> coeffs;
    std::vector<int> pole_orders;

    [[nodiscard]] int eta_orders() const { return static_cast<int>(coeffs.size()); }
    [[nodiscard]] int eps_orders() const { return (eta_orders() - 1) / p; }
    [[nodiscard]] const LaurentPoly<T>& c(int n) const { return coeffs.at(static_cast<std::size_t>(n)); }
    /// Coefficient of eps^n.
    [[nodiscard]] const LaurentPoly<T>& v(int n) const { return coeffs.at(static_cast<std::size_t>(p * n)); }
};

/// Outer expansion through eps^N (eta^{pN}). alpha_eta holds the control alpha(eps) per eta-power.
template <class T>
[[nodiscard]] OuterExpansion<T> outer_expansion(const ODESpec<T>& spec, int N, const std::vector<T>& alpha_eta = {}) {
    if (N < 1) throw InputError("outer expansion order must be >= 1");
    const int p = spec.p;
    const int top = p * N;
    const int budget = top + p * (N + 2) + 4;
    int kmax = 0;
    for (const auto& t : spec.P) kmax = std::max(kmax, t.k);

    OuterExpansion<T> out;
    out.p = p;
    out.coeffs.assign(static_cast<std::size_t>(top) + 1, LaurentPoly<T>());
    // powers[q][m] = [y^q]_m
    std::vector<std::vector<LaurentPoly<T>>> powers(static_cast<std::size_t>(kmax) + 2,
                                                    std::vector<LaurentPoly<T>>(static_cast<std::size_t>(top) + 1));
    auto& c = out.coeffs;
    for (int n = 1; n <= top; ++n) {
        for (int q = 2; q <= kmax + 1; ++q) {
            LaurentPoly<T> s;
            for (int i = 1; i < n; ++i) {
                if (c[static_cast<std::size_t>(i)].is_zero()) continue;
                const auto& b = powers[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(n - i)];
                if (b.is_zero()) continue;
                s = s + c[static_cast<std::size_t>(i)] * b;
            }
            powers[static_cast<std::size_t>(q)][static_cast<std::size_t>(n)] = s;
        }
        LaurentPoly<T> rhs;
        if (n >= p) rhs = c[static_cast<std::size_t>(n - p)].derivative();
        for (const auto& t : spec.h)
            if (p + p * t.l == n) rhs = rhs - LaurentPoly<T>::monomial(t.j, t.c);
        if (spec.control && n >= p && n - p < static_cast<int>(alpha_eta.size()))
            rhs = rhs - LaurentPoly<T>::monomial(0, alpha_eta[static_cast<std::size_t>(n - p)]);
        for (const auto& t : spec.P) {
            const int m = n - p * t.l;
            if (m < 1) continue;
            const auto& yq = powers[static_cast<std::size_t>(t.k + 1)][static_cast<std::size_t>(m)];
            // q = 1 uses c_m itself, which is known only for m < n
            if (t.k == 0 && m >= n) continue;
            const LaurentPoly<T>& term = t.k == 0 ? c[static_cast<std::size_t>(m)] : yq;
            if (!term.is_zero()) rhs = rhs - term.times_power(t.j) * t.c;
        }
        c[static_cast<std::size_t>(n)] = rhs.divided_by(spec.f, budget);
        powers[1][static_cast<std::size_t>(n)] = c[static_cast<std::size_t>(n)];
    }
    for (auto& cn : c) {
        if (!cn.exact()) cn = cn.truncated(top);
        out.pole_orders.push_back(cn.pole_order());
    }
    return out;
}

/// Outcome of the pole-order test pole(c_n) <= n on eta-indexed outer coefficients.
struct FeasibilityVerdict {
    bool pass = true;
    int n = -1;           ///< first violating eta-order
    int pole_order = 0;   ///< its pole order
    std::string message;

    /// eps-order of the witness when it falls on a multiple of p, else -1.
    [[nodiscard]] int eps_order(int p) const { return n >= 0 && n % p == 0 ? n / p : -1; }
};

template <class T>
[[nodiscard]] FeasibilityVerdict dac_feasibility(const OuterExpansion<T>& outer) {
    FeasibilityVerdict v;
    for (int n = 0; n < outer.eta_orders(); ++n) {
        const int K = outer.c(n).pole_order();
        if (K > n) {
            v.pass = false;
            v.n = n;
            v.pole_order = K;
            v.message = "pole order " + std::to_string(K) + " at n=" + std::to_string(n) + " exceeds n";
            return v;
        }
    }
    v.message = "pole orders within bound";
    return v;
}

}  // namespace cae
