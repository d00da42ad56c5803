#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/asym_expansion.hpp"
#include "cae/series/evaluator.hpp"

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace cae {

/// Largest exponent allowed in e^{X^p} factors.
inline constexpr double kExponentCap = 700.0;

/// Formal solution at infinity of U' = (p X^{p-1} + b(X)) U + v(X), to depth M,
/// by the fixed point U <- (U' - b U - v) / (p X^{p-1}). Exact when the fixed point closes.
template <class T>
[[nodiscard]] AsymExpansion<T> formal_linear_solution(int p, const std::optional<AsymExpansion<T>>& b,
                                                      const AsymExpansion<T>& v, int M) {
    if (p < 2 || p % 2 != 0) throw InputError("p must be an even integer >= 2");
    if (v.is_zero() && v.is_exact()) return {};
    const T inv_p = T(1) / T(p);
    auto step = [&](const AsymExpansion<T>& U) {
        AsymExpansion<T> r = U.derivative() - v;
        if (b) r = r - *b * U;
        return (r.times_X_power(-(p - 1)) * inv_p).truncated(M);
    };
    AsymExpansion<T> U;
    const int max_iter = 4 * M + 4 * std::max(0, v.leading_power()) + 20;
    for (int it = 0; it < max_iter; ++it) {
        AsymExpansion<T> next = step(U);
        if (next == U) break;
        U = next;
    }
    // Promote to exact when the truncated result already solves the equation identically.
    const AsymExpansion<T> cand(LaurentPoly<T>(U.in_w().lowest(), [&] {
        std::vector<T> c;
        for (int k = U.in_w().lowest(); k <= U.in_w().highest(); ++k) c.push_back(U.in_w().coeff(k));
        return c;
    }()));
    if (v.is_exact() && (!b || b->is_exact())) {
        AsymExpansion<T> res = cand.derivative() - cand.times_X_power(p - 1) * T(p) - v;
        if (b) res = res - *b * cand;
        if (res.is_zero() && res.is_exact()) return cand;
    }
    return U;
}

/// Formal tail of J^sigma v to depth M (the sign does not enter the formal series).
template <class T>
[[nodiscard]] AsymExpansion<T> tail_of_J(int p, Sign /*sigma*/, const AsymExpansion<T>& v, int M) {
    return formal_linear_solution<T>(p, std::nullopt, v, M);
}

/// J^sigma of a polynomial: polynomial part plus sum_k u[k] U_k^sigma (k = 1..p-1, u[0] unused).
template <class T>
struct PolynomialJ {
    TaylorPoly<T> poly;
    std::vector<T> u;
};

/// Closed form of J^sigma(X^m): U_{m+1} for m <= p-2, and
/// J(X^{p-1+j}) = -X^j/p + (j/p) J(X^{j-1}) above.
template <class T>
[[nodiscard]] PolynomialJ<T> polynomial_J(int p, const TaylorPoly<T>& v) {
    if (p < 2 || p % 2 != 0) throw InputError("p must be an even integer >= 2");
    PolynomialJ<T> out;
    out.u.assign(static_cast<std::size_t>(p), T(0));
    std::vector<T> poly(static_cast<std::size_t>(std::max(1, v.degree() + 1)), T(0));
    const T inv_p = T(1) / T(p);
    for (int m = v.degree(); m >= 0; --m) {
        T c = v.coeff(m);
        int e = m;
        while (c != T(0)) {
            if (e <= p - 2) {
                out.u[static_cast<std::size_t>(e + 1)] += c;
                break;
            }
            const int j = e - (p - 1);
            poly[static_cast<std::size_t>(j)] -= c * inv_p;
            if (j == 0) break;
            c = c * T(j) * inv_p;
            e = j - 1;
        }
    }
    out.poly = TaylorPoly<T>(std::move(poly));
    return out;
}

/// U_k^sigma(X) = e^{X^p} int_{sigma infinity}^X e^{-T^p} T^{k-1} dT.
[[nodiscard]] double eval_U(int p, int k, Sign sigma, double X);

/// Dawson-type solution of U' = -2XU + 1 with U(0) = 0: int_0^X e^{T^2 - X^2} dT.
[[nodiscard]] double eval_dawson(double X);

/// int_{-inf}^{inf} e^{-t^p/eps} t^j dt.
[[nodiscard]] double gauss_moment(int p, int j, double eps);

/// Uniform grid [-x_far, x_far] used by inner solutions.
struct InnerGrid {
    double x_far = 0.0;
    int nodes = 2048;
    /// Grid with |x_far|^p = 40.
    [[nodiscard]] static InnerGrid for_p(int p, int nodes = 2048) { return {std::pow(40.0, 1.0 / p), nodes}; }
    [[nodiscard]] double h() const { return 2.0 * x_far / (nodes - 1); }
    [[nodiscard]] double node(int i) const { return -x_far + i * h(); }
};

/// Default tail depth for formal solutions on the grid of p.
[[nodiscard]] inline int default_tail_depth(int p) { return 40 * p + 8; }

/// Function with polynomial growth on the sigma ray: numeric values (closed form or grid)
/// plus its formal expansion at sigma*infinity.
class RayFn {
public:
    using Fn = std::function<double(double)>;

    RayFn() = default;
    RayFn(Sign sigma, AsymExpansion<double> formal, Fn f, Fn df = {},
          double lo = -std::numeric_limits<double>::infinity(), double hi = std::numeric_limits<double>::infinity())
        : sigma_(sigma), formal_(std::move(formal)), f_(std::move(f)), df_(std::move(df)), lo_(lo), hi_(hi) {}

    /// Exact expansion (polynomial plus finitely many inverse powers) used as its own value.
    [[nodiscard]] static RayFn from_exact(Sign sigma, const AsymExpansion<double>& e);
    [[nodiscard]] static RayFn zero(Sign sigma) { return from_exact(sigma, AsymExpansion<double>()); }
    /// Closed form sum of a polynomial and multiples of U_k^sigma.
    [[nodiscard]] static RayFn from_polynomial_J(int p, Sign sigma, const PolynomialJ<double>& pj, int depth);

    [[nodiscard]] Sign sigma() const noexcept { return sigma_; }
    [[nodiscard]] const AsymExpansion<double>& formal() const noexcept { return formal_; }
    [[nodiscard]] bool is_zero() const noexcept { return !f_ || (formal_.is_zero() && formal_.is_exact() && zero_); }
    /// True when the values are the exact expansion itself (a polynomial plus finitely many inverse powers).
    [[nodiscard]] bool is_exact_function() const noexcept { return exact_fn_; }
    [[nodiscard]] int growth() const { return std::max(0, formal_.poly().degree()); }
    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }

    [[nodiscard]] double operator()(double X) const;
    [[nodiscard]] double derivative(double X) const;
    /// Same function without its polynomial part, as an evaluator for a fast coefficient.
    [[nodiscard]] Evaluator fast_evaluator() const;
    [[nodiscard]] Evaluator evaluator() const;

private:
    Sign sigma_ = Sign::minus;
    AsymExpansion<double> formal_;
    Fn f_;
    Fn df_;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
    bool zero_ = false;
    bool exact_fn_ = false;
};

/// Polynomial-growth solution of U' = (p X^{p-1} + b(X)) U + v(X) on the sigma side, integrated inward
/// from sigma*x_far with the formal solution as start value and stored on the grid.
[[nodiscard]] RayFn solve_inner_linear(int p, Sign sigma, const RayFn* b, const RayFn& v, const InnerGrid& grid,
                                       int depth);

/// Integrates U' = rhs(X, U) across the grid from sigma*x_far, starting at the formal value there.
/// A blowup on the far side of X = 0 truncates the range; a blowup before X = 0 throws NumericalError.
[[nodiscard]] RayFn integrate_ray(Sign sigma, AsymExpansion<double> formal, const std::function<double(double, double)>& rhs,
                                  const InnerGrid& grid);

/// J^sigma v: the polynomial-growth solution of U' = p X^{p-1} U + v.
[[nodiscard]] RayFn apply_J(int p, Sign sigma, const RayFn& v, const InnerGrid& grid, int depth);
[[nodiscard]] RayFn apply_J(int p, Sign sigma, const RayFn& v);

/// Grid-stored RayFn built from node values and derivatives (cubic Hermite), valid on nodes [i0, i1].
[[nodiscard]] RayFn grid_ray_fn(Sign sigma, AsymExpansion<double> formal, const InnerGrid& grid,
                                std::vector<double> values, std::vector<double> derivs, int i0, int i1,
                                std::function<double(double, double)> rhs = {});

}  // namespace cae
