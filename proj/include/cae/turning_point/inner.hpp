#pragma once

#include "cae/special/special.hpp"
#include "cae/turning_point/ode_spec.hpp"

#include <optional>
#include <vector>

namespace cae {

/// One term c X^j [Y^q]_{n-e} of the scaled inner equation Y' = p X^{p-1} Y + F(X, Y, eta)
/// obtained from x = eta X, y = eta^r Y; q = 0 marks a Y-free forcing term.
struct InnerTerm {
    int e = 0;
    int j = 0;
    int q = 0;
    double c = 0.0;
};

/// eta-graded form of a spec after the inner scaling.
struct ScaledInnerEquation {
    int p = 2;
    int r = 1;
    std::vector<InnerTerm> terms;
    bool control = false;

    /// Throws InfeasibleError when a term carries a negative power of eta.
    [[nodiscard]] static ScaledInnerEquation from_spec(const ODESpec<double>& spec);
    /// Scaled order at which alpha_k (per eta-power) enters.
    [[nodiscard]] int alpha_order(int k) const { return k + 1 - r; }
    [[nodiscard]] bool nonlinear_at_zero() const;
};

struct InnerOptions {
    std::optional<InnerGrid> grid;
    int depth = 0;  ///< tail depth; 0 picks default_tail_depth(p)
};

/// Inner expansion y ~ sum h_n(X) eta^n with h_n = V_{n-r}, V_m the scaled coefficients.
struct InnerExpansion {
    int p = 2;
    int r = 1;
    Sign sigma = Sign::minus;
    std::vector<RayFn> V;
    /// closed form of V_m when its forcing was a polynomial and the equation linear
    std::vector<std::optional<PolynomialJ<double>>> closed;

    /// Unscaled coefficient h_n.
    [[nodiscard]] RayFn coeff(int n) const {
        const int m = n - r;
        if (m < 0 || m >= static_cast<int>(V.size())) return RayFn::zero(sigma);
        return V[static_cast<std::size_t>(m)];
    }
    [[nodiscard]] const std::optional<PolynomialJ<double>>& closed_form(int n) const {
        static const std::optional<PolynomialJ<double>> none;
        const int m = n - r;
        if (m < 0 || m >= static_cast<int>(closed.size())) return none;
        return closed[static_cast<std::size_t>(m)];
    }
};

/// Inner coefficients h_0..h_{N-1} on the sigma side.
/// alpha_eta gives the control alpha(eps) per eta-power when spec.control is set.
[[nodiscard]] InnerExpansion inner_expansion(const ODESpec<double>& spec, int N, Sign sigma,
                                             const std::vector<double>& alpha_eta = {}, const InnerOptions& opt = {});

/// alpha(eps) per eta-power, chosen order by order so that V_n^- = V_n^+
/// (the moment of e^{-X^p} F_n over the real line vanishes).
struct ControlSeries {
    int p = 2;
    std::vector<double> alpha_eta;
    /// per scaled order: the moment integral before alpha was added
    std::vector<double> moments;

    /// Coefficient of eps^n; throws if alpha has nonzero coefficients off multiples of p.
    [[nodiscard]] double eps_coeff(int n) const;
    [[nodiscard]] double value(double eps) const;
};

/// Canard control series with alpha_eta of length p*N (eps-orders 0..N-1 and the fractional orders between).
[[nodiscard]] ControlSeries inner_control_series(const ODESpec<double>& spec, int N, const InnerOptions& opt = {});

}  // namespace cae
