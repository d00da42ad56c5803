#pragma once

#include "cae/turning_point/inner.hpp"
#include "cae/turning_point/ode_spec.hpp"

#include <string>
#include <vector>

namespace cae {

/// Outcome of a shooting problem for a connection constant.
struct ConnectionResult {
    double value = 0.0;
    int iterations = 0;
    /// |Y' - rhs(X, Y)| of the formal anchor at the starting point
    double anchor_residual = 0.0;
    double x_far = 0.0;
};

/// Which slow branch of Y' = Y(Y-X)(Y+X) + c the solution coming from Y ~ c/X^2 at -infinity should follow.
enum class UnionJackBranch {
    plus,   ///< Y ~ X for X -> +infinity
    minus,  ///< Y ~ -X for X -> +infinity (the mirror problem)
};

/// Formal solution sum a_k X^{-k} of Y' = Y(Y-X)(Y+X) + c that tends to 0; a[k] multiplies X^{-k}.
[[nodiscard]] std::vector<double> union_jack_anchor(double c, int depth = 24);

enum class UnionJackExit { above, below };

/// Integrates from -x_far with the anchor and reports on which side of the branch the trajectory leaves.
[[nodiscard]] UnionJackExit union_jack_classify(double c, double x_far = 10.0, UnionJackBranch branch = UnionJackBranch::plus);

/// Bisection for the Union Jack canard value c0 = 0.3621759411... (or -c0 for the mirror branch).
[[nodiscard]] ConnectionResult union_jack_c0(double tol = 1e-10, double x_far = 10.0, UnionJackBranch branch = UnionJackBranch::plus);

/// V_d(0, D) for V' = TV + V^2 + D, the solution with V ~ -D/T as T -> +infinity.
[[nodiscard]] double reduced_canard_value_at_zero(double D, double t_far = 10.0);

/// Formal solution sum b_k T^{-k} of V' = TV + V^2 + D that tends to 0; b[k] multiplies T^{-k}.
[[nodiscard]] std::vector<double> reduced_anchor(double D, int depth = 16);

/// Value c(eps) of the angular canard, the root of
/// g(eps) V_d(0, (c - d(eps))/g(eps)^2) + g(-eps) V_d(0, (c - d(-eps))/g(-eps)^2)
/// with d + d^2 = eps and g^2 = 1 + 2d.
[[nodiscard]] ConnectionResult angular_canard_value(double eps, double tol = 1e-15, double t_far = 10.0);

/// Control series alpha(eps) per eta-power (alpha_eta[n] multiplies eta^n) making the inner
/// solutions from both sides agree order by order.
[[nodiscard]] ControlSeries canard_control_series(const ODESpec<double>& spec, int N, const InnerOptions& opt = {});

}  // namespace cae
