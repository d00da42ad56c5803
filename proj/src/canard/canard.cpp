#include "cae/canard/canard.hpp"

#include "cae/error.hpp"
#include "cae/validation/ode.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>

namespace cae {

namespace {

/// Truncated product of two coefficient arrays indexed by the power of 1/X.
std::vector<double> mul_trunc(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// (value, derivative) of sum a_k X^{-k}.
std::pair<double, double> eval_inverse_series(const std::vector<double>& a, double X) {
    double v = 0.0, d = 0.0;
    const double w = 1.0 / X;
    double wk = 1.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        v += a[k] * wk;
        d -= static_cast<double>(k) * a[k] * wk * w;
        wk *= w;
    }
    return {v, d};
}

double union_jack_rhs(double X, double Y, double c) { return Y * (Y - X) * (Y + X) + c; }

OdeOptions shooting_options() {
    OdeOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    o.blowup_cap = 1e6;
    return o;
}

}  // namespace

std::vector<double> union_jack_anchor(double c, int depth) {
    if (depth < 2) throw InputError("anchor depth must be >= 2");
    const auto n = static_cast<std::size_t>(depth) + 1;
    std::vector<double> a(n, 0.0);
    // Y = X^{-2} (c + Y^3 - Y'), each pass fixes further coefficients
    for (int pass = 0; pass <= depth; ++pass) {
        const std::vector<double> y3 = mul_trunc(mul_trunc(a, a), a);
        std::vector<double> next(n, 0.0);
        for (std::size_t k = 0; k + 2 < n; ++k) {
            double s = (k == 0 ? c : 0.0) + y3[k];
            if (k >= 1) s += static_cast<double>(k - 1) * a[k - 1];
            next[k + 2] = s;
        }
        a = std::move(next);
    }
    return a;
}

UnionJackExit union_jack_classify(double c, double x_far, UnionJackBranch branch) {
    if (!(x_far > 2.0)) throw InputError("x_far must exceed 2");
    const double s = branch == UnionJackBranch::plus ? 1.0 : -1.0;
    const auto [y0, dy0] = eval_inverse_series(union_jack_anchor(c), -x_far);
    (void)dy0;
    // Z = s Y follows the plus geometry in both cases
    auto above = [](double X, double Z) { return Z > std::abs(X) + 1.0; };
    auto below = [](double X, double Z) { return Z < -1.0 || (X > 2.0 && Z < X - 1.0); };
    OdeOptions o = shooting_options();
    o.stop = [&](double X, const OdeState& y) { return above(X, s * y[0]) || below(X, s * y[0]); };
    const Trajectory tr = ode_solve([c](double X, double Y) { return union_jack_rhs(X, Y, c); }, -x_far, x_far, y0, o);
    const double X = tr.t_end(), Z = s * tr.y_end()[0];
    if (above(X, Z)) return UnionJackExit::above;
    if (below(X, Z)) return UnionJackExit::below;
    return Z > X ? UnionJackExit::above : UnionJackExit::below;
}

ConnectionResult union_jack_c0(double tol, double x_far, UnionJackBranch branch) {
    if (!(tol >= 1e-10)) throw InputError("tolerance must be >= 1e-10");
    const double s = branch == UnionJackBranch::plus ? 1.0 : -1.0;
    double lo = 0.0, hi = s;
    if (union_jack_classify(lo, x_far, branch) != UnionJackExit::below || union_jack_classify(hi, x_far, branch) != UnionJackExit::above)
        throw NumericalError("Union Jack shooting is not bracketed by c in [0, " + std::to_string(hi) + "]");
    ConnectionResult r;
    r.x_far = x_far;
    while (std::abs(hi - lo) > tol) {
        const double mid = 0.5 * (lo + hi);
        if (union_jack_classify(mid, x_far, branch) == UnionJackExit::above)
            hi = mid;
        else
            lo = mid;
        ++r.iterations;
    }
    r.value = 0.5 * (lo + hi);
    const auto [y, dy] = eval_inverse_series(union_jack_anchor(r.value), -x_far);
    r.anchor_residual = std::abs(dy - union_jack_rhs(-x_far, y, r.value));
    return r;
}

std::vector<double> reduced_anchor(double D, int depth) {
    if (depth < 1) throw InputError("anchor depth must be >= 1");
    const auto n = static_cast<std::size_t>(depth) + 1;
    std::vector<double> b(n, 0.0);
    // V = T^{-1} (V' - V^2 - D)
    for (int pass = 0; pass <= depth; ++pass) {
        const std::vector<double> v2 = mul_trunc(b, b);
        std::vector<double> next(n, 0.0);
        for (std::size_t k = 0; k + 1 < n; ++k) {
            double s = (k == 0 ? -D : 0.0) - v2[k];
            if (k >= 1) s -= static_cast<double>(k - 1) * b[k - 1];
            next[k + 1] = s;
        }
        b = std::move(next);
    }
    return b;
}

double reduced_canard_value_at_zero(double D, double t_far) {
    if (!(t_far > 1.0)) throw InputError("t_far must exceed 1");
    const auto [v0, dv0] = eval_inverse_series(reduced_anchor(D), t_far);
    (void)dv0;
    OdeOptions o = shooting_options();
    const Trajectory tr = ode_solve([D](double T, double V) { return T * V + V * V + D; }, t_far, 0.0, v0, o);
    if (tr.blowup) throw NumericalError("reduced canard solution blows up near T = " + std::to_string(tr.t_end()));
    return tr.y_end()[0];
}

ConnectionResult angular_canard_value(double eps, double tol, double t_far) {
    if (!(eps > -0.25 && eps < 0.25)) throw InputError("angular canard needs |eps| < 1/4");
    auto d = [](double e) { return (-1.0 + std::sqrt(1.0 + 4.0 * e)) / 2.0; };
    auto g = [](double e) { return std::pow(1.0 + 4.0 * e, 0.25); };
    auto F = [&](double c) {
        const double gp = g(eps), gm = g(-eps);
        return gp * reduced_canard_value_at_zero((c - d(eps)) / (gp * gp), t_far) +
               gm * reduced_canard_value_at_zero((c - d(-eps)) / (gm * gm), t_far);
    };
    ConnectionResult r;
    r.x_far = t_far;
    const double f0 = F(0.0);
    if (f0 == 0.0) return r;
    double h = 1e-8, flo = 0.0, fhi = 0.0;
    for (;; h *= 2.0) {
        if (h > 0.2) throw NumericalError("angular canard root not bracketed");
        flo = F(-h);
        fhi = F(h);
        if ((flo < 0) != (fhi < 0)) break;
    }
    std::uintmax_t iters = 200;
    auto done = [tol](double a, double b) { return std::abs(b - a) <= std::max(tol, 4e-16 * std::abs(a)); };
    const auto [a, b] = boost::math::tools::toms748_solve(F, -h, h, flo, fhi, done, iters);
    r.value = 0.5 * (a + b);
    r.iterations = static_cast<int>(iters);
    const double D = (r.value - d(eps)) / std::sqrt(1.0 + 4.0 * eps);
    const auto [v, dv] = eval_inverse_series(reduced_anchor(D), t_far);
    r.anchor_residual = std::abs(dv - (t_far * v + v * v + D));
    return r;
}

ControlSeries canard_control_series(const ODESpec<double>& spec, int N, const InnerOptions& opt) {
    if (!spec.control) throw InputError("spec has no control parameter");
    if (spec.p % 2 != 0) throw InputError("canard control series needs even p");
    return inner_control_series(spec, N, opt);
}

}  // namespace cae
