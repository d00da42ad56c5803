#include "cae/validation/validation.hpp"

#include "cae/error.hpp"
#include "cae/series/series_ops.hpp"
#include "cae/special/quadrature.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

namespace cae {

namespace {

constexpr double kCutExponent = 45.0;

/// Points in (a, b) where F' changes sign, located by sampling and bisection.
std::vector<double> critical_points(const TaylorPoly<double>& F, double a, double b) {
    const TaylorPoly<double> d = F.derivative();
    std::vector<double> out;
    if (d.degree() < 1) return out;
    const int samples = 400;
    double t0 = a, v0 = d(a);
    for (int i = 1; i <= samples; ++i) {
        const double t1 = a + (b - a) * i / samples;
        const double v1 = d(t1);
        if ((v0 < 0) != (v1 < 0) && v0 != 0.0) {
            double lo = t0, hi = t1, flo = v0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = d(mid);
                if ((fm < 0) == (flo < 0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            const double c = 0.5 * (lo + hi);
            const double gap = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
            if (c - a > gap && b - c > gap) out.push_back(c);
        }
        t0 = t1;
        v0 = v1;
    }
    return out;
}

}  // namespace

double bounded_solution_quadrature(const TaylorPoly<double>& F, const std::function<double(double)>& g, double eps, double x,
                                   Sign sigma) {
    if (eps <= 0.0) throw InputError("eps must be positive");
    const int deg = F.degree();
    const double s = sign_value(sigma);
    if (deg < 1 || F.coeff(deg) * std::pow(s, deg) <= 0.0)
        throw InputError(std::string("F is not coercive on the ") + sign_name(sigma) + " ray");
    const double Fx = F(x);
    // walk outward until the weight e^{-(F(t)-F(x))/eps} is negligible and F keeps growing
    double step = 1e-3 * std::max(1.0, std::abs(x));
    double t = x;
    for (int it = 0; it < 400; ++it) {
        t = x + s * step;
        const double gap = (F(t) - Fx) / eps;
        const double slope = s * F.derivative()(t);
        if (gap >= kCutExponent && slope > 0.0) break;
        step *= 1.5;
        if (it == 399) throw NumericalError("could not truncate the integration domain");
    }
    const double a = std::min(t, x), b = std::max(t, x);
    // the largest exponent of the weight on [a, b] sits at a critical point or an end
    double peak = 0.0;
    std::vector<double> cuts = critical_points(F, a, b);
    for (double c : cuts) peak = std::max(peak, (Fx - F(c)) / eps);
    if (peak > 700.0) throw NumericalError("bounded solution overflows: exponent " + std::to_string(peak));
    auto integrand = [&](double u) { return std::exp((Fx - F(u)) / eps) * g(u); };
    std::vector<double> nodes{a};
    for (double c : cuts) nodes.push_back(c);
    nodes.push_back(b);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) sum += integrate(integrand, nodes[i], nodes[i + 1], 1e-12);
    // int_{sigma inf}^x = s * int over [a, b] with a < b
    return sigma == Sign::minus ? sum : -sum;
}

LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y) {
    if (t.size() != y.size() || t.size() < 2) throw InputError("line fit needs at least two points");
    const auto n = static_cast<double>(t.size());
    double st = 0, sy = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        st += t[i];
        sy += y[i];
    }
    const double mt = st / n, my = sy / n;
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        stt += (t[i] - mt) * (t[i] - mt);
        sty += (t[i] - mt) * (y[i] - my);
    }
    if (stt == 0.0) throw InputError("line fit needs distinct abscissae");
    LineFit f;
    f.b = sty / stt;
    f.a = my - f.b * mt;
    double r = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double e = y[i] - (f.a + f.b * t[i]);
        r += e * e;
    }
    f.rms = std::sqrt(r / n);
    return f;
}

ErrorTable error_scaling(const CombinedSeries<double>& series, const std::function<double(double, double)>& truth,
                         const std::vector<double>& eps_list, const std::vector<double>& x_grid, int N) {
    if (eps_list.size() < 3) throw InputError("error scaling needs at least 3 eps values");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (eps_list[i] <= 0.0) throw InputError("eps values must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw InputError("eps values must be strictly decreasing");
    }
    if (x_grid.empty()) throw InputError("x grid is empty");
    ErrorTable table;
    table.p = series.p();
    table.N = N;
    double scale = 1.0;
    std::vector<double> t, y;
    for (double eps : eps_list) {
        const double eta = std::pow(eps, 1.0 / series.p());
        double sup = 0.0;
        for (double x : x_grid) {
            const double ref = truth(x, eps);
            scale = std::max(scale, std::abs(ref));
            sup = std::max(sup, std::abs(evaluate_partial_sum(series, x, eta, N) - ref));
        }
        table.rows.push_back({N, eps, sup});
    }
    table.degenerate = true;
    for (const auto& r : table.rows)
        if (r.sup_error > 1024 * DBL_EPSILON * scale) table.degenerate = false;
    for (const auto& r : table.rows) {
        if (r.sup_error <= 0.0) {
            table.degenerate = true;
            continue;
        }
        t.push_back(std::log(std::pow(r.eps, 1.0 / series.p())));
        y.push_back(std::log(r.sup_error));
    }
    if (t.size() >= 2) {
        const LineFit f = fit_line(t, y);
        table.slope = f.b;
        table.intercept = f.a;
    }
    return table;
}

ExpSmallnessFit exp_smallness_fit(const std::vector<std::pair<double, double>>& values, int p) {
    if (p < 1) throw InputError("p must be positive");
    if (values.size() < 2) throw InputError("exponential smallness fit needs at least two points");
    std::vector<double> t, y;
    for (const auto& [eps, d] : values) {
        if (eps <= 0.0) throw InputError("eps values must be positive");
        if (!(d > 0.0)) throw InputError("differences must be positive");
        t.push_back(1.0 / eps);  // eta^{-p}
        y.push_back(std::log(d));
    }
    const LineFit f = fit_line(t, y);
    ExpSmallnessFit out;
    out.A = -f.b;
    out.C = std::exp(f.a);
    out.residual = f.rms;
    const double tol = 1e-9 * std::max(1.0, std::abs(f.a));
    out.exponentially_small = out.A > tol;
    out.note = out.exponentially_small ? "exponentially small" : "not exponentially small";
    return out;
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw InputError("grid needs at least one point");
    if (n == 1) return {lo};
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(lo + (hi - lo) * i / (n - 1));
    return v;
}

}  // namespace cae
