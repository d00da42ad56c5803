#include "cae/gevrey/gevrey.hpp"

#include "cae/error.hpp"
#include "cae/special/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cae {

namespace {

/// Least squares y ~ b0 + sum_k b_k x_k for up to three regressors, by centred normal equations.
/// Columns that do not vary are dropped (their coefficient is reported as 0).
struct Lsq {
    std::array<double, 4> beta{};
    double rms = 0.0;
};

Lsq least_squares(const std::vector<std::array<double, 3>>& x, const std::vector<double>& y, int k) {
    const auto n = static_cast<double>(y.size());
    std::array<double, 3> mx{};
    double my = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (int j = 0; j < k; ++j) mx[static_cast<std::size_t>(j)] += x[i][static_cast<std::size_t>(j)] / n;
        my += y[i] / n;
    }
    double A[3][4] = {};
    for (std::size_t i = 0; i < y.size(); ++i) {
        for (int a = 0; a < k; ++a) {
            const double xa = x[i][static_cast<std::size_t>(a)] - mx[static_cast<std::size_t>(a)];
            for (int b = 0; b < k; ++b) A[a][b] += xa * (x[i][static_cast<std::size_t>(b)] - mx[static_cast<std::size_t>(b)]);
            A[a][3] += xa * (y[i] - my);
        }
    }
    std::array<bool, 3> active{};
    for (int a = 0; a < k; ++a) active[static_cast<std::size_t>(a)] = A[a][a] > 1e-12;
    // Gaussian elimination with partial pivoting on the active block
    std::vector<int> idx;
    for (int a = 0; a < k; ++a)
        if (active[static_cast<std::size_t>(a)]) idx.push_back(a);
    const int m = static_cast<int>(idx.size());
    double M[3][4] = {};
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < m; ++c) M[r][c] = A[idx[r]][idx[c]];
        M[r][3] = A[idx[r]][3];
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int r = c + 1; r < m; ++r)
            if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
        for (int j = 0; j < 4; ++j) std::swap(M[c][j], M[piv][j]);
        if (std::abs(M[c][c]) < 1e-300) throw NumericalError("singular least-squares system");
        for (int r = c + 1; r < m; ++r) {
            const double f = M[r][c] / M[c][c];
            for (int j = c; j < 4; ++j) M[r][j] -= f * M[c][j];
        }
    }
    std::array<double, 3> sol{};
    for (int r = m - 1; r >= 0; --r) {
        double s = M[r][3];
        for (int c = r + 1; c < m; ++c) s -= M[r][c] * sol[static_cast<std::size_t>(c)];
        sol[static_cast<std::size_t>(r)] = s / M[r][r];
    }
    Lsq out;
    out.beta[0] = my;
    for (int r = 0; r < m; ++r) {
        out.beta[static_cast<std::size_t>(idx[r]) + 1] = sol[static_cast<std::size_t>(r)];
        out.beta[0] -= sol[static_cast<std::size_t>(r)] * mx[static_cast<std::size_t>(idx[r])];
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        double f = out.beta[0];
        for (int j = 0; j < k; ++j) f += out.beta[static_cast<std::size_t>(j) + 1] * x[i][static_cast<std::size_t>(j)];
        r2 += (y[i] - f) * (y[i] - f);
    }
    out.rms = std::sqrt(r2 / n);
    return out;
}

double log_gamma_weight(double n, int p) { return std::lgamma(n / p + 1.0); }

}  // namespace

GevreyFit gevrey_fit(const std::vector<double>& norms, int p) {
    if (p < 1) throw InputError("p must be positive");
    if (norms.size() < 6) throw InputError("gevrey fit needs at least 6 norms, got " + std::to_string(norms.size()));
    GevreyFit fit;
    fit.p = p;
    fit.inv_order = 1.0 / p;
    std::vector<std::array<double, 3>> x;
    std::vector<double> y;
    for (std::size_t n = 0; n < norms.size(); ++n) {
        const double a = norms[n];
        if (!std::isfinite(a) || a < 0.0) throw InputError("norm " + std::to_string(n) + " is not a nonnegative number");
        if (a == 0.0) continue;
        const auto dn = static_cast<double>(n);
        x.push_back({dn, dn / p * std::log(dn + 1.0), 0.0});
        y.push_back(std::log(a) - log_gamma_weight(dn, p));
    }
    fit.points = static_cast<int>(y.size());
    if (y.empty()) {
        fit.degenerate = true;
        fit.note = "all norms are zero";
        return fit;
    }
    if (y.size() < 2) {
        fit.degenerate = true;
        fit.C = std::exp(y[0]);
        fit.L1 = 1.0;
        fit.note = "a single nonzero norm";
        return fit;
    }
    const Lsq line = least_squares(x, y, 1);
    fit.C = std::exp(line.beta[0]);
    fit.L1 = std::exp(line.beta[1]);
    fit.residual = line.rms;
    if (y.size() >= 3) {
        const Lsq curved = least_squares(x, y, 2);
        fit.trend = curved.beta[2];
    }
    fit.fitted_inv_order = (1.0 + fit.trend) / p;
    fit.sub_gevrey = fit.trend < -0.5;
    fit.note = fit.sub_gevrey ? "sub-Gevrey" : "Gevrey";
    return fit;
}

TailCompatVerdict tail_compat_check(const std::vector<std::vector<double>>& g, int p) {
    if (p < 1) throw InputError("p must be positive");
    if (g.empty()) throw InputError("empty coefficient array");
    const std::size_t cols = g.front().size();
    for (const auto& row : g)
        if (row.size() != cols) throw InputError("coefficient array is not rectangular");
    std::vector<std::array<double, 3>> x;
    std::vector<double> y;
    std::vector<double> logs;
    for (std::size_t n = 0; n < g.size(); ++n) {
        for (std::size_t j = 0; j < cols; ++j) {
            const double a = std::abs(g[n][j]);
            if (a == 0.0 || !std::isfinite(a)) continue;
            const auto dn = static_cast<double>(n);
            const auto dm = static_cast<double>(j + 1);
            x.push_back({dn, dm, 0.0});
            y.push_back(std::log(a) - log_gamma_weight(dn + dm, p));
        }
    }
    TailCompatVerdict v;
    v.points = static_cast<int>(y.size());
    if (y.empty()) {
        v.degenerate = true;
        return v;
    }
    const Lsq fit = least_squares(x, y, 2);
    v.L1 = std::exp(fit.beta[1]);
    v.L2 = std::exp(fit.beta[2]);
    v.C = std::exp(fit.beta[0]);
    v.residual = fit.rms;
    double worst = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double model = fit.beta[0] + fit.beta[1] * x[i][0] + fit.beta[2] * x[i][1];
        worst = std::max(worst, y[i] - model);
    }
    v.violation_ratio = std::exp(worst);
    return v;
}

TailCompatVerdict tail_compat_check(const std::vector<AsymTail<double>>& tails, int p, int m_max) {
    if (m_max < 1) throw InputError("m_max must be >= 1");
    std::vector<std::vector<double>> g;
    for (std::size_t n = 0; n < tails.size(); ++n) {
        const auto& t = tails[n];
        if (!t.is_exact() && t.depth() < m_max)
            throw InputError("tail " + std::to_string(n) + " has depth " + std::to_string(t.depth()) + " < " + std::to_string(m_max));
        std::vector<double> row;
        for (int m = 1; m <= m_max; ++m) row.push_back(t.coeff(m));
        g.push_back(std::move(row));
    }
    return tail_compat_check(g, p);
}

double borel_radius(const std::vector<double>& coeffs, int p) {
    std::vector<double> norms;
    int nonzero = 0;
    for (double a : coeffs) {
        norms.push_back(std::abs(a));
        if (a != 0.0) ++nonzero;
    }
    if (nonzero < 6) return std::numeric_limits<double>::infinity();
    const GevreyFit f = gevrey_fit(norms, p);
    if (f.sub_gevrey || f.degenerate) return std::numeric_limits<double>::infinity();
    return 1.0 / f.L1;
}

double borel_laplace_truncated(const std::vector<double>& coeffs, int p, double rho, double eta) {
    if (p < 2) throw InputError("truncated Borel-Laplace needs p >= 2");
    if (!(rho > 0.0)) throw InputError("rho must be positive");
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    if (coeffs.empty()) return 0.0;
    const double radius = borel_radius(coeffs, p);
    if (rho >= radius)
        throw InputError("rho = " + std::to_string(rho) + " is not below the Borel radius estimate " + std::to_string(radius));
    // log|a_n| - log Gamma(n/p+1), with the sign kept apart
    std::vector<double> lw(coeffs.size()), sg(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double a = coeffs[n];
        sg[n] = a < 0 ? -1.0 : (a > 0 ? 1.0 : 0.0);
        lw[n] = a == 0.0 ? 0.0 : std::log(std::abs(a)) - log_gamma_weight(static_cast<double>(n), p);
    }
    auto borel = [&](double t) {
        if (t == 0.0) return coeffs[0];
        const double lt = std::log(t);
        double sum = 0.0;
        int small = 0;
        for (std::size_t n = 0; n < coeffs.size(); ++n) {
            if (sg[n] == 0.0) continue;
            const double term = sg[n] * std::exp(lw[n] + static_cast<double>(n) * lt);
            sum += term;
            if (std::abs(term) <= 1e-17 * std::abs(sum)) {
                if (++small >= 4) break;
            } else {
                small = 0;
            }
        }
        return sum;
    };
    // s = t^p / eta^p turns the integral into int_0^{(rho/eta)^p} e^{-s} B(eta s^{1/p}) ds
    const double smax = std::pow(rho / eta, p);
    auto integrand = [&](double s) { return std::exp(-s) * borel(eta * std::pow(s, 1.0 / p)); };
    // the weight e^{-s} decays fast; splitting keeps the adaptive rule on the bulk
    double total = 0.0;
    double a = 0.0;
    for (double b : {1.0, 4.0, 16.0, 64.0, 256.0, smax}) {
        const double hi = std::min(b, smax);
        if (hi <= a) continue;
        total += integrate(integrand, a, hi, 1e-13);
        a = hi;
        if (a >= smax) break;
    }
    return total;
}

LeastTermSum least_term_sum(const std::vector<double>& coeffs, double eta) {
    if (coeffs.empty()) throw InputError("empty coefficient list");
    if (!(eta > 0.0)) throw InputError("eta must be positive");
    LeastTermSum out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        if (coeffs[n] == 0.0) continue;
        const double t = std::abs(coeffs[n]) * std::pow(eta, static_cast<double>(n));
        if (t < best) {
            best = t;
            out.n_star = static_cast<int>(n);
        }
    }
    if (!std::isfinite(best)) best = 0.0;
    out.least_term = best;
    double s = 0.0;
    for (int n = 0; n < out.n_star; ++n) s += coeffs[static_cast<std::size_t>(n)] * std::pow(eta, n);
    out.sum = s;
    return out;
}

}  // namespace cae
