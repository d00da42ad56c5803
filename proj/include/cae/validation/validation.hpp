#pragma once

#include "cae/scalar.hpp"
#include "cae/series/combined_series.hpp"
#include "cae/series/taylor_poly.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cae {

/// y^sigma(x) = e^{F(x)/eps} int_{sigma infinity}^x e^{-F(t)/eps} g(t) dt, the solution of
/// eps y' = F'(x) y + eps g(x) that stays bounded on the sigma ray.
/// The domain is cut where (F(t) - F(x))/eps reaches 45.
[[nodiscard]] double bounded_solution_quadrature(const TaylorPoly<double>& F, const std::function<double(double)>& g, double eps,
                                                 double x, Sign sigma);

struct ErrorRow {
    int N = 0;
    double eps = 0.0;
    double sup_error = 0.0;
};

/// Sup-norm errors of an N-term partial sum against a reference, with the log-log slope in eta.
struct ErrorTable {
    int p = 2;
    int N = 0;
    std::vector<ErrorRow> rows;
    double slope = 0.0;
    double intercept = 0.0;
    /// errors are at rounding level, so the slope carries no information
    bool degenerate = false;

    [[nodiscard]] bool pass() const { return !degenerate && slope >= N - 0.3; }
};

/// eps_list must be strictly decreasing with at least 3 entries.
[[nodiscard]] ErrorTable error_scaling(const CombinedSeries<double>& series, const std::function<double(double, double)>& truth,
                                       const std::vector<double>& eps_list, const std::vector<double>& x_grid, int N);

/// Least-squares fit log d = log C - A / eta^p (eta^p = eps).
struct ExpSmallnessFit {
    double A = 0.0;
    double C = 0.0;
    double residual = 0.0;
    bool exponentially_small = false;
    std::string note;
};

[[nodiscard]] ExpSmallnessFit exp_smallness_fit(const std::vector<std::pair<double, double>>& values, int p);

/// Ordinary least squares y = a + b t; returns (a, b, rms residual).
struct LineFit {
    double a = 0.0;
    double b = 0.0;
    double rms = 0.0;
};
[[nodiscard]] LineFit fit_line(const std::vector<double>& t, const std::vector<double>& y);

/// lo:hi:n as n equally spaced points.
[[nodiscard]] std::vector<double> linspace(double lo, double hi, int n);

}  // namespace cae
