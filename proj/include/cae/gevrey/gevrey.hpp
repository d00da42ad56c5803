#pragma once

#include "cae/series/asym_tail.hpp"

#include <limits>
#include <string>
#include <vector>

namespace cae {

/// Constants of a bound |a_n| <= C L1^n Gamma(n/p + 1).
struct GevreyFit {
    int p = 2;
    double inv_order = 0.5;  ///< 1/p, taken as known
    double C = 0.0;
    double L1 = 0.0;
    double residual = 0.0;  ///< rms of the log fit
    /// Coefficient of (n/p) log n left over after removing the Gamma weight; about 0 for an exact Gevrey-1/p growth.
    double trend = 0.0;
    /// (1 + trend)/p, the order the data actually show
    double fitted_inv_order = 0.5;
    bool sub_gevrey = false;
    bool degenerate = false;
    int points = 0;
    std::string note;
};

/// Least squares of log|a_n| - log Gamma(n/p+1) against n; norms[n] is |a_n|, zeros are skipped.
[[nodiscard]] GevreyFit gevrey_fit(const std::vector<double>& norms, int p);

/// Constants of |g_{nm}| <= C L1^n L2^m Gamma((n+m)/p + 1) over a rectangular array.
struct TailCompatVerdict {
    double C = 0.0;
    double L1 = 0.0;
    double L2 = 0.0;
    double residual = 0.0;
    /// max |g_{nm}| / (C L1^n L2^m Gamma((n+m)/p+1)) over the nonzero entries
    double violation_ratio = 0.0;
    int points = 0;
    bool degenerate = false;
};

/// Row n of the array is tails[n], columns m = 1..m_max.
[[nodiscard]] TailCompatVerdict tail_compat_check(const std::vector<AsymTail<double>>& tails, int p, int m_max);
[[nodiscard]] TailCompatVerdict tail_compat_check(const std::vector<std::vector<double>>& g, int p);

/// Radius of convergence of the Borel transform sum a_n t^n / Gamma(n/p+1), estimated as 1/L1
/// (infinite for short or sub-Gevrey series).
[[nodiscard]] double borel_radius(const std::vector<double>& coeffs, int p);

/// eta^{-p} int_0^rho e^{-t^p/eta^p} B(t) d(t^p) with B the Borel transform of the coefficients.
[[nodiscard]] double borel_laplace_truncated(const std::vector<double>& coeffs, int p, double rho, double eta);

struct LeastTermSum {
    int n_star = 0;  ///< index of the smallest |a_n| eta^n
    double least_term = 0.0;
    double sum = 0.0;  ///< sum over n < n_star
};

[[nodiscard]] LeastTermSum least_term_sum(const std::vector<double>& coeffs, double eta);

}  // namespace cae
