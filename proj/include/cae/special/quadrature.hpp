#pragma once

#include <functional>

namespace cae {

/// Adaptive Gauss-Kronrod (31 point) integral of f over [a, b]; a > b gives the negated value.
/// Returns the estimate; `error` receives the estimated absolute error.
[[nodiscard]] double integrate(const std::function<double(double)>& f, double a, double b,
                               double rel_tol = 1e-12, double* error = nullptr);

}  // namespace cae
