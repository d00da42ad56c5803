#include "cae/special/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace cae {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol, double* error) {
    if (a == b) {
        if (error) *error = 0.0;
        return 0.0;
    }
    double err = 0.0;
    double l1 = 0.0;
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    const unsigned depth = std::abs(b - a) < 1e-6 * scale ? 0 : 20;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, depth, rel_tol, &err, &l1);
    if (error) *error = err;
    return v;
}

}  // namespace cae
