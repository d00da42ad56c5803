#include "cae/resonance/resonance.hpp"

#include <cmath>

namespace cae {

namespace {

bool near_zero_of(const TaylorPoly<double>& Z, double X, double radius) {
    const int samples = 200;
    double prev = Z(X - radius);
    if (prev == 0.0) return true;
    for (int i = 1; i <= samples; ++i) {
        const double v = Z(X - radius + 2 * radius * i / samples);
        if (v == 0.0 || (v < 0) != (prev < 0)) return true;
        prev = v;
    }
    return false;
}

}  // namespace

RiccatiCheck riccati_leading_check(const ResonanceCase<double>& c, const std::vector<double>& grid) {
    const TaylorPoly<double> Z = z0_polynomial(c);
    const TaylorPoly<double> dZ = Z.derivative(), d2Z = dZ.derivative();
    RiccatiCheck out;
    for (double X : grid) {
        if (near_zero_of(Z, X, 0.1)) {
            out.notes.push_back("skipped X = " + format_double(X) + ": within 0.1 of a zero of Z0");
            continue;
        }
        const double z = Z(X), y = dZ(X) / z;
        const double dy = d2Z(X) / z - y * y;
        const double r = dy - c.alpha * std::pow(X, c.p - 1) * y + c.beta * std::pow(X, c.p - 2) + y * y;
        out.max_residual = std::max(out.max_residual, std::abs(r));
        out.used.push_back(X);
    }
    if (out.used.empty()) throw InputError("no usable grid point: all lie within 0.1 of a zero of Z0");
    return out;
}

}  // namespace cae
