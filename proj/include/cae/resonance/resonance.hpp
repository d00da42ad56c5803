#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/taylor_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cae {

/// f(x, 0) = alpha x^{p-1} + O(x^p), g(x, 0) = beta x^{p-2}.
template <class T>
struct ResonanceCase {
    T alpha = T(1);
    T beta = T(0);
    int p = 2;

    void validate() const {
        if (!(alpha > T(0))) throw InputError("alpha must be positive");
        if (p < 2 || p % 2 != 0) throw InputError("p must be even and >= 2");
    }
    [[nodiscard]] T D() const { return beta / alpha; }
};

namespace detail {

/// D as a nonnegative integer, if it is one (within 1e-9 in floating mode).
template <class T>
std::optional<long> integer_ratio(const ResonanceCase<T>& c) {
    const T d = c.D();
    if constexpr (is_exact_v<T>) {
        if (boost::multiprecision::denominator(d) != 1 || d < 0) return std::nullopt;
        return static_cast<long>(boost::multiprecision::numerator(d));
    } else {
        const double r = std::round(d);
        if (std::abs(d - r) > 1e-9 || r < 0) return std::nullopt;
        return static_cast<long>(r);
    }
}

}  // namespace detail

/// True iff D = beta/alpha is a nonnegative integer with D mod p in {0, 1}.
template <class T>
[[nodiscard]] bool condition_check(const ResonanceCase<T>& c) {
    c.validate();
    const auto D = detail::integer_ratio(c);
    return D && (*D % c.p == 0 || *D % c.p == 1);
}

/// Monic polynomial solution of Z'' - alpha X^{p-1} Z' + beta X^{p-2} Z = 0, built downward from z_D = 1 by
/// z_{k+p} (k+p)(k+p-1) = alpha (k - D) z_k.
template <class T>
[[nodiscard]] TaylorPoly<T> z0_polynomial(const ResonanceCase<T>& c) {
    c.validate();
    const auto D = detail::integer_ratio(c);
    if (!D) throw InputError("D = beta/alpha is not a nonnegative integer");
    const long d = *D;
    if (d > 4096) throw InputError("degree D = " + std::to_string(d) + " is too large");
    std::vector<T> z(static_cast<std::size_t>(d) + 1, T(0));
    z[static_cast<std::size_t>(d)] = T(1);
    long k = d - c.p;
    for (; k >= 0; k -= c.p) {
        const T up = z[static_cast<std::size_t>(k + c.p)];
        z[static_cast<std::size_t>(k)] = up * T((k + c.p) * (k + c.p - 1)) / (c.alpha * T(k - d));
    }
    // the last step below index 0 needs k+p in {0, 1} so that the X^{k+p-2} equation holds
    const long lowest = k + c.p;
    if (lowest != 0 && lowest != 1)
        throw InputError("recursion does not terminate: D mod p = " + std::to_string(d % c.p) + " is not 0 or 1");
    return TaylorPoly<T>(std::move(z));
}

/// Z'' - alpha X^{p-1} Z' + beta X^{p-2} Z, identically zero for the reduced solution.
template <class T>
[[nodiscard]] TaylorPoly<T> reduced_residual(const ResonanceCase<T>& c, const TaylorPoly<T>& Z) {
    std::vector<T> a(static_cast<std::size_t>(c.p), T(0));
    a[static_cast<std::size_t>(c.p - 1)] = c.alpha;
    std::vector<T> b(static_cast<std::size_t>(c.p - 1), T(0));
    b[static_cast<std::size_t>(c.p - 2)] = c.beta;
    return Z.derivative().derivative() - TaylorPoly<T>(std::move(a)) * Z.derivative() + TaylorPoly<T>(std::move(b)) * Z;
}

struct RiccatiCheck {
    double max_residual = 0.0;
    std::vector<double> used;
    std::vector<std::string> notes;
};

/// Y = Z0'/Z0 checked against Y' = alpha X^{p-1} Y - beta X^{p-2} - Y^2 on grid points at distance >= 0.1 from zeros of Z0.
[[nodiscard]] RiccatiCheck riccati_leading_check(const ResonanceCase<double>& c, const std::vector<double>& grid);

}  // namespace cae
