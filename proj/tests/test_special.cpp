#include <doctest.h>

#include "cae/special/quadrature.hpp"
#include "cae/special/special.hpp"

#include <cmath>

using namespace cae;
using Q = Rational;

namespace {

RayFn constant_fn(double c) {
    return RayFn::from_exact(Sign::minus, AsymExpansion<double>::polynomial(TaylorPoly<double>{c}));
}

}  // namespace

TEST_SUITE("special") {

TEST_CASE("U values at known points") {
    const double sqrt_pi = std::sqrt(std::acos(-1.0));
    CHECK(eval_U(2, 1, Sign::minus, 0.0) == doctest::Approx(sqrt_pi / 2).epsilon(1e-13));
    CHECK(eval_U(2, 1, Sign::plus, 0.0) == doctest::Approx(-sqrt_pi / 2).epsilon(1e-13));
    CHECK(eval_U(4, 1, Sign::minus, 0.0) == doctest::Approx(std::tgamma(1.25)).epsilon(1e-13));
    for (double X : {-6.0, -3.0, -1.0, 0.5, 1.5, 2.5}) {
        const double closed = std::exp(X * X) * sqrt_pi / 2 * std::erfc(-X);
        CHECK(eval_U(2, 1, Sign::minus, X) == doctest::Approx(closed).epsilon(1e-11));
    }
    // deep on the decaying side the tail is used
    CHECK(eval_U(2, 1, Sign::minus, -40.0) == doctest::Approx(1.0 / 80.0).epsilon(1e-3));
}

TEST_CASE("U mirror symmetry: U^+_k(-X) = (-1)^k U^-_k(X)") {
    for (int k = 1; k <= 3; ++k)
        for (double X : {-2.0, -0.7, 0.0, 0.4, 1.1}) {
            const double sgn = k % 2 == 0 ? 1.0 : -1.0;
            CHECK(eval_U(4, k, Sign::plus, -X) == doctest::Approx(sgn * eval_U(4, k, Sign::minus, X)).epsilon(1e-11));
        }
}

TEST_CASE("U solves U' = p X^{p-1} U + X^{k-1}") {
    for (int p : {2, 4}) {
        for (int k = 1; k < p; ++k) {
            for (double X : {-2.0, -0.5, 0.3, 1.0}) {
                if (p == 4 && X > 0.9) continue;
                const double h = 1e-3;
                auto U = [&](double x) { return eval_U(p, k, Sign::minus, x); };
                const double d = (-U(X + 2 * h) + 8 * U(X + h) - 8 * U(X - h) + U(X - 2 * h)) / (12 * h);
                const double res = d - p * std::pow(X, p - 1) * U(X) - std::pow(X, k - 1);
                CHECK(std::abs(res) < 1e-7 * (1 + std::abs(U(X))));
            }
        }
    }
}

TEST_CASE("exponent cap raises NumericalError") {
    CHECK_THROWS_AS((void)eval_U(2, 1, Sign::minus, 30.0), NumericalError);
    CHECK_THROWS_AS((void)eval_U(2, 0, Sign::minus, 0.0), InputError);
    CHECK_THROWS_AS((void)eval_U(3, 1, Sign::minus, 0.0), InputError);
}

TEST_CASE("tail_of_J exact coefficients") {
    auto one = AsymExpansion<Q>::polynomial(TaylorPoly<Q>{Q(1)});
    auto t = tail_of_J<Q>(2, Sign::minus, one, 10);
    CHECK(t.tail().coeff(1) == Q(-1, 2));
    CHECK(t.tail().coeff(2) == Q(0));
    CHECK(t.tail().coeff(3) == Q(1, 4));
    CHECK(t.tail().coeff(4) == Q(0));
    CHECK(t.tail().coeff(5) == Q(-3, 8));
    // v = X has the exact polynomial-free solution -1/2
    auto x = AsymExpansion<Q>::polynomial(TaylorPoly<Q>{Q(0), Q(1)});
    auto s = tail_of_J<Q>(2, Sign::minus, x, 10);
    CHECK(s.is_exact());
    CHECK(s == AsymExpansion<Q>::polynomial(TaylorPoly<Q>{Q(-1, 2)}));
}

TEST_CASE("apply_J on the grid matches eval_U") {
    const RayFn u = apply_J(2, Sign::minus, constant_fn(1.0));
    for (double X : {-3.0, -1.0, 0.0, 0.8, 2.0})
        CHECK(u(X) == doctest::Approx(eval_U(2, 1, Sign::minus, X)).epsilon(1e-8));
    const RayFn w = apply_J(2, Sign::minus, RayFn::from_exact(Sign::minus, AsymExpansion<double>::polynomial(TaylorPoly<double>{0.0, 1.0})));
    CHECK(w(1.3) == doctest::Approx(-0.5));
    CHECK(apply_J(2, Sign::minus, RayFn::zero(Sign::minus)).is_zero());
}

TEST_CASE("apply_J residual on the grid") {
    const RayFn v = RayFn(Sign::minus, AsymExpansion<double>::polynomial(TaylorPoly<double>{1.0}),
                          [](double X) { return 1.0 + 0.0 * X; }, [](double) { return 0.0; });
    const RayFn u = apply_J(4, Sign::minus, v);
    for (double X : {-1.5, -0.5, 0.0, 0.7}) {
        const double h = 1e-3;
        const double d = (-u(X + 2 * h) + 8 * u(X + h) - 8 * u(X - h) + u(X - 2 * h)) / (12 * h);
        CHECK(std::abs(d - 4 * X * X * X * u(X) - 1.0) < 1e-7 * (1 + std::abs(u(X))));
    }
}

TEST_CASE("gauss_moment matches quadrature") {
    for (int p : {2, 4})
        for (int j : {0, 1, 2, 4})
            for (double eps : {0.1, 0.5}) {
                const double ref = integrate([&](double t) { return std::exp(-std::pow(t, p) / eps) * std::pow(t, j); }, -8.0, 8.0);
                CHECK(gauss_moment(p, j, eps) == doctest::Approx(ref).epsilon(1e-10));
            }
}

TEST_CASE("Dawson function values") {
    CHECK(eval_dawson(1.0) == doctest::Approx(0.5380795069127684).epsilon(1e-12));
    CHECK(eval_dawson(-1.0) == doctest::Approx(-0.5380795069127684).epsilon(1e-12));
    CHECK(eval_dawson(10.0) == doctest::Approx(0.05025384718759853).epsilon(1e-12));
}

}  // TEST_SUITE
