#include <doctest.h>

#include "cae/gevrey/gevrey.hpp"
#include "cae/special/special.hpp"
#include "cae/turning_point/example1.hpp"

#include <cmath>

using namespace cae;

namespace {

std::vector<double> alternating_gamma(int count, int p) {
    std::vector<double> a;
    for (int n = 0; n < count; ++n) a.push_back((n % 2 ? -1.0 : 1.0) * std::tgamma(static_cast<double>(n) / p + 1.0));
    return a;
}

TaylorPoly<double> exp_like_poly() {
    std::vector<double> c{1.0};
    for (int k = 1; k <= 20; ++k) c.push_back(c.back() / k);
    return TaylorPoly<double>(std::move(c));
}

}  // namespace

TEST_SUITE("gevrey") {

TEST_CASE("gevrey_fit recovers synthetic constants") {
    std::vector<double> norms;
    for (int n = 0; n < 30; ++n) norms.push_back(std::tgamma(n / 2.0 + 1.0) * std::pow(2.0, n));
    const GevreyFit f = gevrey_fit(norms, 2);
    CHECK(f.L1 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(f.C == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(f.residual < 1e-10);
    CHECK_FALSE(f.sub_gevrey);
    CHECK(f.inv_order == 0.5);
    CHECK(f.fitted_inv_order == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("gevrey_fit flags entire growth as sub-Gevrey") {
    std::vector<double> norms;
    for (int n = 0; n < 30; ++n) norms.push_back(std::pow(3.0, n));
    const GevreyFit f = gevrey_fit(norms, 2);
    CHECK(f.sub_gevrey);
    CHECK(f.trend < -0.5);
    CHECK(f.note == "sub-Gevrey");
    CHECK(f.residual > 0.1);
}

TEST_CASE("U- tail coefficients are Gevrey of order 1/2") {
    const auto J = tail_of_J<double>(2, Sign::minus, AsymExpansion<double>::polynomial(TaylorPoly<double>{1.0}), 41);
    const AsymTail<double>& t = J.tail();
    CHECK(std::abs(t.coeff(1)) == doctest::Approx(0.5));
    CHECK(std::abs(t.coeff(3)) == doctest::Approx(0.25));
    CHECK(std::abs(t.coeff(5)) == doctest::Approx(0.375));
    CHECK(std::abs(t.coeff(7)) == doctest::Approx(15.0 / 16.0));
    std::vector<double> norms{0.0};
    for (int m = 1; m <= 41; ++m) norms.push_back(std::abs(t.coeff(m)));
    const GevreyFit f = gevrey_fit(norms, 2);
    CHECK_FALSE(f.sub_gevrey);
    CHECK(f.fitted_inv_order == doctest::Approx(0.5).epsilon(0.2));
    CHECK(f.L1 == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("gevrey_fit is scale equivariant") {
    std::vector<double> norms;
    for (int n = 0; n < 20; ++n) norms.push_back(std::tgamma(n / 4.0 + 1.0) * std::pow(1.7, n) * (1.0 + 0.3 * std::sin(n)));
    const GevreyFit a = gevrey_fit(norms, 4);
    for (double s : {1e-3, 7.5, 1e5}) {
        std::vector<double> scaled;
        for (double v : norms) scaled.push_back(v * s);
        const GevreyFit b = gevrey_fit(scaled, 4);
        CHECK(std::abs(std::log(b.C) - std::log(a.C) - std::log(s)) < 1e-12);
        CHECK(std::abs(b.L1 - a.L1) < 1e-12 * a.L1);
    }
}

TEST_CASE("gevrey_fit input handling") {
    CHECK_THROWS_AS((void)gevrey_fit({1, 2, 3}, 2), InputError);
    CHECK_THROWS_AS((void)gevrey_fit({1, 2, 3, 4, 5, -6}, 2), InputError);
    const GevreyFit z = gevrey_fit(std::vector<double>(8, 0.0), 2);
    CHECK(z.degenerate);
    std::vector<double> gaps{1, 0, 2, 0, 8, 0, 48, 0};
    const GevreyFit g = gevrey_fit(gaps, 2);
    CHECK(g.points == 4);
}

TEST_CASE("tail_compat_check on synthetic and example arrays") {
    std::vector<std::vector<double>> g;
    for (int n = 0; n <= 4; ++n) {
        std::vector<double> row;
        for (int m = 1; m <= 6; ++m) row.push_back(std::tgamma((n + m) / 2.0 + 1.0));
        g.push_back(row);
    }
    const TailCompatVerdict v = tail_compat_check(g, 2);
    CHECK(v.L1 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.L2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.violation_ratio == doctest::Approx(1.0).epsilon(1e-9));

    // a single row reduces to gevrey_fit in m
    std::vector<double> row{3.0, 0.5, 7.0, 2.0, 40.0, 11.0};
    const TailCompatVerdict one = tail_compat_check(std::vector<std::vector<double>>{row}, 2);
    std::vector<double> norms{0.0};
    norms.insert(norms.end(), row.begin(), row.end());
    const GevreyFit f = gevrey_fit(norms, 2);
    CHECK(one.L2 == doctest::Approx(f.L1).epsilon(1e-12));
    CHECK(one.C == doctest::Approx(f.C).epsilon(1e-12));

    CHECK_THROWS_AS((void)tail_compat_check(std::vector<std::vector<double>>{{1.0, 2.0}, {1.0}}, 2), InputError);

    const CombinedSeries<double> y = example1_closed_form(exp_like_poly(), 5);
    std::vector<AsymTail<double>> tails;
    for (int n = 0; n < 5; ++n) tails.push_back(y.fast(n).tail);
    const TailCompatVerdict e = tail_compat_check(tails, 2, 6);
    CHECK(std::isfinite(e.C));
    CHECK(std::isfinite(e.L1));
    CHECK(std::isfinite(e.L2));
    CHECK(e.violation_ratio <= 1.5);
}

TEST_CASE("least_term_sum of the alternating Gamma series") {
    const LeastTermSum s = least_term_sum(alternating_gamma(60, 2), 0.3);
    CHECK(s.n_star == 21);
    CHECK(s.least_term == doctest::Approx(1.2447216837e-4).epsilon(1e-8));
    CHECK(s.sum == doctest::Approx(0.7992160062695927).epsilon(1e-12));
}

TEST_CASE("borel_laplace_truncated") {
    CHECK_THROWS_AS((void)borel_laplace_truncated({1.0, 1.0}, 1, 0.5, 0.1), InputError);
    // a_0 = 1: value 1 - exp(-(rho/eta)^p)
    for (double eta : {0.3, 0.2, 0.1}) {
        const double v = borel_laplace_truncated({1.0}, 2, 0.5, eta);
        CHECK(std::abs(v - 1.0) <= std::exp(-0.25 / (eta * eta)) + 1e-15);
        CHECK(v == doctest::Approx(1.0 - std::exp(-0.25 / (eta * eta))).epsilon(1e-12));
    }
    // a polynomial in eta comes back up to exponentially small terms
    const double eta = 0.2;
    const double v = borel_laplace_truncated({1.0, 2.0, -1.0, 0.5}, 2, 1.0, eta);
    CHECK(std::abs(v - (1 + 2 * eta - eta * eta + 0.5 * eta * eta * eta)) < 1e-9);
    const double w = borel_laplace_truncated({0.0, 1.0}, 4, 1.0, 0.5);
    CHECK(std::abs(w - 0.5) < 1e-5);

    const std::vector<double> a = alternating_gamma(300, 2);
    CHECK_THROWS_AS((void)borel_laplace_truncated(a, 2, 1.2, 0.3), InputError);
    const double b = borel_laplace_truncated(a, 2, 0.9, 0.3);
    CHECK(b == doctest::Approx(0.7990902239414768).epsilon(1e-9));
    const LeastTermSum s = least_term_sum(a, 0.3);
    CHECK(std::abs(b - s.sum) <= 2 * s.least_term);
}

}  // TEST_SUITE
