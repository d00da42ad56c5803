#include <doctest.h>

#include "cae/series/series_ops.hpp"
#include "cae/series/series_json.hpp"
#include "cae/special/special.hpp"

#include <cmath>
#include <random>

using namespace cae;
using Q = Rational;

namespace {

CombinedSeries<double> u_minus_order(int N, int order, int depth = 12) {
    CombinedSeries<double> y(2, N);
    auto tail = tail_of_J<double>(2, Sign::minus, AsymExpansion<double>::polynomial(TaylorPoly<double>{1.0}), depth).tail();
    y.fast(order) = FastFn<double>(tail, Evaluator([](double X) { return eval_U(2, 1, Sign::minus, X); }, Sign::minus));
    return y;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("shift_S and reconstruction identity a = a(0) + x S a") {
    CHECK(shift_S(TaylorPoly<Q>{1, 1}) == TaylorPoly<Q>{1});
    CHECK(shift_S(TaylorPoly<Q>{7}).is_zero());
    CHECK(shift_S(TaylorPoly<Q>{3, 2, 5}) == TaylorPoly<Q>{2, 5});
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < 20; ++t) {
        std::vector<Q> c;
        for (int k = 0; k < 6; ++k) c.push_back(Q(d(rng), 1 + std::abs(d(rng))));
        TaylorPoly<Q> a(c);
        CHECK(TaylorPoly<Q>::constant(a.coeff(0)) + shift_S(a).shifted_up(1) == a);
    }
}

TEST_CASE("shift_T drops the first coefficient") {
    CHECK(shift_T(AsymTail<Q>({2, 3, 4})) == AsymTail<Q>({3, 4}));
    AsymTail<Q> u({Q(-1, 2), 0, Q(1, 4), 0, Q(-3, 8)});
    CHECK(shift_T(u) == AsymTail<Q>({0, Q(1, 4), 0, Q(-3, 8)}));
    CHECK(shift_T(AsymTail<Q>::exact({})).is_zero());
    // X g = g_1 + T g at tail level
    auto lhs = AsymExpansion<Q>(TaylorPoly<Q>{}, u).times_X_power(1);
    auto rhs = AsymExpansion<Q>(TaylorPoly<Q>{u.coeff(1)}, shift_T(u));
    CHECK(lhs == rhs);
}

TEST_CASE("multiply: slow x times fast 1/X") {
    CombinedSeries<Q> y(2, 3), z(2, 3);
    y.slow(0) = TaylorPoly<Q>{0, 1};
    z.fast(0) = FastFn<Q>(AsymTail<Q>::exact({1}));
    auto w = multiply(y, z);
    CHECK(w.slow(1) == TaylorPoly<Q>{1});
    CHECK(w.slow(0).is_zero());
    CHECK(w.fast(0).is_zero());
    CHECK(w.fast(1).tail.is_zero());
    CHECK(w.slow(2).is_zero());
    // both sides at (x, eta) = (0.3, 0.1)
    CHECK(evaluate_partial_sum(convert_series<double>(w), 0.3, 0.1, 3) == doctest::Approx(0.1).epsilon(1e-14));
}

TEST_CASE("multiply: slow x times U-minus gives -1/2 and T U-minus") {
    auto u = u_minus_order(3, 0);
    CombinedSeries<double> x(2, 3);
    x.slow(0) = TaylorPoly<double>{0.0, 1.0};
    auto w = multiply(x, u);
    CHECK(w.slow(1).coeff(0) == doctest::Approx(-0.5));
    CHECK(w.fast(1).tail.coeff(1) == doctest::Approx(0.0));
    CHECK(w.fast(1).tail.coeff(2) == doctest::Approx(0.25));
    CHECK(w.fast(1).tail.coeff(4) == doctest::Approx(-0.375));
    CHECK(w.fast(0).tail.is_zero());
    // evaluator consistency: x U(x/eta) = eta(-1/2 + T U(X))
    const double eta = 0.2, xv = -0.3;
    CHECK(evaluate_partial_sum(w, xv, eta, 3) == doctest::Approx(xv * eval_U(2, 1, Sign::minus, xv / eta)).epsilon(1e-10));
}

TEST_CASE("scalar multiple scales every coefficient") {
    CombinedSeries<Q> y(2, 2);
    y.slow(0) = TaylorPoly<Q>{1, 2};
    y.fast(1) = FastFn<Q>(AsymTail<Q>({3, 4}));
    auto z = multiply(constant_series<Q>(2, 2, Q(5)), y);
    CHECK(z.slow(0) == TaylorPoly<Q>{5, 10});
    CHECK(z.fast(1).tail == AsymTail<Q>({15, 20}));
}

TEST_CASE("product valuation is superadditive") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-5, 5);
    for (int t = 0; t < 20; ++t) {
        CombinedSeries<Q> y(2, 6), z(2, 6);
        int vy = t % 3, vz = (t / 3) % 3;
        for (int n = vy; n < 6; ++n) y.slow(n) = TaylorPoly<Q>{Q(d(rng)), Q(d(rng))};
        for (int n = std::max(vz, 1); n < 6; ++n) z.fast(n) = FastFn<Q>(AsymTail<Q>({Q(d(rng)), Q(d(rng)), Q(d(rng)), Q(d(rng)), Q(d(rng)), Q(d(rng))}));
        if (vz == 0) z.slow(0) = TaylorPoly<Q>{1};
        CHECK(multiply(y, z).valuation() >= y.valuation() + z.valuation());
    }
}

TEST_CASE("multiply rejects mismatched p") {
    CHECK_THROWS_AS((void)multiply(CombinedSeries<Q>(2, 2), CombinedSeries<Q>(4, 2)), InputError);
}

TEST_CASE("numeric product consistency decays like eta^N") {
    // y = x + U(x/eta) eta, z = 1 + x^2 + eta U(x/eta)
    const int N = 3;
    auto y = u_minus_order(N, 1, 16);
    y.slow(0) = TaylorPoly<double>{0.0, 1.0};
    auto z = u_minus_order(N, 1, 16);
    z.slow(0) = TaylorPoly<double>{1.0, 0.0, 1.0};
    auto w = multiply(y, z);
    std::vector<double> le, lerr;
    for (double eta : {0.2, 0.1, 0.05}) {
        const double x = -0.4;
        double d = std::abs(evaluate_partial_sum(w, x, eta, N) - evaluate_partial_sum(y, x, eta, N) * evaluate_partial_sum(z, x, eta, N));
        le.push_back(std::log(eta));
        lerr.push_back(std::log(d));
    }
    double slope = (lerr[2] - lerr[0]) / (le[2] - le[0]);
    CHECK(slope >= N - 0.3);
}

TEST_CASE("differentiate termwise and rejects fast order 0") {
    CombinedSeries<Q> y(2, 3);
    y.slow(0) = TaylorPoly<Q>{0, 0, 1};
    y.fast(1) = FastFn<Q>(AsymTail<Q>::exact({1}));
    auto d = differentiate(y);
    CHECK(d.N() == 2);
    CHECK(d.slow(0) == TaylorPoly<Q>{0, 2});
    CHECK(d.fast(0).tail == AsymTail<Q>::exact({0, -1}));
    CHECK(differentiate(constant_series<Q>(2, 3, Q(4))).valuation() == 2);
    CombinedSeries<Q> bad(2, 2);
    bad.fast(0) = FastFn<Q>(AsymTail<Q>::exact({1}));
    CHECK_THROWS_AS((void)differentiate(bad), InputError);
}

TEST_CASE("antiderivative: closed forms and log residue") {
    CombinedSeries<Q> y(2, 3);
    y.fast(0) = FastFn<Q>(AsymTail<Q>::exact({0, 1}));
    y.slow(0) = TaylorPoly<Q>{1};
    auto [Y, log] = antiderivative(y, Q(0));
    CHECK(Y.fast(1).tail == AsymTail<Q>::exact({-1}));
    CHECK(Y.slow(0) == TaylorPoly<Q>{0, 1});
    CHECK(log.is_zero());
    CHECK_FALSE(Y.log().has_value());

    CombinedSeries<double> g(2, 3);
    g.fast(0) = FastFn<double>(AsymTail<double>::exact({1.0}), Evaluator([](double X) { return 1.0 / X; }, Sign::plus, 1e-3));
    auto [H, hlog] = antiderivative(g, 0.0);
    CHECK(hlog.residues[1] == 1.0);
    const double oracle = -0.5 * std::log(1.25);
    CHECK((*H.fast(1).evaluator)(2.0) == doctest::Approx(oracle).epsilon(1e-10));
    CHECK(oracle == doctest::Approx(-0.1115718).epsilon(1e-6));

    CombinedSeries<double> nog(2, 3);
    nog.fast(0) = FastFn<double>(AsymTail<double>::exact({1.0}));
    CHECK_THROWS_AS((void)antiderivative(nog, 0.0), InputError);
}

TEST_CASE("differentiate after antiderivative is the identity up to N-1") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int t = 0; t < 10; ++t) {
        CombinedSeries<Q> y(2, 5);
        for (int n = 0; n < 5; ++n) {
            y.slow(n) = TaylorPoly<Q>{Q(d(rng)), Q(d(rng), 3), Q(d(rng))};
            if (n > 0) y.fast(n) = FastFn<Q>(AsymTail<Q>({0, Q(d(rng)), Q(d(rng)), Q(d(rng), 7)}));
        }
        auto [Y, log] = antiderivative(y, Q(1, 2));
        auto back = differentiate(Y);
        REQUIRE(back.N() == 4);
        for (int n = 0; n < 4; ++n) {
            CHECK(back.slow(n) == y.slow(n));
            for (int m = 1; m <= back.fast(n).tail.depth() && m <= 4; ++m) CHECK(back.fast(n).tail.coeff(m) == y.fast(n).tail.coeff(m));
        }
    }
    // with residues the kernel derivative restores g
    CombinedSeries<double> g(2, 3);
    g.fast(1) = FastFn<double>(AsymTail<double>::exact({1.0}), Evaluator([](double X) { return 1.0 / X; }, Sign::plus, 1e-3));
    auto [Y, log] = antiderivative(g, 0.0);
    auto back = differentiate(Y);
    for (int m = 1; m <= 10; ++m) CHECK(back.fast(1).tail.coeff(m) == doctest::Approx(m == 1 ? 1.0 : 0.0));
    CHECK((*back.fast(1).evaluator)(3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("compose_left") {
    auto y = u_minus_order(5, 1, 12);
    y.slow(1) = TaylorPoly<double>{0.0, 1.0};
    std::vector<PowerTerm<double>> id{{1, 0, constant_series<double>(2, 5, 1.0)}};
    auto same = compose_left(id, y);
    for (int n = 0; n < 5; ++n) {
        CHECK(same.slow(n) == y.slow(n));
        CHECK(same.fast(n).tail == y.fast(n).tail);
    }
    std::vector<PowerTerm<double>> c{{0, 0, constant_series<double>(2, 5, 3.0)}};
    CHECK(compose_left(c, y).slow(0) == TaylorPoly<double>{3.0});
    std::vector<PowerTerm<double>> sq{{2, 0, constant_series<double>(2, 5, 1.0)}};
    auto s = compose_left(sq, y);
    auto oracle = multiply(y, y);
    CHECK(s.slow(2) == TaylorPoly<double>{0.0, 0.0, 1.0});
    CHECK(s.fast(2).tail.coeff(2) == doctest::Approx(0.25));
    CHECK(s.fast(2).tail.coeff(4) == doctest::Approx(-0.25));
    CHECK(s.slow(3).coeff(0) == doctest::Approx(-1.0));
    CHECK(s.fast(3).tail.coeff(2) == doctest::Approx(0.5));
    for (int n = 0; n < 5; ++n) CHECK(s.slow(n) == oracle.slow(n));
    CHECK_THROWS_AS((void)compose_left(sq, constant_series<double>(2, 5, 1.0)), InputError);
}

TEST_CASE("extract_outer and extract_inner") {
    CombinedSeries<Q> y(2, 3);
    y.slow(1) = TaylorPoly<Q>{0, 1};
    y.fast(0) = FastFn<Q>(AsymTail<Q>({2}));
    auto c1 = extract_outer(y, 1);
    CHECK(c1.coeff(1) == 1);
    CHECK(c1.coeff(-1) == 2);
    CHECK(c1.pole_order() == 1);
    CHECK(extract_outer(y, 0).is_zero());
    CHECK_THROWS_AS((void)extract_outer(y, 2), InputError);

    CombinedSeries<Q> z(2, 3);
    z.slow(0) = TaylorPoly<Q>{0, 1};
    z.slow(1) = TaylorPoly<Q>{5};
    z.fast(1) = FastFn<Q>(AsymTail<Q>({7}));
    auto [poly, tail] = extract_inner(z, 1);
    CHECK(poly == TaylorPoly<Q>{5, 1});
    CHECK(tail == AsymTail<Q>({7}));
}

TEST_CASE("reconstruct_from_matching: round trip, infeasibility, injected fault") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-9, 9);
    CombinedSeries<Q> y(2, 5);
    for (int n = 0; n < 5; ++n) {
        std::vector<Q> a, g;
        for (int k = 0; k < 4; ++k) a.push_back(Q(d(rng), 10));
        for (int m = 0; m < 6; ++m) g.push_back(Q(d(rng), 10));
        y.slow(n) = TaylorPoly<Q>(a);
        y.fast(n) = FastFn<Q>(AsymTail<Q>(g));
    }
    std::vector<LaurentPoly<Q>> outer;
    std::vector<std::pair<TaylorPoly<Q>, AsymTail<Q>>> inner;
    for (int n = 0; n < 5; ++n) {
        outer.push_back(extract_outer(y, n));
        inner.push_back(extract_inner(y, n));
    }
    auto back = reconstruct_from_matching(outer, inner, 2);
    for (int n = 0; n < 5; ++n) {
        CHECK(back.slow(n) == y.slow(n));
        CHECK(back.fast(n).tail == y.fast(n).tail);
    }
    auto bad = inner;
    auto g = bad[1].second.coeffs();
    g[1] += 1;
    bad[1].second = AsymTail<Q>(g);
    try {
        (void)reconstruct_from_matching(outer, bad, 2);
        FAIL("expected incompatibility");
    } catch (const CompatibilityError& e) {
        CHECK(e.n() == 3);
        CHECK(e.m() == -2);
    }
    auto polar = outer;
    polar[1] = polar[1] + LaurentPoly<Q>::monomial(-3, Q(1));
    CHECK_THROWS_AS((void)reconstruct_from_matching(polar, inner, 2), InfeasibleError);
}

TEST_CASE("evaluate_partial_sum") {
    CHECK(evaluate_partial_sum(CombinedSeries<double>(2, 3), 0.3, 0.1, 3) == 0.0);
    CombinedSeries<double> a(2, 1);
    a.slow(0) = TaylorPoly<double>{0.0, 1.0};
    CHECK(evaluate_partial_sum(a, 0.5, 0.1, 1) == 0.5);
    auto u = u_minus_order(2, 1);
    CHECK(evaluate_partial_sum(u, 0.0, std::sqrt(0.1), 2) == doctest::Approx(std::sqrt(0.1 * M_PI) / 2).epsilon(1e-10));
    CHECK(evaluate_partial_sum(u, 0.0, std::sqrt(0.1), 2) == doctest::Approx(0.2802495).epsilon(1e-6));
}

TEST_CASE("json round trip in both modes") {
    CombinedSeries<Q> y(2, 3);
    y.slow(0) = TaylorPoly<Q>{Q(1, 3), 2};
    y.fast(1) = FastFn<Q>(AsymTail<Q>({Q(-1, 2), 0, Q(1, 4)}));
    BasisTerm<Q> b;
    b.coeff = Q(1);
    y.fast(1).basis.push_back(b);
    auto j = to_json(y);
    CHECK(j["slow"][0][0] == "1/3");
    auto back = series_from_json<Q>(j);
    CHECK(back.slow(0) == y.slow(0));
    CHECK(back.fast(1).tail == y.fast(1).tail);
    CHECK(back.fast(1).basis == y.fast(1).basis);
    auto yd = convert_series<double>(y);
    auto backd = series_from_json<double>(to_json(yd));
    CHECK(backd.slow(0) == yd.slow(0));
    CHECK(backd.fast(1).tail == yd.fast(1).tail);
}

}  // TEST_SUITE
