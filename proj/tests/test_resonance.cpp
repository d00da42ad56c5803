#include <doctest.h>

#include "cae/resonance/resonance.hpp"

#include <tuple>

using namespace cae;
using Q = Rational;

TEST_SUITE("resonance") {

TEST_CASE("condition_check truth table") {
    CHECK(condition_check(ResonanceCase<double>{1, 2, 2}));
    CHECK(condition_check(ResonanceCase<double>{1, 3, 2}));
    CHECK_FALSE(condition_check(ResonanceCase<double>{1, 2, 4}));
    CHECK_FALSE(condition_check(ResonanceCase<double>{1, 2.5, 2}));
    CHECK_FALSE(condition_check(ResonanceCase<double>{1, -2, 2}));
    CHECK(condition_check(ResonanceCase<double>{1, 5, 4}));
    CHECK(condition_check(ResonanceCase<Q>{Q(1), Q(2), 2}));
    CHECK_FALSE(condition_check(ResonanceCase<Q>{Q(1), Q(5, 2), 2}));
    CHECK_THROWS_AS((void)condition_check(ResonanceCase<double>{0, 2, 2}), InputError);
    CHECK_THROWS_AS((void)condition_check(ResonanceCase<double>{1, 2, 3}), InputError);
}

TEST_CASE("z0_polynomial closed forms") {
    CHECK(z0_polynomial(ResonanceCase<Q>{Q(1), Q(2), 2}) == TaylorPoly<Q>{Q(-1), Q(0), Q(1)});
    CHECK(z0_polynomial(ResonanceCase<Q>{Q(1), Q(1), 2}) == TaylorPoly<Q>{Q(0), Q(1)});
    CHECK(z0_polynomial(ResonanceCase<Q>{Q(1), Q(3), 2}) == TaylorPoly<Q>{Q(0), Q(-3), Q(0), Q(1)});
    CHECK(z0_polynomial(ResonanceCase<Q>{Q(1), Q(0), 2}) == TaylorPoly<Q>{Q(1)});
    CHECK_THROWS_AS((void)z0_polynomial(ResonanceCase<Q>{Q(1), Q(2), 4}), InputError);
    CHECK_THROWS_AS((void)z0_polynomial(ResonanceCase<double>{1, 2.5, 2}), InputError);
}

TEST_CASE("z0_polynomial: exact degree, parity and zero residual") {
    for (int p : {2, 4, 6}) {
        for (int D = 0; D <= 13; ++D) {
            if (D % p > 1) continue;
            for (const Q alpha : {Q(1), Q(3, 2), Q(5)}) {
                const ResonanceCase<Q> c{alpha, alpha * D, p};
                const TaylorPoly<Q> Z = z0_polynomial(c);
                CHECK(Z.degree() == D);
                CHECK(Z.coeff(D) == Q(1));
                CHECK(reduced_residual(c, Z).is_zero());
                for (int m = 0; m <= D; ++m)
                    if ((D - m) % 2 != 0) CHECK(Z.coeff(m) == Q(0));
            }
        }
    }
}

TEST_CASE("scaling alpha and beta together rescales X in Z0") {
    const ResonanceCase<Q> c{Q(1), Q(5), 4};
    const ResonanceCase<Q> s7{Q(7, 3), Q(35, 3), 4};
    CHECK(condition_check(c) == condition_check(s7));
    // (alpha, beta) -> (s alpha, s beta) maps Z0(X) to s^{-D/p} Z0(s^{1/p} X); s = 16 gives s^{1/4} = 2
    for (const auto& [base, p, root] : {std::tuple{ResonanceCase<Q>{Q(1), Q(5), 4}, 4, 2}, std::tuple{ResonanceCase<Q>{Q(1), Q(4), 2}, 2, 3}}) {
        const Q s = Q(boost::multiprecision::pow(boost::multiprecision::cpp_int(root), p));
        const ResonanceCase<Q> scaled{base.alpha * s, base.beta * s, p};
        CHECK(condition_check(base) == condition_check(scaled));
        const TaylorPoly<Q> Z = z0_polynomial(base), Zs = z0_polynomial(scaled);
        const int D = Z.degree();
        for (int m = 0; m <= D; ++m) {
            Q factor(1);
            for (int i = 0; i < D - m; ++i) factor /= Q(root);
            CHECK(Zs.coeff(m) == Z.coeff(m) * factor);
        }
    }
}

TEST_CASE("riccati_leading_check") {
    const RiccatiCheck a = riccati_leading_check({1, 2, 2}, {-10, -5, -3, 3, 5, 10});
    CHECK(a.max_residual < 1e-10);
    CHECK(a.used.size() == 6);
    const RiccatiCheck b = riccati_leading_check({1, 1, 2}, {-2, -1, -0.05, 0.5, 1, 2});
    CHECK(b.max_residual < 1e-10);
    CHECK(b.used.size() == 5);
    CHECK(b.notes.size() == 1);
    const RiccatiCheck q = riccati_leading_check({2, 10, 4}, {-3, -2, 2, 3});
    CHECK(q.max_residual < 1e-9);
    CHECK_THROWS_AS((void)riccati_leading_check({1, 2, 2}, {}), InputError);
    CHECK_THROWS_AS((void)riccati_leading_check({1, 2, 2}, {1.0, -1.05}), InputError);
}

}  // TEST_SUITE
