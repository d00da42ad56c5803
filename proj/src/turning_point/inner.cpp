#include "cae/turning_point/inner.hpp"

#include "cae/special/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

namespace cae {

namespace {

using Expansion = AsymExpansion<double>;

struct DoubleOps {
    double X;
    [[nodiscard]] double zero() const { return 0.0; }
    [[nodiscard]] bool nonzero(double a) const { return a != 0.0; }
    [[nodiscard]] double add(double a, double b) const { return a + b; }
    [[nodiscard]] double mul(double a, double b) const { return a * b; }
    [[nodiscard]] double scale(double a, double c) const { return a * c; }
    [[nodiscard]] double xmul(double a, int j) const { return j == 0 ? a : a * std::pow(X, j); }
};

struct FormalOps {
    int depth;
    [[nodiscard]] Expansion zero() const { return Expansion(); }
    [[nodiscard]] bool nonzero(const Expansion& a) const { return !(a.is_zero() && a.is_exact()); }
    [[nodiscard]] Expansion add(const Expansion& a, const Expansion& b) const { return a + b; }
    [[nodiscard]] Expansion mul(const Expansion& a, const Expansion& b) const { return (a * b).truncated(depth); }
    [[nodiscard]] Expansion scale(const Expansion& a, double c) const { return a * c; }
    [[nodiscard]] Expansion xmul(const Expansion& a, int j) const { return a.times_X_power(j).truncated(depth); }
};

struct FlagOps {
    [[nodiscard]] bool zero() const { return false; }
    [[nodiscard]] bool nonzero(bool a) const { return a; }
    [[nodiscard]] bool add(bool a, bool b) const { return a || b; }
    [[nodiscard]] bool mul(bool a, bool b) const { return a && b; }
    [[nodiscard]] bool scale(bool a, double c) const { return a && c != 0.0; }
    [[nodiscard]] bool xmul(bool a, int) const { return a; }
};

/// Y-dependent part of F_n from V_0..V_{n-1}; V_n enters as zero.
template <class S, class Ops>
S y_part(const ScaledInnerEquation& eq, int n, const std::vector<S>& V, const Ops& ops) {
    int qmax = 0;
    for (const auto& t : eq.terms)
        if (t.q >= 1 && n - t.e >= 0) qmax = std::max(qmax, t.q);
    S acc = ops.zero();
    if (qmax == 0) return acc;
    auto Vm = [&](int m) { return m < n ? V[static_cast<std::size_t>(m)] : ops.zero(); };
    std::vector<std::vector<S>> pw(static_cast<std::size_t>(qmax) + 1, std::vector<S>(static_cast<std::size_t>(n) + 1, ops.zero()));
    for (int m = 0; m <= n; ++m) pw[1][static_cast<std::size_t>(m)] = Vm(m);
    for (int q = 2; q <= qmax; ++q)
        for (int m = 0; m <= n; ++m) {
            S s = ops.zero();
            for (int i = 0; i <= m; ++i) {
                const S a = Vm(i);
                const S& b = pw[static_cast<std::size_t>(q - 1)][static_cast<std::size_t>(m - i)];
                if (ops.nonzero(a) && ops.nonzero(b)) s = ops.add(s, ops.mul(a, b));
            }
            pw[static_cast<std::size_t>(q)][static_cast<std::size_t>(m)] = s;
        }
    for (const auto& t : eq.terms) {
        if (t.q < 1 || n - t.e < 0) continue;
        const S& w = pw[static_cast<std::size_t>(t.q)][static_cast<std::size_t>(n - t.e)];
        if (ops.nonzero(w)) acc = ops.add(acc, ops.scale(ops.xmul(w, t.j), t.c));
    }
    return acc;
}

/// Linearization coefficient b = sum over eta^0 terms of q c X^j V_0^{q-1}.
template <class S, class Ops>
S linear_coefficient(const ScaledInnerEquation& eq, const S& V0, const Ops& ops) {
    S acc = ops.zero();
    for (const auto& t : eq.terms) {
        if (t.e != 0 || t.q < 2) continue;
        S w = V0;
        for (int i = 2; i < t.q; ++i) w = ops.mul(w, V0);
        acc = ops.add(acc, ops.scale(ops.xmul(w, t.j), t.c * t.q));
    }
    return acc;
}

/// Y-free forcing at scaled order n as a polynomial.
TaylorPoly<double> polynomial_forcing(const ScaledInnerEquation& eq, int n) {
    TaylorPoly<double> out;
    for (const auto& t : eq.terms)
        if (t.q == 0 && t.e == n) out = out + TaylorPoly<double>::monomial(t.j, t.c);
    return out;
}

/// Values V_m(X) of a family that may be two-sided (minus for X <= 0, plus for X > 0).
struct Family {
    std::vector<RayFn> minus;
    std::vector<RayFn> plus;  ///< empty for one-sided families
    Sign sigma = Sign::minus;

    [[nodiscard]] const RayFn& at(int m, double X) const {
        if (!plus.empty() && X > 0.0) return plus[static_cast<std::size_t>(m)];
        return minus[static_cast<std::size_t>(m)];
    }
    [[nodiscard]] std::vector<double> values(int n, double X) const {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) v[static_cast<std::size_t>(m)] = at(m, X)(X);
        return v;
    }
    [[nodiscard]] const std::vector<RayFn>& side(Sign s) const { return (s == Sign::plus && !plus.empty()) ? plus : minus; }
};

/// F_n (without V_n) as a RayFn on the sigma side.
RayFn forcing_fn(const ScaledInnerEquation& eq, int n, const std::shared_ptr<const Family>& fam, const TaylorPoly<double>& poly,
                 Sign sigma, int depth) {
    const auto& own = fam->side(sigma);
    std::vector<bool> flags;
    for (int m = 0; m < n; ++m) flags.push_back(!own[static_cast<std::size_t>(m)].is_zero());
    if (!y_part(eq, n, flags, FlagOps{})) return RayFn::from_exact(sigma, Expansion::polynomial(poly));

    std::vector<Expansion> formals;
    for (int m = 0; m < n; ++m) formals.push_back(own[static_cast<std::size_t>(m)].formal());
    Expansion formal = Expansion::polynomial(poly) + y_part(eq, n, formals, FormalOps{depth});
    double lo = -std::numeric_limits<double>::infinity(), hi = std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
        lo = std::max(lo, own[static_cast<std::size_t>(m)].lo());
        hi = std::min(hi, own[static_cast<std::size_t>(m)].hi());
    }
    if (!fam->plus.empty()) {
        lo = -std::numeric_limits<double>::infinity();
        hi = std::numeric_limits<double>::infinity();
        for (int m = 0; m < n; ++m) {
            lo = std::max(lo, fam->minus[static_cast<std::size_t>(m)].lo());
            hi = std::min(hi, fam->plus[static_cast<std::size_t>(m)].hi());
        }
    }
    // snapshot of the lower orders, so later orders do not form ownership cycles
    auto snap = std::make_shared<Family>();
    snap->sigma = fam->sigma;
    snap->minus.assign(fam->minus.begin(), fam->minus.begin() + n);
    if (!fam->plus.empty()) snap->plus.assign(fam->plus.begin(), fam->plus.begin() + n);
    auto f = [eq, n, snap, poly](double X) {
        return poly(X) + y_part(eq, n, snap->values(n, X), DoubleOps{X});
    };
    return RayFn(sigma, std::move(formal), f, {}, lo, hi);
}

/// Formal solution at infinity of the nonlinear reduced equation U' = p X^{p-1} U + F_0(X, U).
Expansion nonlinear_formal(const ScaledInnerEquation& eq, const TaylorPoly<double>& poly, int depth) {
    const int p = eq.p;
    const FormalOps ops{depth};
    const Expansion forcing = Expansion::polynomial(poly);
    Expansion U;
    const int max_iter = 4 * depth + 4 * std::max(0, poly.degree()) + 40;
    for (int it = 0; it < max_iter; ++it) {
        Expansion nl = forcing;
        for (const auto& t : eq.terms) {
            if (t.e != 0 || t.q < 2) continue;
            Expansion w = U;
            for (int i = 1; i < t.q; ++i) w = ops.mul(w, U);
            nl = nl + ops.scale(ops.xmul(w, t.j), t.c);
        }
        Expansion next = ((U.derivative() - nl).times_X_power(-(p - 1)) * (1.0 / p)).truncated(depth);
        if (next == U) break;
        U = next;
    }
    return U;
}

RayFn solve_order(const ScaledInnerEquation& eq, int n, const std::shared_ptr<const Family>& fam, const TaylorPoly<double>& poly,
                  Sign sigma, const InnerGrid& grid, int depth, std::optional<PolynomialJ<double>>* closed) {
    const int p = eq.p;
    const auto& own = fam->side(sigma);
    if (n == 0 && eq.nonlinear_at_zero()) {
        Expansion formal = nonlinear_formal(eq, poly, depth);
        std::vector<InnerTerm> nl;
        for (const auto& t : eq.terms)
            if (t.e == 0 && t.q >= 2) nl.push_back(t);
        auto rhs = [p, poly, nl](double X, double U) {
            double s = p * std::pow(X, p - 1) * U + poly(X);
            for (const auto& t : nl) s += t.c * std::pow(X, t.j) * std::pow(U, t.q);
            return s;
        };
        return integrate_ray(sigma, std::move(formal), rhs, grid);
    }
    RayFn v = forcing_fn(eq, n, fam, poly, sigma, depth);
    if (n >= 1 && eq.nonlinear_at_zero()) {
        const RayFn& V0 = own[0];
        Expansion bformal = linear_coefficient(eq, V0.formal(), FormalOps{depth});
        auto V0p = std::make_shared<RayFn>(V0);
        auto bf = [eq, V0p](double X) { return linear_coefficient(eq, (*V0p)(X), DoubleOps{X}); };
        RayFn b(sigma, std::move(bformal), bf, {}, V0.lo(), V0.hi());
        return solve_inner_linear(p, sigma, &b, v, grid, depth);
    }
    if (closed && v.is_exact_function() && v.formal().tail().is_zero()) *closed = polynomial_J<double>(p, v.formal().poly());
    return solve_inner_linear(p, sigma, nullptr, v, grid, depth);
}

}  // namespace

ScaledInnerEquation ScaledInnerEquation::from_spec(const ODESpec<double>& spec) {
    ScaledInnerEquation eq;
    eq.p = spec.p;
    eq.r = spec.r;
    eq.control = spec.control;
    const int p = spec.p, r = spec.r;
    auto push = [&](int e, int j, int q, double c, const std::string& what) {
        if (e < 0)
            throw InfeasibleError("inner scaling: " + what + " carries eta^" + std::to_string(e) + " (no inner expansion with r = " +
                                      std::to_string(r) + ")",
                                  0, -e);
        if (c != 0.0) eq.terms.push_back({e, j, q, c});
    };
    for (int j = p; j <= spec.f.degree(); ++j) push(j + 1 - p, j, 1, spec.f.coeff(j), "f term x^" + std::to_string(j));
    for (const auto& t : spec.h)
        push(1 - r + t.j + p * t.l, t.j, 0, t.c, "h term x^" + std::to_string(t.j) + " eps^" + std::to_string(t.l));
    for (const auto& t : spec.P)
        push(1 - p + t.j + r * t.k + p * t.l, t.j, t.k + 1, t.c,
             "P term x^" + std::to_string(t.j) + " y^" + std::to_string(t.k) + " eps^" + std::to_string(t.l));
    return eq;
}

bool ScaledInnerEquation::nonlinear_at_zero() const {
    for (const auto& t : terms)
        if (t.e == 0 && t.q >= 2) return true;
    return false;
}

InnerExpansion inner_expansion(const ODESpec<double>& spec, int N, Sign sigma, const std::vector<double>& alpha_eta,
                               const InnerOptions& opt) {
    if (N < 0) throw InputError("inner expansion order must be >= 0");
    const ScaledInnerEquation eq = ScaledInnerEquation::from_spec(spec);
    const InnerGrid grid = opt.grid ? *opt.grid : InnerGrid::for_p(spec.p);
    const int depth = opt.depth > 0 ? opt.depth : default_tail_depth(spec.p);
    InnerExpansion out;
    out.p = spec.p;
    out.r = spec.r;
    out.sigma = sigma;
    const int scaled = std::max(0, N - spec.r);
    for (std::size_t k = 0; k < alpha_eta.size(); ++k)
        if (alpha_eta[k] != 0.0 && eq.alpha_order(static_cast<int>(k)) < 0)
            throw InfeasibleError("control coefficient at eta^" + std::to_string(k) + " enters the inner equation at a negative order", 0, 1);
    auto fam = std::make_shared<Family>();
    fam->sigma = sigma;
    for (int n = 0; n < scaled; ++n) {
        TaylorPoly<double> poly = polynomial_forcing(eq, n);
        if (spec.control) {
            const int k = n + spec.r - 1;
            if (k >= 0 && k < static_cast<int>(alpha_eta.size())) poly = poly + TaylorPoly<double>{alpha_eta[static_cast<std::size_t>(k)]};
        }
        std::optional<PolynomialJ<double>> closed;
        RayFn V = solve_order(eq, n, fam, poly, sigma, grid, depth, &closed);
        fam->minus.push_back(V);
        out.V.push_back(std::move(V));
        out.closed.push_back(std::move(closed));
    }
    return out;
}

double ControlSeries::eps_coeff(int n) const {
    for (std::size_t k = 0; k < alpha_eta.size(); ++k)
        if (static_cast<int>(k) % p != 0 && std::abs(alpha_eta[k]) > 1e-10)
            throw InputError("alpha has a nonzero coefficient at eta^" + std::to_string(k) + ", not a power of eps");
    const auto k = static_cast<std::size_t>(p * n);
    return k < alpha_eta.size() ? alpha_eta[k] : 0.0;
}

double ControlSeries::value(double eps) const {
    const double eta = std::pow(eps, 1.0 / p);
    double s = 0.0, e = 1.0;
    for (double a : alpha_eta) {
        s += a * e;
        e *= eta;
    }
    return s;
}

ControlSeries inner_control_series(const ODESpec<double>& spec, int N, const InnerOptions& opt) {
    if (!spec.control) throw InputError("spec has no control parameter");
    if (N < 1) throw InputError("control series order must be >= 1");
    const ScaledInnerEquation eq = ScaledInnerEquation::from_spec(spec);
    if (eq.nonlinear_at_zero()) throw InputError("control series needs a reduced inner equation linear in Y");
    const int p = spec.p;
    const InnerGrid grid = opt.grid ? *opt.grid : InnerGrid::for_p(p);
    const int depth = opt.depth > 0 ? opt.depth : default_tail_depth(p);
    const double m0 = gauss_moment(p, 0, 1.0);

    ControlSeries out;
    out.p = p;
    const int K = p * N;
    out.alpha_eta.assign(static_cast<std::size_t>(K), 0.0);
    auto fam = std::make_shared<Family>();
    for (int n = 0; n + spec.r - 1 < K; ++n) {
        const int k = n + spec.r - 1;
        TaylorPoly<double> poly = polynomial_forcing(eq, n);
        double moment = 0.0;
        for (int j = 0; j <= poly.degree(); ++j) moment += poly.coeff(j) * gauss_moment(p, j, 1.0);
        if (n > 0) {
            auto weighted = [&](double X) { return std::exp(-std::pow(X, p)) * y_part(eq, n, fam->values(n, X), DoubleOps{X}); };
            moment += integrate(weighted, -grid.x_far, 0.0, 1e-12) + integrate(weighted, 0.0, grid.x_far, 1e-12);
        }
        out.moments.push_back(moment);
        double alpha = 0.0;
        if (k >= 0) {
            alpha = -moment / m0;
            out.alpha_eta[static_cast<std::size_t>(k)] = alpha;
            poly = poly + TaylorPoly<double>{alpha};
        } else if (std::abs(moment) > 1e-12) {
            throw InfeasibleError("no control can cancel the moment at scaled order " + std::to_string(n), n, 1);
        }
        std::shared_ptr<const Family> cfam = fam;
        RayFn vm = solve_order(eq, n, cfam, poly, Sign::minus, grid, depth, nullptr);
        RayFn vp = solve_order(eq, n, cfam, poly, Sign::plus, grid, depth, nullptr);
        fam->minus.push_back(std::move(vm));
        fam->plus.push_back(std::move(vp));
    }
    return out;
}

}  // namespace cae
