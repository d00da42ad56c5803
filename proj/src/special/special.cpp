#include "cae/special/special.hpp"

#include "cae/special/quadrature.hpp"
#include "cae/validation/ode.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <map>
#include <mutex>
#include <string>
#include <utility>

namespace cae {

namespace {

void check_pk(int p, int k) {
    if (p < 2 || p % 2 != 0) throw InputError("p must be an even integer >= 2");
    if (k < 1 || k > p - 1) throw InputError("k must lie in 1..p-1");
}

const AsymExpansion<double>& cached_U_expansion(int p, int k) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, AsymExpansion<double>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto v = AsymExpansion<double>::polynomial(TaylorPoly<double>::monomial(k - 1, 1.0));
        it = cache.emplace(key, tail_of_J<double>(p, Sign::minus, v, default_tail_depth(p))).first;
    }
    return it->second;
}

double hermite(double y0, double d0, double y1, double d1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * d0 + (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * d1;
}

}  // namespace

double eval_U(int p, int k, Sign sigma, double X) {
    check_pk(p, k);
    const double s = sign_value(sigma);
    if (s * X > 0) {
        double err = 0.0;
        const double v = cached_U_expansion(p, k).eval(X, &err);
        if (err <= 1e-15 * std::abs(v)) return v;
    }
    const double Xp = std::pow(X, p);
    if (s * X < 0 && Xp > kExponentCap) throw NumericalError("U grows like e^{X^p}; exponent cap exceeded at X = " + std::to_string(X));
    const double far = std::pow(std::abs(Xp) + 40.0, 1.0 / p);
    auto integrand = [p, k, Xp](double T) { return std::exp(Xp - std::pow(T, p)) * std::pow(T, k - 1); };
    if (sigma == Sign::minus) return integrate(integrand, -far, X, 1e-13);
    return -integrate(integrand, X, far, 1e-13);
}

double eval_dawson(double X) {
    if (std::abs(X) >= 8.0) {
        // sum (2n-1)!! / (2^{n+1} X^{2n+1})
        double term = 1.0 / (2.0 * X);
        double sum = term;
        for (int n = 1; n < 60; ++n) {
            double next = term * (2.0 * n - 1.0) / (2.0 * X * X);
            if (std::abs(next) >= std::abs(term)) break;
            term = next;
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return sum;
    }
    return integrate([X](double T) { return std::exp((T - X) * (T + X)); }, 0.0, X, 1e-13);
}

double gauss_moment(int p, int j, double eps) {
    if (p < 2 || p % 2 != 0) throw InputError("p must be an even integer >= 2");
    if (j < 0) throw InputError("moment index must be nonnegative");
    if (eps <= 0.0) throw InputError("eps must be positive");
    if (j % 2 == 1) return 0.0;
    const double a = (j + 1.0) / p;
    return (2.0 / p) * std::pow(eps, a) * std::tgamma(a);
}

RayFn RayFn::from_exact(Sign sigma, const AsymExpansion<double>& e) {
    if (!e.is_exact()) throw InputError("expansion is not exact");
    const TaylorPoly<double> poly = e.poly();
    const AsymTail<double> tail = e.tail();
    const TaylorPoly<double> dpoly = poly.derivative();
    const AsymTail<double> dtail = tail.derivative();
    RayFn out(
        sigma, e, [poly, tail](double X) { return poly(X) + (tail.size() ? tail.partial_sum(X, tail.size()) : 0.0); },
        [dpoly, dtail](double X) { return dpoly(X) + (dtail.size() ? dtail.partial_sum(X, dtail.size()) : 0.0); });
    out.zero_ = e.is_zero();
    out.exact_fn_ = true;
    return out;
}

RayFn RayFn::from_polynomial_J(int p, Sign sigma, const PolynomialJ<double>& pj, int depth) {
    bool has_u = false;
    for (double c : pj.u) has_u = has_u || c != 0.0;
    if (!has_u) return from_exact(sigma, AsymExpansion<double>::polynomial(pj.poly));
    AsymExpansion<double> formal = AsymExpansion<double>::polynomial(pj.poly);
    for (int k = 1; k < p; ++k) {
        const double c = pj.u[static_cast<std::size_t>(k)];
        if (c == 0.0) continue;
        auto v = AsymExpansion<double>::polynomial(TaylorPoly<double>::monomial(k - 1, 1.0));
        formal = formal + tail_of_J<double>(p, sigma, v, depth) * c;
    }
    const TaylorPoly<double> poly = pj.poly;
    const TaylorPoly<double> dpoly = poly.derivative();
    const std::vector<double> u = pj.u;
    auto f = [p, sigma, poly, u](double X) {
        double s = poly(X);
        for (int k = 1; k < p; ++k)
            if (u[static_cast<std::size_t>(k)] != 0.0) s += u[static_cast<std::size_t>(k)] * eval_U(p, k, sigma, X);
        return s;
    };
    // U_k' = p X^{p-1} U_k + X^{k-1}
    auto df = [p, sigma, dpoly, u](double X) {
        double s = dpoly(X);
        for (int k = 1; k < p; ++k) {
            const double c = u[static_cast<std::size_t>(k)];
            if (c != 0.0) s += c * (p * std::pow(X, p - 1) * eval_U(p, k, sigma, X) + std::pow(X, k - 1));
        }
        return s;
    };
    return RayFn(sigma, std::move(formal), f, df);
}

double RayFn::operator()(double X) const {
    if (!f_) return 0.0;
    if (X >= lo_ && X <= hi_) return f_(X);
    const bool sigma_side = sigma_ == Sign::minus ? X < lo_ : X > hi_;
    if (!sigma_side) throw DomainError("X = " + std::to_string(X) + " beyond the computed range of an inner function");
    return formal_.eval(X);
}

double RayFn::derivative(double X) const {
    if (!f_) return 0.0;
    if (X >= lo_ && X <= hi_) {
        if (df_) return df_(X);
        const double h = 1e-4 * std::max(1.0, std::abs(X));
        return ((*this)(X + h) - (*this)(X - h)) / (2 * h);
    }
    const bool sigma_side = sigma_ == Sign::minus ? X < lo_ : X > hi_;
    if (!sigma_side) throw DomainError("X = " + std::to_string(X) + " beyond the computed range of an inner function");
    return formal_.derivative().eval(X);
}

Evaluator RayFn::evaluator() const {
    auto self = std::make_shared<RayFn>(*this);
    const double lo = sigma_ == Sign::minus ? -std::numeric_limits<double>::infinity() : lo_;
    const double hi = sigma_ == Sign::minus ? hi_ : std::numeric_limits<double>::infinity();
    return Evaluator([self](double X) { return (*self)(X); }, sigma_, lo, hi, [self](double X) { return self->derivative(X); });
}

Evaluator RayFn::fast_evaluator() const {
    auto self = std::make_shared<RayFn>(*this);
    const TaylorPoly<double> poly = formal_.poly();
    const TaylorPoly<double> dpoly = poly.derivative();
    const double lo = sigma_ == Sign::minus ? -std::numeric_limits<double>::infinity() : lo_;
    const double hi = sigma_ == Sign::minus ? hi_ : std::numeric_limits<double>::infinity();
    return Evaluator([self, poly](double X) { return (*self)(X) - poly(X); }, sigma_, lo, hi,
                     [self, dpoly](double X) { return self->derivative(X) - dpoly(X); });
}

RayFn grid_ray_fn(Sign sigma, AsymExpansion<double> formal, const InnerGrid& grid, std::vector<double> values,
                  std::vector<double> derivs, int i0, int i1, std::function<double(double, double)> rhs) {
    struct Data {
        double x0, h;
        int i0, i1;
        std::vector<double> y, d;
    };
    auto data = std::make_shared<Data>(Data{-grid.x_far, grid.h(), i0, i1, std::move(values), std::move(derivs)});
    auto f = [data](double X) {
        double u = (X - data->x0) / data->h;
        int i = static_cast<int>(std::floor(u));
        i = std::clamp(i, data->i0, data->i1 - 1);
        const double s = u - i;
        const auto a = static_cast<std::size_t>(i), b = a + 1;
        return hermite(data->y[a], data->d[a], data->y[b], data->d[b], data->h, s);
    };
    RayFn::Fn df;
    if (rhs) {
        df = [f, rhs](double X) { return rhs(X, f(X)); };
    } else {
        df = [data](double X) {
            double u = (X - data->x0) / data->h;
            int i = std::clamp(static_cast<int>(std::floor(u)), data->i0, data->i1 - 1);
            const double s = u - i, h = data->h;
            const auto a = static_cast<std::size_t>(i), b = a + 1;
            const double s2 = s * s;
            return ((6 * s2 - 6 * s) * data->y[a] + (3 * s2 - 4 * s + 1) * h * data->d[a] + (-6 * s2 + 6 * s) * data->y[b] +
                    (3 * s2 - 2 * s) * h * data->d[b]) / h;
        };
    }
    return RayFn(sigma, std::move(formal), f, df, grid.node(i0), grid.node(i1));
}

RayFn integrate_ray(Sign sigma, AsymExpansion<double> formal, const std::function<double(double, double)>& rhs,
                    const InnerGrid& grid) {
    const int n = grid.nodes;
    std::vector<double> y(static_cast<std::size_t>(n), 0.0), d(static_cast<std::size_t>(n), 0.0);
    const int start = sigma == Sign::minus ? 0 : n - 1;
    const int dir = sigma == Sign::minus ? 1 : -1;
    const double X0 = grid.node(start);
    double U0 = formal.eval(X0);
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-15;
    opt.blowup_cap = 1e250;
    OdeStepper stepper([rhs](double X, const OdeState& u, OdeState& du) { du[0] = rhs(X, u[0]); }, X0, OdeState{U0}, opt);
    y[static_cast<std::size_t>(start)] = U0;
    d[static_cast<std::size_t>(start)] = rhs(X0, U0);
    int last = start;
    for (int i = start + dir; i >= 0 && i < n; i += dir) {
        bool ok = false;
        try {
            ok = stepper.advance_to(grid.node(i));
            if (!ok && dir * grid.node(i) <= 0)
                throw NumericalError("inner solution blows up before X = 0, near X = " + std::to_string(stepper.t()));
            if (ok) {
                y[static_cast<std::size_t>(i)] = stepper.y()[0];
                d[static_cast<std::size_t>(i)] = rhs(grid.node(i), stepper.y()[0]);
            }
        } catch (const DomainError&) {
            ok = false;
        } catch (const NumericalError&) {
            if (dir * grid.node(i) <= 0) throw;
            ok = false;
        }
        if (!ok) break;
        last = i;
    }
    const int i0 = std::min(start, last), i1 = std::max(start, last);
    if (i1 - i0 < 1) throw NumericalError("inner solution could not leave its starting point");
    return grid_ray_fn(sigma, std::move(formal), grid, std::move(y), std::move(d), i0, i1, rhs);
}


RayFn solve_inner_linear(int p, Sign sigma, const RayFn* b, const RayFn& v, const InnerGrid& grid, int depth) {
    if (v.is_zero()) return RayFn::zero(sigma);
    if (!b && v.is_exact_function() && v.formal().tail().is_zero())
        return RayFn::from_polynomial_J(p, sigma, polynomial_J<double>(p, v.formal().poly()), depth);
    std::optional<AsymExpansion<double>> bf;
    if (b) bf = b->formal();
    AsymExpansion<double> formal = formal_linear_solution<double>(p, bf, v.formal(), depth);
    if (formal.is_exact() && v.formal().is_exact() && !b) return RayFn::from_exact(sigma, formal);

    std::shared_ptr<RayFn> bcopy = b ? std::make_shared<RayFn>(*b) : nullptr;
    std::function<double(double, double)> rhs = [p, bcopy, v](double X, double U) {
        double a = p * std::pow(X, p - 1);
        if (bcopy) a += (*bcopy)(X);
        return a * U + v(X);
    };

    return integrate_ray(sigma, std::move(formal), rhs, grid);
}

RayFn apply_J(int p, Sign sigma, const RayFn& v, const InnerGrid& grid, int depth) {
    return solve_inner_linear(p, sigma, nullptr, v, grid, depth);
}

RayFn apply_J(int p, Sign sigma, const RayFn& v) {
    return apply_J(p, sigma, v, InnerGrid::for_p(p), default_tail_depth(p));
}

}  // namespace cae
