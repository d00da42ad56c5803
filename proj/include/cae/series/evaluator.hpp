#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>

namespace cae {

/// Real function of the fast variable on a domain [lo, hi], with the sign of the ray
/// where it carries its asymptotic expansion.
class Evaluator {
public:
    using Fn = std::function<double(double)>;

    Evaluator() = default;
    Evaluator(Fn f, Sign sigma, double lo = -std::numeric_limits<double>::infinity(),
              double hi = std::numeric_limits<double>::infinity(), Fn df = {})
        : f_(std::move(f)), df_(std::move(df)), sigma_(sigma), lo_(lo), hi_(hi) {}

    [[nodiscard]] Sign sigma() const noexcept { return sigma_; }
    [[nodiscard]] double lo() const noexcept { return lo_; }
    [[nodiscard]] double hi() const noexcept { return hi_; }
    [[nodiscard]] bool contains(double X) const noexcept { return X >= lo_ && X <= hi_; }
    [[nodiscard]] bool has_derivative() const noexcept { return static_cast<bool>(df_); }

    [[nodiscard]] double operator()(double X) const {
        if (!contains(X)) throw DomainError("X = " + std::to_string(X) + " outside evaluator domain");
        return f_(X);
    }

    /// Derivative; five-point central difference when no closed form is attached.
    [[nodiscard]] double derivative(double X) const {
        if (df_) {
            if (!contains(X)) throw DomainError("X = " + std::to_string(X) + " outside evaluator domain");
            return df_(X);
        }
        double h = 1e-3 * std::max(1.0, std::abs(X));
        double a = X - 2 * h, b = X + 2 * h;
        if (a < lo_ || b > hi_) throw DomainError("derivative stencil leaves evaluator domain");
        return (f_(X - 2 * h) - 8 * f_(X - h) + 8 * f_(X + h) - f_(X + 2 * h)) / (12 * h);
    }

    [[nodiscard]] const Fn& fn() const noexcept { return f_; }
    [[nodiscard]] const Fn& dfn() const noexcept { return df_; }

    [[nodiscard]] Evaluator scaled(double c) const {
        auto f = f_;
        Fn df;
        if (df_) df = [d = df_, c](double X) { return c * d(X); };
        return {[f, c](double X) { return c * f(X); }, sigma_, lo_, hi_, df};
    }

    friend Evaluator operator+(const Evaluator& a, const Evaluator& b) {
        Fn df;
        if (a.df_ && b.df_) df = [da = a.df_, db = b.df_](double X) { return da(X) + db(X); };
        return {[fa = a.f_, fb = b.f_](double X) { return fa(X) + fb(X); }, a.sigma_,
                std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_), df};
    }
    friend Evaluator operator*(const Evaluator& a, const Evaluator& b) {
        Fn df;
        if (a.df_ && b.df_)
            df = [fa = a.f_, fb = b.f_, da = a.df_, db = b.df_](double X) { return da(X) * fb(X) + fa(X) * db(X); };
        return {[fa = a.f_, fb = b.f_](double X) { return fa(X) * fb(X); }, a.sigma_,
                std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_), df};
    }

private:
    Fn f_;
    Fn df_;
    Sign sigma_ = Sign::minus;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
};

}  // namespace cae
