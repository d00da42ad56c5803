#pragma once

#include "cae/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace cae {

/// Polynomial c_0 + c_1 x + ... + c_M x^M; trailing zeros are trimmed.
template <class T>
class TaylorPoly {
public:
    TaylorPoly() = default;
    TaylorPoly(std::initializer_list<T> c) : c_(c) { trim(); }
    explicit TaylorPoly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    [[nodiscard]] static TaylorPoly constant(const T& v) { return TaylorPoly(std::vector<T>{v}); }
    [[nodiscard]] static TaylorPoly monomial(int k, const T& v) {
        std::vector<T> c(static_cast<std::size_t>(k) + 1, T(0));
        c.back() = v;
        return TaylorPoly(std::move(c));
    }

    /// Degree, -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] const std::vector<T>& coeffs() const noexcept { return c_; }
    [[nodiscard]] T coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : T(0);
    }

    template <class X>
    [[nodiscard]] X eval(const X& x) const {
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(to_double_if<X>(*it));
        return acc;
    }
    [[nodiscard]] double operator()(double x) const { return eval<double>(x); }

    [[nodiscard]] TaylorPoly derivative() const {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return TaylorPoly(std::move(d));
    }

    /// Antiderivative vanishing at x = r.
    [[nodiscard]] TaylorPoly antiderivative(const T& r = T(0)) const {
        std::vector<T> a(c_.size() + 1, T(0));
        for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / T(static_cast<long>(k + 1));
        TaylorPoly out(std::move(a));
        if (!is_zero_scalar(r)) {
            T at_r = out.eval<T>(r);
            out = out - constant(at_r);
        }
        return out;
    }

    [[nodiscard]] TaylorPoly truncated(int degree) const {
        if (degree < 0) return {};
        std::vector<T> c(c_.begin(), c_.begin() + std::min<std::size_t>(c_.size(), static_cast<std::size_t>(degree) + 1));
        return TaylorPoly(std::move(c));
    }

    /// Multiplies by x^k.
    [[nodiscard]] TaylorPoly shifted_up(int k) const {
        if (is_zero()) return {};
        std::vector<T> c(static_cast<std::size_t>(k), T(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return TaylorPoly(std::move(c));
    }

    TaylorPoly& operator+=(const TaylorPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    TaylorPoly& operator-=(const TaylorPoly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    TaylorPoly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        trim();
        return *this;
    }
    friend TaylorPoly operator+(TaylorPoly a, const TaylorPoly& b) { return a += b; }
    friend TaylorPoly operator-(TaylorPoly a, const TaylorPoly& b) { return a -= b; }
    friend TaylorPoly operator-(TaylorPoly a) { return a *= T(-1); }
    friend TaylorPoly operator*(TaylorPoly a, const T& s) { return a *= s; }
    friend TaylorPoly operator*(const T& s, TaylorPoly a) { return a *= s; }
    friend TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero_scalar(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return TaylorPoly(std::move(c));
    }
    friend bool operator==(const TaylorPoly& a, const TaylorPoly& b) { return a.c_ == b.c_; }

private:
    template <class X>
    static auto to_double_if(const T& v) {
        if constexpr (std::is_same_v<X, double>) {
            return to_double(v);
        } else {
            return v;
        }
    }
    static bool is_zero_scalar(const T& v) { return v == T(0); }
    void trim() {
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
    }

    std::vector<T> c_;
};

/// (a(x) - a(0)) / x.
template <class T>
[[nodiscard]] TaylorPoly<T> shift_S(const TaylorPoly<T>& a) {
    if (a.degree() < 1) return {};
    return TaylorPoly<T>(std::vector<T>(a.coeffs().begin() + 1, a.coeffs().end()));
}

template <class U, class T>
[[nodiscard]] TaylorPoly<U> convert_poly(const TaylorPoly<T>& a) {
    std::vector<U> c;
    for (const auto& v : a.coeffs()) {
        if constexpr (std::is_same_v<U, double>) {
            c.push_back(to_double(v));
        } else if constexpr (std::is_same_v<T, double>) {
            c.push_back(from_double<U>(v));
        } else {
            c.push_back(U(v));
        }
    }
    return TaylorPoly<U>(std::move(c));
}

}  // namespace cae
