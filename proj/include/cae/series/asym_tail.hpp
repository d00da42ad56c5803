#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/laurent_poly.hpp"
#include "cae/series/taylor_poly.hpp"

#include <cmath>
#include <vector>

namespace cae {

/// Asymptotic series sum_{m>=1} g_m X^{-m} known through X^{-depth}.
/// An exact tail (depth = kExactDepth) has zero coefficients beyond those stored.
template <class T>
class AsymTail {
public:
    AsymTail() = default;
    /// Truncated tail: depth equals the number of coefficients.
    explicit AsymTail(std::vector<T> g) : g_(std::move(g)) { depth_ = static_cast<int>(g_.size()); }
    AsymTail(std::vector<T> g, int depth) : g_(std::move(g)), depth_(depth) {
        if (depth_ < kExactDepth && static_cast<int>(g_.size()) > depth_) g_.resize(static_cast<std::size_t>(depth_));
    }
    [[nodiscard]] static AsymTail exact(std::vector<T> g) { return AsymTail(std::move(g), kExactDepth); }

    [[nodiscard]] int depth() const noexcept { return depth_; }
    [[nodiscard]] bool is_exact() const noexcept { return depth_ >= kExactDepth; }
    [[nodiscard]] const std::vector<T>& coeffs() const noexcept { return g_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(g_.size()); }
    [[nodiscard]] bool is_zero() const {
        for (const auto& v : g_)
            if (v != T(0)) return false;
        return true;
    }
    /// g_m for m >= 1.
    [[nodiscard]] T coeff(int m) const {
        if (m < 1) throw InputError("tail index starts at 1");
        if (m > depth_) throw InputError("tail coefficient " + std::to_string(m) + " beyond depth " + std::to_string(depth_));
        return m <= static_cast<int>(g_.size()) ? g_[static_cast<std::size_t>(m - 1)] : T(0);
    }
    [[nodiscard]] bool has(int m) const noexcept { return m >= 1 && m <= depth_; }

    /// Same tail viewed as a Laurent series in w = 1/X.
    [[nodiscard]] LaurentPoly<T> as_laurent_w() const { return LaurentPoly<T>(1, g_, depth_); }
    [[nodiscard]] static AsymTail from_laurent_w(const LaurentPoly<T>& w) {
        std::vector<T> g;
        int hi = w.highest();
        if (w.valid_through() < kExactDepth) hi = std::min(hi, w.valid_through());
        for (int m = 1; m <= hi; ++m) g.push_back(w.coeff(m));
        return AsymTail(std::move(g), w.valid_through());
    }

    /// d/dX: coefficient of X^{-m-1} is -m g_m.
    [[nodiscard]] AsymTail derivative() const {
        std::vector<T> d(g_.size() + 1, T(0));
        for (std::size_t i = 0; i < g_.size(); ++i) d[i + 1] = -T(static_cast<long>(i + 1)) * g_[i];
        return AsymTail(std::move(d), is_exact() ? kExactDepth : depth_ + 1);
    }

    AsymTail& operator*=(const T& s) {
        for (auto& v : g_) v *= s;
        return *this;
    }
    friend AsymTail operator*(AsymTail a, const T& s) { return a *= s; }
    friend AsymTail operator*(const T& s, AsymTail a) { return a *= s; }
    friend AsymTail operator+(const AsymTail& a, const AsymTail& b) { return combine(a, b, T(1)); }
    friend AsymTail operator-(const AsymTail& a, const AsymTail& b) { return combine(a, b, T(-1)); }
    /// Product of two tails (leading power X^{-2}).
    friend AsymTail operator*(const AsymTail& a, const AsymTail& b) {
        return from_laurent_w(a.as_laurent_w() * b.as_laurent_w());
    }
    friend bool operator==(const AsymTail& a, const AsymTail& b) {
        if (a.depth_ != b.depth_) return false;
        std::size_t n = std::max(a.g_.size(), b.g_.size());
        for (std::size_t i = 0; i < n; ++i) {
            T x = i < a.g_.size() ? a.g_[i] : T(0);
            T y = i < b.g_.size() ? b.g_[i] : T(0);
            if (x != y) return false;
        }
        return true;
    }

    /// Partial sum of the first M terms at X.
    [[nodiscard]] double partial_sum(double X, int M) const {
        double s = 0.0;
        double w = 1.0 / X;
        double wp = w;
        for (int m = 1; m <= M && m <= static_cast<int>(g_.size()); ++m) {
            s += to_double(g_[static_cast<std::size_t>(m - 1)]) * wp;
            wp *= w;
        }
        return s;
    }

    /// Sum through the smallest nonzero term (optimal truncation).
    /// The error estimate is the magnitude of that least term; exact tails are summed fully.
    [[nodiscard]] double optimal_sum(double X, double* error = nullptr) const {
        const double w = 1.0 / X;
        std::vector<double> terms;
        terms.reserve(g_.size());
        double wp = w;
        for (const auto& v : g_) {
            terms.push_back(to_double(v) * wp);
            wp *= w;
        }
        if (is_exact()) {
            double s = 0.0;
            for (double t : terms) s += t;
            if (error) *error = 0.0;
            return s;
        }
        std::size_t stop = terms.size();
        double least = 0.0;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            double mag = std::abs(terms[i]);
            if (mag == 0.0) continue;
            if (stop == terms.size() || mag < least) {
                stop = i;
                least = mag;
            }
        }
        double s = 0.0;
        for (std::size_t i = 0; i < terms.size() && i <= stop; ++i) s += terms[i];
        if (error) *error = least;
        return s;
    }

private:
    static AsymTail combine(const AsymTail& a, const AsymTail& b, const T& sb) {
        int depth = std::min(a.depth_, b.depth_);
        std::size_t n = std::max(a.g_.size(), b.g_.size());
        if (depth < kExactDepth) n = std::min<std::size_t>(n, static_cast<std::size_t>(depth));
        std::vector<T> g(n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (i < a.g_.size()) g[i] += a.g_[i];
            if (i < b.g_.size()) g[i] += sb * b.g_[i];
        }
        return AsymTail(std::move(g), depth);
    }

    std::vector<T> g_;
    int depth_ = kExactDepth;
};

/// Drops g_1: X g(X) = g_1 + (T g)(X).
template <class T>
[[nodiscard]] AsymTail<T> shift_T(const AsymTail<T>& g) {
    if (g.coeffs().empty()) return AsymTail<T>({}, g.is_exact() ? kExactDepth : std::max(0, g.depth() - 1));
    std::vector<T> c(g.coeffs().begin() + 1, g.coeffs().end());
    return AsymTail<T>(std::move(c), g.is_exact() ? kExactDepth : std::max(0, g.depth() - 1));
}

template <class U, class T>
[[nodiscard]] AsymTail<U> convert_tail(const AsymTail<T>& a) {
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
    return AsymTail<U>(std::move(c), a.depth());
}

}  // namespace cae
