#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/taylor_poly.hpp"

#include <algorithm>
#include <map>
#include <vector>

namespace cae {

/// Truncated Laurent series sum_{m=lo}^{hi} c_m x^m, exact through x^{valid_through}.
/// Coefficients above valid_through are unknown and never stored.
template <class T>
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(int low, std::vector<T> c, int valid_through = kExactDepth)
        : low_(low), c_(std::move(c)), valid_(valid_through) {
        normalize();
    }
    explicit LaurentPoly(const TaylorPoly<T>& a) : LaurentPoly(0, a.coeffs()) {}

    [[nodiscard]] static LaurentPoly monomial(int m, const T& v) { return LaurentPoly(m, {v}); }

    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    /// Lowest exponent with nonzero coefficient (0 for the zero series).
    [[nodiscard]] int lowest() const noexcept { return c_.empty() ? 0 : low_; }
    /// Highest stored exponent (lowest()-1 for zero).
    [[nodiscard]] int highest() const noexcept { return low_ + static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] int valid_through() const noexcept { return valid_; }
    [[nodiscard]] bool exact() const noexcept { return valid_ >= kExactDepth; }
    [[nodiscard]] int pole_order() const noexcept { return c_.empty() ? 0 : std::max(0, -low_); }

    [[nodiscard]] T coeff(int m) const {
        if (m > valid_) throw InputError("coefficient x^" + std::to_string(m) + " lies beyond the known truncation");
        int i = m - low_;
        if (c_.empty() || i < 0 || i >= static_cast<int>(c_.size())) return T(0);
        return c_[static_cast<std::size_t>(i)];
    }

    [[nodiscard]] TaylorPoly<T> regular_part() const {
        std::vector<T> r;
        for (int m = 0; m <= highest(); ++m) r.push_back(coeff(m));
        return TaylorPoly<T>(std::move(r));
    }
    [[nodiscard]] LaurentPoly pole_part() const {
        std::vector<T> r;
        for (int m = lowest(); m < 0; ++m) r.push_back(coeff(m));
        return LaurentPoly(lowest(), std::move(r));
    }

    template <class X>
    [[nodiscard]] X eval(const X& x) const {
        X acc(0);
        X xp(1);
        if (c_.empty()) return acc;
        // x^{low}
        X base(1);
        for (int k = 0; k < std::abs(low_); ++k) base = base * x;
        if (low_ < 0) base = X(1) / base;
        xp = base;
        for (const auto& v : c_) {
            if constexpr (std::is_same_v<X, double>) {
                acc += to_double(v) * xp;
            } else {
                acc += v * xp;
            }
            xp = xp * x;
        }
        return acc;
    }

    [[nodiscard]] LaurentPoly derivative() const {
        std::vector<T> d;
        for (std::size_t i = 0; i < c_.size(); ++i) d.push_back(c_[i] * T(low_ + static_cast<int>(i)));
        return LaurentPoly(low_ - 1, std::move(d), valid_ >= kExactDepth ? kExactDepth : valid_ - 1);
    }

    /// Multiplies by x^k.
    [[nodiscard]] LaurentPoly times_power(int k) const {
        return LaurentPoly(low_ + k, c_, valid_ >= kExactDepth ? kExactDepth : valid_ + k);
    }

    /// Drops coefficients above x^m and marks the result as known through m.
    [[nodiscard]] LaurentPoly truncated(int m) const {
        int v = std::min(valid_, m);
        std::vector<T> c;
        for (int k = lowest(); k <= std::min(highest(), v); ++k) c.push_back(coeff(k));
        return LaurentPoly(lowest(), std::move(c), v);
    }

    LaurentPoly& operator*=(const T& s) {
        for (auto& v : c_) v *= s;
        normalize();
        return *this;
    }
    friend LaurentPoly operator*(LaurentPoly a, const T& s) { return a *= s; }
    friend LaurentPoly operator*(const T& s, LaurentPoly a) { return a *= s; }
    friend LaurentPoly operator-(LaurentPoly a) { return a *= T(-1); }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) { return add(a, b, T(1)); }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return add(a, b, T(-1)); }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        int valid = kExactDepth;
        if (a.is_zero() && a.exact()) return {};
        if (b.is_zero() && b.exact()) return {};
        if (!a.exact()) valid = std::min(valid, a.valid_ + (b.is_zero() ? b.valid_ + 1 : b.low_));
        if (!b.exact()) valid = std::min(valid, b.valid_ + (a.is_zero() ? a.valid_ + 1 : a.low_));
        if (a.is_zero() || b.is_zero()) return LaurentPoly(0, {}, valid);
        int low = a.low_ + b.low_;
        int hi = a.highest() + b.highest();
        if (valid < kExactDepth) hi = std::min(hi, valid);
        if (hi < low) return LaurentPoly(0, {}, valid);
        std::vector<T> c(static_cast<std::size_t>(hi - low + 1), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == T(0)) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                int m = low + static_cast<int>(i + j);
                if (m > hi) break;
                c[static_cast<std::size_t>(m - low)] += a.c_[i] * b.c_[j];
            }
        }
        return LaurentPoly(low, std::move(c), valid);
    }

    /// Quotient by a polynomial f = x^d u(x), u(0) != 0. Non-monomial divisors expand 1/u
    /// and the result is known through x^{max_degree}.
    [[nodiscard]] LaurentPoly divided_by(const TaylorPoly<T>& f, int max_degree) const {
        if (f.is_zero()) throw InputError("division by the zero polynomial");
        int d = 0;
        while (f.coeff(d) == T(0)) ++d;
        if (f.degree() == d) {
            T inv = T(1) / f.coeff(d);
            return times_power(-d) * inv;
        }
        // 1/u as a power series
        const T u0 = f.coeff(d);
        int need = max_degree - (lowest() - d);
        if (need < 0) need = 0;
        std::vector<T> inv(static_cast<std::size_t>(need) + 1, T(0));
        inv[0] = T(1) / u0;
        for (int k = 1; k <= need; ++k) {
            T s(0);
            for (int j = 1; j <= k; ++j) s += f.coeff(d + j) * inv[static_cast<std::size_t>(k - j)];
            inv[static_cast<std::size_t>(k)] = -s / u0;
        }
        LaurentPoly uinv(0, std::move(inv), need);
        return (times_power(-d) * uinv).truncated(max_degree);
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        return a.lowest() == b.lowest() && a.c_ == b.c_ && a.valid_ == b.valid_;
    }

private:
    static LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b, const T& sb) {
        int valid = std::min(a.valid_, b.valid_);
        if (a.is_zero() && b.is_zero()) return LaurentPoly(0, {}, valid);
        int low = std::min(a.is_zero() ? b.low_ : a.low_, b.is_zero() ? a.low_ : b.low_);
        int hi = std::max(a.highest(), b.highest());
        if (valid < kExactDepth) hi = std::min(hi, valid);
        std::vector<T> c;
        for (int m = low; m <= hi; ++m) {
            T v(0);
            if (!a.is_zero() && m >= a.low_ && m <= a.highest()) v += a.c_[static_cast<std::size_t>(m - a.low_)];
            if (!b.is_zero() && m >= b.low_ && m <= b.highest()) v += sb * b.c_[static_cast<std::size_t>(m - b.low_)];
            c.push_back(v);
        }
        return LaurentPoly(low, std::move(c), valid);
    }

    void normalize() {
        if (valid_ < kExactDepth) {
            int keep = valid_ - low_ + 1;
            if (keep < 0) keep = 0;
            if (static_cast<int>(c_.size()) > keep) c_.resize(static_cast<std::size_t>(keep));
        }
        while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == T(0)) ++lead;
        if (lead > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
            low_ += static_cast<int>(lead);
        }
        if (c_.empty()) low_ = 0;
    }

    int low_ = 0;
    std::vector<T> c_;
    int valid_ = kExactDepth;
};

template <class U, class T>
[[nodiscard]] LaurentPoly<U> convert_laurent(const LaurentPoly<T>& a) {
    std::vector<U> c;
    for (int m = a.lowest(); m <= a.highest(); ++m) {
        if constexpr (std::is_same_v<U, double>) {
            c.push_back(to_double(a.coeff(m)));
        } else if constexpr (std::is_same_v<T, double>) {
            c.push_back(from_double<U>(a.coeff(m)));
        } else {
            c.push_back(U(a.coeff(m)));
        }
    }
    return LaurentPoly<U>(a.lowest(), std::move(c), a.valid_through());
}

}  // namespace cae
