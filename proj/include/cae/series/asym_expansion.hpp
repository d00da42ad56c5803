#pragma once

#include "cae/series/asym_tail.hpp"
#include "cae/series/laurent_poly.hpp"
#include "cae/series/taylor_poly.hpp"

namespace cae {

/// Formal expansion at infinity: polynomial part in X plus an AsymTail.
/// Stored as a Laurent series in w = 1/X; depth is the last known power X^{-depth}.
template <class T>
class AsymExpansion {
public:
    AsymExpansion() = default;
    explicit AsymExpansion(LaurentPoly<T> w) : w_(std::move(w)) {}
    AsymExpansion(const TaylorPoly<T>& poly, const AsymTail<T>& tail) {
        std::vector<T> c;
        int deg = poly.degree();
        for (int k = deg; k >= 0; --k) c.push_back(poly.coeff(k));
        LaurentPoly<T> pw(-std::max(deg, 0), std::move(c));
        if (deg < 0) pw = LaurentPoly<T>();
        w_ = pw + tail.as_laurent_w();
    }
    [[nodiscard]] static AsymExpansion polynomial(const TaylorPoly<T>& poly) { return AsymExpansion(poly, AsymTail<T>::exact({})); }
    [[nodiscard]] static AsymExpansion zero() { return AsymExpansion(); }

    [[nodiscard]] const LaurentPoly<T>& in_w() const noexcept { return w_; }
    [[nodiscard]] int depth() const noexcept { return w_.valid_through(); }
    [[nodiscard]] bool is_exact() const noexcept { return w_.exact(); }
    [[nodiscard]] bool is_zero() const noexcept { return w_.is_zero(); }

    [[nodiscard]] TaylorPoly<T> poly() const {
        std::vector<T> c;
        for (int k = 0; k <= -w_.lowest(); ++k) c.push_back(w_.coeff(-k));
        return TaylorPoly<T>(std::move(c));
    }
    [[nodiscard]] AsymTail<T> tail() const {
        std::vector<T> g;
        int hi = w_.highest();
        if (!w_.exact()) hi = std::min(hi, w_.valid_through());
        for (int m = 1; m <= hi; ++m) g.push_back(w_.coeff(m));
        return AsymTail<T>(std::move(g), w_.valid_through());
    }
    /// Exponent of the leading power of X (degree for a polynomial part, -m for a pure tail).
    [[nodiscard]] int leading_power() const noexcept { return -w_.lowest(); }

    [[nodiscard]] AsymExpansion derivative() const {
        // d/dX sum c_k w^k = sum -k c_k w^{k+1}
        const int lo = w_.lowest();
        const int hi = w_.exact() ? w_.highest() : std::min(w_.highest(), w_.valid_through());
        std::vector<T> c;
        for (int k = lo; k <= hi; ++k) c.push_back(-T(k) * w_.coeff(k));
        int valid = w_.exact() ? kExactDepth : w_.valid_through() + 1;
        if (w_.is_zero()) return AsymExpansion(LaurentPoly<T>(0, {}, valid));
        return AsymExpansion(LaurentPoly<T>(lo + 1, std::move(c), valid));
    }
    /// Multiplies by X^j (j may be negative).
    [[nodiscard]] AsymExpansion times_X_power(int j) const { return AsymExpansion(w_.times_power(-j)); }
    [[nodiscard]] AsymExpansion truncated(int depth) const { return AsymExpansion(w_.truncated(depth)); }

    friend AsymExpansion operator+(const AsymExpansion& a, const AsymExpansion& b) { return AsymExpansion(a.w_ + b.w_); }
    friend AsymExpansion operator-(const AsymExpansion& a, const AsymExpansion& b) { return AsymExpansion(a.w_ - b.w_); }
    friend AsymExpansion operator*(const AsymExpansion& a, const AsymExpansion& b) { return AsymExpansion(a.w_ * b.w_); }
    friend AsymExpansion operator*(const AsymExpansion& a, const T& s) { return AsymExpansion(a.w_ * s); }
    friend AsymExpansion operator*(const T& s, const AsymExpansion& a) { return AsymExpansion(a.w_ * s); }
    friend bool operator==(const AsymExpansion& a, const AsymExpansion& b) { return a.w_ == b.w_; }

    /// Polynomial part exactly plus optimally truncated tail.
    [[nodiscard]] double eval(double X, double* error = nullptr) const {
        return poly()(X) + tail().optimal_sum(X, error);
    }

private:
    LaurentPoly<T> w_;
};

template <class U, class T>
[[nodiscard]] AsymExpansion<U> convert_expansion(const AsymExpansion<T>& a) {
    return AsymExpansion<U>(convert_laurent<U>(a.in_w()));
}

}  // namespace cae
