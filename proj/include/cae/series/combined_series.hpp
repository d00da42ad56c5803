#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/asym_tail.hpp"
#include "cae/series/evaluator.hpp"
#include "cae/series/taylor_poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cae {

/// Symbolic building block of a fast coefficient.
template <class T>
struct BasisTerm {
    enum class Kind { U, dawson, exp_poly };
    Kind kind = Kind::U;
    int k = 1;               ///< index of U_k (kind U)
    Sign sigma = Sign::minus;
    T coeff = T(1);          ///< multiplier (kinds U and dawson)
    TaylorPoly<T> poly;      ///< e^{-X^p} poly(X) (kind exp_poly)

    friend bool operator==(const BasisTerm& a, const BasisTerm& b) {
        return a.kind == b.kind && a.k == b.k && a.sigma == b.sigma && a.coeff == b.coeff && a.poly == b.poly;
    }
};

/// Fast coefficient g_n: asymptotic tail, optional evaluator, optional symbolic basis.
template <class T>
struct FastFn {
    AsymTail<T> tail = AsymTail<T>::exact({});
    std::optional<Evaluator> evaluator;
    std::vector<BasisTerm<T>> basis;

    FastFn() = default;
    explicit FastFn(AsymTail<T> t, std::optional<Evaluator> e = std::nullopt, std::vector<BasisTerm<T>> b = {})
        : tail(std::move(t)), evaluator(std::move(e)), basis(std::move(b)) {}

    [[nodiscard]] bool is_zero() const { return tail.is_zero() && !evaluator && basis.empty(); }
};

/// eta * R(eta) * l(x/eta) with l(X) = (1/p) log(X^p + 1); residues[n] multiplies eta^n.
template <class T>
struct LogComponent {
    std::vector<T> residues;
    int kernel_p = 2;

    [[nodiscard]] bool is_zero() const {
        for (const auto& r : residues)
            if (r != T(0)) return false;
        return true;
    }
};

/// sum_{n<N} (a_n(x) + g_n(x/eta)) eta^n with eps = eta^p.
template <class T>
class CombinedSeries {
public:
    CombinedSeries() = default;
    CombinedSeries(int p, int N) : p_(p), N_(N), slow_(static_cast<std::size_t>(N)), fast_(static_cast<std::size_t>(N)) {
        if (p < 1) throw InputError("root power p must be >= 1");
        if (N < 0) throw InputError("truncation order must be >= 0");
    }

    [[nodiscard]] int p() const noexcept { return p_; }
    [[nodiscard]] int N() const noexcept { return N_; }

    [[nodiscard]] const TaylorPoly<T>& slow(int n) const { return slow_.at(static_cast<std::size_t>(n)); }
    [[nodiscard]] TaylorPoly<T>& slow(int n) { return slow_.at(static_cast<std::size_t>(n)); }
    [[nodiscard]] const FastFn<T>& fast(int n) const { return fast_.at(static_cast<std::size_t>(n)); }
    [[nodiscard]] FastFn<T>& fast(int n) { return fast_.at(static_cast<std::size_t>(n)); }

    [[nodiscard]] const std::optional<LogComponent<T>>& log() const noexcept { return log_; }
    void set_log(std::optional<LogComponent<T>> l) { log_ = std::move(l); }

    /// Smallest n with a nonzero coefficient; N when all vanish.
    [[nodiscard]] int valuation() const {
        for (int n = 0; n < N_; ++n)
            if (!slow(n).is_zero() || !fast(n).is_zero()) return n;
        return N_;
    }

    /// Same series cut at order M <= N.
    [[nodiscard]] CombinedSeries truncated(int M) const {
        if (M > N_) throw InputError("cannot extend a truncated series");
        CombinedSeries out(p_, M);
        for (int n = 0; n < M; ++n) {
            out.slow(n) = slow(n);
            out.fast(n) = fast(n);
        }
        if (log_) {
            LogComponent<T> l = *log_;
            l.residues.resize(static_cast<std::size_t>(M), T(0));
            out.log_ = l;
        }
        return out;
    }

private:
    int p_ = 1;
    int N_ = 0;
    std::vector<TaylorPoly<T>> slow_;
    std::vector<FastFn<T>> fast_;
    std::optional<LogComponent<T>> log_;
};

}  // namespace cae
