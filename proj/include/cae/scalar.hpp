#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <type_traits>

namespace cae {

using Rational = boost::multiprecision::cpp_rational;

template <class T>
inline constexpr bool is_exact_v = std::is_same_v<T, Rational>;

/// Depth value meaning "known to every order".
inline constexpr int kExactDepth = std::numeric_limits<int>::max() / 4;

enum class Sign { minus = -1, plus = 1 };

[[nodiscard]] inline int sign_value(Sign s) noexcept { return s == Sign::minus ? -1 : 1; }
[[nodiscard]] inline const char* sign_name(Sign s) noexcept { return s == Sign::minus ? "-" : "+"; }

template <class T>
[[nodiscard]] inline double to_double(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return v;
    } else {
        return static_cast<double>(v);
    }
}

/// Exact conversion from double; for Rational the binary value is reproduced exactly.
template <class T>
[[nodiscard]] inline T from_double(double v) {
    if constexpr (std::is_same_v<T, double>) {
        return v;
    } else {
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite value has no rational form");
        int e = 0;
        double m = std::frexp(v, &e);
        // 53 bits of mantissa as an integer
        auto mant = static_cast<long long>(std::ldexp(m, 53));
        e -= 53;
        Rational r(mant);
        boost::multiprecision::cpp_int two(1);
        if (e > 0) {
            two <<= e;
            r *= Rational(two);
        } else if (e < 0) {
            two <<= -e;
            r /= Rational(two);
        }
        return r;
    }
}

template <class T>
[[nodiscard]] inline bool is_zero(const T& v) {
    return v == T(0);
}

template <class T>
[[nodiscard]] inline T abs_value(const T& v) {
    return v < T(0) ? T(-v) : v;
}

/// Formats a double with 17 significant digits, locale independent.
[[nodiscard]] std::string format_double(double v);

/// "num/den" for rationals (or "num" when integral); 17 digits for doubles.
[[nodiscard]] std::string format_scalar(const Rational& v);
[[nodiscard]] std::string format_scalar(double v);

/// Parses "a/b", an integer, or a decimal literal into an exact rational.
[[nodiscard]] Rational parse_rational(const std::string& text);

}  // namespace cae
