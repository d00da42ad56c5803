#include "cae/scalar.hpp"

#include "cae/error.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace cae {

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_scalar(double v) { return format_double(v); }

std::string format_scalar(const Rational& v) {
    std::ostringstream os;
    os << numerator(v);
    if (denominator(v) != 1) os << '/' << denominator(v);
    return os.str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty rational literal");
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            boost::multiprecision::cpp_int num(s.substr(0, slash));
            boost::multiprecision::cpp_int den(s.substr(slash + 1));
            if (den == 0) throw InputError("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        // decimal literal with optional exponent, read exactly
        std::string mant = s;
        long exp10 = 0;
        auto e = s.find_first_of("eE");
        if (e != std::string::npos) {
            mant = s.substr(0, e);
            exp10 = std::stol(s.substr(e + 1));
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant = mant.substr(1);
        }
        auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        if (mant.empty() || mant.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("malformed number '" + text + "'");
        boost::multiprecision::cpp_int num(mant);
        boost::multiprecision::cpp_int scale = boost::multiprecision::pow(boost::multiprecision::cpp_int(10), static_cast<unsigned>(std::abs(exp10)));
        Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
        return neg ? Rational(-r) : r;
    } catch (const InputError&) {
        throw;
    } catch (const std::exception&) {
        throw InputError("malformed number '" + text + "'");
    }
}

}  // namespace cae
