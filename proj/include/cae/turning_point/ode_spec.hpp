#pragma once

#include "cae/error.hpp"
#include "cae/scalar.hpp"
#include "cae/series/series_json.hpp"
#include "cae/series/taylor_poly.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace cae {

/// h_{jl} x^j eps^l.
template <class T>
struct HTerm {
    int j = 0;
    int l = 0;
    T c = T(0);
};

/// P_{jkl} x^j y^k eps^l.
template <class T>
struct PTerm {
    int j = 0;
    int k = 0;
    int l = 0;
    T c = T(0);
};

/// eps y' = f(x) y + eps (h(x, eps) + alpha) + y P(x, y, eps) near a turning point of order p-1.
/// alpha is present only when `control` is set; r is the weight of y in the inner scaling y = eta^r Y.
template <class T>
struct ODESpec {
    int p = 2;
    TaylorPoly<T> f;
    std::vector<HTerm<T>> h;
    std::vector<PTerm<T>> P;
    int r = 1;
    bool control = false;

    /// Fills the default f = p x^{p-1}, folds y-linear eps-free P terms into f and checks the invariants.
    void normalize() {
        if (p < 2 || p % 2 != 0) throw InputError("field 'p': must be an even integer >= 2");
        if (r < 0) throw InputError("field 'r': must be >= 0");
        if (f.is_zero()) f = TaylorPoly<T>::monomial(p - 1, T(p));
        std::vector<PTerm<T>> kept;
        for (std::size_t i = 0; i < P.size(); ++i) {
            const auto& t = P[i];
            if (t.j < 0 || t.k < 0 || t.l < 0) throw InputError("field 'P[" + std::to_string(i) + "]': exponents must be >= 0");
            if (t.c == T(0)) continue;
            if (t.k == 0 && t.l == 0) {
                if (t.j < p) throw InputError("field 'P[" + std::to_string(i) + "]': term x^" + std::to_string(t.j) + " y moves the turning point");
                f = f + TaylorPoly<T>::monomial(t.j, t.c);
                continue;
            }
            kept.push_back(t);
        }
        P = std::move(kept);
        for (std::size_t i = 0; i < h.size(); ++i)
            if (h[i].j < 0 || h[i].l < 0) throw InputError("field 'h[" + std::to_string(i) + "]': exponents must be >= 0");
        for (int j = 0; j < p - 1; ++j)
            if (f.coeff(j) != T(0)) throw InputError("field 'f': coefficients below degree p-1 must vanish");
        if (f.coeff(p - 1) != T(p)) throw InputError("field 'f': coefficient of x^{p-1} must equal p");
    }

    /// True when the y-independent forcing and all nonlinear terms vanish.
    [[nodiscard]] bool is_trivial() const {
        for (const auto& t : h)
            if (t.c != T(0)) return false;
        return P.empty() && !control;
    }
};

namespace detail {

inline int json_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError("field '" + where + "': expected an integer");
    return j.get<int>();
}

inline void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw InputError("field '" + (where.empty() ? "" : where + ".") + it.key() + "': unknown key");
}

}  // namespace detail

template <class T>
[[nodiscard]] ODESpec<T> spec_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("spec: expected a JSON object");
    detail::reject_unknown(j, {"p", "f", "h", "P", "r", "control"}, "");
    if (!j.contains("p")) throw InputError("field 'p': missing");
    ODESpec<T> s;
    s.p = detail::json_int(j["p"], "p");
    if (j.contains("f")) s.f = poly_from_json<T>(j["f"], "f");
    if (j.contains("r")) s.r = detail::json_int(j["r"], "r");
    if (j.contains("control")) {
        if (!j["control"].is_boolean()) throw InputError("field 'control': expected true or false");
        s.control = j["control"].get<bool>();
    }
    if (j.contains("h")) {
        if (!j["h"].is_array()) throw InputError("field 'h': expected an array");
        for (std::size_t i = 0; i < j["h"].size(); ++i) {
            const Json& t = j["h"][i];
            const std::string w = "h[" + std::to_string(i) + "]";
            if (!t.is_object()) throw InputError("field '" + w + "': expected an object");
            detail::reject_unknown(t, {"j", "l", "c"}, w);
            for (const char* key : {"j", "l", "c"})
                if (!t.contains(key)) throw InputError("field '" + w + "." + key + "': missing");
            s.h.push_back({detail::json_int(t["j"], w + ".j"), detail::json_int(t["l"], w + ".l"), scalar_from_json<T>(t["c"], w + ".c")});
        }
    }
    if (j.contains("P")) {
        if (!j["P"].is_array()) throw InputError("field 'P': expected an array");
        for (std::size_t i = 0; i < j["P"].size(); ++i) {
            const Json& t = j["P"][i];
            const std::string w = "P[" + std::to_string(i) + "]";
            if (!t.is_object()) throw InputError("field '" + w + "': expected an object");
            detail::reject_unknown(t, {"j", "k", "l", "c"}, w);
            for (const char* key : {"j", "k", "l", "c"})
                if (!t.contains(key)) throw InputError("field '" + w + "." + key + "': missing");
            s.P.push_back({detail::json_int(t["j"], w + ".j"), detail::json_int(t["k"], w + ".k"), detail::json_int(t["l"], w + ".l"),
                           scalar_from_json<T>(t["c"], w + ".c")});
        }
    }
    s.normalize();
    return s;
}

template <class T>
[[nodiscard]] Json spec_to_json(const ODESpec<T>& s) {
    Json j;
    j["p"] = s.p;
    j["f"] = poly_to_json(s.f);
    j["h"] = Json::array();
    for (const auto& t : s.h) j["h"].push_back({{"j", t.j}, {"l", t.l}, {"c", scalar_to_json(t.c)}});
    j["P"] = Json::array();
    for (const auto& t : s.P) j["P"].push_back({{"j", t.j}, {"k", t.k}, {"l", t.l}, {"c", scalar_to_json(t.c)}});
    j["r"] = s.r;
    j["control"] = s.control;
    return j;
}

/// Reads a spec file; JSON syntax errors report the line number.
template <class T>
[[nodiscard]] ODESpec<T> load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        const auto upto = std::min(static_cast<std::size_t>(e.byte), text.size());
        const long line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw InputError(path + ":" + std::to_string(line) + ": JSON syntax error");
    }
    try {
        return spec_from_json<T>(j);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// eps y' = 2xy + eps g(x).
template <class T>
[[nodiscard]] ODESpec<T> linear_spec(int p, const TaylorPoly<T>& g, bool control = false) {
    ODESpec<T> s;
    s.p = p;
    for (int j = 0; j <= g.degree(); ++j)
        if (g.coeff(j) != T(0)) s.h.push_back({j, 0, g.coeff(j)});
    s.control = control;
    s.normalize();
    return s;
}

/// eps y' = 4x^3 y - 4 eps - x y^2.
template <class T>
[[nodiscard]] ODESpec<T> e1_spec() {
    ODESpec<T> s;
    s.p = 4;
    s.h.push_back({0, 0, T(-4)});
    s.P.push_back({1, 1, 0, T(-1)});
    s.normalize();
    return s;
}

}  // namespace cae
