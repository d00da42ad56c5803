#pragma once

#include "cae/series/combined_series.hpp"

#include <json.hpp>

#include <string>

namespace cae {

using Json = nlohmann::json;

template <class T>
[[nodiscard]] Json scalar_to_json(const T& v) {
    if constexpr (is_exact_v<T>) {
        return format_scalar(v);
    } else {
        return v;
    }
}

template <class T>
[[nodiscard]] T scalar_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        Rational r = parse_rational(j.get<std::string>());
        if constexpr (is_exact_v<T>) {
            return r;
        } else {
            return to_double(r);
        }
    }
    if (!j.is_number()) throw InputError(where + ": expected a number or \"num/den\" string");
    if constexpr (is_exact_v<T>) {
        if (j.is_number_integer()) return Rational(j.get<long long>());
        return from_double<Rational>(j.get<double>());
    } else {
        return j.get<double>();
    }
}

template <class T>
[[nodiscard]] Json poly_to_json(const TaylorPoly<T>& a) {
    Json out = Json::array();
    for (const auto& v : a.coeffs()) out.push_back(scalar_to_json(v));
    return out;
}

template <class T>
[[nodiscard]] TaylorPoly<T> poly_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected an array");
    std::vector<T> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(scalar_from_json<T>(j[i], where + "[" + std::to_string(i) + "]"));
    return TaylorPoly<T>(std::move(c));
}

/// {p, N, slow: [[c0..]], fast: [{tail, depth, basis}], log: {residues, kernel_p}}
template <class T>
[[nodiscard]] Json to_json(const CombinedSeries<T>& y) {
    Json j;
    j["p"] = y.p();
    j["N"] = y.N();
    j["slow"] = Json::array();
    j["fast"] = Json::array();
    for (int n = 0; n < y.N(); ++n) {
        j["slow"].push_back(poly_to_json(y.slow(n)));
        const auto& f = y.fast(n);
        Json fj;
        fj["tail"] = Json::array();
        for (const auto& v : f.tail.coeffs()) fj["tail"].push_back(scalar_to_json(v));
        if (f.tail.is_exact()) {
            fj["depth"] = "exact";
        } else {
            fj["depth"] = f.tail.depth();
        }
        fj["basis"] = Json::array();
        for (const auto& b : f.basis) {
            Json bj;
            switch (b.kind) {
                case BasisTerm<T>::Kind::U:
                    bj["kind"] = "U";
                    bj["k"] = b.k;
                    bj["sigma"] = sign_name(b.sigma);
                    bj["coeff"] = scalar_to_json(b.coeff);
                    break;
                case BasisTerm<T>::Kind::dawson:
                    bj["kind"] = "dawson";
                    bj["coeff"] = scalar_to_json(b.coeff);
                    break;
                case BasisTerm<T>::Kind::exp_poly:
                    bj["kind"] = "exp_poly";
                    bj["poly"] = poly_to_json(b.poly);
                    break;
            }
            fj["basis"].push_back(bj);
        }
        j["fast"].push_back(fj);
    }
    if (y.log()) {
        Json lj;
        lj["residues"] = Json::array();
        for (const auto& r : y.log()->residues) lj["residues"].push_back(scalar_to_json(r));
        lj["kernel_p"] = y.log()->kernel_p;
        j["log"] = lj;
    }
    return j;
}

template <class T>
[[nodiscard]] CombinedSeries<T> series_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("series: expected an object");
    for (const char* key : {"p", "N", "slow", "fast"})
        if (!j.contains(key)) throw InputError(std::string("series: missing field '") + key + "'");
    CombinedSeries<T> y(j["p"].get<int>(), j["N"].get<int>());
    if (j["slow"].size() != static_cast<std::size_t>(y.N()) || j["fast"].size() != static_cast<std::size_t>(y.N()))
        throw InputError("series: slow/fast arrays must have N entries");
    for (int n = 0; n < y.N(); ++n) {
        const std::string at = "[" + std::to_string(n) + "]";
        y.slow(n) = poly_from_json<T>(j["slow"][static_cast<std::size_t>(n)], "slow" + at);
        const Json& fj = j["fast"][static_cast<std::size_t>(n)];
        std::vector<T> g;
        for (std::size_t m = 0; m < fj.at("tail").size(); ++m) g.push_back(scalar_from_json<T>(fj["tail"][m], "fast" + at + ".tail"));
        int depth = static_cast<int>(g.size());
        if (fj.contains("depth")) depth = fj["depth"].is_string() ? kExactDepth : fj["depth"].get<int>();
        FastFn<T> f(AsymTail<T>(std::move(g), depth));
        if (fj.contains("basis")) {
            for (const auto& bj : fj["basis"]) {
                BasisTerm<T> b;
                const std::string kind = bj.at("kind").get<std::string>();
                if (kind == "U") {
                    b.kind = BasisTerm<T>::Kind::U;
                    b.k = bj.at("k").get<int>();
                    b.sigma = bj.at("sigma").get<std::string>() == "-" ? Sign::minus : Sign::plus;
                    b.coeff = scalar_from_json<T>(bj.at("coeff"), "basis.coeff");
                } else if (kind == "dawson") {
                    b.kind = BasisTerm<T>::Kind::dawson;
                    b.coeff = scalar_from_json<T>(bj.at("coeff"), "basis.coeff");
                } else if (kind == "exp_poly") {
                    b.kind = BasisTerm<T>::Kind::exp_poly;
                    b.poly = poly_from_json<T>(bj.at("poly"), "basis.poly");
                } else {
                    throw InputError("fast" + at + ": unknown basis kind '" + kind + "'");
                }
                f.basis.push_back(b);
            }
        }
        y.fast(n) = f;
    }
    if (j.contains("log")) {
        LogComponent<T> l;
        l.kernel_p = j["log"].at("kernel_p").get<int>();
        for (const auto& r : j["log"].at("residues")) l.residues.push_back(scalar_from_json<T>(r, "log.residues"));
        y.set_log(l);
    }
    return y;
}

}  // namespace cae
