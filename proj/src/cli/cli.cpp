#include "cae/cli/cli.hpp"

#include "cae/canard/canard.hpp"
#include "cae/gevrey/gevrey.hpp"
#include "cae/resonance/resonance.hpp"
#include "cae/series/series_json.hpp"
#include "cae/special/special.hpp"
#include "cae/turning_point/matching.hpp"
#include "cae/turning_point/outer.hpp"
#include "cae/validation/ode.hpp"
#include "cae/validation/validation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#ifndef CAE_VERSION
#define CAE_VERSION "0.0.0"
#endif

namespace cae::cli {

namespace {

/// A usage-level failure that should exit with code 1.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The computation ran but its verdict is negative (exit 2).
struct FailedVerdict : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* b = s.data();
    const char* e = b + s.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    if (b < e && *b == '+') ++b;
    const auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e) throw UsageError("not a number: '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Sign parse_sigma(const std::string& s) {
    if (s == "-" || s == "minus") return Sign::minus;
    if (s == "+" || s == "plus") return Sign::plus;
    throw UsageError("sigma must be '-' or '+', got '" + s + "'");
}

Json laurent_json(int n, const LaurentPoly<double>& c) {
    Json j;
    j["n"] = n;
    j["low"] = c.lowest();
    Json a = Json::array();
    if (!c.is_zero())
        for (int m = c.lowest(); m <= c.highest(); ++m) a.push_back(c.coeff(m));
    j["coeffs"] = a;
    j["pole_order"] = c.pole_order();
    return j;
}

Json laurent_json(int n, const LaurentPoly<Rational>& c) {
    Json j;
    j["n"] = n;
    j["low"] = c.lowest();
    Json a = Json::array();
    if (!c.is_zero())
        for (int m = c.lowest(); m <= c.highest(); ++m) a.push_back(format_scalar(c.coeff(m)));
    j["coeffs"] = a;
    j["pole_order"] = c.pole_order();
    return j;
}

struct Output {
    std::string path;
    bool stamp = false;
    std::ostream* out = nullptr;

    void json(Json j) const {
        if (stamp) j["stamp"] = {{"version", std::string("cae ") + CAE_VERSION}};
        write(j.dump(2) + "\n");
    }
    void csv(const std::string& text) const {
        write(text);
        if (stamp && !path.empty()) {
            const Json s = {{"version", std::string("cae ") + CAE_VERSION}};
            std::ofstream f(path + ".stamp.json");
            if (!f) throw UsageError("cannot write " + path + ".stamp.json");
            f << s.dump(2) << "\n";
        }
    }
    void write(const std::string& text) const {
        if (path.empty()) {
            *out << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError("cannot write " + path);
        f << text;
        if (!f) throw UsageError("write failed: " + path);
    }
};

/// Copies with negative zeros turned into zeros, so outputs do not print "-0.0".
std::vector<double> tidy(std::vector<double> v) {
    for (double& x : v) x += 0.0;
    return v;
}

/// Forcing h(x, eps) + alpha at fixed eps.
double forcing(const ODESpec<double>& s, double x, double eps, double alpha) {
    double v = alpha;
    for (const auto& t : s.h) v += t.c * std::pow(x, t.j) * std::pow(eps, t.l);
    return v;
}

/// Reference values of the solution bounded on the sigma side at the grid points.
std::vector<double> reference_solution(const ODESpec<double>& s, double eps, double alpha, const std::vector<double>& xs, Sign sigma,
                                       const std::vector<double>& alpha_eta) {
    std::vector<double> out(xs.size());
    if (s.P.empty()) {
        const TaylorPoly<double> F = s.f.antiderivative();
        for (std::size_t i = 0; i < xs.size(); ++i)
            out[i] = bounded_solution_quadrature(F, [&](double t) { return forcing(s, t, eps, alpha); }, eps, xs[i], sigma);
        return out;
    }
    // nonlinear: start on the outer expansion away from the turning point and step towards it
    const int p = s.p;
    const double eta = std::pow(eps, 1.0 / p);
    const OuterExpansion<double> outer = outer_expansion(s, 4, alpha_eta);
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    const double x0 = sigma == Sign::minus ? *lo - 1.0 : *hi + 1.0;
    double y0 = 0.0, en = 1.0;
    for (int n = 0; n < outer.eta_orders(); ++n, en *= eta) y0 += outer.c(n).eval(x0) * en;
    auto rhs = [&s, eps, alpha](double x, const OdeState& y, OdeState& dy) {
        double nl = 0.0;
        for (const auto& t : s.P) nl += t.c * std::pow(x, t.j) * std::pow(y[0], t.k) * std::pow(eps, t.l);
        dy[0] = (s.f(x) * y[0] + eps * forcing(s, x, eps, alpha) + y[0] * nl) / eps;
    };
    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sigma == Sign::minus ? xs[a] < xs[b] : xs[a] > xs[b]; });
    OdeOptions opt;
    opt.rtol = 1e-12;
    opt.atol = 1e-14;
    opt.blowup_cap = 1e12;
    OdeStepper stepper(rhs, x0, {y0}, opt);
    for (std::size_t i : order) {
        if (!stepper.advance_to(xs[i]))
            throw NumericalError("reference solution blows up near x = " + format_double(stepper.t()));
        out[i] = stepper.y()[0];
    }
    return out;
}

// ----------------------------------------------------------------------------------------------
// subcommands

struct ExpandArgs {
    std::string spec;
    int order = 2;
    std::string sigma = "-";
    bool exact = false;
};

template <class T>
Json outer_json(const OuterExpansion<T>& outer) {
    Json a = Json::array();
    for (int n = 0; n < outer.eta_orders(); ++n)
        if (!outer.c(n).is_zero()) a.push_back(laurent_json(n, outer.c(n)));
    return a;
}

Json verdict_json(const FeasibilityVerdict& v, int p) {
    Json j;
    j["pass"] = v.pass;
    j["message"] = v.message;
    if (!v.pass) {
        j["n"] = v.n;
        j["pole_order"] = v.pole_order;
        j["eps_order"] = v.eps_order(p);
    }
    return j;
}

void cmd_expand(const ExpandArgs& a, const Output& o, std::ostream& err) {
    if (a.order < 1) throw UsageError("--order must be >= 1");
    const Sign sigma = parse_sigma(a.sigma);
    Json j;
    j["command"] = "expand";
    j["order"] = a.order;
    if (a.exact) {
        const ODESpec<Rational> s = load_spec<Rational>(a.spec);
        if (s.control) throw UsageError("a spec with a control needs floating-point mode");
        const OuterExpansion<Rational> outer = outer_expansion(s, a.order);
        const FeasibilityVerdict v = dac_feasibility(outer);
        j["p"] = s.p;
        j["mode"] = "exact";
        j["feasibility"] = verdict_json(v, s.p);
        j["outer"] = outer_json(outer);
        o.json(j);
        if (!v.pass) {
            err << "infeasible: " << v.message << "\n";
            throw FailedVerdict(v.message);
        }
        return;
    }
    const ODESpec<double> s = load_spec<double>(a.spec);
    std::vector<double> alpha_eta;
    if (s.control) alpha_eta = inner_control_series(s, a.order + 1).alpha_eta;
    const OuterExpansion<double> outer = outer_expansion(s, a.order, alpha_eta);
    const FeasibilityVerdict v = dac_feasibility(outer);
    j["p"] = s.p;
    j["mode"] = "float";
    j["feasibility"] = verdict_json(v, s.p);
    j["outer"] = outer_json(outer);
    if (s.control) j["alpha_eta"] = tidy(alpha_eta);
    if (!v.pass) {
        o.json(j);
        err << "infeasible: " << v.message << "\n";
        throw FailedVerdict(v.message);
    }
    const CombinedSeries<double> y = combined_from_matching(s, s.p * a.order + 1, sigma, alpha_eta);
    j["sigma"] = sign_name(sigma);
    j["series"] = to_json(y);
    o.json(j);
}

struct ValidateArgs {
    std::string spec;
    std::string orders = "1,2,3,4";
    std::string eps = "0.1,0.05,0.025";
    std::string xgrid = "-1:0:64";
    std::string sigma = "-";
};

void cmd_validate(const ValidateArgs& a, const Output& o, std::ostream& err) {
    const std::vector<int> orders = parse_int_list(a.orders);
    const std::vector<double> eps = parse_double_list(a.eps);
    const std::vector<double> xs = parse_grid(a.xgrid);
    const Sign sigma = parse_sigma(a.sigma);
    for (int N : orders)
        if (N < 1) throw UsageError("orders must be >= 1");
    const ODESpec<double> s = load_spec<double>(a.spec);
    const int Nmax = *std::max_element(orders.begin(), orders.end());
    std::vector<double> alpha_eta;
    std::optional<ControlSeries> control;
    if (s.control) {
        control = inner_control_series(s, outer_eps_orders(s.p, Nmax) + 1);
        alpha_eta = control->alpha_eta;
    }
    const CombinedSeries<double> y = combined_from_matching(s, Nmax, sigma, alpha_eta);

    std::vector<std::vector<double>> truth(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) {
        truth[i] = reference_solution(s, eps[i], control ? control->value(eps[i]) : 0.0, xs, sigma, alpha_eta);
    });
    std::map<double, std::size_t> index;
    for (std::size_t i = 0; i < eps.size(); ++i) index[eps[i]] = i;
    std::map<double, std::size_t> xi;
    for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = i;
    auto lookup = [&](double x, double e) { return truth[index.at(e)][xi.at(x)]; };

    std::ostringstream csv;
    csv << "N,eps,sup_error,slope\n";
    bool failed = false;
    for (int N : orders) {
        const ErrorTable t = error_scaling(y, lookup, eps, xs, N);
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            csv << N << "," << format_double(t.rows[r].eps) << "," << format_double(t.rows[r].sup_error) << ",";
            if (r + 1 == t.rows.size()) csv << (t.degenerate ? std::string("degenerate") : format_double(t.slope));
            csv << "\n";
        }
        if (t.degenerate) {
            err << "N=" << N << ": errors at rounding level, slope not determined\n";
        } else if (!t.pass()) {
            err << "N=" << N << ": slope " << format_double(t.slope) << " below " << N << " - 0.3\n";
            failed = true;
        }
    }
    o.csv(csv.str());
    if (failed) throw FailedVerdict("error scaling below the expected order");
}

struct SpecialArgs {
    int p = 2;
    int k = 1;
    std::string sigma = "-";
    std::string x = "0";
    int depth = 5;
    bool exact = false;
};

void cmd_special_U(const SpecialArgs& a, const Output& o) {
    const Sign sigma = parse_sigma(a.sigma);
    Json vals = Json::array();
    for (double X : parse_double_list(a.x)) vals.push_back({{"X", X}, {"value", eval_U(a.p, a.k, sigma, X)}});
    o.json({{"function", "U"}, {"p", a.p}, {"k", a.k}, {"sigma", sign_name(sigma)}, {"values", vals}});
}

void cmd_special_dawson(const SpecialArgs& a, const Output& o) {
    Json vals = Json::array();
    for (double X : parse_double_list(a.x)) vals.push_back({{"X", X}, {"value", eval_dawson(X)}});
    o.json({{"function", "dawson"}, {"values", vals}});
}

void cmd_special_tail(const SpecialArgs& a, const Output& o) {
    const Sign sigma = parse_sigma(a.sigma);
    if (a.depth < 1) throw UsageError("--depth must be >= 1");
    Json c = Json::array();
    if (a.exact) {
        const auto J = tail_of_J<Rational>(a.p, sigma, AsymExpansion<Rational>::polynomial(TaylorPoly<Rational>{Rational(1)}), a.depth);
        for (int m = 1; m <= a.depth; ++m) c.push_back(format_scalar(J.tail().coeff(m)));
    } else {
        const auto J = tail_of_J<double>(a.p, sigma, AsymExpansion<double>::polynomial(TaylorPoly<double>{1.0}), a.depth);
        for (int m = 1; m <= a.depth; ++m) c.push_back(J.tail().coeff(m));
    }
    o.json({{"function", "tail_of_J"}, {"p", a.p}, {"sigma", sign_name(sigma)}, {"v", "1"}, {"coeffs", c}});
}

struct GevreyArgs {
    std::string coeffs;
    int p = 2;
    double rho = 0.9;
    double eta = 0.3;
};

void cmd_gevrey_fit(const GevreyArgs& a, const Output& o) {
    std::vector<double> norms;
    for (double v : read_coefficients(a.coeffs)) norms.push_back(std::abs(v));
    const GevreyFit f = gevrey_fit(norms, a.p);
    o.json({{"inv_order", f.inv_order},
            {"C", f.C},
            {"L1", f.L1},
            {"residual", f.residual},
            {"trend", f.trend},
            {"fitted_inv_order", f.fitted_inv_order},
            {"sub_gevrey", f.sub_gevrey},
            {"degenerate", f.degenerate},
            {"points", f.points},
            {"note", f.note}});
}

void cmd_gevrey_borel(const GevreyArgs& a, const Output& o) {
    const std::vector<double> c = read_coefficients(a.coeffs);
    const double v = borel_laplace_truncated(c, a.p, a.rho, a.eta);
    const LeastTermSum l = least_term_sum(c, a.eta);
    o.json({{"value", v},
            {"rho", a.rho},
            {"eta", a.eta},
            {"least_term", {{"n_star", l.n_star}, {"least_term", l.least_term}, {"sum", l.sum}}}});
}

struct CanardArgs {
    double tol = 1e-10;
    double x_far = 10.0;
    bool mirror = false;
    std::string eps = "0.01,0.02,0.04";
    std::string spec;
    int order = 2;
};

void cmd_unionjack(const CanardArgs& a, const Output& o) {
    const ConnectionResult r = union_jack_c0(a.tol, a.x_far, a.mirror ? UnionJackBranch::minus : UnionJackBranch::plus);
    o.json({{"value", r.value},
            {"branch", a.mirror ? "minus" : "plus"},
            {"tol", a.tol},
            {"iterations", r.iterations},
            {"x_far", r.x_far},
            {"residuals", {{"anchor", r.anchor_residual}}}});
}

void cmd_angular(const CanardArgs& a, const Output& o) {
    const std::vector<double> eps = parse_double_list(a.eps);
    std::vector<ConnectionResult> res(eps.size());
    parallel_for(eps.size(), [&](std::size_t i) { res[i] = angular_canard_value(eps[i], 1e-15, a.x_far); });
    Json vals = Json::array();
    for (std::size_t i = 0; i < eps.size(); ++i)
        vals.push_back({{"eps", eps[i]}, {"c", res[i].value}, {"iterations", res[i].iterations}, {"residuals", {{"anchor", res[i].anchor_residual}}}});
    o.json({{"values", vals}, {"t_far", a.x_far}});
}

void cmd_criterion(const CanardArgs& a, const Output& o) {
    if (a.order < 1) throw UsageError("--order must be >= 1");
    const ODESpec<double> s = load_spec<double>(a.spec);
    const ControlSeries c = canard_control_series(s, a.order);
    Json j{{"p", s.p}, {"order", a.order}, {"alpha_eta", tidy(c.alpha_eta)}, {"moments", tidy(c.moments)}};
    try {
        Json e = Json::array();
        for (int n = 0; n < a.order; ++n) e.push_back(c.eps_coeff(n) + 0.0);
        j["alpha_eps"] = e;
    } catch (const InputError&) {
        j["alpha_eps"] = nullptr;
    }
    o.json(j);
}

struct ResonanceArgs {
    std::string alpha = "1";
    std::string beta = "0";
    int p = 2;
    std::string grid = "-10,-5,-3,3,5,10";
};

void cmd_resonance(const ResonanceArgs& a, const Output& o) {
    const ResonanceCase<Rational> q{parse_rational(a.alpha), parse_rational(a.beta), a.p};
    const bool ok = condition_check(q);
    Json j{{"alpha", format_scalar(q.alpha)}, {"beta", format_scalar(q.beta)}, {"p", a.p}, {"D", format_scalar(q.D())}, {"condition", ok}};
    if (!ok) {
        j["Z0"] = nullptr;
        j["riccati_residual"] = nullptr;
        o.json(j);
        return;
    }
    const TaylorPoly<Rational> Z = z0_polynomial(q);
    Json z = Json::array();
    for (const auto& c : Z.coeffs()) z.push_back(format_scalar(c));
    j["Z0"] = z;
    const RiccatiCheck r = riccati_leading_check({to_double(q.alpha), to_double(q.beta), a.p}, parse_grid(a.grid));
    j["riccati_residual"] = r.max_residual;
    j["grid_used"] = r.used;
    j["notes"] = r.notes;
    o.json(j);
}

}  // namespace

// ----------------------------------------------------------------------------------------------

unsigned thread_count() {
    if (const char* env = std::getenv("CAE_THREADS")) {
        const std::string s(env);
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
        throw InputError("CAE_THREADS must be a positive integer, got '" + s + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const auto& s : split(text, ',')) out.push_back(parse_double(s));
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (const auto& s : split(text, ',')) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw UsageError("not an integer: '" + s + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    if (text.find(':') == std::string::npos) return parse_double_list(text);
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("grid must be lo:hi:n, got '" + text + "'");
    const std::vector<int> n = parse_int_list(parts[2]);
    if (n[0] < 1) throw UsageError("grid needs at least one point");
    return linspace(parse_double(parts[0]), parse_double(parts[1]), n[0]);
}

std::vector<double> read_coefficients(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open " + path);
    std::vector<double> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        try {
            if (cells.size() == 1) {
                out.push_back(parse_double(cells[0]));
            } else if (cells.size() == 2) {
                const double n = parse_double(cells[0]);
                if (n < 0 || n != std::floor(n) || n > 1e7) throw UsageError("bad index");
                const auto k = static_cast<std::size_t>(n);
                if (out.size() <= k) out.resize(k + 1, 0.0);
                out[k] = parse_double(cells[1]);
            } else {
                throw UsageError("expected one or two columns");
            }
        } catch (const UsageError& e) {
            if (lineno == 1 && out.empty()) continue;  // header
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    if (out.empty()) throw UsageError(path + ": no coefficients");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Combined asymptotic expansions at turning points", "cae"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("cae ") + CAE_VERSION);
    Output o;
    o.out = &out;
    app.add_flag("--stamp", o.stamp, "Add a version stamp (JSON field or CSV sidecar)");

    std::function<void()> action;

    ExpandArgs ea;
    auto* expand = app.add_subcommand("expand", "Outer/inner expansion, feasibility and combined series of a spec");
    expand->add_option("--spec", ea.spec, "ODE spec (JSON)")->required();
    expand->add_option("--order", ea.order, "Number of eps-orders");
    expand->add_option("--sigma", ea.sigma, "Side of boundedness: - or +");
    expand->add_flag("--exact", ea.exact, "Exact rational arithmetic (outer expansion only)");
    expand->add_option("--out", o.path, "Output file (default stdout)");
    expand->callback([&] { action = [&] { cmd_expand(ea, o, err); }; });

    ValidateArgs va;
    auto* validate = app.add_subcommand("validate", "Error scaling of combined partial sums against a reference solution");
    validate->add_option("--spec", va.spec, "ODE spec (JSON)")->required();
    validate->add_option("--orders", va.orders, "Comma list of truncation orders N (eta-powers)");
    validate->add_option("--eps", va.eps, "Comma list of decreasing eps values");
    validate->add_option("--xgrid", va.xgrid, "lo:hi:n or comma list");
    validate->add_option("--sigma", va.sigma, "Side of boundedness: - or +");
    validate->add_option("--out", o.path, "Output CSV (default stdout)");
    validate->callback([&] { action = [&] { cmd_validate(va, o, err); }; });

    SpecialArgs sa;
    auto* special = app.add_subcommand("special", "Special functions");
    special->require_subcommand(1);
    auto* su = special->add_subcommand("U", "U_k^sigma(X) for p");
    su->add_option("--p", sa.p);
    su->add_option("--k", sa.k);
    su->add_option("--sigma", sa.sigma);
    su->add_option("--x", sa.x, "Comma list of X values")->required();
    su->add_option("--out", o.path);
    su->callback([&] { action = [&] { cmd_special_U(sa, o); }; });
    auto* sd = special->add_subcommand("dawson", "Dawson function");
    sd->add_option("--x", sa.x, "Comma list of X values")->required();
    sd->add_option("--out", o.path);
    sd->callback([&] { action = [&] { cmd_special_dawson(sa, o); }; });
    auto* st = special->add_subcommand("tail", "Asymptotic tail of J(1) for p");
    st->add_option("--p", sa.p);
    st->add_option("--sigma", sa.sigma);
    st->add_option("--depth", sa.depth);
    st->add_flag("--exact", sa.exact);
    st->add_option("--out", o.path);
    st->callback([&] { action = [&] { cmd_special_tail(sa, o); }; });

    GevreyArgs ga;
    auto* gevrey = app.add_subcommand("gevrey", "Gevrey fits and truncated Borel-Laplace sums");
    gevrey->require_subcommand(1);
    auto* gf = gevrey->add_subcommand("fit", "Fit C, L1 of |a_n| <= C L1^n Gamma(n/p+1)");
    gf->add_option("--coeffs", ga.coeffs, "CSV of coefficients")->required();
    gf->add_option("--p", ga.p);
    gf->add_option("--out", o.path);
    gf->callback([&] { action = [&] { cmd_gevrey_fit(ga, o); }; });
    auto* gb = gevrey->add_subcommand("borel", "Truncated Borel-Laplace sum and least-term sum");
    gb->add_option("--coeffs", ga.coeffs, "CSV of coefficients")->required();
    gb->add_option("--p", ga.p);
    gb->add_option("--rho", ga.rho);
    gb->add_option("--eta", ga.eta);
    gb->add_option("--out", o.path);
    gb->callback([&] { action = [&] { cmd_gevrey_borel(ga, o); }; });

    CanardArgs ca;
    auto* canard = app.add_subcommand("canard", "Canard values");
    canard->require_subcommand(1);
    auto* cu = canard->add_subcommand("unionjack", "Union Jack connection constant c0");
    cu->add_option("--tol", ca.tol);
    cu->add_option("--xfar", ca.x_far);
    cu->add_flag("--mirror", ca.mirror, "Connect to the branch Y ~ -X");
    cu->add_option("--out", o.path);
    cu->callback([&] { action = [&] { cmd_unionjack(ca, o); }; });
    auto* cg = canard->add_subcommand("angular", "Angular canard value c(eps)");
    cg->add_option("--eps", ca.eps, "Comma list of eps values");
    cg->add_option("--tfar", ca.x_far);
    cg->add_option("--out", o.path);
    cg->callback([&] { action = [&] { cmd_angular(ca, o); }; });
    auto* cc = canard->add_subcommand("criterion", "Control series alpha(eps) making the inner solutions agree");
    cc->add_option("--spec", ca.spec, "ODE spec with \"control\": true")->required();
    cc->add_option("--order", ca.order, "Number of eps-orders");
    cc->add_option("--out", o.path);
    cc->callback([&] { action = [&] { cmd_criterion(ca, o); }; });

    ResonanceArgs ra;
    auto* reso = app.add_subcommand("resonance", "Resonance condition, Z0 and Riccati check");
    reso->add_option("--alpha", ra.alpha)->required();
    reso->add_option("--beta", ra.beta)->required();
    reso->add_option("--p", ra.p);
    reso->add_option("--grid", ra.grid, "Comma list or lo:hi:n");
    reso->add_option("--out", o.path);
    reso->callback([&] { action = [&] { cmd_resonance(ra, o); }; });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    try {
        if (action) action();
        return kExitOk;
    } catch (const FailedVerdict&) {
        return kExitFailed;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kExitFailed;
    } catch (const CompatibilityError& e) {
        err << "incompatible: " << e.what() << "\n";
        return kExitFailed;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace cae::cli
