#include <doctest.h>

#include "cae/cli/cli.hpp"
#include "cae/error.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace cae;
using Json = nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result cae_run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string& name) { return std::string(CAE_TEST_DATA) + "/" + name; }

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "cae_cli_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("resonance subcommand") {
    const Result r = cae_run({"resonance", "--alpha", "1", "--beta", "2", "--p", "2"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["condition"] == true);
    CHECK(j["D"] == "2");
    CHECK(j["Z0"] == Json::array({"-1", "0", "1"}));
    CHECK(j["riccati_residual"].get<double>() < 1e-10);
    const Result f = cae_run({"resonance", "--alpha", "1", "--beta", "2", "--p", "4"});
    CHECK(f.code == 0);
    CHECK(Json::parse(f.out)["condition"] == false);
    CHECK(Json::parse(f.out)["Z0"].is_null());
}

TEST_CASE("expand: feasibility failure exits 2, linear spec succeeds") {
    const Result e1 = cae_run({"expand", "--spec", data("e1.json"), "--order", "3"});
    CHECK(e1.code == 2);
    CHECK(e1.err.find("pole order 13 at n=12 exceeds n") != std::string::npos);
    const Json j = Json::parse(e1.out);
    CHECK(j["feasibility"]["pass"] == false);
    CHECK(j["feasibility"]["eps_order"] == 3);
    const Result ex = cae_run({"expand", "--spec", data("e1.json"), "--order", "2", "--exact"});
    CHECK(ex.code == 0);
    const Json k = Json::parse(ex.out);
    // v_1 = c_4 = x^{-3}
    bool found = false;
    for (const auto& c : k["outer"])
        if (c["n"] == 4) {
            found = true;
            CHECK(c["low"] == -3);
            CHECK(c["coeffs"] == Json::array({"1"}));
        }
    CHECK(found);
    const Result lin = cae_run({"expand", "--spec", data("linear_p2.json"), "--order", "2"});
    CHECK(lin.code == 0);
    const Json s = Json::parse(lin.out);
    CHECK(s["series"]["p"] == 2);
    CHECK(s["feasibility"]["pass"] == true);
}

TEST_CASE("input errors exit 1 with diagnostics") {
    Result r = cae_run({"expand", "--spec", "/nonexistent/spec.json"});
    CHECK(r.code == 1);
    CHECK(r.err.find("spec.json") != std::string::npos);
    r = cae_run({"expand", "--spec", write_file("bad_key.json", R"({"p": 2, "q": 1})")});
    CHECK(r.code == 1);
    CHECK(r.err.find("field 'q'") != std::string::npos);
    r = cae_run({"expand", "--spec", write_file("bad_syntax.json", "{\n\"p\": 2,\n\"h\": [\n}")});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad_syntax.json:4") != std::string::npos);
    r = cae_run({"frobnicate"});
    CHECK(r.code == 1);
    r = cae_run({});
    CHECK(r.code == 1);
    r = cae_run({"validate", "--spec", data("linear_p2.json"), "--eps", "0.1,abc"});
    CHECK(r.code == 1);
    CHECK(r.err.find("abc") != std::string::npos);
    r = cae_run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("resonance") != std::string::npos);
}

TEST_CASE("validate writes the error table") {
    const auto out = scratch("table.csv");
    const Result r = cae_run({"validate", "--spec", data("linear_p2.json"), "--orders", "1,2", "--eps", "0.1,0.05,0.025",
                              "--xgrid", "-1:0:6", "--out", out.string()});
    CHECK(r.code == 0);
    const std::string csv = slurp(out);
    CHECK(csv.rfind("N,eps,sup_error,slope\n", 0) == 0);
    CHECK(csv.find("\n1,0.10000000000000001,") != std::string::npos);
    int lines = 0;
    for (char c : csv) lines += c == '\n';
    CHECK(lines == 7);
    // decreasing eps is required
    const Result bad = cae_run({"validate", "--spec", data("linear_p2.json"), "--eps", "0.05,0.1,0.025"});
    CHECK(bad.code == 1);
}

TEST_CASE("outputs are deterministic across runs and thread counts") {
    const std::vector<std::string> args{"validate", "--spec", data("linear_p2.json"), "--orders", "2,3", "--eps", "0.1,0.05,0.025,0.0125",
                                        "--xgrid", "-1:0:9"};
    setenv("CAE_THREADS", "1", 1);
    const Result a = cae_run(args);
    setenv("CAE_THREADS", "4", 1);
    const Result b = cae_run(args);
    const Result c = cae_run(args);
    unsetenv("CAE_THREADS");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
    const Result u1 = cae_run({"canard", "angular", "--eps", "0.01,0.02"});
    const Result u2 = cae_run({"canard", "angular", "--eps", "0.01,0.02"});
    CHECK(u1.out == u2.out);
    setenv("CAE_THREADS", "zero", 1);
    CHECK(cae_run({"canard", "angular", "--eps", "0.01,0.02"}).code == 1);
    unsetenv("CAE_THREADS");
}

TEST_CASE("stamp only when requested") {
    const Result plain = cae_run({"canard", "unionjack", "--tol", "1e-8"});
    CHECK(plain.code == 0);
    const Json p = Json::parse(plain.out);
    CHECK_FALSE(p.contains("stamp"));
    CHECK(p["value"].get<double>() == doctest::Approx(0.3621759411).epsilon(1e-7));
    const Result st = cae_run({"--stamp", "canard", "unionjack", "--tol", "1e-8"});
    CHECK(Json::parse(st.out)["stamp"]["version"].get<std::string>().rfind("cae ", 0) == 0);
    const auto out = scratch("stamped.csv");
    std::filesystem::remove(out.string() + ".stamp.json");
    CHECK(cae_run({"--stamp", "validate", "--spec", data("linear_p2.json"), "--orders", "2", "--eps", "0.1,0.05,0.025", "--out",
                   out.string()})
              .code == 0);
    CHECK(std::filesystem::exists(out.string() + ".stamp.json"));
    CHECK(slurp(out).find("cae") == std::string::npos);
}

TEST_CASE("gevrey, special and canard subcommands") {
    std::string csv = "n,value\n";
    for (int n = 0; n < 20; ++n) csv += std::to_string(n) + "," + std::to_string(std::tgamma(n / 2.0 + 1.0) * std::pow(2.0, n)) + "\n";
    const Result g = cae_run({"gevrey", "fit", "--coeffs", write_file("norms.csv", csv), "--p", "2"});
    CHECK(g.code == 0);
    CHECK(Json::parse(g.out)["L1"].get<double>() == doctest::Approx(2.0).epsilon(1e-4));
    const Result bad = cae_run({"gevrey", "fit", "--coeffs", write_file("bad.csv", "n,value\n0,1\n1,x\n"), "--p", "2"});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("bad.csv:3") != std::string::npos);

    const Result u = cae_run({"special", "U", "--p", "2", "--k", "1", "--sigma", "-", "--x", "-10"});
    CHECK(u.code == 0);
    CHECK(Json::parse(u.out)["values"][0]["value"].get<double>() == doctest::Approx(0.0497537).epsilon(1e-5));
    const Result t = cae_run({"special", "tail", "--p", "2", "--depth", "5", "--exact"});
    CHECK(Json::parse(t.out)["coeffs"] == Json::array({"-1/2", "0", "1/4", "0", "-3/8"}));

    const Result cr = cae_run({"canard", "criterion", "--spec", data("control_p4.json"), "--order", "1"});
    CHECK(cr.code == 0);
    CHECK(Json::parse(cr.out)["alpha_eta"][2].get<double>() == doctest::Approx(-1.013968).epsilon(1e-6));
}

TEST_CASE("list and grid parsing") {
    CHECK(cli::parse_grid("-1:0:3") == std::vector<double>{-1.0, -0.5, 0.0});
    CHECK(cli::parse_grid("1,2") == std::vector<double>{1.0, 2.0});
    CHECK(cli::parse_int_list("1,2,3") == std::vector<int>{1, 2, 3});
    CHECK_THROWS((void)cli::parse_int_list("1,,2"));
    CHECK_THROWS((void)cli::parse_grid("0:1"));
}

TEST_CASE("installed binary exit codes") {
    auto status = [](const std::string& args) {
        const std::string cmd = std::string(CAE_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
        const int s = std::system(cmd.c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status("resonance --alpha 1 --beta 2 --p 2") == 0);
    CHECK(status("expand --spec " + data("e1.json") + " --order 3") == 2);
    CHECK(status("expand --spec /nonexistent.json") == 1);
}

}  // TEST_SUITE
