#include "cli_commands.hpp"
#include "verify_suite.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out, err;
};

Result run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Result r;
    r.code = ellcft::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string shell_quote(const std::string& s) {
    std::string q = "'";
    for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

// runs the installed binary, returns exit status and stdout
Result run_binary(const std::vector<std::string>& args) {
    std::string cmd = shell_quote(ELLCFT_CLI_BINARY);
    for (const auto& a : args) cmd += " " + shell_quote(a);
    cmd += " 2>/dev/null";
    Result r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json manifest() {
    std::ifstream f(ELLCFT_COVERAGE_MANIFEST);
    REQUIRE(f.good());
    return json::parse(f);
}

}  // namespace

TEST_CASE("coverage manifest lists every module operation") {
    const std::set<std::string> ops{
        "qseries.series_arith",        "qseries.bernoulli",           "qseries.divisor_sigma",
        "qseries.eisenstein_series",   "qseries.named_form_series",   "qseries.theta_null_series",
        "qseries.lattice_theta_series", "qseries.partition_series",   "qseries.energy_mean_series",
        "qseries.series_equal",        "modgroup.moebius_act",        "modgroup.index_act",
        "modgroup.reduce_fundamental", "modgroup.subgroup_member",    "modgroup.gamma_n_data",
        "modgroup.dim_forms",          "elliptic.p_eval",             "elliptic.weierstrass",
        "elliptic.theta_eval",         "elliptic.curve_add",          "elliptic.quartic_reduce",
        "elliptic.sn_from_tau",        "elliptic.uniformize",         "modforms.form_eval",
        "modforms.covariance_residual", "cft.gegenbauer",             "cft.vacuum_2pt",
        "cft.thermal_2pt",             "cft.image_sum_2pt",           "cft.degeneracy",
        "cft.energy_mean",             "cft.laurent_coeffs",          "cft.moving_frame",
        "lattice.discriminant_group",  "lattice.voa_character",       "lattice.char_modular_check",
        "lattice.cocycle_build",       "lattice.n2_character",        "lattice.n2_smatrix",
        "thermo.energy_density",       "thermo.density_asymptotics",  "thermo.sb_constant",
        "thermo.minkowski_thermal_2pt", "thermo.planck_spectrum",     "cli.run"};
    std::set<std::string> seen;
    const json m = manifest();
    for (const auto& e : m.at("entries")) seen.insert(e.at("op").get<std::string>());
    for (const auto& op : ops) CHECK_MESSAGE(seen.count(op) == 1, op);
    for (const auto& op : seen) CHECK_MESSAGE(ops.count(op) == 1, "unknown op in manifest: " << op);
}

TEST_CASE("every manifest invocation succeeds with a versioned JSON document") {
    const json m = manifest();
    for (const auto& e : m.at("entries")) {
        auto args = e.at("args").get<std::vector<std::string>>();
        Result r = run_cli(args);
        CAPTURE(e.at("op").get<std::string>());
        CAPTURE(r.err);
        CHECK(r.code == 0);
        json j = json::parse(r.out);
        CHECK(j.at("schema").get<std::string>().rfind("ellcft.", 0) == 0);
    }
}

TEST_CASE("exercise example: curve addition") {
    Result r = run_binary({"curve", "add", "--curve", "y2=x3-x+1", "--p", "-11/9,17/27", "--q", "0,1"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("x") == "159/121");
    CHECK(j.at("y") == "-1861/1331");
    CHECK(j.at("infinity") == false);
}

TEST_CASE("j coefficients from the series command") {
    json j = json::parse(run_cli({"series", "--name", "j", "--order", "3"}).out);
    json terms = j.at("series").at("terms");
    REQUIRE(terms.size() == 4);
    CHECK(terms[0] == json::array({-1, "1"}));
    CHECK(terms[1] == json::array({0, "744"}));
    CHECK(terms[2] == json::array({1, "196884"}));
    CHECK(terms[3] == json::array({2, "21493760"}));
}

TEST_CASE("series comparison reports the first mismatch and exits 1") {
    Result r = run_cli({"series", "--name", "eta", "--order", "5", "--equal", "delta"});
    CHECK(r.code == 1);
    json j = json::parse(r.out);
    CHECK(j.at("equal").at("equal") == false);
    CHECK(j.at("equal").at("exponent") == "1/24");
    CHECK(run_cli({"series", "--name", "eta", "--order", "31", "--op", "pow", "--n", "24", "--equal", "delta"}).code == 0);
}

TEST_CASE("usage errors exit 2 and name the offending flag") {
    Result r = run_cli({"eval", "--fn", "delta", "--tau", "0,-1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--tau") != std::string::npos);
    r = run_cli({"eval", "--fn", "delta", "--tau", "0,0"});
    CHECK(r.code == 2);
    r = run_cli({"eval", "--fn", "delta", "--tau", "abc"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--tau") != std::string::npos);
    r = run_cli({"eval", "--tau", "0,1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--fn") != std::string::npos);
    r = run_cli({"series", "--name", "j", "--order", "x/y"});
    CHECK(r.code == 2);
    CHECK(r.err.find("--order") != std::string::npos);
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"eval", "--fn", "delta", "--tau", "0,1", "--bogus", "1"}).code == 2);
    CHECK(run_cli({"verify", "--suite", "nope"}).code == 2);
    CHECK(run_cli({"chars", "--n2", "--k", "3", "--l", "0", "--m", "0", "--tau", "0,1"}).code == 2);
    CHECK(run_cli({"curve", "add", "--curve", "y2=x3-x+1", "--p", "1,5", "--q", "0,1"}).code == 2);
    CHECK(run_cli({"eval", "--fn", "nosuchform", "--tau", "0,1"}).code == 2);
    CHECK(run_cli({"reduce", "--gamma", "1,1,1,1", "--tau", "0,1"}).code == 2);
    CHECK(run_cli({"eval", "--fn", "delta", "--tau", "0,1", "--format", "csv"}).code == 2);
    CHECK(run_binary({"eval", "--fn", "delta", "--tau", "0,-1"}).code == 2);
}

TEST_CASE("numerical failures exit 1 with a JSON error") {
    Result r = run_cli({"eval", "--fn", "p", "--k", "1", "--zeta", "0,0", "--tau", "0,1"});
    CHECK(r.code == 1);
    json j = json::parse(r.err);
    CHECK(j.at("code") == "PoleAtLatticePoint");
    CHECK(j.at("schema") == "ellcft.error/1");
    r = run_cli({"thermo", "limit2pt", "--x12", "1,1,0,0", "--beta", "1"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.err).at("code") == "PoleKinematics");
}

TEST_CASE("help exits 0") {
    Result r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("verify") != std::string::npos);
    r = run_cli({"eval", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--fn") != std::string::npos);
}

TEST_CASE("verify output is byte-identical across runs and lists checks in id order") {
    std::vector<std::string> args{"verify", "--suite", "all", "--order", "30", "--tol", "1e-8", "--seed", "7"};
    Result a = run_binary(args), b = run_binary(args);
    CHECK(a.out == b.out);
    CHECK(a.out == run_cli(args).out);
    json j = json::parse(a.out);
    std::vector<std::string> ids;
    for (const auto& c : j.at("checks")) ids.push_back(c.at("id"));
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(ids == ellcft::cli::check_ids("all"));
    CHECK(j.at("seed") == 7);
    CHECK(j.at("tol") == 1e-8);
    // the exponentially small remainder of the asymptotic density exceeds the stated bound
    std::set<std::string> failed;
    for (const auto& c : j.at("checks"))
        if (c.at("status") == "fail") failed.insert(c.at("id"));
    CHECK(failed == std::set<std::string>{"thermo.remainder_bound"});
    CHECK(a.code == 1);
    CHECK(j.at("failed") == 1);
}

TEST_CASE("verify covers each acceptance item") {
    auto ids = ellcft::cli::check_ids("all");
    std::set<std::string> have(ids.begin(), ids.end());
    for (const char* id :
         {"qseries.delta_eisenstein", "qseries.delta_eta_product", "qseries.j_coefficients",
          "qseries.jacobi_triple_product", "qseries.theta_null_g4", "lattice.e8_theta", "lattice.e8_character_cube",
          "elliptic.curve_exercise", "elliptic.group_law", "elliptic.p_periodicity", "elliptic.p_parity",
          "elliptic.p_ladder", "elliptic.p_covariance", "elliptic.p_theta_ratio", "elliptic.weierstrass_ode",
          "elliptic.addition_theorem", "modforms.g2_anomaly", "modforms.covariance", "cft.image_sum",
          "cft.energy_means", "thermo.sb_scalar", "thermo.sb_maxwell", "thermo.asymptotic_polynomial",
          "thermo.remainder_bound", "thermo.fourier_vs_limit", "thermo.finite_r_shift", "lattice.k_splitting",
          "lattice.n2_t2", "lattice.n2_s_closure", "lattice.cocycle"})
        CHECK_MESSAGE(have.count(id) == 1, id);
}

TEST_CASE("verify: module suites pass for several seeds, timing is opt-in") {
    for (const char* seed : {"1", "7", "123456789"}) {
        Result r = run_cli({"verify", "--suite", "elliptic", "--seed", seed, "--samples", "10"});
        CHECK_MESSAGE(r.code == 0, r.out);
        json j = json::parse(r.out);
        CHECK(j.at("failed") == 0);
        CHECK_FALSE(j.at("checks").at(0).contains("runtime_ms"));
    }
    json t = json::parse(run_cli({"verify", "--suite", "modgroup", "--timing"}).out);
    CHECK(t.at("checks").at(0).contains("runtime_ms"));
    Result csv = run_cli({"verify", "--suite", "qseries", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.rfind("id,status,kind,residual,threshold,mismatch\n", 0) == 0);
    json l = json::parse(run_cli({"verify", "--suite", "thermo", "--list"}).out);
    CHECK(l.at("checks").size() == ellcft::cli::check_ids("thermo").size());
}

TEST_CASE("tabular output in CSV") {
    Result r = run_cli({"thermo", "planck", "--beta", "1", "--R", "1", "--nmax", "3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("n,frequency,term\n1,1,", 0) == 0);
    r = run_cli({"series", "--name", "j", "--order", "2", "--format", "csv"});
    CHECK(r.out == "exponent,coefficient\n-1,1\n0,744\n1,196884\n");
    r = run_cli({"eval", "--fn", "p", "--k", "2", "--zeta", "0.1,0.1;0.2,0.3", "--tau", "0,1", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 3);
}

TEST_CASE("curve parsing in both conventions") {
    json j = json::parse(run_cli({"curve", "check", "--curve", "y2 = 4x^3 - 4x", "--p", "1,0"}).out);
    CHECK(j.at("on_curve") == true);
    CHECK(j.at("form") == "four_x_cubed");
    Result r = run_cli({"curve", "check", "--curve", "y2=x3-x+1", "--p", "1,2"});
    CHECK(r.code == 1);
    CHECK(json::parse(r.out).at("residual") == "3");
    CHECK(run_cli({"curve", "add", "--curve", "y2=x3+x2+1", "--p", "0,1", "--q", "0,1"}).code == 2);
    j = json::parse(run_cli({"curve", "add", "--curve", "y2=x3-x+1", "--p", "0,1", "--q", "0,-1"}).out);
    CHECK(j.at("infinity") == true);
}

TEST_CASE("invocations of chars, thermo, thermal2pt and energymean") {
    json e8 = json::parse(run_cli({"chars", "--lattice", "e8", "--order", "3"}).out);
    CHECK(e8.at("series").at("terms").at(1).at(1).at("y_terms").at(0).at(1) == "248");
    json n2 = json::parse(run_cli({"chars", "--n2", "--k", "1", "--l", "1", "--m", "1", "--tau", "0,1.3"}).out);
    CHECK(n2.at("weight") == "1/6");
    json d = json::parse(run_cli({"thermo", "density", "--model", "scalar4", "--beta", "1", "--R", "50"}).out);
    CHECK(std::abs(d.at("density").get<double>() - d.at("density_inverted").get<double>()) < 1e-12);
    json em = json::parse(run_cli({"energymean", "--model", "maxwell", "--tau", "0,2"}).out);
    CHECK(em.at("vacuum_energy") == "11/120");
    json lim = json::parse(run_cli({"thermo", "limit2pt", "--x12", "0,0.3,0,0", "--beta", "1", "--mode", "limit"}).out);
    json fou = json::parse(run_cli({"thermo", "limit2pt", "--x12", "0,0.3,0,0", "--beta", "1", "--mode", "fourier"}).out);
    CHECK(std::abs(lim.at("value").at(0).get<double>() - fou.at("value").at(0).get<double>()) < 1e-8);
    json im = json::parse(run_cli({"thermal2pt", "--model", "scalar4", "--zeta12", "0.2,0", "--alpha", "0.13", "--tau",
                                   "0,1", "--cutoff", "200"})
                              .out);
    CHECK(im.at("difference").get<double>() < 1e-8);
}
