#include "cli_commands.hpp"

#include "verify_suite.hpp"

#include "ellcft/cft.hpp"
#include "ellcft/elliptic.hpp"
#include "ellcft/errors.hpp"
#include "ellcft/lattice.hpp"
#include "ellcft/models.hpp"
#include "ellcft/modforms.hpp"
#include "ellcft/modgroup.hpp"
#include "ellcft/qseries.hpp"
#include "ellcft/thermo.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace ellcft::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

[[noreturn]] void usage(const std::string& flag, const std::string& msg) { throw UsageError(flag + ": " + msg); }

// library error codes caused by the input rather than by the computation
bool is_input_error(const std::string& code) {
    static const std::set<std::string> codes{
        "CollinearVectors", "DegenerateGram", "InvalidArgument", "InvalidIndex",  "InvalidLabels",
        "InvalidTau",       "NotEven",        "NotOnCurve",      "NotPositiveDefinite", "NotUnimodular",
        "OddWeight",        "OutOfSpectrum",  "ParseError",      "RepeatedRoot",  "ShapeError",
        "SingularCurve",    "UnknownForm",    "UnknownModel",    "UnknownSubgroup", "UnsupportedWeight",
        "WindowTooSmall",   "WrongSubgroup"};
    return codes.count(code) > 0;
}

struct Env {
    std::ostream& out;
    std::string format = "json";
    bool csv() const { return format == "csv"; }
};

void emit(Env& env, const json& j) { env.out << j.dump(2) << "\n"; }

void require_json(const Env& env) {
    if (env.csv()) usage("--format", "csv is available for series, chars series, verify, thermo planck and eval grids");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_real(const std::string& flag, const std::string& s) {
    size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        usage(flag, "expected a real number, got '" + s + "'");
    }
    if (pos != s.size() || !std::isfinite(v)) usage(flag, "expected a real number, got '" + s + "'");
    return v;
}

long parse_long(const std::string& flag, const std::string& s) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        usage(flag, "expected an integer, got '" + s + "'");
    }
    if (pos != s.size()) usage(flag, "expected an integer, got '" + s + "'");
    return v;
}

cplx parse_cplx(const std::string& flag, const std::string& s) {
    auto p = split(s, ',');
    if (p.size() > 2) usage(flag, "expected re,im, got '" + s + "'");
    return {parse_real(flag, p[0]), p.size() == 2 ? parse_real(flag, p[1]) : 0.0};
}

cplx parse_tau(const std::string& flag, const std::string& s) {
    if (s.empty()) usage(flag, "required");
    cplx t = parse_cplx(flag, s);
    if (!(t.imag() > 0)) usage(flag, "imaginary part must be positive");
    return t;
}

Rational parse_q(const std::string& flag, const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const Error&) {
        usage(flag, "expected a rational p/q, got '" + s + "'");
    }
}

std::vector<double> parse_reals(const std::string& flag, const std::string& s) {
    std::vector<double> v;
    if (s.empty()) return v;
    for (const auto& p : split(s, ',')) v.push_back(parse_real(flag, p));
    return v;
}

std::vector<long> parse_longs(const std::string& flag, const std::string& s) {
    std::vector<long> v;
    if (s.empty()) return v;
    for (const auto& p : split(s, ',')) v.push_back(parse_long(flag, p));
    return v;
}

RatVector parse_rats(const std::string& flag, const std::string& s) {
    RatVector v;
    if (s.empty()) return v;
    for (const auto& p : split(s, ',')) v.push_back(parse_q(flag, p));
    return v;
}

// complex list separated by ';'
std::vector<cplx> parse_cplx_list(const std::string& flag, const std::string& s) {
    std::vector<cplx> v;
    if (s.empty()) return v;
    for (const auto& p : split(s, ';')) v.push_back(parse_cplx(flag, p));
    return v;
}

Unimodular parse_gamma(const std::string& flag, const std::string& s) {
    auto v = parse_longs(flag, s);
    if (v.size() != 4) usage(flag, "expected a,b,c,d");
    return Unimodular::make(v[0], v[1], v[2], v[3]);
}

std::array<double, 4> parse_event(const std::string& flag, const std::string& s) {
    auto v = parse_reals(flag, s);
    if (v.size() != 4) usage(flag, "expected t,x,y,z");
    return {v[0], v[1], v[2], v[3]};
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

json cj(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(cj(z));
    return a;
}

json matrix_json(const Unimodular& g) {
    return json::array({json::array({g.a.get_si(), g.b.get_si()}), json::array({g.c.get_si(), g.d.get_si()})});
}

json word_json(const Word& w) {
    json a = json::array();
    for (const auto& l : w) a.push_back(l.is_s ? std::string("S") : "T^" + std::to_string(l.n));
    return a;
}

json rat_vector_json(const RatVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

json corr_json(const CorrValue& v) {
    json j{{"comps", cj(v.comps)}};
    if (v.matrix) {
        const Mat2& m = *v.matrix;
        j["matrix"] = json::array({cj({m[0][0], m[0][1]}), cj({m[1][0], m[1][1]})});
    }
    return j;
}

std::string csv_series(const FracSeries& s) {
    std::ostringstream o;
    o << "exponent,coefficient\n";
    for (const auto& [k, c] : s.terms) o << to_string(s.exponent(k)) << ',' << to_string(c) << "\n";
    return o.str();
}

std::string csv_series(const BiSeries& s) {
    std::ostringstream o;
    o << "exponent,y_exponent,coefficient\n";
    for (const auto& [k, c] : s.terms)
        for (const auto& [e, v] : c.terms) o << to_string(s.exponent(k)) << ',' << to_string(e) << ',' << to_string(v) << "\n";
    return o.str();
}

template <class C>
json equality_json(const EqualityReport<C>& r, const Rational& through) {
    json j{{"equal", r.equal}, {"through", to_string(through)}};
    if (!r.equal) {
        j["exponent"] = to_string(r.exponent);
        if constexpr (std::is_same_v<C, Rational>) {
            j["lhs"] = to_string(r.lhs);
            j["rhs"] = to_string(r.rhs);
        } else {
            j["lhs"] = r.lhs.str();
            j["rhs"] = r.rhs.str();
        }
    }
    return j;
}

// ---------------------------------------------------------------- eval

struct EvalFlags {
    std::string fn, tau, zeta = "0.3,0.2", mu = "0", gamma, x = "0.5", method = "series", chr = "1,1";
    int k = 1, kappa = 0, lambda = 0, n = 2;
    double glambda = 1, tol = 1e-10;
    bool long_double = false;
};

int cmd_eval(Env& env, const EvalFlags& f) {
    json j{{"schema", "ellcft.eval/1"}, {"fn", f.fn}};
    if (f.fn == "gegenbauer") {
        require_json(env);
        j["value"] = cj(gegenbauer(f.n, f.glambda, parse_cplx("--x", f.x)));
        emit(env, j);
        return 0;
    }
    if (f.fn == "p_kernel") {
        require_json(env);
        j["value"] = cj(p_kernel(f.k, f.lambda, parse_cplx("--zeta", f.zeta)));
        emit(env, j);
        return 0;
    }
    cplx tau = parse_tau("--tau", f.tau);
    j["tau"] = cj(tau);
    if (f.fn == "p") {
        PIndex idx{f.k, f.kappa, f.lambda, parse_cplx("--mu", f.mu)};
        auto zs = parse_cplx_list("--zeta", f.zeta);
        if (zs.empty()) usage("--zeta", "required");
        if (zs.size() == 1 && !env.csv()) {
            PValue v = p_eval_ex(idx, zs[0], tau, f.tol);
            j["zeta"] = cj(zs[0]);
            j["value"] = cj(v.value);
            j["est_error"] = v.est_error;
            j["pole_distance"] = v.pole_distance;
            j["terms"] = v.terms;
            emit(env, j);
            return 0;
        }
        auto vals = p_eval_grid(idx, zs, tau, f.tol);
        if (env.csv()) {
            env.out << "zeta_re,zeta_im,value_re,value_im,est_error\n";
            for (size_t i = 0; i < zs.size(); ++i)
                env.out << shortest(zs[i].real()) << ',' << shortest(zs[i].imag()) << ','
                        << shortest(vals[i].value.real()) << ',' << shortest(vals[i].value.imag()) << ','
                        << shortest(vals[i].est_error) << "\n";
            return 0;
        }
        json arr = json::array();
        for (size_t i = 0; i < zs.size(); ++i)
            arr.push_back({{"zeta", cj(zs[i])}, {"value", cj(vals[i].value)}, {"est_error", vals[i].est_error}});
        j["values"] = arr;
        emit(env, j);
        return 0;
    }
    require_json(env);
    cplx z = parse_cplx("--zeta", f.zeta);
    if (f.fn == "wp" || f.fn == "wp_prime" || f.fn == "wzeta") {
        j["zeta"] = cj(z);
        j["value"] = cj(f.fn == "wp" ? wp(z, tau) : f.fn == "wp_prime" ? wp_prime(z, tau) : wzeta(z, tau));
    } else if (f.fn == "g2") {
        j["value"] = cj(g2_invariant(tau));
    } else if (f.fn == "g3") {
        j["value"] = cj(g3_invariant(tau));
    } else if (f.fn == "roots") {
        HalfPeriodRoots e = half_period_roots(tau);
        j["e1"] = cj(e.e1);
        j["e2"] = cj(e.e2);
        j["e3"] = cj(e.e3);
    } else if (f.fn == "theta") {
        auto c = parse_longs("--char", f.chr);
        if (c.size() != 2 || c[0] < 0 || c[0] > 1 || c[1] < 0 || c[1] > 1) usage("--char", "expected mu,nu in {0,1}");
        ThetaMethod m;
        if (f.method == "series") m = ThetaMethod::series;
        else if (f.method == "product") m = ThetaMethod::product;
        else usage("--method", "expected series or product");
        j["z"] = cj(z);
        j["char"] = c;
        j["method"] = f.method;
        j["value"] = cj(theta_eval(int(c[0]), int(c[1]), z, tau, m, std::min(f.tol, 1e-15)));
    } else if (f.fn == "sn") {
        SnResult s = sn_from_tau(z, tau);
        j["z"] = cj(z);
        j["sn"] = cj(s.sn);
        j["k_squared"] = cj(s.k_squared);
        j["sqrt_e23"] = cj(s.sqrt_e23);
        j["w"] = cj(s.w);
    } else if (f.fn == "uniformize") {
        CplxPoint p = uniformize(z, tau);
        j["zeta"] = cj(z);
        j["infinity"] = p.infinity;
        if (!p.infinity) {
            j["x"] = cj(p.x);
            j["y"] = cj(p.y);
        }
    } else {
        FormId form = parse_form(f.fn);
        j["form"] = form_name(form);
        j["twice_weight"] = twice_weight(form);
        if (!f.gamma.empty()) {
            Unimodular g = parse_gamma("--gamma", f.gamma);
            j["gamma"] = matrix_json(g);
            j["residual"] = cj(covariance_residual(form, g, tau, std::max(f.tol, 1e-18)));
        } else if (f.long_double) {
            cplxl v = form_eval_l(form, cplxl(tau.real(), tau.imag()), std::max(f.tol, 1e-18));
            j["value"] = cj(cplx(double(v.real()), double(v.imag())));
            std::ostringstream re, im;
            re.precision(21);
            im.precision(21);
            re << v.real();
            im << v.imag();
            j["value_long"] = json::array({re.str(), im.str()});
        } else {
            FormValue v = form_eval(form, tau, std::max(f.tol, 1e-18));
            j["value"] = cj(v.value);
            j["err_bound"] = v.err_bound;
        }
    }
    emit(env, j);
    return 0;
}

// ---------------------------------------------------------------- series

struct SeriesFlags {
    std::string name, order = "50", op = "none", with, equal, through, tag = "weyl_NS_product",
                      model = "chiral_weyl", gram, chr = "0,0", x;
    long two_k = 4, n = 2, l = 4;
    int kappa = 0, lambda = 0;
    bool lattice_norm = false;
};

std::optional<NamedForm> named(const std::string& s) {
    try {
        return parse_named_form(s);
    } catch (const Error&) {
        return std::nullopt;
    }
}

// second operand: eta, delta, j, g4_240, f2, G<2k>, theta<mu><nu>, euler, one
FracSeries operand(const std::string& flag, const std::string& s, const Rational& ord) {
    if (auto nf = named(s)) return named_form_series(*nf, ord);
    if (s == "euler") return euler_product(ord);
    if (s == "one") return FracSeries::constant(1, ord);
    if (s.size() >= 2 && s[0] == 'G') return eisenstein_series(parse_long(flag, s.substr(1)), 0, 0, ord);
    if (s.size() == 7 && s.rfind("theta", 0) == 0 && (s[5] == '0' || s[5] == '1') && (s[6] == '0' || s[6] == '1'))
        return theta_null_series(s[5] - '0', s[6] - '0', ord);
    usage(flag, "unknown operand '" + s + "'");
}

template <class S>
S apply_op(const SeriesFlags& f, const S& a, const std::function<S()>& other) {
    if (f.op == "none") return a;
    if (f.op == "neg") return -a;
    if (f.op == "invert") return invert(a);
    if (f.op == "pow") return pow(a, f.n);
    if (f.op == "add" || f.op == "sub" || f.op == "mul") {
        if (f.with.empty()) usage("--with", "required for --op " + f.op);
        S b = other();
        return f.op == "add" ? a + b : f.op == "sub" ? a - b : a * b;
    }
    if (f.op == "root") {
        if constexpr (std::is_same_v<S, FracSeries>) return principal_root(a, f.n);
        usage("--op", "root needs a series with rational coefficients");
    }
    usage("--op", "expected none, neg, invert, pow, root, add, sub or mul");
}

int cmd_series(Env& env, const SeriesFlags& f) {
    json j{{"schema", "ellcft.series/1"}, {"name", f.name}};
    if (f.name == "bernoulli") {
        require_json(env);
        if (f.l < 0) usage("--l", "must be non-negative");
        j["l"] = f.l;
        if (f.x.empty()) {
            j["value"] = to_string(bernoulli(f.l));
        } else {
            j["x"] = to_string(parse_q("--x", f.x));
            j["value"] = to_string(bernoulli_poly(f.l, parse_q("--x", f.x)));
        }
        emit(env, j);
        return 0;
    }
    if (f.name == "sigma") {
        require_json(env);
        if (f.l < 0) usage("--l", "must be non-negative");
        if (f.n < 1) usage("--n", "must be positive");
        j["l"] = f.l;
        j["n"] = f.n;
        j["value"] = to_string(divisor_sigma(f.l, f.n));
        emit(env, j);
        return 0;
    }
    Rational ord = parse_q("--order", f.order);
    if (ord <= 0) usage("--order", "must be positive");
    std::optional<FracSeries> fs;
    std::optional<BiSeries> bs;
    if (auto nf = named(f.name)) {
        fs = named_form_series(*nf, ord);
    } else if (f.name == "eisenstein") {
        fs = f.lattice_norm ? lattice_eisenstein_series(f.two_k, f.kappa, f.lambda, ord)
                            : eisenstein_series(f.two_k, f.kappa, f.lambda, ord);
        j["two_k"] = f.two_k;
        j["kappa"] = f.kappa;
        j["lambda"] = f.lambda;
    } else if (f.name == "theta_null") {
        auto c = parse_longs("--char", f.chr);
        if (c.size() != 2) usage("--char", "expected mu,nu");
        fs = theta_null_series(int(c[0]), int(c[1]), ord);
        j["char"] = c;
    } else if (f.name == "lattice_theta") {
        if (f.gram.empty()) usage("--gram", "required");
        fs = lattice_theta_series(parse_gram(f.gram), ord);
    } else if (f.name == "euler") {
        fs = euler_product(ord);
    } else if (f.name == "energy_mean") {
        fs = energy_mean_series(parse_model(f.model), ord);
        j["model"] = f.model;
    } else if (f.name == "partition") {
        bs = partition_series(parse_partition_tag(f.tag), ord, parse_model(f.model));
        j["tag"] = f.tag;
        j["model"] = f.model;
    } else {
        usage("--name", "unknown series '" + f.name + "'");
    }
    j["op"] = f.op;
    if (f.op == "pow" || f.op == "root") j["n"] = f.n;
    if (!f.with.empty()) j["with"] = f.with;
    bool equal = true;
    if (fs) {
        *fs = apply_op<FracSeries>(f, *fs, [&] { return operand("--with", f.with, ord); });
        if (!f.equal.empty()) {
            FracSeries b = operand("--equal", f.equal, ord);
            Rational t = f.through.empty() ? std::min(fs->order, b.order) : parse_q("--through", f.through);
            auto rep = series_equal(*fs, b, t);
            equal = rep.equal;
            j["equal"] = equality_json(rep, t);
        }
        if (env.csv()) {
            env.out << csv_series(*fs);
            return equal ? 0 : 1;
        }
        j["series"] = to_json(*fs);
        j["display"] = to_string(*fs);
    } else {
        ModelId model = parse_model(f.model);
        auto other = [&](const std::string& flag, const std::string& s) {
            try {
                return partition_series(parse_partition_tag(s), ord, model);
            } catch (const Error&) {
                return to_bi(operand(flag, s, ord));
            }
        };
        *bs = apply_op<BiSeries>(f, *bs, [&] { return other("--with", f.with); });
        if (!f.equal.empty()) {
            BiSeries b = other("--equal", f.equal);
            Rational t = f.through.empty() ? std::min(bs->order, b.order) : parse_q("--through", f.through);
            auto rep = series_equal(*bs, b, t);
            equal = rep.equal;
            j["equal"] = equality_json(rep, t);
        }
        if (env.csv()) {
            env.out << csv_series(*bs);
            return equal ? 0 : 1;
        }
        j["series"] = to_json(*bs);
    }
    emit(env, j);
    return equal ? 0 : 1;
}

// ---------------------------------------------------------------- verify

struct VerifyFlags {
    std::string suite = "all";
    long order = 50;
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int samples = 20;
    bool timing = false, list = false;
};

int cmd_verify(Env& env, const VerifyFlags& f) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), f.suite) == names.end()) usage("--suite", "unknown suite '" + f.suite + "'");
    if (f.list) {
        require_json(env);
        emit(env, {{"schema", "ellcft.verify_list/1"}, {"suite", f.suite}, {"checks", check_ids(f.suite)}});
        return 0;
    }
    if (f.order < 1) usage("--order", "must be positive");
    if (f.samples < 1) usage("--samples", "must be positive");
    if (!(f.tol > 0)) usage("--tol", "must be positive");
    SuiteReport rep = run_suite({f.suite, f.order, f.tol, f.seed, f.samples});
    if (env.csv())
        env.out << report_csv(rep, f.timing);
    else
        emit(env, report_json(rep, f.timing));
    return rep.failed() == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- reduce

struct ReduceFlags {
    std::string tau, exact, gamma, index, subgroup;
    long gamma_n = 0, two_k = -1;
};

ExactTau parse_exact_tau(const std::string& s) {
    auto p = split(s, ',');
    if (p.size() != 2) usage("--exact", "expected re,im_squared as rationals");
    ExactTau t{parse_q("--exact", p[0]), parse_q("--exact", p[1])};
    if (t.im_sq <= 0) usage("--exact", "im_squared must be positive");
    return t;
}

json exact_tau_json(const ExactTau& t) {
    return {{"re", to_string(t.re)}, {"im_sq", to_string(t.im_sq)}, {"value", cj(t.value())}};
}

int cmd_reduce(Env& env, const ReduceFlags& f) {
    require_json(env);
    json j{{"schema", "ellcft.reduce/1"}};
    if (f.gamma_n > 0) {
        GammaNData d = gamma_n_data(f.gamma_n);
        j["N"] = f.gamma_n;
        j["index"] = to_string(d.index);
        j["psl_index"] = to_string(d.psl_index);
        j["genus"] = d.top.genus;
        j["cusps"] = d.top.nu_inf;
        j["nu2"] = d.top.nu2;
        j["nu3"] = d.top.nu3;
        if (f.two_k >= 0) {
            j["two_k"] = f.two_k;
            j["dim_forms"] = dim_forms(f.two_k, d.top);
        }
        emit(env, j);
        return 0;
    }
    if (!f.gamma.empty()) {
        Unimodular g = parse_gamma("--gamma", f.gamma);
        j["gamma"] = matrix_json(g);
        j["inverse"] = matrix_json(g.inverse());
        if (!f.index.empty()) {
            auto v = parse_longs("--index", f.index);
            if (v.size() != 2 || v[0] < 0 || v[0] > 1 || v[1] < 0 || v[1] > 1) usage("--index", "expected kappa,lambda in {0,1}");
            auto [k, l] = index_act(g, int(v[0]), int(v[1]));
            j["index"] = {k, l};
        }
        if (!f.subgroup.empty()) {
            j["subgroup"] = f.subgroup;
            j["member"] = subgroup_member(g, parse_subgroup(f.subgroup));
        }
        if (!f.tau.empty()) {
            cplx tau = parse_tau("--tau", f.tau);
            j["tau"] = cj(tau);
            j["image"] = cj(moebius_act(g, tau));
            j["automorphy"] = cj(automorphy(g, tau));
        }
        if (!f.exact.empty()) j["exact_image"] = exact_tau_json(moebius_act(g, parse_exact_tau(f.exact)));
        emit(env, j);
        return 0;
    }
    if (!f.exact.empty()) {
        ExactTau t = parse_exact_tau(f.exact);
        ExactReduction r = reduce_fundamental(t);
        j["tau"] = exact_tau_json(t);
        j["tau_star"] = exact_tau_json(r.tau_star);
        j["matrix"] = matrix_json(r.gamma);
        j["word"] = word_json(r.word);
        j["word_string"] = word_string(r.word);
        emit(env, j);
        return 0;
    }
    cplx tau = parse_tau("--tau", f.tau);
    Reduction r = reduce_fundamental(tau);
    j["tau"] = cj(tau);
    j["tau_star"] = cj(r.tau_star);
    j["matrix"] = matrix_json(r.gamma);
    j["word"] = word_json(r.word);
    j["word_string"] = word_string(r.word);
    j["in_fundamental_domain"] = in_fundamental_domain(r.tau_star);
    emit(env, j);
    return 0;
}

// ---------------------------------------------------------------- curve

struct CurveFlags {
    std::string action, curve, p, q, roots, z, z1, z2, tau;
    bool complex_roots = false;
    double tol = 1e-10;
};

// "y2=x3-x+1" (short form) or "y2=4x3-g2x-g3" with rational coefficients
RatCurve parse_curve(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c)) && c != '^' && c != '*') s += c;
    if (s.rfind("y2=", 0) != 0) usage("--curve", "expected y2=<cubic in x>");
    std::string rhs = s.substr(3);
    if (rhs.empty()) usage("--curve", "empty right-hand side");
    std::vector<std::string> terms;
    std::string cur;
    for (size_t i = 0; i < rhs.size(); ++i) {
        char c = rhs[i];
        if ((c == '+' || c == '-') && i > 0 && rhs[i - 1] != '/') {
            terms.push_back(cur);
            cur.clear();
        }
        cur += c;
    }
    terms.push_back(cur);
    Rational coef[4] = {0, 0, 0, 0};
    for (const auto& t : terms) {
        auto xp = t.find('x');
        std::string c = xp == std::string::npos ? t : t.substr(0, xp);
        int power = 0;
        if (xp != std::string::npos) {
            std::string e = t.substr(xp + 1);
            power = e.empty() ? 1 : int(parse_long("--curve", e));
        }
        if (power < 0 || power > 3) usage("--curve", "powers of x must be 0..3");
        Rational v = (c.empty() || c == "+") ? Rational(1) : c == "-" ? Rational(-1) : parse_q("--curve", c);
        coef[power] += v;
    }
    if (coef[2] != 0) usage("--curve", "an x^2 term is not supported");
    if (coef[3] == 1) return {CurveForm::short_form, coef[1], coef[0]};
    if (coef[3] == 4) return {CurveForm::four_x_cubed, -coef[1], -coef[0]};
    usage("--curve", "leading coefficient must be 1 or 4");
}

RatPoint parse_point(const std::string& flag, const std::string& s) {
    if (s.empty()) usage(flag, "required");
    if (s == "inf" || s == "infinity") return RatPoint::at_infinity();
    auto v = split(s, ',');
    if (v.size() != 2) usage(flag, "expected x,y or inf");
    RatPoint p;
    p.x = parse_q(flag, v[0]);
    p.y = parse_q(flag, v[1]);
    return p;
}

void put_point(json& j, const RatPoint& p) {
    j["infinity"] = p.infinity;
    if (!p.infinity) {
        j["x"] = to_string(p.x);
        j["y"] = to_string(p.y);
    }
}

void put_point(json& j, const CplxPoint& p) {
    j["infinity"] = p.infinity;
    if (!p.infinity) {
        j["x"] = cj(p.x);
        j["y"] = cj(p.y);
    }
}

int cmd_curve(Env& env, const CurveFlags& f) {
    require_json(env);
    json j{{"schema", "ellcft.curve/1"}, {"action", f.action}};
    if (f.action == "add" || f.action == "neg" || f.action == "check") {
        if (f.curve.empty()) usage("--curve", "required");
        RatCurve c = parse_curve(f.curve);
        j["form"] = c.form == CurveForm::short_form ? "short" : "four_x_cubed";
        RatPoint p = parse_point("--p", f.p);
        if (f.action == "add") {
            put_point(j, curve_add(p, parse_point("--q", f.q), c));
        } else if (f.action == "neg") {
            put_point(j, curve_neg(p));
        } else {
            Rational r = p.infinity ? Rational(0) : curve_residual(p, c);
            j["residual"] = to_string(r);
            j["on_curve"] = r == 0;
            emit(env, j);
            return r == 0 ? 0 : 1;
        }
    } else if (f.action == "quartic") {
        if (f.complex_roots) {
            auto r = parse_cplx_list("--roots", f.roots);
            if (r.size() != 4) usage("--roots", "expected four complex roots separated by ';'");
            auto q = quartic_reduce(r[0], r[1], r[2], r[3]);
            j["a"] = cj(q.a);
            j["A2"] = cj(q.A2);
            j["e"] = cj({q.e1, q.e2, q.e3});
        } else {
            auto r = parse_rats("--roots", f.roots);
            if (r.size() != 4) usage("--roots", "expected four rational roots");
            auto q = quartic_reduce(r[0], r[1], r[2], r[3]);
            j["a"] = to_string(q.a);
            j["A2"] = to_string(q.A2);
            j["e"] = rat_vector_json({q.e1, q.e2, q.e3});
        }
    } else if (f.action == "sn") {
        cplx tau = parse_tau("--tau", f.tau);
        SnResult s = sn_from_tau(parse_cplx("--z", f.z), tau);
        j["sn"] = cj(s.sn);
        j["k_squared"] = cj(s.k_squared);
    } else if (f.action == "uniformize") {
        cplx tau = parse_tau("--tau", f.tau);
        CplxPoint p = uniformize(parse_cplx("--z", f.z), tau);
        put_point(j, p);
        j["g2"] = cj(g2_invariant(tau));
        j["g3"] = cj(g3_invariant(tau));
    } else if (f.action == "addtheorem") {
        cplx tau = parse_tau("--tau", f.tau);
        cplx a = parse_cplx("--z1", f.z1), b = parse_cplx("--z2", f.z2);
        CplxCurve c{CurveForm::four_x_cubed, g2_invariant(tau), g3_invariant(tau)};
        CplxPoint s = curve_add(uniformize(a, tau), uniformize(b, tau), c, 1e-6);
        CplxPoint u = uniformize(a + b, tau);
        put_point(j, s);
        double res = s.infinity != u.infinity ? INFINITY
                     : s.infinity             ? 0.0
                                              : std::max(std::abs(s.x - u.x) / std::max(1.0, std::abs(u.x)),
                                                         std::abs(s.y - u.y) / std::max(1.0, std::abs(u.y)));
        double thr = std::max(f.tol, 1e-6);
        j["residual"] = res;
        j["threshold"] = thr;
        j["pass"] = res < thr;
        emit(env, j);
        return res < thr ? 0 : 1;
    } else {
        usage("action", "expected add, neg, check, quartic, sn, uniformize or addtheorem");
    }
    emit(env, j);
    return 0;
}

// ---------------------------------------------------------------- chars

struct CharsFlags {
    std::string lattice, lambda, mu_dir, order = "50", tau, mu, km = "0", kl = "3", kscale = "1";
    bool disc = false, check = false, theta = false, n2 = false, smatrix = false, kfun = false, slaw = false;
    long cocycle = 0;
    int k = 1, l = 0, m = 0;
    double tol = 1e-10;
};

Rational chars_order(const CharsFlags& f) {
    Rational o = parse_q("--order", f.order);
    if (o <= 0) usage("--order", "must be positive");
    return o;
}

int emit_bi(Env& env, json& j, const BiSeries& s) {
    if (env.csv()) {
        env.out << csv_series(s);
        return 0;
    }
    j["series"] = to_json(s);
    emit(env, j);
    return 0;
}

int cmd_chars(Env& env, const CharsFlags& f) {
    json j{{"schema", "ellcft.chars/1"}};
    if (f.n2) {
        j["k"] = f.k;
        if (f.smatrix) {
            require_json(env);
            auto labs = n2_labels(f.k);
            json L = json::array();
            for (auto lab : labs) L.push_back({lab.l, lab.m});
            json S = json::array();
            for (const auto& row : n2_smatrix(f.k)) S.push_back(cj(row));
            j["labels"] = L;
            j["smatrix"] = S;
            emit(env, j);
            return 0;
        }
        j["l"] = f.l;
        j["m"] = f.m;
        BiSeries s = n2_character_series(f.k, f.l, f.m, Rational(1));  // validates the labels
        (void)s;
        j["central_charge"] = to_string(n2_central_charge(f.k));
        j["weight"] = to_string(n2_weight(f.k, f.l, f.m));
        j["charge"] = to_string(n2_charge(f.k, f.m));
        j["t2_eigenvalue"] = cj(n2_t2_eigenvalue(f.k, f.l, f.m));
        if (!f.tau.empty()) {
            require_json(env);
            cplx tau = parse_tau("--tau", f.tau);
            cplx mu = f.mu.empty() ? cplx(0) : parse_cplx("--mu", f.mu);
            j["tau"] = cj(tau);
            j["mu"] = cj(mu);
            j["value"] = cj(n2_character_value(f.k, f.l, f.m, tau, mu));
            emit(env, j);
            return 0;
        }
        return emit_bi(env, j, n2_character_series(f.k, f.l, f.m, chars_order(f)));
    }
    if (f.kfun) {
        Rational m = parse_q("--km", f.km), l = parse_q("--kl", f.kl);
        j["m"] = to_string(m);
        j["l"] = to_string(l);
        if (f.slaw) {
            require_json(env);
            if (l.get_den() != 1 || l <= 0) usage("--kl", "the inversion law needs a positive integer level");
            cplx tau = parse_tau("--tau", f.tau);
            cplx mu = f.mu.empty() ? cplx(0) : parse_cplx("--mu", f.mu);
            double r = k_s_law_residual(m, l.get_num().get_si(), tau, mu);
            double thr = std::max(f.tol, 1e-10);
            j["residual"] = r;
            j["threshold"] = thr;
            j["pass"] = r < thr;
            emit(env, j);
            return r < thr ? 0 : 1;
        }
        if (!f.tau.empty()) {
            require_json(env);
            cplx tau = parse_tau("--tau", f.tau);
            cplx mu = f.mu.empty() ? cplx(0) : parse_cplx("--mu", f.mu);
            j["value"] = cj(k_value(m, l, tau, mu));
            emit(env, j);
            return 0;
        }
        return emit_bi(env, j, k_series(m, l, chars_order(f), parse_q("--kscale", f.kscale)));
    }
    if (f.lattice.empty()) usage("--lattice", "one of --lattice, --n2 or --kfun is required");
    IntMatrix g = parse_gram(f.lattice);
    j["lattice"] = f.lattice;
    if (f.disc) {
        require_json(env);
        DiscriminantGroup d = discriminant_group(g);
        json reps = json::array();
        for (const auto& r : d.reps) reps.push_back(rat_vector_json(r));
        j["order"] = d.order;
        j["reps"] = reps;
        j["even"] = is_even(g);
        emit(env, j);
        return 0;
    }
    if (f.cocycle > 0) {
        require_json(env);
        CocycleTable t = cocycle_build(g, f.cocycle);
        CocycleReport r = cocycle_verify(t);
        j["window"] = f.cocycle;
        j["vectors"] = t.vectors.size();
        j["pairs"] = r.pairs;
        j["triples"] = r.triples;
        j["conditions"] = {{"unit", r.unit},
                           {"normalized", r.normalized},
                           {"two_cocycle", r.two_cocycle},
                           {"symmetry", r.symmetry},
                           {"conjugation", r.conjugation}};
        j["pass"] = r.all();
        emit(env, j);
        return r.all() ? 0 : 1;
    }
    if (f.theta) {
        FracSeries s = lattice_theta_series(g, chars_order(f));
        if (env.csv()) {
            env.out << csv_series(s);
            return 0;
        }
        j["theta"] = to_json(s);
        j["display"] = to_string(s);
        emit(env, j);
        return 0;
    }
    RatVector lambda = f.lambda.empty() ? RatVector(g.size(), Rational(0)) : parse_rats("--lambda", f.lambda);
    if (lambda.size() != g.size()) usage("--lambda", "length must equal the rank");
    j["lambda"] = rat_vector_json(lambda);
    std::vector<cplx> mu = parse_cplx_list("--mu", f.mu);
    if (!mu.empty() && mu.size() != g.size()) usage("--mu", "length must equal the rank");
    if (f.check) {
        require_json(env);
        cplx tau = parse_tau("--tau", f.tau);
        ModularCheck mc = char_modular_check(g, tau, mu);
        double thr = std::max(f.tol, 1e-8);
        bool pass = mc.t_residual < thr && mc.s_residual < thr;
        j["tau"] = cj(tau);
        j["t_residual"] = mc.t_residual;
        j["s_residual"] = mc.s_residual;
        j["threshold"] = thr;
        j["pass"] = pass;
        emit(env, j);
        return pass ? 0 : 1;
    }
    if (!f.tau.empty()) {
        require_json(env);
        cplx tau = parse_tau("--tau", f.tau);
        j["tau"] = cj(tau);
        j["value"] = cj(voa_character_value(g, lambda, tau, mu));
        emit(env, j);
        return 0;
    }
    RatVector dir = parse_rats("--mu-dir", f.mu_dir);
    if (!dir.empty() && dir.size() != g.size()) usage("--mu-dir", "length must equal the rank");
    return emit_bi(env, j, voa_character_series(g, lambda, dir, chars_order(f)));
}

// ---------------------------------------------------------------- thermal2pt

struct T2Flags {
    std::string model, tau, zeta12 = "0.2,0", u1, u2, mu = "0";
    double alpha = 0.13, tol = 1e-6;
    int D = 4, cutoff = -1, laurent = 0;
    bool vacuum = false, frame = false;
};

int cmd_thermal2pt(Env& env, const T2Flags& f) {
    require_json(env);
    json j{{"schema", "ellcft.thermal2pt/1"}};
    if (f.frame) {
        auto u1 = parse_reals("--u1", f.u1), u2 = parse_reals("--u2", f.u2);
        if (u1.empty() || u2.empty()) usage("--u1", "--frame needs --u1 and --u2");
        FrameVectors fv = moving_frame(u1, u2);
        j["alpha"] = fv.alpha;
        j["v"] = cj(fv.v);
        j["vbar"] = cj(fv.vbar);
        j["residual"] = frame_residual(fv, u1, u2);
        if (fv.v.size() == 4) {
            Mat2 sp = slash_plus(fv.v), sm = slash(fv.v);
            j["slash_plus_v"] = json::array({cj({sp[0][0], sp[0][1]}), cj({sp[1][0], sp[1][1]})});
            j["slash_v"] = json::array({cj({sm[0][0], sm[0][1]}), cj({sm[1][0], sm[1][1]})});
        }
        emit(env, j);
        return 0;
    }
    if (f.model.empty()) usage("--model", "required");
    ModelId m = parse_model(f.model);
    j["model"] = model_name(m);
    cplx mu = parse_cplx("--mu", f.mu);
    if (f.laurent > 0) {
        cplx tau = parse_tau("--tau", f.tau);
        LaurentResult r = laurent_coeffs(m, tau, f.laurent, mu, f.tol);
        j["tau"] = cj(tau);
        j["lowest_power"] = r.lowest_power;
        j["coeffs"] = cj(r.coeffs);
        j["condition"] = r.condition;
        emit(env, j);
        return 0;
    }
    cplx z12 = parse_cplx("--zeta12", f.zeta12);
    Kinematics kin;
    if (!f.u1.empty() || !f.u2.empty())
        kin = Kinematics::from_vectors(z12, 0, parse_reals("--u1", f.u1), parse_reals("--u2", f.u2));
    else
        kin = Kinematics::from_alpha(z12, f.alpha, f.D);
    j["zeta12"] = cj(z12);
    j["alpha"] = kin.alpha;
    if (f.vacuum) {
        j["vacuum"] = corr_json(vacuum_2pt(m, kin));
        emit(env, j);
        return 0;
    }
    cplx tau = parse_tau("--tau", f.tau);
    j["tau"] = cj(tau);
    j["mu"] = cj(mu);
    if (f.cutoff >= 0) {
        CorrValue im = image_sum_2pt(m, kin, tau, f.cutoff, mu);
        CorrValue th = thermal_2pt(m, kin, tau, mu);
        j["cutoff"] = f.cutoff;
        j["image_sum"] = corr_json(im);
        j["thermal"] = corr_json(th);
        j["difference"] = max_abs_diff(im, th);
        emit(env, j);
        return 0;
    }
    j["thermal"] = corr_json(thermal_2pt(m, kin, tau, mu));
    emit(env, j);
    return 0;
}

// ---------------------------------------------------------------- energymean

struct EnergyFlags {
    std::string model, tau, order = "50", degeneracy;
    bool series = false;
};

int cmd_energymean(Env& env, const EnergyFlags& f) {
    if (f.model.empty()) usage("--model", "required");
    ModelId m = parse_model(f.model);
    json j{{"schema", "ellcft.energymean/1"}, {"model", model_name(m)}};
    if (!f.degeneracy.empty()) {
        require_json(env);
        Rational e = parse_q("--degeneracy", f.degeneracy);
        j["energy"] = to_string(e);
        j["degeneracy"] = to_string(degeneracy(m, e));
        j["fermion"] = spectrum(m).fermion;
        j["vacuum_energy"] = to_string(vacuum_energy(m));
        j["conformal_weight"] = to_string(conformal_weight(m));
        emit(env, j);
        return 0;
    }
    if (f.series) {
        Rational o = parse_q("--order", f.order);
        if (o <= 0) usage("--order", "must be positive");
        FracSeries s = energy_mean_series(m, o);
        if (env.csv()) {
            env.out << csv_series(s);
            return 0;
        }
        j["series"] = to_json(s);
        j["display"] = to_string(s);
        emit(env, j);
        return 0;
    }
    require_json(env);
    cplx tau = parse_tau("--tau", f.tau);
    EnergyMean e = energy_mean(m, tau);
    j["tau"] = cj(tau);
    j["numeric"] = cj(e.numeric);
    j["closed_form"] = cj(e.closed_form);
    j["residual"] = cj(e.residual);
    j["tail_bound"] = e.tail_bound;
    if (has_spectrum(m)) j["vacuum_energy"] = to_string(vacuum_energy(m));
    emit(env, j);
    return 0;
}

// ---------------------------------------------------------------- thermo

struct ThermoFlags {
    std::string action, model = "scalar4", x12, x1, x2, mode = "limit";
    double beta = 1, R = 0, h = 1, c = 1;
    long nmax = 10;
};

int cmd_thermo(Env& env, const ThermoFlags& f) {
    json j{{"schema", "ellcft.thermo/1"}, {"action", f.action}};
    if (f.action == "limit2pt") {
        require_json(env);
        MinkowskiPair p;
        if (!f.x12.empty()) {
            p.x1 = parse_event("--x12", f.x12);
        } else {
            if (f.x1.empty()) usage("--x12", "give --x12 or --x1/--x2");
            p.x1 = parse_event("--x1", f.x1);
            if (!f.x2.empty()) p.x2 = parse_event("--x2", f.x2);
        }
        TwoPointMode mode = parse_two_point_mode(f.mode);
        TwoPointValue v = minkowski_thermal_2pt(p, f.beta, mode, f.R);
        j["mode"] = f.mode;
        j["beta"] = f.beta;
        if (mode == TwoPointMode::finite_R) j["R"] = f.R;
        j["value"] = cj(v.value);
        j["eps"] = v.eps;
        j["est_error"] = v.est_error;
        emit(env, j);
        return 0;
    }
    if (f.action == "planck") {
        auto modes = planck_spectrum(f.beta, f.R, f.nmax, f.h, f.c);
        if (env.csv()) {
            env.out << "n,frequency,term\n";
            for (const auto& m : modes) env.out << m.n << ',' << shortest(m.frequency) << ',' << shortest(m.term) << "\n";
            return 0;
        }
        json arr = json::array();
        double sum = 0;
        for (const auto& m : modes) {
            arr.push_back({{"n", m.n}, {"frequency", m.frequency}, {"term", m.term}});
            sum += m.term;
        }
        j["beta"] = f.beta;
        j["R"] = f.R;
        j["modes"] = arr;
        j["sum"] = sum;
        emit(env, j);
        return 0;
    }
    require_json(env);
    ThermoModel m = parse_thermo_model(f.model);
    j["model"] = thermo_model_name(m);
    if (f.action == "sb") {
        SbLimit s = sb_constant(m);
        j["value"] = s.value;
        j["closed"] = s.closed;
        j["residual"] = s.residual;
        emit(env, j);
        return 0;
    }
    BoxState st{f.beta, f.R};
    j["beta"] = f.beta;
    j["R"] = f.R;
    if (f.action == "density") {
        double d = energy_density(m, st);
        j["density"] = d;
        j["density_inverted"] = energy_density_inverted(m, st);
        j["beta4_density"] = std::pow(f.beta, 4) * d;
    } else if (f.action == "asymptotics") {
        Asymptotics a = density_asymptotics(m, st);
        j["coeffs"] = a.coeffs;
        j["prediction"] = a.prediction;
        j["residual"] = a.residual;
        j["bound"] = a.bound;
        j["in_regime"] = a.in_regime;
        j["within_bound"] = std::abs(a.residual) < a.bound;
    } else {
        usage("action", "expected density, asymptotics, sb, limit2pt or planck");
    }
    emit(env, j);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Elliptic functions, modular forms, lattice characters and thermal correlators"};
    app.name("ellcft_cli");
    app.require_subcommand(1, 1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    EvalFlags ef;
    auto* eval = app.add_subcommand("eval", "evaluate a function at a point");
    eval->add_option("--fn", ef.fn,
                     "p, p_kernel, wp, wp_prime, wzeta, g2, g3, roots, theta, sn, uniformize, gegenbauer or a form "
                     "(G4, G2, G6^{10}, eta, delta, j, f2, g2star)")
        ->required();
    eval->add_option("--tau", ef.tau, "re,im");
    eval->add_option("--zeta,-z", ef.zeta, "re,im; several points separated by ';'");
    eval->add_option("--k", ef.k);
    eval->add_option("--kappa", ef.kappa);
    eval->add_option("--lambda", ef.lambda);
    eval->add_option("--mu", ef.mu, "chemical potential re,im");
    eval->add_option("--tol", ef.tol);
    eval->add_option("--method", ef.method, "theta: series or product");
    eval->add_option("--char", ef.chr, "theta characteristics mu,nu");
    eval->add_option("--gamma", ef.gamma, "a,b,c,d: covariance residual of a form");
    eval->add_option("--n", ef.n, "gegenbauer degree");
    eval->add_option("--glambda", ef.glambda, "gegenbauer index");
    eval->add_option("--x", ef.x, "gegenbauer argument re,im");
    eval->add_flag("--long", ef.long_double, "evaluate a form in long double");

    SeriesFlags sf;
    auto* series = app.add_subcommand("series", "exact truncated q-series");
    series->add_option("--name", sf.name,
                       "eta, delta, j, g4_240, f2, eisenstein, theta_null, lattice_theta, euler, partition, "
                       "energy_mean, bernoulli, sigma")
        ->required();
    series->add_option("--order", sf.order, "truncation order (rational)");
    series->add_option("--op", sf.op, "none, neg, invert, pow, root, add, sub, mul");
    series->add_option("--with", sf.with, "second operand");
    series->add_option("--equal", sf.equal, "compare the result with this series");
    series->add_option("--through", sf.through, "comparison order");
    series->add_option("--tag", sf.tag, "partition tag");
    series->add_option("--model", sf.model);
    series->add_option("--gram", sf.gram, "e8, a1, a2, d4, sqrt3 or a JSON matrix");
    series->add_option("--char", sf.chr, "theta characteristics mu,nu");
    series->add_option("--x", sf.x, "Bernoulli polynomial argument");
    series->add_option("--two-k", sf.two_k);
    series->add_option("--kappa", sf.kappa);
    series->add_option("--lambda", sf.lambda);
    series->add_option("--n", sf.n, "power, root index or sigma argument");
    series->add_option("--l", sf.l, "Bernoulli index or sigma power");
    series->add_flag("--lattice-norm", sf.lattice_norm, "twisted Eisenstein series in lattice-sum normalization");

    VerifyFlags vf;
    auto* verify = app.add_subcommand("verify", "run identity and invariant checks");
    verify->add_option("--suite", vf.suite, "all, qseries, modgroup, elliptic, modforms, cft, lattice, thermo");
    verify->add_option("--order", vf.order);
    verify->add_option("--tol", vf.tol);
    verify->add_option("--seed", vf.seed);
    verify->add_option("--samples", vf.samples);
    verify->add_flag("--timing", vf.timing, "include runtimes (output is then not reproducible)");
    verify->add_flag("--list", vf.list, "list the check ids");

    ReduceFlags rf;
    auto* reduce = app.add_subcommand("reduce", "modular group actions and reduction");
    reduce->add_option("--tau", rf.tau, "re,im");
    reduce->add_option("--exact", rf.exact, "re,im_squared as rationals");
    reduce->add_option("--gamma", rf.gamma, "a,b,c,d");
    reduce->add_option("--index", rf.index, "kappa,lambda");
    reduce->add_option("--subgroup", rf.subgroup, "full, theta, gamma0:N, gamma1:N, gamma:N");
    reduce->add_option("--gamma-n", rf.gamma_n, "level N of Gamma(N)");
    reduce->add_option("--two-k", rf.two_k, "weight for the dimension formula");

    CurveFlags cf;
    auto* curve = app.add_subcommand("curve", "elliptic curve arithmetic");
    curve->add_option("action", cf.action, "add, neg, check, quartic, sn, uniformize, addtheorem")->required();
    curve->add_option("--curve", cf.curve, "e.g. y2=x3-x+1 or y2=4x3-4x");
    curve->add_option("--p", cf.p, "x,y or inf");
    curve->add_option("--q", cf.q, "x,y or inf");
    curve->add_option("--roots", cf.roots, "quartic roots");
    curve->add_flag("--complex", cf.complex_roots, "roots are complex, separated by ';'");
    curve->add_option("--z", cf.z, "re,im");
    curve->add_option("--z1", cf.z1, "re,im");
    curve->add_option("--z2", cf.z2, "re,im");
    curve->add_option("--tau", cf.tau, "re,im");
    curve->add_option("--tol", cf.tol);

    CharsFlags chf;
    auto* chars = app.add_subcommand("chars", "lattice and N=2 characters");
    chars->add_option("--lattice", chf.lattice, "e8, a1, a2, d4, sqrt3 or a JSON gram matrix");
    chars->add_option("--lambda", chf.lambda, "dual class in lattice coordinates, p/q list");
    chars->add_option("--mu-dir", chf.mu_dir, "direction of the formal chemical potential");
    chars->add_option("--order", chf.order);
    chars->add_option("--tau", chf.tau, "re,im");
    chars->add_option("--mu", chf.mu, "chemical potential; one re,im per coordinate separated by ';'");
    chars->add_flag("--disc", chf.disc, "discriminant group");
    chars->add_flag("--check", chf.check, "modular transformation check");
    chars->add_flag("--theta", chf.theta, "lattice theta series");
    chars->add_option("--cocycle", chf.cocycle, "build and verify the cocycle on this window");
    chars->add_flag("--n2", chf.n2, "N=2 minimal model characters");
    chars->add_flag("--smatrix", chf.smatrix);
    chars->add_option("--k", chf.k);
    chars->add_option("--l", chf.l);
    chars->add_option("--m", chf.m);
    chars->add_flag("--kfun", chf.kfun, "level-l theta quotient K_m");
    chars->add_option("--km", chf.km);
    chars->add_option("--kl", chf.kl);
    chars->add_option("--kscale", chf.kscale, "scale of the chemical potential in K_m");
    chars->add_flag("--slaw", chf.slaw, "inversion law residual of K_m");
    chars->add_option("--tol", chf.tol);

    T2Flags tf;
    auto* t2 = app.add_subcommand("thermal2pt", "thermal and vacuum 2-point functions");
    t2->add_option("--model", tf.model);
    t2->add_option("--tau", tf.tau, "re,im");
    t2->add_option("--zeta12", tf.zeta12, "re,im");
    t2->add_option("--alpha", tf.alpha);
    t2->add_option("--D", tf.D, "spacetime dimension for --alpha kinematics");
    t2->add_option("--u1", tf.u1, "unit vector");
    t2->add_option("--u2", tf.u2, "unit vector");
    t2->add_option("--mu", tf.mu, "re,im");
    t2->add_option("--cutoff", tf.cutoff, "image sum cutoff");
    t2->add_flag("--vacuum", tf.vacuum);
    t2->add_flag("--frame", tf.frame, "moving frame of u1, u2");
    t2->add_option("--laurent", tf.laurent, "Laurent depth");
    t2->add_option("--tol", tf.tol, "Laurent stability tolerance");

    EnergyFlags enf;
    auto* em = app.add_subcommand("energymean", "thermal energy means");
    em->add_option("--model", enf.model)->required();
    em->add_option("--tau", enf.tau, "re,im");
    em->add_flag("--series", enf.series, "exact q-series");
    em->add_option("--order", enf.order);
    em->add_option("--degeneracy", enf.degeneracy, "energy level");

    ThermoFlags thf;
    auto* thermo = app.add_subcommand("thermo", "thermodynamics on the Einstein universe");
    thermo->add_option("action", thf.action, "density, asymptotics, sb, limit2pt, planck")->required();
    thermo->add_option("--model", thf.model, "scalar4 or maxwell");
    thermo->add_option("--beta", thf.beta);
    thermo->add_option("--R", thf.R);
    thermo->add_option("--x12", thf.x12, "t,x,y,z");
    thermo->add_option("--x1", thf.x1, "t,x,y,z");
    thermo->add_option("--x2", thf.x2, "t,x,y,z");
    thermo->add_option("--mode", thf.mode, "limit, fourier, finiteR");
    thermo->add_option("--nmax", thf.nmax);
    thermo->add_option("--h-planck", thf.h, "Planck constant");
    thermo->add_option("--c-light", thf.c, "speed of light");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        bool shown = false;
        for (auto* s : app.get_subcommands()) {
            out << s->help();
            shown = true;
        }
        if (!shown) out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Env env{out, format};
    try {
        if (eval->parsed()) return cmd_eval(env, ef);
        if (series->parsed()) return cmd_series(env, sf);
        if (verify->parsed()) return cmd_verify(env, vf);
        if (reduce->parsed()) return cmd_reduce(env, rf);
        if (curve->parsed()) return cmd_curve(env, cf);
        if (chars->parsed()) return cmd_chars(env, chf);
        if (t2->parsed()) return cmd_thermal2pt(env, tf);
        if (em->parsed()) return cmd_energymean(env, enf);
        if (thermo->parsed()) return cmd_thermo(env, thf);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        json j{{"schema", "ellcft.error/1"}, {"code", e.code()}, {"message", e.what()}};
        err << j.dump() << "\n";
        return is_input_error(e.code()) ? 2 : 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace ellcft::cli
