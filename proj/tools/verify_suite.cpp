#include "verify_suite.hpp"

#include "ellcft/cft.hpp"
#include "ellcft/elliptic.hpp"
#include "ellcft/errors.hpp"
#include "ellcft/lattice.hpp"
#include "ellcft/modforms.hpp"
#include "ellcft/modgroup.hpp"
#include "ellcft/qseries.hpp"
#include "ellcft/thermo.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace ellcft::cli {

namespace {

const double PI = 3.14159265358979323846;
const cplx I(0, 1);

struct Ctx {
    const SuiteOptions& o;
    std::mt19937_64 rng;
    double floor_tol(double f) const { return std::max(o.tol, f); }
};

using CheckFn = std::function<void(Ctx&, CheckResult&)>;

struct Check {
    std::string id;
    CheckFn run;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

void set_numeric(CheckResult& r, double residual, double threshold) {
    r.residual = residual;
    r.threshold = threshold;
    r.pass = std::isfinite(residual) && residual < threshold;
    if (!r.pass && r.mismatch.empty()) r.mismatch = "residual above threshold";
}

void set_exact(CheckResult& r, const std::string& mismatch) {
    r.exact = true;
    r.mismatch = mismatch;
    r.pass = mismatch.empty();
}

std::string coef_str(const Rational& c) { return to_string(c); }
std::string coef_str(const UnitPoly& c) { return c.str(); }

template <class C>
std::string mismatch_of(const EqualityReport<C>& e) {
    if (e.equal) return "";
    return "q^" + to_string(e.exponent) + ": " + coef_str(e.lhs) + " != " + coef_str(e.rhs);
}

Rational Q(long n, long d = 1) { return make_rational(n, d); }

// through q^n inclusive
Rational incl(long n) { return Q(n + 1); }

FracSeries delta_from_eisenstein(const Rational& ord) {
    FracSeries g4 = scale(eisenstein_series(4, 0, 0, ord), Q(20));
    FracSeries g6 = scale(eisenstein_series(6, 0, 0, ord), Q(7));
    return pow(g4, 3) - scale(pow(g6, 2), Q(3));
}

cplx random_tau_in_f(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.0, 1.2);
    double x = re(rng);
    return {x, std::sqrt(1 - x * x) + im(rng)};
}

Unimodular random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), pick(0, 2);
    Unimodular g;
    for (int i = 0, L = len(rng); i < L; ++i) {
        int p = pick(rng);
        g = g * (p == 0 ? Unimodular::S() : Unimodular::T(p == 1 ? 1 : -1));
    }
    return g;
}

double relerr(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<cplx> sample_grid(cplx tau) {
    std::vector<cplx> pts;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) pts.push_back((0.11 + 0.19 * a) + (0.13 + 0.17 * b) * tau);
    return pts;
}

// distance from z to the lattice Z + Z tau, checked over nearby periods
double lattice_distance(cplx z, cplx tau) {
    double m = std::round(z.imag() / tau.imag());
    cplx w = z - m * tau;
    w -= std::round(w.real());
    double d = 1e300;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) d = std::min(d, std::abs(w + double(a) + double(b) * tau));
    return d;
}

// ----- qseries -----

void q_delta_eisenstein(Ctx& c, CheckResult& r) {
    Rational ord = incl(c.o.order);
    set_exact(r, mismatch_of(series_equal(delta_from_eisenstein(ord), named_form_series(NamedForm::delta, ord), ord)));
}

void q_delta_eta_product(Ctx& c, CheckResult& r) {
    Rational ord = incl(c.o.order);
    FracSeries eta24 = shift(pow(euler_product(ord), 24), Q(1));
    set_exact(r, mismatch_of(series_equal(eta24, delta_from_eisenstein(ord), ord)));
}

void q_j_coefficients(Ctx&, CheckResult& r) {
    FracSeries j = named_form_series(NamedForm::j, Q(3));
    const std::vector<std::pair<long, long>> expect{{-1, 1}, {0, 744}, {1, 196884}, {2, 21493760}};
    std::string mm;
    for (auto [e, v] : expect)
        if (j.coeff(Q(e)) != v && mm.empty()) mm = "q^" + std::to_string(e) + ": " + to_string(j.coeff(Q(e)));
    set_exact(r, mm);
}

void q_jacobi_triple_product(Ctx& c, CheckResult& r) {
    Rational ord = incl(std::min(c.o.order, 10L));
    BiSeries a = partition_series(PartitionTag::weyl_NS_product, ord);
    BiSeries b = partition_series(PartitionTag::weyl_NS_theta, ord);
    set_exact(r, mismatch_of(series_equal(a, b, ord)));
}

void q_theta_null_g4(Ctx& c, CheckResult& r) {
    Rational ord = incl(std::min(c.o.order, 10L));
    FracSeries s = pow(theta_null_series(0, 0, ord), 8) + pow(theta_null_series(1, 0, ord), 8) +
                   pow(theta_null_series(0, 1, ord), 8);
    set_exact(r, mismatch_of(series_equal(scale(s, Q(1, 2)), scale(eisenstein_series(4, 0, 0, ord), Q(240)), ord)));
}

void q_series_algebra(Ctx& c, CheckResult& r) {
    std::uniform_int_distribution<long> coef(-5, 5);
    const Rational ord = Q(20);
    std::string mm;
    for (int t = 0; t < c.o.samples && mm.empty(); ++t) {
        FracSeries a(ord);
        a.terms[0] = 1;
        for (long k = 1; k < 20; ++k) a.terms[k] = Q(coef(c.rng));
        a.normalize();
        FracSeries one = FracSeries::constant(Q(1), ord);
        mm = mismatch_of(series_equal(a * invert(a), one, ord));
        if (mm.empty()) mm = mismatch_of(series_equal(principal_root(pow(a, 3), 3), a, ord));
    }
    set_exact(r, mm);
}

void q_bernoulli_sigma(Ctx&, CheckResult& r) {
    std::string mm;
    if (bernoulli(12) != Q(-691, 2730)) mm = "B_12 = " + to_string(bernoulli(12));
    for (long n = 1; n <= 60 && mm.empty(); ++n) {
        Integer s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0) s += d * d * d;
        if (divisor_sigma(3, n) != s) mm = "sigma_3(" + std::to_string(n) + ")";
    }
    set_exact(r, mm);
}

// ----- modgroup -----

void m_reduce_random(Ctx& c, CheckResult& r) {
    std::uniform_real_distribution<double> re(-3, 3), lim(std::log(0.01), std::log(3.0));
    std::uniform_int_distribution<long> num(-40, 40), den(1, 17);
    double worst = 0;
    std::string mm;
    for (int t = 0; t < c.o.samples; ++t) {
        cplx tau(re(c.rng), std::exp(lim(c.rng)));
        Reduction red = reduce_fundamental(tau);
        worst = std::max(worst, relerr(moebius_act(red.gamma, tau), red.tau_star));
        if (!in_fundamental_domain(red.tau_star, 1e-9) && mm.empty()) mm = "tau* outside F";
        if (!(word_matrix(red.word) == red.gamma) && mm.empty()) mm = "word does not multiply to gamma";
        ExactTau et{make_rational(num(c.rng), den(c.rng)), make_rational(1 + std::abs(num(c.rng)), den(c.rng) * 7)};
        ExactReduction er = reduce_fundamental(et);
        if (!(moebius_act(er.gamma, et) == er.tau_star) && mm.empty()) mm = "exact reduction mismatch";
        if (!in_fundamental_domain(er.tau_star.value(), 1e-12) && mm.empty()) mm = "exact tau* outside F";
    }
    r.mismatch = mm;
    set_numeric(r, worst, c.floor_tol(1e-10));
    r.pass = r.pass && mm.empty();
}

void m_gamma_n_genus(Ctx&, CheckResult& r) {
    const long genus[] = {0, 0, 0, 0, 0, 1, 3};
    std::string mm;
    for (long N = 1; N <= 7; ++N)
        if (gamma_n_data(N).top.genus != genus[N - 1] && mm.empty()) mm = "genus of Gamma(" + std::to_string(N) + ")";
    TopData lvl1 = gamma_n_data(1).top;
    for (long k = 0; k <= 120 && mm.empty(); k += 2) {
        long expect = (k % 12 == 2) ? k / 12 : k / 12 + 1;
        if (dim_forms(k, lvl1) != expect) mm = "dim M_" + std::to_string(k);
    }
    set_exact(r, mm);
}

void m_index_action(Ctx& c, CheckResult& r) {
    std::string mm;
    for (int t = 0; t < c.o.samples; ++t) {
        Unimodular g = random_word(c.rng, 8), h = random_word(c.rng, 8);
        for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) {
                auto [k1, l1] = index_act(h, k, l);
                if (index_act(g * h, k, l) != index_act(g, k1, l1) && mm.empty())
                    mm = "composition fails for " + g.str() + " " + h.str();
            }
        if (!subgroup_member(g * Unimodular::T(2) * g.inverse(), parse_subgroup("full")) && mm.empty())
            mm = "membership in SL2(Z)";
    }
    set_exact(r, mm);
}

// ----- elliptic -----

RatPoint multiple_sum(long a, const RatPoint& P, long b, const RatPoint& Q2, const RatCurve& cv) {
    RatPoint s = RatPoint::at_infinity();
    RatPoint p = a < 0 ? curve_neg(P) : P, q = b < 0 ? curve_neg(Q2) : Q2;
    for (long i = 0; i < std::abs(a); ++i) s = curve_add(s, p, cv);
    for (long i = 0; i < std::abs(b); ++i) s = curve_add(s, q, cv);
    return s;
}

void e_curve_exercise(Ctx&, CheckResult& r) {
    RatCurve cv{CurveForm::short_form, Q(-1), Q(1)};
    RatPoint p, q;
    p.x = Q(-11, 9);
    p.y = Q(17, 27);
    q.x = 0;
    q.y = 1;
    RatPoint s = curve_add(p, q, cv);
    bool ok = !s.infinity && s.x == Q(159, 121) && s.y == Q(-1861, 1331);
    set_exact(r, ok ? "" : "got (" + to_string(s.x) + ", " + to_string(s.y) + ")");
}

void e_group_law(Ctx& c, CheckResult& r) {
    RatCurve cv{CurveForm::short_form, Q(-1), Q(1)};
    RatPoint g1, g2;
    g1.x = 0;
    g1.y = 1;
    g2.x = 1;
    g2.y = 1;
    std::uniform_int_distribution<long> m(-3, 3);
    std::string mm;
    for (int t = 0; t < 100 && mm.empty(); ++t) {
        RatPoint p = multiple_sum(m(c.rng), g1, m(c.rng), g2, cv);
        RatPoint q = multiple_sum(m(c.rng), g1, m(c.rng), g2, cv);
        RatPoint s = multiple_sum(m(c.rng), g1, m(c.rng), g2, cv);
        RatPoint pq = curve_add(p, q, cv);
        if (!(pq == curve_add(q, p, cv))) mm = "commutativity, triple " + std::to_string(t);
        else if (!(curve_add(pq, s, cv) == curve_add(p, curve_add(q, s, cv), cv)))
            mm = "associativity, triple " + std::to_string(t);
        else if (!pq.infinity && curve_residual(pq, cv) != 0)
            mm = "sum off the curve, triple " + std::to_string(t);
        else if (!curve_add(p, curve_neg(p), cv).infinity)
            mm = "inverse, triple " + std::to_string(t);
    }
    set_exact(r, mm);
}

const std::vector<cplx> P_TAUS{cplx(0, 1), cplx(0.5, 1), cplx(0, 2)};

void e_p_periodicity(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (cplx tau : P_TAUS) {
        for (int k = 1; k <= 3; ++k)
            for (int kap = 0; kap < 2; ++kap)
                for (int lam = 0; lam < 2; ++lam) {
                    if (k + kap + lam <= 1) continue;
                    PIndex idx{k, kap, lam, 0};
                    for (cplx z : sample_grid(tau)) {
                        cplx v = p_eval(idx, z, tau);
                        worst = std::max(worst, std::abs(p_eval(idx, z + 1.0, tau) - (lam ? -v : v)));
                        worst = std::max(worst, std::abs(p_eval(idx, z + tau, tau) - (kap ? -v : v)));
                    }
                }
        for (cplx z : sample_grid(tau)) {
            cplx v = p_eval({1, 0, 0, 0}, z, tau);
            worst = std::max(worst, std::abs(p_eval({1, 0, 0, 0}, z + 1.0, tau) - v));
            worst = std::max(worst, std::abs(p_eval({1, 0, 0, 0}, z + tau, tau) - v + 2.0 * PI * I));
        }
    }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

const std::vector<cplx> LADDER_Z{cplx(0.21, 0.07), cplx(-0.33, 0.4), cplx(0.1, -0.25)};

void e_p_parity(Ctx& c, CheckResult& r) {
    cplx tau(0.3, 0.8);
    double worst = 0;
    for (int k = 1; k <= 4; ++k)
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : LADDER_Z) {
                    cplx v = p_eval({k, kap, lam, 0}, z, tau);
                    worst = std::max(worst, std::abs(p_eval({k, kap, lam, 0}, -z, tau) - (k % 2 ? -v : v)));
                }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

void e_p_ladder(Ctx& c, CheckResult& r) {
    cplx tau(0.3, 0.8);
    const double h = 1e-5;
    double worst = 0;
    for (int k = 1; k <= 4; ++k)
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : LADDER_Z) {
                    PIndex idx{k, kap, lam, 0};
                    cplx d = (p_eval(idx, z + h, tau) - p_eval(idx, z - h, tau)) / (2 * h);
                    worst = std::max(worst, relerr(d, -double(k) * p_eval({k + 1, kap, lam, 0}, z, tau)));
                }
    set_numeric(r, worst, c.floor_tol(1e-6));
}

void e_p_covariance(Ctx& c, CheckResult& r) {
    cplx tau(0.15, 1.05);
    std::vector<Unimodular> gs{Unimodular::S(), Unimodular::T(), Unimodular::T() * Unimodular::S()};
    double worst = 0;
    for (const auto& g : gs)
        for (int k = 1; k <= 4; ++k)
            for (auto [kap, lam] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}}) {
                cplx j = automorphy(g, tau);
                cplx gt = moebius_act(g, tau);
                auto [k2, l2] = index_act(g, kap, lam);
                for (cplx z : {cplx(0.2, 0.3), cplx(-0.31, 0.12)}) {
                    cplx lhs = std::pow(j, -k) * p_eval({k, k2, l2, 0}, z / j, gt);
                    worst = std::max(worst, std::abs(lhs - p_eval({k, kap, lam, 0}, z, tau)));
                }
            }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

cplx theta11_prime0(cplx tau) {
    cplx s = 0;
    for (int n = 0; n < 60; ++n) {
        double x = n + 0.5;
        s += (n % 2 ? -1.0 : 1.0) * (2 * n + 1) * std::exp(I * PI * tau * x * x);
    }
    return 2.0 * PI * s;
}

void e_p_theta_ratio(Ctx& c, CheckResult& r) {
    cplx tau(0.05, 1.2);
    double worst = 0;
    for (cplx mu : {cplx(0.13, 0.0), cplx(0.21, 0.05)})
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : sample_grid(tau)) {
                    int a = 1 - lam, b = 1 - kap;
                    cplx ratio = theta11_prime0(tau) / theta_eval(a, b, mu, tau) * theta_eval(a, b, z + mu, tau) /
                                 theta_eval(1, 1, z, tau);
                    cplx expect = ratio - double(1 - lam) * PI / std::tan(PI * (mu + 0.5 * kap));
                    worst = std::max(worst, std::abs(p_eval({1, kap, lam, mu}, z, tau) - expect));
                }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

const std::vector<cplx> W_TAUS{cplx(0, 1), cplx(0, 2), cplx(0.5, 1)};

cplx random_point(std::mt19937_64& rng, cplx tau) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (;;) {
        cplx z = u(rng) + u(rng) * tau;
        if (lattice_distance(z, tau) > 0.05) return z;
    }
}

void e_weierstrass_ode(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (cplx tau : W_TAUS) {
        cplx g2 = g2_invariant(tau), g3 = g3_invariant(tau);
        for (int t = 0; t < c.o.samples; ++t) {
            cplx z = random_point(c.rng, tau);
            cplx p = wp(z, tau), dp = wp_prime(z, tau);
            worst = std::max(worst, relerr(dp * dp, 4.0 * p * p * p - g2 * p - g3));
        }
    }
    set_numeric(r, worst, c.floor_tol(1e-6));
}

void e_addition_theorem(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (cplx tau : W_TAUS) {
        CplxCurve cv{CurveForm::four_x_cubed, g2_invariant(tau), g3_invariant(tau)};
        for (int t = 0; t < c.o.samples; ++t) {
            cplx a, b;
            do {
                a = random_point(c.rng, tau);
                b = random_point(c.rng, tau);
            } while (lattice_distance(a + b, tau) < 0.05 || lattice_distance(a - b, tau) < 0.05);
            CplxPoint s = curve_add(uniformize(a, tau), uniformize(b, tau), cv, 1e-6);
            CplxPoint u = uniformize(a + b, tau);
            if (s.infinity != u.infinity) {
                worst = INFINITY;
                continue;
            }
            worst = std::max({worst, relerr(s.x, u.x), relerr(s.y, u.y)});
        }
    }
    set_numeric(r, worst, c.floor_tol(1e-6));
}

// ----- modforms -----

void f_g2_anomaly(Ctx& c, CheckResult& r) {
    FormId g2 = FormId::eisenstein(2);
    double worst = 0;
    for (int t = 0; t < c.o.samples; ++t) {
        cplx tau = random_tau_in_f(c.rng);
        Unimodular g = t == 0 ? Unimodular::S() : random_word(c.rng, 6);
        cplx ct = automorphy(g, tau);
        cplx expect = I * g.c.get_d() / (4 * PI * ct);
        worst = std::max(worst, std::abs(covariance_residual(g2, g, tau) - expect));
    }
    set_numeric(r, worst, c.floor_tol(1e-9));
}

void f_covariance(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (const char* name : {"delta", "G4", "G6", "j"}) {
        FormId f = parse_form(name);
        for (int t = 0; t < c.o.samples; ++t) {
            cplx tau = random_tau_in_f(c.rng);
            worst = std::max(worst, std::abs(covariance_residual(f, random_word(c.rng, 10), tau)));
        }
    }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

// ----- cft -----

void c_image_sum(Ctx& c, CheckResult& r) {
    Kinematics k = Kinematics::from_alpha(cplx(0.21, 0.07), 0.17);
    double worst = 0;
    for (const char* name : {"chiral_weyl", "scalar4", "scalar6", "maxwell"})
        for (cplx tau : {cplx(0, 1), cplx(0.3, 0.9), cplx(-0.45, 0.5)}) {
            ModelId m = parse_model(name);
            worst = std::max(worst, max_abs_diff(thermal_2pt(m, k, tau), image_sum_2pt(m, k, tau, 200)));
        }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

void c_energy_means(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (cplx tau : {cplx(0, 1), cplx(0, 2)}) {
        for (const char* name : {"chiral_weyl", "scalar4", "weyl4_canonical", "weyl4_subcanonical", "maxwell"})
            worst = std::max(worst, std::abs(energy_mean(parse_model(name), tau).residual));
        cplx g4 = form_eval(FormId::eisenstein(4), tau).value;
        cplx f2 = form_eval(FormId::named(FormKind::F2), tau).value;
        worst = std::max(worst, std::abs(energy_mean(parse_model("chiral_weyl"), tau).numeric - f2));
        worst = std::max(worst, std::abs(energy_mean(parse_model("scalar4"), tau).numeric - g4));
        cplx tot = energy_mean(parse_model("maxwell"), tau).numeric +
                   energy_mean(parse_model("gauge_longitudinal"), tau).numeric;
        worst = std::max(worst, std::abs(tot - 4.0 * g4));
    }
    set_numeric(r, worst, c.floor_tol(1e-10));
}

void c_vacuum_energies(Ctx&, CheckResult& r) {
    const std::vector<std::pair<const char*, Rational>> expect{{"scalar4", Q(1, 240)},
                                                               {"maxwell", Q(11, 120)},
                                                               {"weyl4_canonical", Q(17, 960)},
                                                               {"weyl4_subcanonical", Q(-29, 960)},
                                                               {"chiral_weyl", Q(-1, 24)}};
    std::string mm;
    for (const auto& [name, v] : expect)
        if (vacuum_energy(parse_model(name)) != v && mm.empty())
            mm = std::string(name) + ": " + to_string(vacuum_energy(parse_model(name)));
    set_exact(r, mm);
}

// ----- lattice -----

void l_e8_theta(Ctx& c, CheckResult& r) {
    Rational ord = incl(std::min(c.o.order, 10L));
    set_exact(r, mismatch_of(series_equal(lattice_theta_series(e8_gram(), ord),
                                          scale(eisenstein_series(4, 0, 0, ord), Q(240)), ord)));
}

void l_e8_character_cube(Ctx& c, CheckResult& r) {
    long n = std::min(c.o.order, 6L);
    Rational ord = incl(n);
    BiSeries chi = voa_character_series(e8_gram(), RatVector(8, Q(0)), {}, ord + Q(1));
    set_exact(r, mismatch_of(series_equal(pow(chi, 3), to_bi(named_form_series(NamedForm::j, ord)), ord)));
}

void l_cocycle(Ctx&, CheckResult& r) {
    std::string mm;
    long pairs = 0;
    for (auto [name, w] : std::vector<std::pair<const char*, long>>{{"a1", 9}, {"a2", 6}, {"e8", 3}}) {
        CocycleReport rep = cocycle_verify(cocycle_build(parse_gram(name), w));
        pairs = rep.pairs;
        std::string bad;
        if (!rep.unit) bad += " unimodularity";
        if (!rep.normalized) bad += " normalization";
        if (!rep.two_cocycle) bad += " 2-cocycle";
        if (!rep.symmetry) bad += " symmetry";
        if (!rep.conjugation) bad += " conjugation";
        if (pairs < 200) bad += " window below 200 pairs";
        if (!bad.empty() && mm.empty()) mm = std::string(name) + ":" + bad;
    }
    set_exact(r, mm);
}

void l_k_splitting(Ctx& c, CheckResult& r) {
    Rational ord = incl(std::min(c.o.order, 5L));
    std::string mm;
    for (long m : {0, 1, -1, 2}) {
        BiSeries lhs = k_series(Q(m), Q(3), ord);
        BiSeries rhs = k_series(Q(2 * m), Q(12), ord, Q(2)) + k_series(Q(2 * m + 6), Q(12), ord, Q(2));
        if (mm.empty()) mm = mismatch_of(series_equal(lhs, rhs, ord));
    }
    set_exact(r, mm);
}

void l_n2_t2(Ctx& c, CheckResult& r) {
    cplx t(0.05, 0.9);
    double worst = 0;
    for (int k : {1, 2})
        for (auto lab : n2_labels(k)) {
            cplx a = n2_character_value(k, lab.l, lab.m, t + 2.0), b = n2_character_value(k, lab.l, lab.m, t);
            worst = std::max(worst, std::abs(a - n2_t2_eigenvalue(k, lab.l, lab.m) * b));
        }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

void l_n2_s_closure(Ctx& c, CheckResult& r) {
    cplx tau(0, 1.1);
    double worst = 0;
    for (int k : {1, 2}) {
        auto labs = n2_labels(k);
        auto s = n2_smatrix(k);
        for (size_t a = 0; a < labs.size(); ++a) {
            cplx lhs = n2_character_value(k, labs[a].l, labs[a].m, -1.0 / tau), rhs = 0;
            for (size_t b = 0; b < labs.size(); ++b)
                rhs += s[a][b] * n2_character_value(k, labs[b].l, labs[b].m, tau);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    set_numeric(r, worst, c.floor_tol(1e-6));
}

// ----- thermo -----

void t_sb_scalar(Ctx& c, CheckResult& r) {
    double v = energy_density(ThermoModel::scalar4, {1.0, 100.0});
    set_numeric(r, std::abs(v - PI * PI / 30), c.floor_tol(1e-10));
}

void t_sb_maxwell(Ctx& c, CheckResult& r) {
    set_numeric(r, std::abs(sb_constant(ThermoModel::maxwell).residual), c.floor_tol(1e-6));
}

double leading_remainder(ThermoModel m, double x) {
    double e = std::exp(-4 * PI * PI / x);
    return m == ThermoModel::scalar4 ? 8 * PI * PI * e : (16 * PI * PI + 4 * x * x) * e;
}

void t_asymptotic_polynomial(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (ThermoModel m : {ThermoModel::scalar4, ThermoModel::maxwell}) {
        Asymptotics a = density_asymptotics(m, {1.0, 3.0});
        worst = std::max(worst, std::abs(a.residual / leading_remainder(m, 1.0 / 3) - 1));
    }
    set_numeric(r, worst, c.floor_tol(1e-6));
}

void t_remainder_bound(Ctx&, CheckResult& r) {
    double worst = 0;
    for (ThermoModel m : {ThermoModel::scalar4, ThermoModel::maxwell}) {
        Asymptotics a = density_asymptotics(m, {1.0, 3.0});
        worst = std::max(worst, std::abs(a.residual) / a.bound);
    }
    r.mismatch = worst < 1 ? "" : "remainder exceeds 10 e^{-4 pi^2 R/beta}";
    set_numeric(r, worst, 1.0);
}

void t_fourier_vs_limit(Ctx& c, CheckResult& r) {
    double worst = 0;
    for (double t : {0.0, 0.3, 0.7})
        for (double x : {0.9, 1.7, 2.5}) {
            MinkowskiPair p{{t, x, 0.2, -0.1}, {0, 0, 0, 0}};
            cplx a = minkowski_thermal_2pt(p, 1.0, TwoPointMode::limit).value;
            cplx b = minkowski_thermal_2pt(p, 1.0, TwoPointMode::fourier).value;
            worst = std::max(worst, std::abs(a - b));
        }
    set_numeric(r, worst, c.floor_tol(1e-8));
}

void t_finite_r_shift(Ctx& c, CheckResult& r) {
    const double beta = 1, R = 100;
    MinkowskiPair p{{0, 0.3, 0, 0}, {0, 0, 0, 0}};
    cplx fin = minkowski_thermal_2pt(p, beta, TwoPointMode::finite_R, R).value;
    cplx lim = minkowski_thermal_2pt(p, beta, TwoPointMode::limit).value;
    double shift = -1 / (4 * PI * PI * beta * R);
    set_numeric(r, std::abs((fin - lim).real() / shift - 1), c.floor_tol(0.1));
}

const std::vector<Check>& registry() {
    static const std::vector<Check> checks = [] {
        std::vector<Check> v{
            {"cft.energy_means", c_energy_means},
            {"cft.image_sum", c_image_sum},
            {"cft.vacuum_energies", c_vacuum_energies},
            {"elliptic.addition_theorem", e_addition_theorem},
            {"elliptic.curve_exercise", e_curve_exercise},
            {"elliptic.group_law", e_group_law},
            {"elliptic.p_covariance", e_p_covariance},
            {"elliptic.p_ladder", e_p_ladder},
            {"elliptic.p_parity", e_p_parity},
            {"elliptic.p_periodicity", e_p_periodicity},
            {"elliptic.p_theta_ratio", e_p_theta_ratio},
            {"elliptic.weierstrass_ode", e_weierstrass_ode},
            {"lattice.cocycle", l_cocycle},
            {"lattice.e8_character_cube", l_e8_character_cube},
            {"lattice.e8_theta", l_e8_theta},
            {"lattice.k_splitting", l_k_splitting},
            {"lattice.n2_s_closure", l_n2_s_closure},
            {"lattice.n2_t2", l_n2_t2},
            {"modforms.covariance", f_covariance},
            {"modforms.g2_anomaly", f_g2_anomaly},
            {"modgroup.gamma_n_genus", m_gamma_n_genus},
            {"modgroup.index_action", m_index_action},
            {"modgroup.reduce_random", m_reduce_random},
            {"qseries.bernoulli_sigma", q_bernoulli_sigma},
            {"qseries.delta_eisenstein", q_delta_eisenstein},
            {"qseries.delta_eta_product", q_delta_eta_product},
            {"qseries.j_coefficients", q_j_coefficients},
            {"qseries.jacobi_triple_product", q_jacobi_triple_product},
            {"qseries.series_algebra", q_series_algebra},
            {"qseries.theta_null_g4", q_theta_null_g4},
            {"thermo.asymptotic_polynomial", t_asymptotic_polynomial},
            {"thermo.fourier_vs_limit", t_fourier_vs_limit},
            {"thermo.finite_r_shift", t_finite_r_shift},
            {"thermo.remainder_bound", t_remainder_bound},
            {"thermo.sb_maxwell", t_sb_maxwell},
            {"thermo.sb_scalar", t_sb_scalar},
        };
        std::sort(v.begin(), v.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
        return v;
    }();
    return checks;
}

std::string shortest(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool in_suite(const std::string& id, const std::string& suite) {
    return suite == "all" || id.rfind(suite + ".", 0) == 0;
}

void require_suite(const std::string& suite) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        fail("InvalidArgument", "unknown suite '" + suite + "'");
}

}  // namespace

long SuiteReport::failed() const {
    return std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"all",     "qseries", "modgroup", "elliptic",
                                                "modforms", "cft",    "lattice",  "thermo"};
    return names;
}

std::vector<std::string> check_ids(const std::string& suite) {
    require_suite(suite);
    std::vector<std::string> out;
    for (const auto& c : registry())
        if (in_suite(c.id, suite)) out.push_back(c.id);
    return out;
}

SuiteReport run_suite(const SuiteOptions& o) {
    require_suite(o.suite);
    if (o.order < 1) fail("InvalidArgument", "order must be positive");
    if (o.samples < 1) fail("InvalidArgument", "samples must be positive");
    if (!(o.tol > 0)) fail("InvalidArgument", "tol must be positive");
    std::vector<const Check*> todo;
    for (const auto& c : registry())
        if (in_suite(c.id, o.suite)) todo.push_back(&c);
    SuiteReport rep;
    rep.options = o;
    rep.checks.resize(todo.size());
    const long n = static_cast<long>(todo.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        const Check& chk = *todo[static_cast<size_t>(i)];
        CheckResult& r = rep.checks[static_cast<size_t>(i)];
        r.id = chk.id;
        Ctx ctx{o, std::mt19937_64(o.seed ^ fnv1a(chk.id))};
        auto t0 = std::chrono::steady_clock::now();
        try {
            chk.run(ctx, r);
        } catch (const std::exception& e) {
            r.pass = false;
            r.mismatch = std::string("exception: ") + e.what();
        }
        r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    return rep;
}

nlohmann::json report_json(const SuiteReport& r, bool timing) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json j{{"id", c.id}, {"status", c.pass ? "pass" : "fail"}, {"kind", c.exact ? "exact" : "numeric"}};
        if (!c.exact) {
            j["residual"] = c.residual;
            j["threshold"] = c.threshold;
        }
        if (!c.mismatch.empty()) j["mismatch"] = c.mismatch;
        if (timing) j["runtime_ms"] = c.runtime_ms;
        checks.push_back(j);
    }
    long failed = r.failed();
    return {{"schema", "ellcft.verify/1"},
            {"suite", r.options.suite},
            {"seed", r.options.seed},
            {"order", r.options.order},
            {"tol", r.options.tol},
            {"samples", r.options.samples},
            {"checks", checks},
            {"passed", static_cast<long>(r.checks.size()) - failed},
            {"failed", failed}};
}

std::string report_csv(const SuiteReport& r, bool timing) {
    std::ostringstream s;
    s << "id,status,kind,residual,threshold,mismatch" << (timing ? ",runtime_ms" : "") << "\n";
    for (const auto& c : r.checks) {
        std::string mm = c.mismatch;
        std::replace(mm.begin(), mm.end(), ',', ';');
        s << c.id << ',' << (c.pass ? "pass" : "fail") << ',' << (c.exact ? "exact" : "numeric") << ',';
        if (!c.exact) s << shortest(c.residual) << ',' << shortest(c.threshold);
        else s << ',';
        s << ',' << mm;
        if (timing) s << ',' << shortest(c.runtime_ms);
        s << "\n";
    }
    return s.str();
}

}  // namespace ellcft::cli
