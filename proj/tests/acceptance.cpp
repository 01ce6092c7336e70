// Acceptance criteria 1-15. Each criterion compares the library against test-side oracles
// and prints one PASS/FAIL line. Tolerances are fixed below.
#include "ellcft/cft.hpp"
#include "ellcft/elliptic.hpp"
#include "ellcft/lattice.hpp"
#include "ellcft/modforms.hpp"
#include "ellcft/modgroup.hpp"
#include "ellcft/models.hpp"
#include "ellcft/qseries.hpp"
#include "ellcft/thermo.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace ellcft;
using oracle::i128;

namespace {

const double PI = 3.14159265358979323846;
const cplx I(0, 1);

namespace tol {
const double p_suite = 1e-8;
const double finite_difference = 1e-6;
const double weierstrass = 1e-6;
const double invariants = 1e-10;
const double g2_anomaly = 1e-9;
const double covariance = 1e-8;
const double image_sum = 1e-8;
const double energy_mean = 1e-10;
const double sb_scalar = 1e-10;
const double sb_maxwell = 1e-6;
const double asymptotic_coeffs = 1e-12;
const double remainder_factor = 10;  // remainder < 10 e^{-4 pi^2 R/beta}
const double fourier = 1e-8;
const double finite_r_relative = 0.1;
const double t2 = 1e-8;
const double s_law = 1e-6;
const double density = 1e-12;
}  // namespace tol

namespace budget {  // seconds
const double series = 1.0;
const double lattice = 30.0;
}  // namespace budget

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!pass) detail << "; ";
            else detail.str("");
            pass = false;
            detail << what;
        }
    }
    void worst(const std::string& what, double value, double limit) {
        if (pass) detail << what << " " << value << " (< " << limit << ") ";
        std::ostringstream msg;
        msg << what << " = " << value << " exceeds " << limit;
        require(std::isfinite(value) && value < limit, msg.str());
    }
};

Rational Q(long n, long d = 1) { return make_rational(n, d); }
Rational Q128(i128 v) { return Rational(std::to_string(static_cast<long long>(v))); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- integer q-series oracles (index = power of q) ----

using IntSeries = std::vector<i128>;

IntSeries inverse(const IntSeries& a) {
    IntSeries b(a.size(), 0);
    b[0] = 1;
    for (size_t n = 1; n < a.size(); ++n)
        for (size_t k = 1; k <= n; ++k) b[n] -= a[k] * b[n - k];
    return b;
}

IntSeries power(const IntSeries& a, int e) {
    IntSeries r(a.size(), 0);
    r[0] = 1;
    for (int i = 0; i < e; ++i) r = oracle::mul(r, a, a.size());
    return r;
}

// 1 + 240 sum sigma_3(n) q^n = 240 G4
IntSeries e4(size_t n) {
    IntSeries s(n, 0);
    s[0] = 1;
    for (size_t k = 1; k < n; ++k) s[k] = 240 * oracle::sigma(3, long(k));
    return s;
}

// 1 - 504 sum sigma_5(n) q^n = -504 G6
IntSeries e6(size_t n) {
    IntSeries s(n, 0);
    s[0] = 1;
    for (size_t k = 1; k < n; ++k) s[k] = -504 * i128(oracle::sigma(5, long(k)));
    return s;
}

// coefficients of q^{-1}, q^0, ... of j = E4^3 / (q prod (1 - q^n)^24)
IntSeries j_oracle(size_t n) {
    return oracle::mul(power(e4(n), 3), inverse(oracle::euler_power(24, n)), n);
}

std::string compare_rational(const FracSeries& s, const std::vector<Rational>& expect, const Rational& start,
                             const Rational& step) {
    for (size_t k = 0; k < expect.size(); ++k) {
        Rational e = start + step * Q(long(k));
        if (s.coeff(e) != expect[k])
            return "q^" + to_string(e) + ": " + to_string(s.coeff(e)) + " != " + to_string(expect[k]);
    }
    return "";
}

std::vector<Rational> to_rationals(const IntSeries& s) {
    std::vector<Rational> v;
    for (i128 c : s) v.push_back(Q128(c));
    return v;
}

// ---- numeric Eisenstein oracles: constant + sum sigma_{2k-1}(n) q^n ----

cplx g_oracle(int two_k, cplx tau) {
    const double c0 = two_k == 2 ? -1.0 / 24 : two_k == 4 ? 1.0 / 240 : -1.0 / 504;
    cplx q = std::exp(2.0 * PI * I * tau), qn = 1, s = c0;
    for (long n = 1; n < 4000; ++n) {
        qn *= q;
        if (std::abs(qn) * std::pow(double(n), two_k) < 1e-20) break;
        s += double(oracle::sigma(two_k - 1, n)) * qn;
    }
    return s;
}

// ---- criteria ----

void c1(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const size_t n = 31;
    const Rational ord = Q(31);
    FracSeries g4 = eisenstein_series(4, 0, 0, ord), g6 = eisenstein_series(6, 0, 0, ord);
    FracSeries rhs = pow(scale(g4, Q(20)), 3) - scale(pow(scale(g6, Q(7)), 2), Q(3));
    double dt = seconds_since(t0);
    // (20 G4)^3 - 3 (7 G6)^2 = (E4^3 - E6^2)/1728 against q prod (1 - q^n)^24
    IntSeries e43 = power(e4(n), 3), e62 = power(e6(n), 2), diff(n, 0);
    for (size_t k = 0; k < n; ++k) diff[k] = e43[k] - e62[k];
    IntSeries eta24 = oracle::euler_power(24, n);
    bool oracle_ok = diff[0] == 0;
    for (size_t k = 1; k < n; ++k) oracle_ok = oracle_ok && diff[k] == 1728 * eta24[k - 1];
    o.require(oracle_ok, "oracle: E4^3 - E6^2 != 1728 Delta");
    std::vector<Rational> delta;
    for (size_t k = 0; k + 1 < n; ++k) delta.push_back(Q128(eta24[k]));
    std::string mm = compare_rational(rhs, delta, Q(1), Q(1));
    o.require(mm.empty(), "Eisenstein form of Delta " + mm);
    o.require(rhs.coeff(Q(0)) == 0, "constant term of Eisenstein form");
    auto rep = series_equal(rhs, named_form_series(NamedForm::delta, ord), ord);
    o.require(rep.equal, "series_equal reports a mismatch at q^" + to_string(rep.exponent));
    o.require(dt < budget::series, "runtime " + std::to_string(dt) + " s");
    if (o.pass) o.detail << "exact through q^30, " << dt << " s";
}

void c2(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const Rational ord = Q(31);
    FracSeries eta24 = shift(pow(euler_product(ord), 24), Q(1));
    FracSeries g4 = eisenstein_series(4, 0, 0, ord), g6 = eisenstein_series(6, 0, 0, ord);
    FracSeries eis = pow(scale(g4, Q(20)), 3) - scale(pow(scale(g6, Q(7)), 2), Q(3));
    auto rep = series_equal(eta24, eis, ord);
    FracSeries j = named_form_series(NamedForm::j, Q(3));
    double dt = seconds_since(t0);
    o.require(rep.equal, "eta^24 vs Eisenstein at q^" + to_string(rep.exponent));
    IntSeries et = oracle::euler_power(24, 30);
    std::string mm = compare_rational(eta24, to_rationals(et), Q(1), Q(1));
    o.require(mm.empty(), "eta^24 vs naive product " + mm);
    IntSeries jo = j_oracle(4);
    const long expected[] = {1, 744, 196884, 21493760};
    for (long k = 0; k < 4; ++k) {
        o.require(j.coeff(Q(k - 1)) == expected[k], "j coefficient of q^" + std::to_string(k - 1));
        o.require(jo[k] == expected[k], "oracle j coefficient of q^" + std::to_string(k - 1));
    }
    o.require(dt < budget::series, "runtime " + std::to_string(dt) + " s");
    if (o.pass) o.detail << "exact through q^30, j = q^-1 + 744 + 196884 q + 21493760 q^2, " << dt << " s";
}

// coefficient of q^{t/2 - 1/24} as a map y-power -> count
using YPoly = std::map<long, i128>;

void c3(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const long T = 20;  // through q^10
    const Rational ord = Q(11);
    BiSeries prod = partition_series(PartitionTag::weyl_NS_product, ord);
    BiSeries theta = partition_series(PartitionTag::weyl_NS_theta, ord);
    auto rep = series_equal(prod, theta, ord);
    double dt = seconds_since(t0);
    o.require(rep.equal, "product vs theta at q^" + to_string(rep.exponent));
    // naive product over fermion modes q^{r}, r = n - 1/2, in units of q^{1/2}
    std::vector<YPoly> p(T + 1);
    p[0][0] = 1;
    for (long r2 = 1; r2 <= T; r2 += 2)
        for (int sgn : {1, -1}) {
            std::vector<YPoly> nxt = p;
            for (long t = 0; t + r2 <= T; ++t)
                for (auto [y, c] : p[t]) nxt[t + r2][y + sgn] += c;
            p = nxt;
        }
    // sum_n y^n q^{n^2/2} times the partition generating function
    IntSeries part = inverse(oracle::euler_power(1, T / 2 + 1));
    std::vector<YPoly> th(T + 1);
    for (long n = -T; n <= T; ++n)
        for (long m = 0; n * n + 2 * m <= T; ++m) th[n * n + 2 * m][n] += part[m];
    for (long t = 0; t <= T; ++t) {
        UnitPoly expect;
        for (auto [y, c] : p[t])
            if (c != 0) expect += UnitPoly::monomial(Q(y), Q128(c));
        UnitPoly from_theta;
        for (auto [y, c] : th[t])
            if (c != 0) from_theta += UnitPoly::monomial(Q(y), Q128(c));
        Rational e = Q(t, 2) - Q(1, 24);
        o.require(expect == from_theta, "oracle product vs theta at q^" + to_string(e));
        o.require(prod.coeff(e) == expect, "library product vs naive product at q^" + to_string(e));
    }
    o.require(dt < budget::series, "runtime " + std::to_string(dt) + " s");
    if (o.pass) o.detail << "exact through q^10 over all y powers, " << dt << " s";
}

void c4(Outcome& o) {
    const long T = 20;  // through q^10 in units of q^{1/2}
    const Rational ord = Q(11);
    FracSeries s = pow(theta_null_series(0, 0, ord), 8) + pow(theta_null_series(1, 0, ord), 8) +
                   pow(theta_null_series(0, 1, ord), 8);
    FracSeries lhs = scale(s, Q(1, 2));
    FracSeries g = scale(eisenstein_series(4, 0, 0, ord), Q(240));
    auto rep = series_equal(lhs, g, ord);
    o.require(rep.equal, "theta^8 sum vs 240 G4 at q^" + to_string(rep.exponent));
    // theta_00 = sum q^{n^2/2}, theta_01 = sum (-1)^n q^{n^2/2}, theta_10 = q^{1/8} sum q^{n(n+1)/2}
    IntSeries t00(T + 1, 0), t01(T + 1, 0), t10(T + 1, 0);
    for (long n = -T; n <= T; ++n)
        if (n * n <= T) {
            t00[n * n] += 1;
            t01[n * n] += n % 2 ? -1 : 1;
        }
    for (long n = -T; n <= T; ++n)
        if (n * (n + 1) <= T) t10[n * (n + 1)] += 1;
    IntSeries a = power(t00, 8), b = power(t01, 8), c = power(t10, 8), E4 = e4(T / 2 + 1);
    bool ok = true;
    for (long t = 0; t <= T; ++t) {
        i128 sum = a[t] + b[t] + (t >= 2 ? c[t - 2] : 0);  // theta_10^8 = q (...)^8
        i128 want = t % 2 ? 0 : 2 * E4[t / 2];
        ok = ok && sum == want;
    }
    o.require(ok, "oracle theta sums vs 240 G4");
    std::string mm = compare_rational(g, to_rationals(E4), Q(0), Q(1));
    o.require(mm.empty(), "240 G4 vs 1 + 240 sigma_3: " + mm);
    if (o.pass) o.detail << "exact through q^10";
}

// number of E8 vectors of each norm 2n, from the D8 and D8 + (1/2,...,1/2) cosets
IntSeries e8_counts(long nmax) {
    const long N = 2 * nmax;
    // integer coordinates: state (norm, parity of sum)
    std::vector<std::array<i128, 2>> a(N + 1, {0, 0});
    a[0][0] = 1;
    // half-integer coordinates x = u/2, u odd: state (sum u^2, sum u mod 4), norm = sum u^2 / 4
    std::vector<std::array<i128, 4>> h(4 * N + 1, {0, 0, 0, 0});
    h[0][0] = 1;
    for (int coord = 0; coord < 8; ++coord) {
        std::vector<std::array<i128, 2>> na(N + 1, {0, 0});
        for (long s = 0; s <= N; ++s)
            for (int p = 0; p < 2; ++p)
                if (a[s][p])
                    for (long x = -5; x <= 5; ++x)
                        if (s + x * x <= N) na[s + x * x][(p + (x & 1)) & 1] += a[s][p];
        a = na;
        std::vector<std::array<i128, 4>> nh(4 * N + 1, {0, 0, 0, 0});
        for (long s = 0; s <= 4 * N; ++s)
            for (int p = 0; p < 4; ++p)
                if (h[s][p])
                    for (long u = -9; u <= 9; u += 2)
                        if (s + u * u <= 4 * N) nh[s + u * u][((p + u) % 4 + 4) % 4] += h[s][p];
        h = nh;
    }
    IntSeries out(nmax + 1, 0);
    for (long n = 0; n <= nmax; ++n) out[n] = a[2 * n][0] + h[8 * n][0];
    return out;
}

void c5(Outcome& o) {
    auto t0 = std::chrono::steady_clock::now();
    const Rational ord = Q(11);
    FracSeries th = lattice_theta_series(e8_gram(), ord);
    BiSeries chi = voa_character_series(e8_gram(), RatVector(8, Q(0)), {}, Q(8));
    double dt = seconds_since(t0);
    IntSeries counts = e8_counts(10), E4 = e4(11);
    o.require(counts == E4, "oracle E8 vector counts vs 1 + 240 sigma_3");
    std::string mm = compare_rational(th, to_rationals(counts), Q(0), Q(1));
    o.require(mm.empty(), "theta series vs enumeration: " + mm);
    // chi = q^{-1/3} Theta / prod (1 - q^n)^8, chi^3 = j
    const size_t n = 8;
    IntSeries theta_n(counts.begin(), counts.begin() + n);
    IntSeries chi_o = oracle::mul(theta_n, inverse(oracle::euler_power(8, n)), n);
    for (size_t k = 0; k < n - 1; ++k) {
        Rational e = Q(long(k)) - Q(1, 3);
        o.require(chi.coeff(e) == UnitPoly(Q128(chi_o[k])), "character coefficient at q^" + to_string(e));
    }
    IntSeries cube = power(chi_o, 3), jo = j_oracle(n);
    for (size_t k = 0; k < n; ++k) o.require(cube[k] == jo[k], "oracle chi^3 vs j at q^" + std::to_string(long(k) - 1));
    const Rational through = Q(7);
    auto rep = series_equal(pow(chi, 3), to_bi(named_form_series(NamedForm::j, through)), through);
    o.require(rep.equal, "chi^3 vs j at q^" + to_string(rep.exponent));
    o.require(dt < budget::lattice, "lattice runtime " + std::to_string(dt) + " s");
    if (o.pass) o.detail << "Theta = 240 G4 through q^10, chi^3 = j through q^6, " << dt << " s";
}

void c6(Outcome& o) {
    RatCurve cv{CurveForm::short_form, Q(-1), Q(1)};
    auto on_curve = [](const RatPoint& p) { return p.infinity || p.y * p.y == p.x * p.x * p.x - p.x + 1; };
    RatPoint p, q;
    p.x = Q(-11, 9);
    p.y = Q(17, 27);
    q.x = 0;
    q.y = 1;
    RatPoint s = curve_add(p, q, cv);
    o.require(!s.infinity && s.x == Q(159, 121) && s.y == Q(-1861, 1331),
              "sum is (" + to_string(s.x) + ", " + to_string(s.y) + ")");
    // chord construction by hand
    Rational lam = (q.y - p.y) / (q.x - p.x);
    Rational x3 = lam * lam - p.x - q.x;
    o.require(s.x == x3 && s.y == lam * (p.x - x3) - p.y, "chord oracle");
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> m(-3, 3);
    RatPoint g1 = q, g2;
    g2.x = 1;
    g2.y = 1;
    auto combo = [&](int a, int b) {
        RatPoint r = RatPoint::at_infinity();
        for (int i = 0; i < std::abs(a); ++i) r = curve_add(r, a < 0 ? curve_neg(g1) : g1, cv);
        for (int i = 0; i < std::abs(b); ++i) r = curve_add(r, b < 0 ? curve_neg(g2) : g2, cv);
        return r;
    };
    int triples = 0;
    for (; triples < 100 && o.pass; ++triples) {
        RatPoint a = combo(m(rng), m(rng)), b = combo(m(rng), m(rng)), c = combo(m(rng), m(rng));
        RatPoint ab = curve_add(a, b, cv);
        o.require(ab == curve_add(b, a, cv), "commutativity");
        o.require(curve_add(ab, c, cv) == curve_add(a, curve_add(b, c, cv), cv), "associativity");
        o.require(on_curve(ab) && on_curve(curve_add(ab, c, cv)), "sum off the curve");
    }
    if (o.pass) o.detail << "(159/121, -1861/1331); group law on " << triples << " triples";
}

cplx theta_oracle(int a, int b, cplx z, cplx tau) {
    cplx s = 0;
    for (int n = -40; n <= 40; ++n) {
        double x = n + 0.5 * a;
        s += std::exp(I * PI * tau * x * x + 2.0 * PI * I * x * (z + 0.5 * b));
    }
    return s;
}

std::vector<cplx> grid(cplx tau) {
    std::vector<cplx> pts;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) pts.push_back((0.12 + 0.21 * a) + (0.14 + 0.19 * b) * tau);
    return pts;
}

void c7(Outcome& o) {
    double per = 0, par = 0, ladder = 0, cov = 0, ratio = 0, direct = 0;
    for (cplx tau : {cplx(0, 1), cplx(0.5, 1), cplx(0.2, 1.4)})
        for (int k = 1; k <= 3; ++k)
            for (int kap = 0; kap < 2; ++kap)
                for (int lam = 0; lam < 2; ++lam) {
                    if (k + kap + lam <= 1) continue;
                    PIndex idx{k, kap, lam, 0};
                    for (cplx z : grid(tau)) {
                        cplx v = p_eval(idx, z, tau);
                        per = std::max(per, std::abs(p_eval(idx, z + 1.0, tau) - (lam ? -v : v)));
                        per = std::max(per, std::abs(p_eval(idx, z + tau, tau) - (kap ? -v : v)));
                        par = std::max(par, std::abs(p_eval(idx, -z, tau) - (k % 2 ? -v : v)));
                    }
                }
    cplx tau(0.3, 0.8);
    const double h = 1e-5;
    for (int k = 1; k <= 3; ++k)
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : {cplx(0.21, 0.07), cplx(-0.33, 0.4)}) {
                    PIndex idx{k, kap, lam, 0};
                    cplx d = (p_eval(idx, z + h, tau) - p_eval(idx, z - h, tau)) / (2 * h);
                    cplx want = -double(k) * p_eval({k + 1, kap, lam, 0}, z, tau);
                    ladder = std::max(ladder, std::abs(d - want) / std::max(1.0, std::abs(want)));
                }
    // lattice double sums, k >= 2 where the iterated sum converges
    for (int k = 2; k <= 3; ++k)
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : {cplx(0.23, 0.17), cplx(0.4, -0.3)}) {
                    cplx ref = oracle::p_double_sum(k, kap, lam, z, cplx(0.1, 1.1), 60, 200);
                    cplx v = p_eval({k, kap, lam, 0}, z, cplx(0.1, 1.1));
                    direct = std::max(direct, std::abs(v - ref) / std::max(1.0, std::abs(ref)));
                }
    // covariance p(z/(c tau + d) | gamma tau) (c tau + d)^{-k} with characters moved by gamma
    cplx t0(0.15, 1.05);
    for (const Unimodular& g : {Unimodular::S(), Unimodular::T(), Unimodular::T() * Unimodular::S()})
        for (int k = 1; k <= 3; ++k)
            for (auto [kap, lam] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
                const long a = g.a.get_si(), b = g.b.get_si(), c = g.c.get_si(), d = g.d.get_si();
                cplx j = double(c) * t0 + double(d), gt = (double(a) * t0 + double(b)) / j;
                // sign of the period m(a tau + b) + n(c tau + d) must equal (-1)^{kappa M + lambda N}
                int k2 = int(((a * kap + b * lam) % 2 + 2) % 2), l2 = int(((c * kap + d * lam) % 2 + 2) % 2);
                for (cplx z : {cplx(0.2, 0.3), cplx(-0.31, 0.12)}) {
                    cplx lhs = std::pow(j, -k) * p_eval({k, k2, l2, 0}, z / j, gt);
                    cov = std::max(cov, std::abs(lhs - p_eval({k, kap, lam, 0}, z, t0)));
                }
            }
    // theta ratio with independently summed theta functions
    cplx tt(0.05, 1.2);
    cplx d11 = (theta_oracle(1, 1, 1e-6, tt) - theta_oracle(1, 1, -1e-6, tt)) / 2e-6;
    double ratio_fd = 0;
    for (cplx mu : {cplx(0.13, 0), cplx(0.21, 0.05)})
        for (int kap = 0; kap < 2; ++kap)
            for (int lam = 0; lam < 2; ++lam)
                for (cplx z : grid(tt)) {
                    int a = 1 - lam, b = 1 - kap;
                    cplx th11p = 0;
                    for (int n = 0; n < 60; ++n) {
                        double x = n + 0.5;
                        th11p += (n % 2 ? -1.0 : 1.0) * (2 * n + 1) * std::exp(I * PI * tt * x * x);
                    }
                    th11p *= -2.0 * PI;
                    cplx r = th11p / theta_oracle(a, b, mu, tt) * theta_oracle(a, b, z + mu, tt) /
                             theta_oracle(1, 1, z, tt);
                    cplx want = r - double(1 - lam) * PI / std::tan(PI * (mu + 0.5 * kap));
                    ratio = std::max(ratio, std::abs(p_eval({1, kap, lam, mu}, z, tt) - want));
                    ratio_fd = std::abs(th11p - d11) / std::abs(th11p);
                }
    o.require(ratio_fd < tol::finite_difference, "theta_11'(0) series vs finite difference");
    o.worst("periodicity", per, tol::p_suite);
    o.worst("parity", par, tol::p_suite);
    o.worst("ladder(fd)", ladder, tol::finite_difference);
    o.worst("covariance", cov, tol::p_suite);
    o.worst("theta-ratio", ratio, tol::p_suite);
    o.worst("double-sum", direct, tol::p_suite);
}

cplx random_point(std::mt19937_64& rng, cplx tau) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (;;) {
        cplx z = u(rng) + u(rng) * tau;
        bool far = true;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) far = far && std::abs(z + double(a) + double(b) * tau) > 0.05;
        if (far) return z;
    }
}

void c8(Outcome& o) {
    std::mt19937_64 rng(8);
    double inv = 0, ode = 0, add = 0;
    for (cplx tau : {cplx(0, 1), cplx(0, 2), cplx(0.5, 1)}) {
        cplx g2 = g2_invariant(tau), g3 = g3_invariant(tau);
        cplx g2o = 4 * std::pow(PI, 4) / 3 * 240.0 * g_oracle(4, tau);
        cplx g3o = 8 * std::pow(PI, 6) / 27 * -504.0 * g_oracle(6, tau);
        inv = std::max({inv, std::abs(g2 - g2o) / std::abs(g2o), std::abs(g3 - g3o) / std::max(1.0, std::abs(g3o))});
        CplxCurve cv{CurveForm::four_x_cubed, g2, g3};
        for (int t = 0; t < 20; ++t) {
            cplx z = random_point(rng, tau);
            cplx p = wp(z, tau), dp = wp_prime(z, tau);
            cplx rhs = 4.0 * p * p * p - g2o * p - g3o;
            ode = std::max(ode, std::abs(dp * dp - rhs) / std::max(1.0, std::abs(rhs)));
            cplx a = random_point(rng, tau), b;
            do b = random_point(rng, tau);
            while (std::abs(std::sin(PI * (a + b))) < 0.05 || std::abs(std::sin(PI * (a - b))) < 0.05);
            CplxPoint pa = uniformize(a, tau), pb = uniformize(b, tau);
            CplxPoint s = curve_add(pa, pb, cv, 1e-6);
            // addition theorem for the x coordinate: wp(a+b) = (1/4)((wp'a - wp'b)/(wp a - wp b))^2 - wp a - wp b
            cplx l = (wp_prime(a, tau) - wp_prime(b, tau)) / (wp(a, tau) - wp(b, tau));
            cplx x3 = 0.25 * l * l - wp(a, tau) - wp(b, tau);
            cplx u = wp(a + b, tau);
            add = std::max({add, std::abs(s.x - u) / std::max(1.0, std::abs(u)),
                            std::abs(x3 - u) / std::max(1.0, std::abs(u)),
                            std::abs(s.y - wp_prime(a + b, tau)) / std::max(1.0, std::abs(wp_prime(a + b, tau)))});
        }
    }
    o.worst("invariants", inv, tol::invariants);
    o.worst("ode", ode, tol::weierstrass);
    o.worst("addition", add, tol::weierstrass);
}

cplx moebius(const Unimodular& g, cplx tau) {
    return (g.a.get_d() * tau + g.b.get_d()) / (g.c.get_d() * tau + g.d.get_d());
}

void c9(Outcome& o) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0, 1.2);
    std::uniform_int_distribution<int> len(1, 6), pick(0, 2);
    auto word = [&] {
        Unimodular g;
        for (int i = 0, L = len(rng); i < L; ++i) {
            int p = pick(rng);
            g = g * (p == 0 ? Unimodular::S() : Unimodular::T(p == 1 ? 1 : -1));
        }
        return g;
    };
    double anomaly = 0, oracle_anomaly = 0, cov = 0;
    for (int t = 0; t < 20; ++t) {
        double x = re(rng);
        cplx tau(x, std::sqrt(1 - x * x) + im(rng));
        Unimodular g = t == 0 ? Unimodular::S() : word();
        cplx ct = g.c.get_d() * tau + g.d.get_d();
        cplx expect = I * g.c.get_d() / (4 * PI * ct);
        anomaly = std::max(anomaly, std::abs(covariance_residual(FormId::eisenstein(2), g, tau) - expect));
        cplx direct = std::pow(ct, -2) * g_oracle(2, moebius(g, tau)) - g_oracle(2, tau);
        oracle_anomaly = std::max(oracle_anomaly, std::abs(direct - expect));
        for (const char* name : {"delta", "G4", "G6", "j"})
            cov = std::max(cov, std::abs(covariance_residual(parse_form(name), g, tau)));
    }
    o.worst("G2 anomaly", anomaly, tol::g2_anomaly);
    o.worst("oracle G2 anomaly", oracle_anomaly, tol::g2_anomaly);
    o.worst("Delta/G4/G6/j", cov, tol::covariance);
}

void c10(Outcome& o) {
    double worst = 0;
    for (auto [name, D] : {std::pair{"chiral_weyl", 4}, std::pair{"scalar4", 4}, std::pair{"scalar6", 6},
                           std::pair{"maxwell", 4}})
        for (cplx tau : {cplx(0, 1), cplx(0.3, 0.9), cplx(-0.45, 0.5)})
            for (auto [z, alpha] : {std::pair{cplx(0.21, 0.07), 0.17}, std::pair{cplx(0.13, -0.1), 0.31}}) {
                Kinematics k = Kinematics::from_alpha(z, alpha, D);
                ModelId m = parse_model(name);
                worst = std::max(worst, max_abs_diff(thermal_2pt(m, k, tau), image_sum_2pt(m, k, tau, 200)));
            }
    o.worst("closed form vs image sum", worst, tol::image_sum);
}

void c11(Outcome& o) {
    double worst = 0;
    for (cplx tau : {cplx(0, 1), cplx(0, 2)}) {
        cplx q = std::exp(2.0 * PI * I * tau);
        // chiral Weyl: -1/24 + sum over NS modes r of 2 r q^r / (1 + q^r)
        cplx weyl = -1.0 / 24;
        for (int n = 1; n < 200; ++n) {
            double r = n - 0.5;
            cplx qr = std::pow(q, r);
            weyl += 2 * r * qr / (1.0 + qr);
        }
        cplx f2 = form_eval(FormId::named(FormKind::F2), tau).value;
        worst = std::max(worst, std::abs(weyl - f2));
        worst = std::max(worst, std::abs(energy_mean(parse_model("chiral_weyl"), tau).numeric - weyl));
        cplx G2 = g_oracle(2, tau), G4 = g_oracle(4, tau);
        cplx G2h = g_oracle(2, (tau + 1.0) / 2.0), G4h = g_oracle(4, (tau + 1.0) / 2.0);
        // scalar: energies n with multiplicity n^2
        cplx scalar = energy_mean(parse_model("scalar4"), tau).numeric;
        worst = std::max(worst, std::abs(scalar - G4));
        cplx sum = 0;
        for (int n = 1; n < 200; ++n) sum += double(n) * n * n * std::pow(q, n) / (1.0 - std::pow(q, n));
        worst = std::max(worst, std::abs(scalar - 1.0 / 240 - sum));
        // Weyl4; vacuum_energy is the zeta-regularized +-(1/2) sum E d(E), the opposite sign of E0 here
        cplx can = energy_mean(parse_model("weyl4_canonical"), tau).numeric;
        cplx sub = energy_mean(parse_model("weyl4_subcanonical"), tau).numeric;
        cplx can_form = 0.25 * (8.0 * G4 - G4h) + 0.25 * (G2h - 2.0 * G2);
        cplx sub_form = -0.75 * (G4h - 8.0 * G4) - 1.25 * (G2h - 2.0 * G2);
        worst = std::max(worst, std::abs(can - can_form));
        worst = std::max(worst, std::abs(sub - sub_form));
        o.require(vacuum_energy(parse_model("weyl4_canonical")) == Q(17, 960), "canonical |E0| = 17/960");
        o.require(vacuum_energy(parse_model("weyl4_subcanonical")) == Q(-29, 960), "subcanonical |E0| = 29/960");
        // Maxwell
        cplx mx = energy_mean(parse_model("maxwell"), tau).numeric;
        worst = std::max(worst, std::abs(mx - (2.0 * G4 - 2.0 * G2)));
        o.require(vacuum_energy(parse_model("maxwell")) == Q(11, 120), "Maxwell vacuum 11/120");
        cplx gauge = energy_mean(parse_model("gauge_longitudinal"), tau).numeric;
        worst = std::max(worst, std::abs(mx + gauge - 4.0 * G4));
    }
    o.worst("energy means", worst, tol::energy_mean);
}

void c12(Outcome& o) {
    double sb4 = energy_density(ThermoModel::scalar4, {1.0, 100.0});
    SbLimit mx = sb_constant(ThermoModel::maxwell);
    // thermal density from the spectrum, vacuum subtracted: beta^4 rho = (beta/R)^4 (G4 - 1/240) / (2 pi^2)
    double dens = 0;
    for (double R : {3.0, 5.0, 10.0}) {
        double s = 1.0 / R;
        double g4 = g_oracle(4, cplx(0, s / (2 * PI))).real(), g2 = g_oracle(2, cplx(0, s / (2 * PI))).real();
        double sc = std::pow(s, 4) * (g4 - 1.0 / 240) / (2 * PI * PI);
        double mw = std::pow(s, 4) * (2 * g4 - 2 * g2 - 11.0 / 120) / (2 * PI * PI);
        dens = std::max({dens, std::abs(energy_density(ThermoModel::scalar4, {1.0, R}) - sc) / sc,
                         std::abs(energy_density(ThermoModel::maxwell, {1.0, R}) - mw) / mw});
    }
    // polynomials in s = beta/R from the inversion of G4 and G2, the s^4 term is the subtracted vacuum
    const std::array<double, 5> poly_s{PI * PI / 30, 0, 0, 0, -1 / (480 * PI * PI)};
    const std::array<double, 5> poly_m{PI * PI / 15, 0, -1.0 / 6, 1 / (2 * PI * PI), -11 / (240 * PI * PI)};
    Asymptotics as = density_asymptotics(ThermoModel::scalar4, {1.0, 3.0});
    Asymptotics am = density_asymptotics(ThermoModel::maxwell, {1.0, 3.0});
    double coeff = 0;
    for (int k = 0; k < 5; ++k)
        coeff = std::max({coeff, std::abs(as.coeffs[k] - poly_s[k]), std::abs(am.coeffs[k] - poly_m[k])});
    const double x = 3.0, e = std::exp(-4 * PI * PI * x);
    double rem = std::max(std::abs(as.residual), std::abs(am.residual)) / (tol::remainder_factor * e);
    o.worst("scalar SB", std::abs(sb4 - PI * PI / 30), tol::sb_scalar);
    o.worst("Maxwell SB", std::abs(mx.value - PI * PI / 15), tol::sb_maxwell);
    o.worst("density", dens, tol::density);
    o.worst("coefficients", coeff, tol::asymptotic_coeffs);
    // leading remainders are 8 pi^2 e and (16 pi^2 + 4/9) e, both larger than 10 e
    o.worst("remainder/bound", rem, 1.0);
}

void c13(Outcome& o) {
    const double beta = 1;
    double fourier = 0, closed = 0;
    for (double t : {0.0, 0.3, 0.7})
        for (double x : {0.9, 1.7, 2.5}) {
            MinkowskiPair p{{t, x, 0.2, -0.1}, {0, 0, 0, 0}};
            cplx lim = minkowski_thermal_2pt(p, beta, TwoPointMode::limit).value;
            cplx fou = minkowski_thermal_2pt(p, beta, TwoPointMode::fourier).value;
            double r = std::sqrt(x * x + 0.05);
            double w = 2 * PI / beta;
            double ref = std::sinh(w * r) / (4 * PI * beta * r * (std::cosh(w * r) - std::cosh(w * t)));
            fourier = std::max(fourier, std::abs(lim - fou));
            closed = std::max(closed, std::abs(lim - ref));
        }
    const double R = 100;
    MinkowskiPair p{{0, 0.3, 0, 0}, {0, 0, 0, 0}};
    cplx fin = minkowski_thermal_2pt(p, beta, TwoPointMode::finite_R, R).value;
    cplx lim = minkowski_thermal_2pt(p, beta, TwoPointMode::limit).value;
    double shift = -1 / (4 * PI * PI * beta * R);
    o.worst("fourier", fourier, tol::fourier);
    o.worst("closed", closed, tol::fourier);
    o.worst("finite-R rel", std::abs((fin - lim).real() / shift - 1), tol::finite_r_relative);
}

void c14(Outcome& o) {
    const Rational ord = Q(6);
    const long T = 6;
    for (long m : {0, 1, -1, 2}) {
        BiSeries lhs = k_series(Q(m), Q(3), ord);
        BiSeries rhs = k_series(Q(2 * m), Q(12), ord, Q(2)) + k_series(Q(2 * m + 6), Q(12), ord, Q(2));
        auto rep = series_equal(lhs, rhs, ord);
        o.require(rep.equal, "splitting for m = " + std::to_string(m) + " at q^" + to_string(rep.exponent));
        // K_m(l = 3) = q^{-1/24} prod(1 - q^n)^{-1} sum_n q^{(3n + m)^2/6} y^{(3n + m)/3}
        IntSeries part = inverse(oracle::euler_power(1, T + 2));
        std::map<Rational, UnitPoly> want;
        for (long n = -10; n <= 10; ++n) {
            long v = 3 * n + m;
            for (long j = 0; j <= T + 1; ++j) {
                Rational e = Q(v * v, 6) + Q(j) - Q(1, 24);
                if (e < ord) want[e] += UnitPoly::monomial(Q(v, 3), Q128(part[j]));
            }
        }
        for (const auto& [e, c] : want) o.require(lhs.coeff(e) == c, "K series coefficient at q^" + to_string(e));
    }
    double t2 = 0, s = 0;
    cplx t(0.05, 0.9), tau(0, 1.1);
    for (int k : {1, 2}) {
        auto labs = n2_labels(k);
        auto S = n2_smatrix(k);
        const double c = 3.0 * k / (k + 2);
        for (size_t a = 0; a < labs.size(); ++a) {
            auto [l, m] = std::pair{labs[a].l, labs[a].m};
            double h = double(l * (l + 2) - m * m) / (4.0 * (k + 2));
            cplx eig = std::exp(4.0 * PI * I * (h - c / 24));
            t2 = std::max(t2, std::abs(n2_character_value(k, l, m, t + 2.0) - eig * n2_character_value(k, l, m, t)));
            cplx lhs = n2_character_value(k, l, m, -1.0 / tau), rhs = 0;
            for (size_t b = 0; b < labs.size(); ++b) rhs += S[a][b] * n2_character_value(k, labs[b].l, labs[b].m, tau);
            s = std::max(s, std::abs(lhs - rhs));
        }
    }
    o.worst("T^2", t2, tol::t2);
    o.worst("S-law", s, tol::s_law);
}

void c15(Outcome& o) {
    long total = 0;
    for (auto [name, w] : {std::pair{"a1", 9L}, std::pair{"a2", 6L}, std::pair{"e8", 3L}}) {
        IntMatrix g = parse_gram(name);
        CocycleTable t = cocycle_build(g, w);
        CocycleReport rep = cocycle_verify(t);
        o.require(rep.all(), std::string(name) + ": cocycle conditions");
        o.require(rep.pairs >= 200, std::string(name) + ": window below 200 pairs");
        // independent check of symmetry and the 2-cocycle identity on the table, exponents mod 4
        auto dot = [&](const std::vector<long>& a, const std::vector<long>& b) {
            long s = 0;
            for (size_t i = 0; i < a.size(); ++i)
                for (size_t j = 0; j < b.size(); ++j) s += a[i] * g[i][j] * b[j];
            return s;
        };
        auto add = [](std::vector<long> a, const std::vector<long>& b) {
            for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
            return a;
        };
        auto l1 = [](const std::vector<long>& a) {
            long s = 0;
            for (long x : a) s += std::abs(x);
            return s;
        };
        auto mod4 = [](long x) { return ((x % 4) + 4) % 4; };
        const auto& vs = t.vectors;
        const std::vector<long> zero(g.size(), 0);
        bool sym = true, cyc = true, norm = true;
        for (size_t i = 0; i < vs.size() && i < 60; ++i) {
            norm = norm && t.at(zero, vs[i]) == 0 && t.at(vs[i], zero) == 0;
            for (size_t j = 0; j < vs.size() && j < 60; ++j) {
                const auto &a = vs[i], &b = vs[j];
                sym = sym && mod4(t.at(a, b) - t.at(b, a) - 2 * dot(a, b)) == 0;
                for (size_t k = 0; k < vs.size() && k < 12; ++k) {
                    const auto& c = vs[k];
                    if (l1(add(a, b)) > w || l1(add(b, c)) > w) continue;
                    cyc = cyc && mod4(t.at(a, b) + t.at(add(a, b), c) - t.at(b, c) - t.at(a, add(b, c))) == 0;
                }
            }
        }
        o.require(sym, std::string(name) + ": oracle symmetry factor");
        o.require(cyc, std::string(name) + ": oracle 2-cocycle");
        o.require(norm, std::string(name) + ": oracle normalization");
        total += rep.pairs;
    }
    if (o.pass) o.detail << "a1, a2, e8 windows, " << total << " pairs";
}

}  // namespace

int main() {
    const std::vector<std::pair<int, std::function<void(Outcome&)>>> criteria{
        {1, c1}, {2, c2}, {3, c3},   {4, c4},   {5, c5},   {6, c6},   {7, c7},  {8, c8},
        {9, c9}, {10, c10}, {11, c11}, {12, c12}, {13, c13}, {14, c14}, {15, c15}};
    int failed = 0;
    for (const auto& [n, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %2d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
