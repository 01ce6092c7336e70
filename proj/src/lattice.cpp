#include "ellcft/lattice.hpp"

#include "ellcft/errors.hpp"
#include "ellcft/modforms.hpp"
#include "numeric_detail.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace ellcft {

using detail::cplxld;
using detail::PI_L;
using detail::to_d;
using detail::to_l;

namespace {

constexpr long MAX_COCYCLE_ENTRIES = 50000000;
constexpr long MAX_N2_ORDER = 400;

long mod4(long x) { return ((x % 4) + 4) % 4; }

struct RatTerm {
    Rational q_exp;
    Rational y_exp;
    Rational coef;
};

BiSeries bi_from_terms(const std::vector<RatTerm>& ts, const Rational& order) {
    long den = 1;
    for (const auto& t : ts) den = std::lcm(den, t.q_exp.get_den().get_si());
    BiSeries s(order);
    s.den = den;
    for (const auto& t : ts) {
        if (t.q_exp >= order) continue;
        long key = Rational(t.q_exp * den).get_num().get_si();
        s.terms[key] += UnitPoly::monomial(t.y_exp, t.coef);
    }
    return s.normalize();
}

// q^{-1/24} prod (1 - q^n)^{-1}, raised to the power r, known through q^order
FracSeries eta_inverse_power(long r, const Rational& order) {
    Rational shift_e = make_rational(r, 24);
    FracSeries p = pow(invert(euler_product(order + shift_e)), r);
    return shift(p, -shift_e);
}

std::vector<long> neg(const std::vector<long>& a) {
    std::vector<long> b(a.size());
    for (size_t i = 0; i < a.size(); ++i) b[i] = -a[i];
    return b;
}

long l1(const std::vector<long>& a) {
    long s = 0;
    for (long x : a) s += std::labs(x);
    return s;
}

std::vector<std::vector<long>> l1_ball(size_t r, long w) {
    std::vector<std::vector<long>> out;
    std::vector<long> cur(r, 0);
    std::function<void(size_t, long)> rec = [&](size_t i, long left) {
        if (i == r) {
            out.push_back(cur);
            return;
        }
        for (long v = -left; v <= left; ++v) {
            cur[i] = v;
            rec(i + 1, left - std::labs(v));
        }
        cur[i] = 0;
    };
    rec(0, w);
    return out;
}

long ip(const IntMatrix& g, const std::vector<long>& a, const std::vector<long>& b) {
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) s += a[i] * g[i][j] * b[j];
    return s;
}

Rational determinant(const IntMatrix& g) {
    size_t r = g.size();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) a[i][j] = g[i][j];
    Rational det = 1;
    for (size_t c = 0; c < r; ++c) {
        size_t p = c;
        while (p < r && a[p][c] == 0) ++p;
        if (p == r) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            det = -det;
        }
        det *= a[c][c];
        for (size_t i = c + 1; i < r; ++i) {
            Rational f = a[i][c] / a[c][c];
            if (f == 0) continue;
            for (size_t j = c; j < r; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

void require_square(const IntMatrix& g) {
    if (g.empty()) fail("ShapeError", "empty gram matrix");
    for (const auto& row : g)
        if (row.size() != g.size()) fail("ShapeError", "gram matrix is not square");
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (g[i][j] != g[j][i]) fail("ShapeError", "gram matrix is not symmetric");
}

void require_even(const IntMatrix& g) {
    if (!is_even(g)) fail("NotEven", "lattice has a vector of odd norm");
}

// sum_{gamma in lambda + Q} q^{(gamma|gamma)/2} e^{2 pi i (gamma|mu)}
cplxld theta_value(const IntMatrix& gram, const RatVector& lambda, cplxld tau, const CplxVector& mu, double tol) {
    size_t r = gram.size();
    if (!(tau.imag() > 0)) fail("InvalidTau", "need Im tau > 0");
    long double mu_im = 0;
    for (const auto& m : mu) mu_im += std::abs(m.imag());
    long double ln_tol = -std::log(static_cast<long double>(tol));
    // |q|^{N/2} e^{2 pi |gamma| |Im mu|} against tol, with polynomial growth in the point count
    long double y = tau.imag();
    long double a = PI_L * y, b = 2 * PI_L * mu_im, c = ln_tol + 3.0L * r;
    long double rad = (b + std::sqrt(b * b + 4 * a * c)) / (2 * a);
    Rational bound(static_cast<double>(rad * rad));
    bool zero_mu = std::all_of(mu.begin(), mu.end(), [](const cplx& m) { return m == cplx(0); });
    const cplxld ipt(0, PI_L);
    if (zero_mu) {
        NormIpCounts nc = enumerate_norm_ip(gram, lambda, bound, RatVector(r, Rational(0)));
        cplxld sum = 0;
        long double ns = nc.norm_scale.get_d();
        for (const auto& [key, cnt] : nc.counts) sum += static_cast<long double>(cnt) * std::exp(ipt * tau * (key.first / ns));
        return sum;
    }
    auto pts = lattice_points(gram, lambda, bound);
    std::vector<long double> lam(r);
    for (size_t i = 0; i < r; ++i) lam[i] = to_double(lambda[i]);
    std::vector<cplxld> gmu(r, 0);
    if (!mu.empty()) {
        if (mu.size() != r) fail("ShapeError", "mu has wrong length");
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) gmu[i] += static_cast<long double>(gram[i][j]) * to_l(mu[j]);
    }
    cplxld sum = 0;
    std::vector<long double> x(r);
    for (const auto& n : pts) {
        for (size_t i = 0; i < r; ++i) x[i] = n[i] + lam[i];
        long double norm = 0;
        cplxld xm = 0;
        for (size_t i = 0; i < r; ++i) {
            long double gx = 0;
            for (size_t j = 0; j < r; ++j) gx += gram[i][j] * x[j];
            norm += x[i] * gx;
            xm += x[i] * gmu[i];
        }
        sum += std::exp(ipt * (tau * norm + 2.0L * xm));
    }
    return sum;
}

cplxld complex_norm(const IntMatrix& gram, const CplxVector& mu) {
    cplxld s = 0;
    for (size_t i = 0; i < mu.size(); ++i)
        for (size_t j = 0; j < mu.size(); ++j) s += to_l(mu[i]) * static_cast<long double>(gram[i][j]) * to_l(mu[j]);
    return s;
}

void require_n2_label(int k, int l, int m) {
    if (k != 1 && k != 2) fail("InvalidLabels", "only k = 1 and k = 2 are supported");
    if (l < 0 || l > k || std::abs(m) > l || (l - m) % 2 != 0)
        fail("InvalidLabels", "need 0 <= l <= k and (l - m)/2 in {0, ..., l}");
}

// prod (1 + q^{n - 1/2}) and prod (1 - q^{n - 1/2}) through q^order
std::pair<FracSeries, FracSeries> ns_products(const Rational& order) {
    FracSeries p = euler_product(2 * order + 2);
    FracSeries p_half = substitute(p, Rational(1, 2)).truncated(order);
    FracSeries p1 = p.truncated(order);
    FracSeries p2 = substitute(p, Rational(2)).truncated(order);
    FracSeries minus = (p_half * invert(p1)).truncated(order);
    FracSeries plus = (p1 * p1 * invert(p2) * invert(p_half)).truncated(order);
    return {plus, minus};
}

// sum_{n of given parity} q^{(n + s)^2} y^{n + s}
BiSeries parity_theta(int parity, const Rational& s, const Rational& order) {
    std::vector<RatTerm> ts;
    long R = static_cast<long>(std::sqrt(to_double(order))) + 2;
    for (long n = -R; n <= R; ++n) {
        if (((n % 2) + 2) % 2 != parity) continue;
        Rational x = Rational(n) + s;
        ts.push_back({x * x, x, 1});
    }
    return bi_from_terms(ts, order);
}

}  // namespace

IntMatrix e8_gram() {
    IntMatrix g(8, std::vector<long>(8, 0));
    for (int i = 0; i < 8; ++i) g[i][i] = 2;
    for (int i = 0; i < 6; ++i) g[i][i + 1] = g[i + 1][i] = -1;
    g[4][7] = g[7][4] = -1;
    return g;
}

IntMatrix parse_gram(const std::string& s) {
    if (s == "e8") return e8_gram();
    if (s == "a1") return {{2}};
    if (s == "a2") return {{2, -1}, {-1, 2}};
    if (s == "d4") return {{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    if (s == "sqrt3") return {{3}};
    IntMatrix g;
    try {
        auto j = nlohmann::json::parse(s);
        if (!j.is_array()) fail("InvalidArgument", "gram matrix must be a JSON array of rows");
        for (const auto& row : j) {
            if (!row.is_array()) fail("InvalidArgument", "gram matrix must be a JSON array of rows");
            std::vector<long> v;
            for (const auto& x : row) {
                if (!x.is_number_integer()) fail("InvalidArgument", "gram entries must be integers");
                v.push_back(x.get<long>());
            }
            g.push_back(v);
        }
    } catch (const nlohmann::json::exception& e) {
        fail("InvalidArgument", std::string("cannot parse gram matrix: ") + e.what());
    }
    require_square(g);
    return g;
}

bool is_even(const IntMatrix& gram) {
    for (size_t i = 0; i < gram.size(); ++i)
        if (gram[i][i] % 2 != 0) return false;
    return true;
}

RatVector dual_coordinates(const IntMatrix& gram, const std::vector<long>& n) {
    size_t r = gram.size();
    if (n.size() != r) fail("ShapeError", "vector has wrong length");
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r + 1));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) a[i][j] = gram[i][j];
        a[i][r] = n[i];
    }
    for (size_t c = 0; c < r; ++c) {
        size_t p = c;
        while (p < r && a[p][c] == 0) ++p;
        if (p == r) fail("DegenerateGram", "gram matrix is singular");
        std::swap(a[p], a[c]);
        for (size_t i = 0; i < r; ++i) {
            if (i == c || a[i][c] == 0) continue;
            Rational f = a[i][c] / a[c][c];
            for (size_t j = c; j <= r; ++j) a[i][j] -= f * a[c][j];
        }
    }
    RatVector x(r);
    for (size_t i = 0; i < r; ++i) x[i] = a[i][r] / a[i][i];
    return x;
}

DiscriminantGroup discriminant_group(const IntMatrix& gram) {
    require_square(gram);
    Rational det = determinant(gram);
    if (det == 0) fail("DegenerateGram", "gram matrix is singular");
    size_t r = gram.size();
    // Hermite form of the row lattice G Z^r: the diagonal gives coset representatives of Z^r / G Z^r
    IntMatrix h = gram;
    for (size_t c = 0; c < r; ++c) {
        while (true) {
            size_t piv = r;
            for (size_t i = c; i < r; ++i)
                if (h[i][c] != 0 && (piv == r || std::labs(h[i][c]) < std::labs(h[piv][c]))) piv = i;
            std::swap(h[piv], h[c]);
            bool done = true;
            for (size_t i = c + 1; i < r; ++i) {
                if (h[i][c] == 0) continue;
                long f = h[i][c] / h[c][c];
                for (size_t j = c; j < r; ++j) h[i][j] -= f * h[c][j];
                if (h[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (h[c][c] < 0)
            for (size_t j = c; j < r; ++j) h[c][j] = -h[c][j];
    }
    DiscriminantGroup d;
    d.order = std::labs(det.get_num().get_si());
    std::vector<long> n(r, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == r) {
            d.reps.push_back(dual_coordinates(gram, n));
            return;
        }
        for (long v = 0; v < h[i][i]; ++v) {
            n[i] = v;
            rec(i + 1);
        }
        n[i] = 0;
    };
    rec(0);
    return d;
}

BiSeries voa_character_series(const IntMatrix& gram, const RatVector& lambda, const RatVector& mu_dir,
                              const Rational& order, Exec exec) {
    check_gram(gram);
    require_even(gram);
    long r = static_cast<long>(gram.size());
    Rational ord2 = order + make_rational(r, 24);
    RatVector mu = mu_dir.empty() ? RatVector(gram.size(), Rational(0)) : mu_dir;
    NormIpCounts nc = enumerate_norm_ip(gram, lambda, 2 * ord2, mu, exec);
    std::vector<RatTerm> ts;
    for (const auto& [key, cnt] : nc.counts) {
        Rational qe = Rational(Integer(key.first), Integer(2 * nc.norm_scale));
        Rational ye = Rational(Integer(key.second), nc.ip_scale);
        ts.push_back({qe, ye, Rational(cnt)});
    }
    BiSeries theta = bi_from_terms(ts, ord2);
    FracSeries pre = eta_inverse_power(r, order);
    return (to_bi(pre) * theta).truncated(order);
}

cplx voa_character_value(const IntMatrix& gram, const RatVector& lambda, cplx tau, const CplxVector& mu, double tol) {
    check_gram(gram);
    require_even(gram);
    cplxld t = to_l(tau);
    cplxld th = theta_value(gram, lambda, t, mu, tol);
    cplxld e = eta_l(t, tol * 1e-2);
    return to_d(th / std::pow(e, static_cast<int>(gram.size())));
}

ModularCheck char_modular_check(const IntMatrix& gram, cplx tau, const CplxVector& mu, double tol) {
    check_gram(gram);
    require_even(gram);
    DiscriminantGroup d = discriminant_group(gram);
    size_t r = gram.size();
    size_t nrep = d.reps.size();
    std::vector<cplx> at_tau(nrep), at_t1(nrep), at_s(nrep);
    const cplx s_tau = -1.0 / tau;
    CplxVector mu_s;
    for (const auto& m : mu) mu_s.push_back(m / tau);
    for (size_t a = 0; a < nrep; ++a) {
        at_tau[a] = voa_character_value(gram, d.reps[a], tau, mu, tol);
        at_t1[a] = voa_character_value(gram, d.reps[a], tau + 1.0, mu, tol);
        at_s[a] = voa_character_value(gram, d.reps[a], s_tau, mu_s, tol);
    }
    ModularCheck res;
    cplx s_pref = mu.empty() ? cplx(1) : std::exp(cplx(0, -M_PI) * to_d(complex_norm(gram, mu)) / tau);
    double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(d.order));
    for (size_t a = 0; a < nrep; ++a) {
        Rational half_norm = inner(gram, d.reps[a], d.reps[a]) / 2 - make_rational(long(r), 24);
        cplx ph = std::exp(cplx(0, 2 * M_PI * to_double(half_norm - floor_q(half_norm))));
        res.t_residual = std::max(res.t_residual, std::abs(at_t1[a] - ph * at_tau[a]));
        cplx rhs = 0;
        for (size_t b = 0; b < nrep; ++b) {
            Rational x = inner(gram, d.reps[a], d.reps[b]);
            rhs += std::exp(cplx(0, -2 * M_PI * to_double(x - floor_q(x)))) * at_tau[b];
        }
        res.s_residual = std::max(res.s_residual, std::abs(s_pref * at_s[a] - inv_sqrt * rhs));
    }
    return res;
}

int cocycle_exponent(const IntMatrix& gram, const std::vector<long>& a, const std::vector<long>& b) {
    size_t r = gram.size();
    if (a.size() != r || b.size() != r) fail("ShapeError", "vector has wrong length");
    long bsum = 0;
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = i + 1; j < r; ++j) bsum += a[i] * b[j] * gram[i][j];
        bsum += a[i] * b[i] * (gram[i][i] / 2);
    }
    return static_cast<int>(mod4(ip(gram, a, b) + 2 * bsum));
}

size_t CocycleTable::index(const std::vector<long>& a) const {
    auto it = lookup.find(a);
    if (it == lookup.end()) fail("WindowTooSmall", "vector lies outside the cocycle window");
    return it->second;
}

int CocycleTable::at(const std::vector<long>& a, const std::vector<long>& b) const {
    return exponent[index(a) * vectors.size() + index(b)];
}

CocycleTable cocycle_build(const IntMatrix& gram, long window) {
    check_gram(gram);
    require_even(gram);
    if (window < 3) fail("WindowTooSmall", "window below 3 leaves no closed triples");
    CocycleTable t;
    t.gram = gram;
    t.window = window;
    t.vectors = l1_ball(gram.size(), window);
    long n = static_cast<long>(t.vectors.size());
    if (n > 0 && n > MAX_COCYCLE_ENTRIES / n) fail("InvalidArgument", "cocycle window too large");
    for (size_t i = 0; i < t.vectors.size(); ++i) t.lookup[t.vectors[i]] = i;
    t.exponent.resize(static_cast<size_t>(n) * n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            t.exponent[i * n + j] = static_cast<std::uint8_t>(cocycle_exponent(gram, t.vectors[i], t.vectors[j]));
    return t;
}

CocycleReport cocycle_verify(const CocycleTable& t) {
    CocycleReport rep;
    size_t n = t.vectors.size();
    std::vector<size_t> negi(n);
    std::vector<long> norms(n);
    for (size_t i = 0; i < n; ++i) {
        negi[i] = t.index(neg(t.vectors[i]));
        norms[i] = ip(t.gram, t.vectors[i], t.vectors[i]);
    }
    std::vector<long> zero(t.gram.size(), 0);
    size_t z = t.index(zero);
    auto e = [&](size_t i, size_t j) { return static_cast<long>(t.exponent[i * n + j]); };
    for (size_t i = 0; i < n; ++i) {
        if (e(i, z) != 0 || e(z, i) != 0) rep.normalized = false;
        if (e(i, negi[i]) != 0) rep.conjugation = false;
        for (size_t j = 0; j < n; ++j) {
            ++rep.pairs;
            if (e(i, j) > 3) rep.unit = false;
            long sym = ip(t.gram, t.vectors[i], t.vectors[j]) + norms[i] * norms[j];
            if (mod4(e(i, j) - e(j, i) - 2 * sym) != 0) rep.symmetry = false;
            if (mod4(e(negi[j], negi[i]) + e(i, j)) != 0) rep.conjugation = false;
        }
    }
    std::vector<size_t> sub;
    for (size_t i = 0; i < n; ++i)
        if (l1(t.vectors[i]) <= t.window / 3) sub.push_back(i);
    size_t r = t.gram.size();
    std::vector<long> s(r);
    auto sum_index = [&](size_t i, size_t j) {
        for (size_t k = 0; k < r; ++k) s[k] = t.vectors[i][k] + t.vectors[j][k];
        return t.index(s);
    };
    for (size_t a : sub)
        for (size_t b : sub) {
            size_t ab = sum_index(a, b);
            for (size_t c : sub) {
                ++rep.triples;
                size_t bc = sum_index(b, c);
                if (mod4(e(a, b) + e(ab, c) - e(a, bc) - e(b, c)) != 0) rep.two_cocycle = false;
            }
        }
    return rep;
}

BiSeries k_series(const Rational& m, const Rational& l, const Rational& order, const Rational& mu_scale) {
    if (l <= 0) fail("InvalidArgument", "level must be positive");
    Rational ord2 = order + Rational(1, 24);
    std::vector<RatTerm> ts;
    double c = -to_double(m / l);
    double R = std::sqrt(2 * to_double(ord2) / to_double(l)) + 2;
    for (long n = static_cast<long>(std::floor(c - R)); n <= static_cast<long>(std::ceil(c + R)); ++n) {
        Rational x = Rational(n) + m / l;
        Rational qe = l / 2 * x * x;
        if (qe < ord2) ts.push_back({qe, mu_scale * x, 1});
    }
    BiSeries theta = bi_from_terms(ts, ord2);
    return (to_bi(eta_inverse_power(1, order)) * theta).truncated(order);
}

cplx k_value(const Rational& m, const Rational& l, cplx tau, cplx mu) {
    if (l <= 0) fail("InvalidArgument", "level must be positive");
    if (!(tau.imag() > 0)) fail("InvalidTau", "need Im tau > 0");
    long double lv = to_double(l), sh = to_double(m / l);
    long double a = PI_L * lv * tau.imag(), b = 2 * PI_L * std::abs(mu.imag()), c = 45.0L;
    long double R = (b + std::sqrt(b * b + 4 * a * c)) / (2 * a) + 2;
    cplxld t = to_l(tau), u = to_l(mu), sum = 0;
    const cplxld ipt(0, PI_L);
    for (long n = static_cast<long>(std::floor(-sh - R)); n <= static_cast<long>(std::ceil(-sh + R)); ++n) {
        long double x = n + sh;
        sum += std::exp(ipt * (lv * x * x * t + 2.0L * x * u));
    }
    return to_d(sum / eta_l(t, 1e-18));
}

double k_s_law_residual(const Rational& m, long l, cplx tau, cplx mu) {
    if (l <= 0) fail("InvalidArgument", "level must be positive");
    Rational L(l);
    cplx lhs = k_value(m, L, -1.0 / tau, mu / tau);
    cplx rhs = 0;
    for (long mp = 0; mp < l; ++mp) {
        Rational x = m * mp / L;
        rhs += std::exp(cplx(0, -2 * M_PI * to_double(x - floor_q(x)))) * k_value(Rational(mp), L, tau, mu);
    }
    rhs *= std::exp(cplx(0, M_PI) * mu * mu / (double(l) * tau)) / std::sqrt(double(l));
    return std::abs(lhs - rhs);
}

std::vector<N2Label> n2_labels(int k) {
    if (k != 1 && k != 2) fail("InvalidLabels", "only k = 1 and k = 2 are supported");
    std::vector<N2Label> out;
    for (int l = 0; l <= k; ++l)
        for (int m = -l; m <= l; m += 2) out.push_back({l, m});
    return out;
}

Rational n2_central_charge(int k) { return Rational(3) - make_rational(6, k + 2); }

Rational n2_weight(int k, int l, int m) { return make_rational(l * (l + 2) - m * m, 4 * (k + 2)); }

Rational n2_charge(int k, int m) { return make_rational(m, k + 2); }

BiSeries n2_character_series(int k, int l, int m, const Rational& order) {
    require_n2_label(k, l, m);
    if (k == 1) return k_series(Rational(m), Rational(3), order);
    if (l == 1) {
        // K_{m/2}(tau, mu; 2) q^{1/24} prod (1 + q^n)
        Rational ord2 = order + 1;
        FracSeries p = euler_product(2 * ord2);
        FracSeries plus = (substitute(p, Rational(2)) * invert(p)).truncated(ord2);
        BiSeries kk = k_series(make_rational(m, 2), Rational(2), ord2);
        return (kk * to_bi(shift(plus, Rational(1, 24)))).truncated(order);
    }
    Rational ord2 = order + 1;
    auto [plus, minus] = ns_products(ord2);
    FracSeries even = (plus + minus).truncated(ord2), odd = (plus - minus).truncated(ord2);
    even = scale(even, Rational(1, 2));
    odd = scale(odd, Rational(1, 2));
    Rational s = (l == 2 && m != 0) ? Rational(1, 2) : Rational(0);
    BiSeries th_e = parity_theta(0, s, ord2), th_o = parity_theta(1, s, ord2);
    bool swap = (m == 0 && l == 2) || m == -2;
    BiSeries body = swap ? th_e * to_bi(odd) + th_o * to_bi(even) : th_e * to_bi(even) + th_o * to_bi(odd);
    FracSeries pre = eta_inverse_power(1, ord2);
    return (to_bi(shift(pre, Rational(-1, 48))) * body).truncated(order);
}

cplx n2_character_value(int k, int l, int m, cplx tau, cplx mu) {
    require_n2_label(k, l, m);
    if (!(tau.imag() > 0)) fail("InvalidTau", "need Im tau > 0");
    if (k == 1) return k_value(Rational(m), Rational(3), tau, mu);
    cplxld t = to_l(tau), u = to_l(mu);
    const cplxld ipt(0, PI_L);
    cplxld qh = std::exp(ipt * t);  // q^{1/2}
    long N = static_cast<long>(std::ceil(50.0 / (PI_L * tau.imag()))) + 2;
    if (N > MAX_N2_ORDER * 2) fail("NonconvergentTolerance", "Im tau too small for the N = 2 characters");
    if (l == 1) {
        cplxld prod = 1, qn = qh * qh, qk = qn;
        for (long n = 1; n <= N; ++n, qk *= qn) prod *= 1.0L + qk;
        cplxld pre = std::exp(ipt * t / 12.0L);
        return to_d(to_l(k_value(make_rational(m, 2), Rational(2), tau, mu)) * pre * prod);
    }
    cplxld plus = 1, minus = 1, qk = qh, qn = qh * qh;
    for (long n = 1; n <= N; ++n, qk *= qn) {
        plus *= 1.0L + qk;
        minus *= 1.0L - qk;
    }
    cplxld even = (plus + minus) / 2.0L, odd = (plus - minus) / 2.0L;
    long double s = (l == 2 && m != 0) ? 0.5L : 0.0L;
    cplxld th[2] = {0, 0};
    long R = static_cast<long>(std::sqrt(static_cast<long double>(N))) + 4;
    for (long n = -R; n <= R; ++n) {
        long double x = n + s;
        th[((n % 2) + 2) % 2] += std::exp(ipt * (2.0L * x * x * t + 2.0L * x * u));
    }
    bool swap = (m == 0 && l == 2) || m == -2;
    cplxld body = swap ? th[0] * odd + th[1] * even : th[0] * even + th[1] * odd;
    cplxld pre = std::exp(ipt * t * (-2.0L / 48.0L)) / eta_l(t, 1e-18);
    return to_d(pre * body);
}

cplx n2_t2_eigenvalue(int k, int l, int m) {
    require_n2_label(k, l, m);
    Rational x = 2 * (n2_weight(k, l, m) - n2_central_charge(k) / 24);
    return std::exp(cplx(0, 2 * M_PI * to_double(x - floor_q(x))));
}

std::vector<std::vector<cplx>> n2_smatrix(int k) {
    auto labels = n2_labels(k);
    size_t n = labels.size();
    std::vector<std::vector<cplx>> s(n, std::vector<cplx>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            double amp = 2.0 / (k + 2) * std::sin(M_PI * (labels[a].l + 1) * (labels[b].l + 1) / (k + 2));
            s[a][b] = amp * std::exp(cplx(0, M_PI * labels[a].m * labels[b].m / (k + 2)));
        }
    return s;
}

}  // namespace ellcft
