#include "ellcft/cft.hpp"

#include "ellcft/elliptic.hpp"
#include "ellcft/errors.hpp"
#include "ellcft/modforms.hpp"
#include "numeric_detail.hpp"

#include <algorithm>
#include <cmath>

namespace ellcft {

using namespace detail;

Mat2 operator+(const Mat2& a, const Mat2& b) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}

Mat2 operator-(const Mat2& a, const Mat2& b) { return a + cplx(-1) * b; }

Mat2 operator*(const Mat2& a, const Mat2& b) {
    Mat2 r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
}

Mat2 operator*(cplx s, const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = s * a[i][j];
    return r;
}

Mat2 adjoint(const Mat2& a) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = std::conj(a[j][i]);
    return r;
}

double max_abs(const Mat2& a) {
    double m = 0;
    for (const auto& row : a)
        for (const auto& x : row) m = std::max(m, std::abs(x));
    return m;
}

cplx gegenbauer(int n, double lambda, cplx x) {
    if (n < 0 || !(lambda > 0)) fail("InvalidArgument", "gegenbauer needs n >= 0 and lambda > 0");
    // sum_k (-1)^k (lambda)_{n-k} / (k! (n-2k)!) (2x)^{n-2k}
    cplxld sum = 0;
    const cplxld two_x = 2.0L * to_l(x);
    for (int k = 0; 2 * k <= n; ++k) {
        long double c = 1;
        for (int i = 0; i < n - k; ++i) c *= (lambda + i);
        for (int i = 2; i <= k; ++i) c /= i;
        for (int i = 2; i <= n - 2 * k; ++i) c /= i;
        if (k % 2 == 1) c = -c;
        sum += c * std::pow(two_x, n - 2 * k);
    }
    return to_d(sum);
}

namespace {

double dot(const RealVec& a, const RealVec& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void check_unit(const RealVec& u) {
    if (u.empty() || std::abs(std::sqrt(dot(u, u)) - 1) > 1e-12) fail("InvalidArgument", "frame vector is not a unit vector");
}

double collinear_distance(const RealVec& u1, const RealVec& u2) {
    double dm = 0, dp = 0;
    for (size_t i = 0; i < u1.size(); ++i) {
        dm += (u1[i] - u2[i]) * (u1[i] - u2[i]);
        dp += (u1[i] + u2[i]) * (u1[i] + u2[i]);
    }
    return std::sqrt(std::min(dm, dp));
}

}  // namespace

Kinematics Kinematics::from_vectors(cplx zeta1, cplx zeta2, const RealVec& u1, const RealVec& u2) {
    if (u1.size() != u2.size()) fail("InvalidArgument", "frame vectors of different dimension");
    check_unit(u1);
    check_unit(u2);
    if (collinear_distance(u1, u2) < 1e-8) fail("CollinearVectors", "u1 and u2 are collinear");
    Kinematics k;
    k.zeta1 = zeta1;
    k.zeta2 = zeta2;
    k.u1 = u1;
    k.u2 = u2;
    k.alpha = std::acos(std::clamp(dot(u1, u2), -1.0, 1.0)) / (2 * M_PI);
    return k;
}

Kinematics Kinematics::from_alpha(cplx zeta12, double alpha, int D) {
    if (alpha < 0 || alpha > 0.5) fail("InvalidArgument", "alpha must lie in [0, 1/2]");
    if (D < 2) fail("InvalidArgument", "dimension must be at least 2");
    Kinematics k;
    k.zeta1 = zeta12;
    k.zeta2 = 0;
    k.alpha = alpha;
    k.u1.assign(D, 0.0);
    k.u2.assign(D, 0.0);
    k.u1[D - 2] = std::sin(M_PI * alpha);
    k.u2[D - 2] = -std::sin(M_PI * alpha);
    k.u1[D - 1] = k.u2[D - 1] = std::cos(M_PI * alpha);
    return k;
}

Kinematics Kinematics::shifted(cplx dz) const {
    Kinematics k = *this;
    k.zeta1 += dz;
    return k;
}

FrameVectors moving_frame(const RealVec& u1, const RealVec& u2) {
    if (u1.size() != u2.size()) fail("InvalidArgument", "frame vectors of different dimension");
    check_unit(u1);
    check_unit(u2);
    if (collinear_distance(u1, u2) < 1e-8) fail("CollinearVectors", "u1 and u2 are collinear");
    FrameVectors f;
    f.alpha = std::acos(std::clamp(dot(u1, u2), -1.0, 1.0)) / (2 * M_PI);
    const cplx c = std::exp(cplx(0, M_PI * f.alpha));
    const cplx det = c * c - 1.0 / (c * c);
    f.v.resize(u1.size());
    f.vbar.resize(u1.size());
    for (size_t i = 0; i < u1.size(); ++i) {
        f.v[i] = (c * u1[i] - u2[i] / c) / det;
        f.vbar[i] = (c * u2[i] - u1[i] / c) / det;
    }
    return f;
}

double frame_residual(const FrameVectors& f, const RealVec& u1, const RealVec& u2) {
    const cplx c = std::exp(cplx(0, M_PI * f.alpha));
    double r = 0;
    for (size_t i = 0; i < u1.size(); ++i) {
        r = std::max(r, std::abs(c * f.v[i] + f.vbar[i] / c - u1[i]));
        r = std::max(r, std::abs(f.v[i] / c + c * f.vbar[i] - u2[i]));
    }
    return r;
}

namespace {

const Mat2 kOne{{{1, 0}, {0, 1}}};
const Mat2 kISigma[3] = {Mat2{{{0, cplx(0, 1)}, {cplx(0, 1), 0}}}, Mat2{{{0, 1}, {-1, 0}}},
                         Mat2{{{cplx(0, 1), 0}, {0, cplx(0, -1)}}}};

}  // namespace

Mat2 slash_plus(const CplxVec& v) {
    if (v.size() != 4) fail("InvalidArgument", "quaternionic slash needs a 4-vector");
    Mat2 r = v[3] * kOne;
    for (int k = 0; k < 3; ++k) r = r + v[k] * kISigma[k];
    return r;
}

Mat2 slash(const CplxVec& v) {
    if (v.size() != 4) fail("InvalidArgument", "quaternionic slash needs a 4-vector");
    Mat2 r = v[3] * kOne;
    for (int k = 0; k < 3; ++k) r = r - v[k] * kISigma[k];
    return r;
}

double max_abs_diff(const CorrValue& a, const CorrValue& b) {
    if (a.comps.size() != b.comps.size()) fail("InvalidArgument", "correlator shapes differ");
    double m = 0;
    for (size_t i = 0; i < a.comps.size(); ++i) m = std::max(m, std::abs(a.comps[i] - b.comps[i]));
    return m;
}

bool is_charged(const ModelId& m) {
    return m.tag == ModelTag::ChiralWeyl || m.tag == ModelTag::Weyl4Canonical ||
           m.tag == ModelTag::Weyl4Subcanonical || m.tag == ModelTag::N2Super;
}

bool is_chiral(const ModelId& m) {
    switch (m.tag) {
        case ModelTag::ChiralWeyl:
        case ModelTag::IsingNS:
        case ModelTag::IsingR:
        case ModelTag::N2Super:
        case ModelTag::ChiralU1:
            return true;
        default:
            return false;
    }
}

namespace {

enum class Arg { z12, plus, minus };

// coef * kernel_{k, lambda}(argument)
struct Term {
    int k, lambda;
    Arg arg;
    CplxVec coef;
};

struct TermList {
    int kappa = 0;  // 1 for odd 2d
    std::vector<Term> terms;
    bool matrix = false;
};

CplxVec flat(const Mat2& m) { return {m[0][0], m[0][1], m[1][0], m[1][1]}; }

CplxVec scaled(const CplxVec& v, cplx s) {
    CplxVec r = v;
    for (auto& x : r) x *= s;
    return r;
}

using Series = std::vector<long double>;

Series series_mul(const Series& a, const Series& b, size_t n) {
    Series r(n, 0.0L);
    for (size_t i = 0; i < n && i < a.size(); ++i)
        for (size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// principal part coefficients c_1..c_{d0} of (-4 sin(pi t) sin(pi t + b))^{-d0} at t = 0
std::vector<long double> scalar_principal_part(int d0, long double b) {
    const size_t n = d0;
    Series sin_over_t(n, 0.0L), sin_t(n + 1, 0.0L), cos_t(n + 1, 0.0L);
    long double term = PI_L;
    for (size_t i = 0; i < n + 1; i += 2) {
        if (i < n) sin_over_t[i] = term;
        if (i + 1 < n + 1) sin_t[i + 1] = term;
        term *= -PI_L * PI_L / ((i + 2) * (i + 3));
    }
    term = 1;
    for (size_t i = 0; i < n + 1; i += 2) {
        cos_t[i] = term;
        term *= -PI_L * PI_L / ((i + 1) * (i + 2));
    }
    Series shifted(n + 1);
    for (size_t i = 0; i < n + 1; ++i) shifted[i] = std::sin(b) * cos_t[i] + std::cos(b) * sin_t[i];
    Series h = series_mul(sin_over_t, shifted, n);
    for (auto& x : h) x *= -4;
    if (std::abs(h[0]) < 1e-300L) fail("CollinearVectors", "degenerate scalar kinematics");
    Series inv(n, 0.0L);
    inv[0] = 1 / h[0];
    for (size_t i = 1; i < n; ++i) {
        long double s = 0;
        for (size_t j = 1; j <= i; ++j) s += h[j] * inv[i - j];
        inv[i] = -s / h[0];
    }
    Series p(n, 0.0L);
    p[0] = 1;
    for (int i = 0; i < d0; ++i) p = series_mul(p, inv, n);
    std::vector<long double> c(d0 + 1, 0.0L);
    for (int j = 1; j <= d0; ++j) c[j] = p[d0 - j];
    return c;
}

void require_frame(const ModelId& m, const Kinematics& kin) {
    if (is_chiral(m)) return;
    if (std::abs(std::sin(2 * M_PI * kin.alpha)) < 1e-8) fail("CollinearVectors", "collinear kinematics for " + model_name(m));
}

TermList terms_for(const ModelId& m, const Kinematics& kin) {
    require_frame(m, kin);
    TermList L;
    const double a = 2 * M_PI * kin.alpha;
    const double s = std::sin(a), ct = std::cos(a) / s;
    const double pi = M_PI;
    const cplx I(0, 1);
    auto add = [&](int k, int lambda, Arg arg, CplxVec coef) { L.terms.push_back({k, lambda, arg, std::move(coef)}); };
    switch (m.tag) {
        case ModelTag::ChiralWeyl:
        case ModelTag::IsingNS:
            L.kappa = 1;
            add(1, 1, Arg::z12, {1.0 / (2 * pi * I)});
            break;
        case ModelTag::IsingR:
            L.kappa = 1;
            add(1, 0, Arg::z12, {1.0 / (2 * pi * I)});
            break;
        case ModelTag::ChiralU1:
            add(2, 0, Arg::z12, {-1.0 / (4 * pi * pi)});
            break;
        case ModelTag::N2Super: {
            L.kappa = 1;
            const double c = m.c.get_d(), l0 = m.L0mean.get_d();
            add(3, 1, Arg::z12, {I * c / (12 * pi * pi * pi)});
            add(1, 1, Arg::z12, {-I * l0 / pi});
            break;
        }
        case ModelTag::Scalar: {
            const int d0 = (m.D - 2) / 2;
            auto cp = scalar_principal_part(d0, -a);
            auto cm = scalar_principal_part(d0, a);
            for (int j = 1; j <= d0; ++j) {
                add(j, 0, Arg::plus, {cplx(static_cast<double>(cp[j]))});
                add(j, 0, Arg::minus, {cplx(static_cast<double>(cm[j]))});
            }
            break;
        }
        case ModelTag::Weyl4Subcanonical:
        case ModelTag::Weyl4Canonical: {
            if (kin.u1.size() != 4) fail("InvalidArgument", "Weyl4 models need 4-vectors");
            L.kappa = 1;
            L.matrix = true;
            FrameVectors f = moving_frame(kin.u1, kin.u2);
            CplxVec vp = flat(slash_plus(f.v)), vbp = flat(slash_plus(f.vbar));
            if (m.tag == ModelTag::Weyl4Subcanonical) {
                add(1, 1, Arg::minus, scaled(vp, 1.0 / (2 * pi * I)));
                add(1, 1, Arg::plus, scaled(vbp, 1.0 / (2 * pi * I)));
            } else {
                const cplx pre = -I / (2 * pi * pi * s);
                add(2, 1, Arg::minus, scaled(vp, pre));
                add(1, 1, Arg::minus, scaled(vp, -pre * pi * ct));
                add(1, 1, Arg::plus, scaled(vp, pre * pi / s));
                add(2, 1, Arg::plus, scaled(vbp, -pre));
                add(1, 1, Arg::plus, scaled(vbp, -pre * pi * ct));
                add(1, 1, Arg::minus, scaled(vbp, pre * pi / s));
            }
            break;
        }
        case ModelTag::Maxwell: {
            const double s3 = s * s * s;
            // W0(zeta, alpha)
            add(1, 0, Arg::minus, {1 / (4 * pi * s3), 1 / (4 * pi * s3), 0});
            add(1, 0, Arg::plus, {-1 / (4 * pi * s3), -1 / (4 * pi * s3), 0});
            add(3, 0, Arg::plus, {-1 / (4 * s * pi * pi * pi), 0, 0});
            add(2, 0, Arg::plus, {ct / (4 * s * pi * pi), 0, 0});
            // W0(zeta, -alpha)
            add(3, 0, Arg::minus, {0, 1 / (4 * s * pi * pi * pi), 0});
            add(2, 0, Arg::minus, {0, ct / (4 * s * pi * pi), 0});
            // F3
            const double f = 1 / (4 * pi * pi * s * s);
            add(2, 0, Arg::plus, {0, 0, f});
            add(2, 0, Arg::minus, {0, 0, f});
            add(1, 0, Arg::plus, {0, 0, 2 * pi * ct * f});
            add(1, 0, Arg::minus, {0, 0, -2 * pi * ct * f});
            break;
        }
        case ModelTag::GaugeLongitudinal:
            fail("UnknownModel", "gauge_longitudinal has no 2-point closed form");
    }
    return L;
}

cplx arg_value(Arg a, const Kinematics& kin) {
    switch (a) {
        case Arg::z12: return kin.zeta12();
        case Arg::plus: return kin.zeta_plus();
        case Arg::minus: return kin.zeta_minus();
    }
    return 0;
}

size_t comp_count(const TermList& L) { return L.terms.empty() ? 1 : L.terms.front().coef.size(); }

CorrValue finish(const TermList& L, CplxVec comps) {
    CorrValue v;
    if (L.matrix) v.matrix = Mat2{{{comps[0], comps[1]}, {comps[2], comps[3]}}};
    v.comps = std::move(comps);
    return v;
}

template <class K>
CorrValue combine(const TermList& L, const Kinematics& kin, K kernel) {
    CplxVec comps(comp_count(L), 0.0);
    for (const auto& t : L.terms) {
        cplx g;
        try {
            g = kernel(t.k, t.lambda, arg_value(t.arg, kin));
        } catch (const Error& e) {
            if (e.code() == "PoleAtLatticePoint") fail("PoleKinematics", "correlator evaluated on its pole set");
            throw;
        }
        for (size_t i = 0; i < comps.size(); ++i) comps[i] += t.coef[i] * g;
    }
    return finish(L, std::move(comps));
}

void check_off_integers(cplx z) {
    if (std::abs(z - std::round(z.real())) < 1e-12 * std::max(1.0, std::abs(z)))
        fail("PoleKinematics", "correlator evaluated on its pole set");
}

}  // namespace

CorrValue vacuum_2pt(const ModelId& m, const Kinematics& kin) {
    const cplx z = kin.zeta12(), I(0, 1);
    const double pi = M_PI;
    switch (m.tag) {
        case ModelTag::ChiralWeyl:
        case ModelTag::IsingNS:
            check_off_integers(z);
            return {{1.0 / (2.0 * I * std::sin(pi * z))}, std::nullopt};
        case ModelTag::IsingR:
            check_off_integers(z);
            return {{std::cos(pi * z) / std::sin(pi * z) / (2.0 * I)}, std::nullopt};
        case ModelTag::ChiralU1:
            check_off_integers(z);
            return {{-1.0 / (4.0 * std::pow(std::sin(pi * z), 2))}, std::nullopt};
        case ModelTag::N2Super: {
            check_off_integers(z);
            const cplx s = std::sin(pi * z), c = std::cos(pi * z);
            const double cc = m.c.get_d(), l0 = m.L0mean.get_d();
            return {{I * cc / 24.0 * (1.0 + c * c) / (s * s * s) - I * l0 / s}, std::nullopt};
        }
        case ModelTag::Scalar: {
            require_frame(m, kin);
            const cplx zp = kin.zeta_plus(), zm = kin.zeta_minus();
            check_off_integers(zp);
            check_off_integers(zm);
            const int d0 = (m.D - 2) / 2;
            return {{std::pow(-4.0 * std::sin(pi * zp) * std::sin(pi * zm), -d0)}, std::nullopt};
        }
        default:
            break;
    }
    TermList L = terms_for(m, kin);
    return combine(L, kin, [](int k, int lambda, cplx w) { return p_kernel(k, lambda, w); });
}

CorrValue thermal_2pt(const ModelId& m, const Kinematics& kin, cplx tau, cplx mu) {
    if (mu != 0.0 && !is_charged(m)) fail("InvalidArgument", model_name(m) + " is neutral; mu must be 0");
    TermList L = terms_for(m, kin);
    return combine(L, kin, [&](int k, int lambda, cplx w) {
        return p_eval(PIndex{k, L.kappa, lambda, mu}, w, tau, 1e-14);
    });
}

CorrValue image_sum_2pt(const ModelId& m, const Kinematics& kin, cplx tau, int cutoff, cplx mu) {
    if (cutoff < 0) fail("InvalidArgument", "cutoff must be non-negative");
    if (tau.imag() <= 0) fail("InvalidTau", "Im tau must be positive");
    if (mu != 0.0 && !is_charged(m)) fail("InvalidArgument", model_name(m) + " is neutral; mu must be 0");
    const bool odd = Rational(2 * conformal_weight(m)).get_num() % 2 != 0;
    CorrValue acc = vacuum_2pt(m, kin);
    for (int k = 1; k <= cutoff; ++k)
        for (int sgn : {1, -1}) {
            const int kk = sgn * k;
            cplx w = std::exp(cplx(0, 2 * M_PI) * mu * double(kk));
            if (odd && k % 2 == 1) w = -w;
            CorrValue t = vacuum_2pt(m, kin.shifted(double(kk) * tau));
            for (size_t i = 0; i < acc.comps.size(); ++i) acc.comps[i] += w * t.comps[i];
        }
    if (acc.matrix) acc.matrix = Mat2{{{acc.comps[0], acc.comps[1]}, {acc.comps[2], acc.comps[3]}}};
    return acc;
}

namespace {

cplx form_at(const char* name, cplx tau) { return form_eval(parse_form(name), tau).value; }
cplx eis(long two_k, cplx tau) { return form_eval(FormId::eisenstein(two_k), tau).value; }

cplx closed_energy_mean(const ModelId& m, const Spectrum& sp, cplx tau) {
    const cplx tp = (tau + 1.0) / 2.0;
    switch (m.tag) {
        case ModelTag::ChiralWeyl: return form_at("f2", tau);
        case ModelTag::IsingNS: return form_at("f2", tau) / 2.0;
        case ModelTag::IsingR: return eis(2, tau) - 2.0 * eis(2, 2.0 * tau);
        case ModelTag::Weyl4Canonical:
            return (8.0 * eis(4, tau) - eis(4, tp)) / 4.0 + (eis(2, tp) - 2.0 * eis(2, tau)) / 4.0;
        case ModelTag::Weyl4Subcanonical:
            return -0.75 * (eis(4, tp) - 8.0 * eis(4, tau)) - 1.25 * (eis(2, tp) - 2.0 * eis(2, tau));
        default:
            break;
    }
    // integer bosonic spectrum: E d(E) = sum_m c_m E^{2m-1} gives sum_m c_m G_{2m}
    cplx total = 0;
    for (size_t i = 0; i < sp.poly.size(); ++i) {
        if (sp.poly[i] == 0) continue;
        if (i % 2 != 0) fail("UnknownModel", "no closed form for " + model_name(m));
        total += sp.poly[i].get_d() * eis(static_cast<long>(i) + 2, tau);
    }
    return total;
}

}  // namespace

EnergyMean energy_mean(const ModelId& m, cplx tau) {
    if (m.tag == ModelTag::N2Super) fail("UnknownModel", "n2_super energy mean is an input");
    const cplxld q = qnome(to_l(tau));
    const long double aq = std::abs(q);
    Spectrum sp = spectrum(m);
    const long double E0 = vacuum_energy(m).get_d();
    const long double off = sp.offset.get_d();
    const int deg = static_cast<int>(sp.poly.size());
    auto d_of = [&](long double E) {
        long double v = 0, p = 1;
        for (const auto& c : sp.poly) {
            v += c.get_d() * p;
            p *= E;
        }
        return v;
    };
    const cplxld q_off = off == 0 ? cplxld(1) : std::sqrt(q);
    cplxld sum = 0;
    long double tail = 0;
    long n0 = std::lround(sp.min_energy.get_d() - off);
    cplxld qn = q_off * std::pow(q, n0);
    for (long n = n0;; ++n, qn *= q) {
        if (n - n0 > MAX_TERMS) fail("NonconvergentTolerance", "energy sum did not converge");
        const long double E = off + n;
        const cplxld t = E * d_of(E) * qn / (sp.fermion ? 1.0L + qn : 1.0L - qn);
        sum += t;
        const long double ratio = aq * std::pow((E + 1) / E, deg) * (1 + aq) / (1 - aq);
        if (ratio < 0.9L && std::abs(t) < 1e-20L) {
            tail = std::abs(t) * ratio / (1 - ratio) * (1 + aq);
            break;
        }
    }
    EnergyMean r;
    r.numeric = to_d(sum + E0);
    r.closed_form = closed_energy_mean(m, sp, tau);
    r.residual = r.numeric - r.closed_form;
    r.tail_bound = static_cast<double>(tail);
    return r;
}

LaurentResult laurent_extract(const std::function<cplx(cplx)>& f, int pole_order, int depth, double radius,
                              double tol) {
    if (depth < 1 || depth > 4) fail("ExtractionUnstable", "depth must lie in [1, 4]");
    constexpr int N = 32;
    auto at_radius = [&](double r) {
        CplxVec raw(N);
        for (int j = 0; j < N; ++j) raw[j] = f(std::polar(r, 2 * M_PI * (j + 0.5) / N));
        CplxVec c(depth);
        for (int i = 0; i < depth; ++i) {
            const int n = -pole_order + i;
            cplx s = 0;
            for (int j = 0; j < N; ++j) s += raw[j] * std::polar(1.0, -2 * M_PI * n * (j + 0.5) / N);
            c[i] = s / double(N) / std::pow(r, n);
        }
        return c;
    };
    CplxVec c1 = at_radius(radius), c2 = at_radius(radius / 2);
    LaurentResult res;
    res.lowest_power = -pole_order;
    res.coeffs.resize(depth);
    const double w = std::ldexp(1.0, N);
    for (int i = 0; i < depth; ++i) {
        res.coeffs[i] = (w * c2[i] - c1[i]) / (w - 1);
        res.condition = std::max(res.condition, std::abs(c1[i] - c2[i]) / std::max(1.0, std::abs(res.coeffs[i])));
    }
    if (!(res.condition <= tol)) fail("ExtractionUnstable", "radius estimates disagree");
    return res;
}

LaurentResult laurent_coeffs(const ModelId& m, cplx tau, int depth, cplx mu, double tol) {
    if (!is_chiral(m)) fail("UnknownModel", "Laurent extraction is defined for chiral models");
    if (tau.imag() <= 0) fail("InvalidTau", "Im tau must be positive");
    int pole = 1;
    if (m.tag == ModelTag::ChiralU1) pole = 2;
    if (m.tag == ModelTag::N2Super) pole = 3;
    const bool odd = Rational(2 * conformal_weight(m)).get_num() % 2 != 0;
    double dmin = 1;
    for (cplx w : {tau, tau - 1.0, tau + 1.0}) dmin = std::min(dmin, std::abs(w));
    auto f = [&](cplx z) {
        cplx a = thermal_2pt(m, Kinematics::from_alpha(z, 0, 2), tau, mu).comps[0];
        cplx b = thermal_2pt(m, Kinematics::from_alpha(-z, 0, 2), tau, -mu).comps[0];
        return 0.5 * (odd ? a - b : a + b);
    };
    return laurent_extract(f, pole, depth, 0.25 * dmin, tol);
}

}  // namespace ellcft
