#include "ellcft/elliptic.hpp"

#include "ellcft/errors.hpp"
#include "ellcft/modforms.hpp"
#include "numeric_detail.hpp"

#include <cfloat>
#include <cmath>
#include <mutex>

namespace ellcft {

using namespace detail;

namespace {

constexpr int KMAX = 40;

using Poly = std::vector<long double>;  // coefficients in c = cot(pi w), lowest first

Poly poly_deriv(const Poly& p) {
    Poly d(p.size() > 1 ? p.size() - 1 : 1, 0.0L);
    for (size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<long double>(i) * p[i];
    return d;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0L);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

// c^s (1 + c^2)^t p
Poly poly_mul_c(const Poly& p) {
    Poly r(p.size() + 1, 0.0L);
    for (size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i];
    return r;
}

Poly poly_mul_s(const Poly& p) {
    Poly r(p.size() + 2, 0.0L);
    for (size_t i = 0; i < p.size(); ++i) {
        r[i] += p[i];
        r[i + 2] += p[i];
    }
    return r;
}

Poly poly_scale(const Poly& p, long double f) {
    Poly r = p;
    for (auto& x : r) x *= f;
    return r;
}

// d^j/dw^j (pi cot pi w) = pi^{j+1} s R_j(c) for j >= 1, s = 1 + c^2
// d^j/dw^j (pi csc pi w) = pi^{j+1} Q_j(c) csc(pi w)
struct KernelPolys {
    std::vector<Poly> R, Q;
    KernelPolys() {
        R.resize(KMAX);
        Q.resize(KMAX);
        R[1] = {-1.0L};
        for (int j = 1; j + 1 < KMAX; ++j)
            R[j + 1] = poly_scale(poly_add(poly_scale(poly_mul_c(R[j]), 2), poly_mul_s(poly_deriv(R[j]))), -1);
        Q[0] = {1.0L};
        for (int j = 0; j + 1 < KMAX; ++j)
            Q[j + 1] = poly_scale(poly_add(poly_mul_c(Q[j]), poly_mul_s(poly_deriv(Q[j]))), -1);
    }
};

const KernelPolys& kernel_polys() {
    static const KernelPolys k;
    return k;
}

cplxld horner(const Poly& p, cplxld c) {
    cplxld r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * c + p[i];
    return r;
}

// e^x - 1 without cancellation for small x
cplxld cexpm1(cplxld x) {
    long double a = x.real(), b = x.imag();
    long double em1 = std::expm1(a);
    long double sb = std::sin(b / 2);
    return {em1 * std::cos(b) - 2 * sb * sb, std::exp(a) * std::sin(b)};
}

long double factorial(int n) {
    long double f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// g_{k,lambda}(w) for Im w >= 0. shifted (k = 1, lambda = 0 only) returns pi cot pi w + i pi.
cplxld g_upper(int k, int lambda, cplxld w, bool shifted) {
    const cplxld twopii(0, 2 * PI_L);
    const cplxld e = std::exp(twopii * w);
    const cplxld one_minus_e = -cexpm1(twopii * w);
    const cplxld I(0, 1);
    const cplxld c = -I * (1.0L + e) / one_minus_e;
    const long double sign = (k - 1) % 2 == 0 ? 1.0L : -1.0L;
    const long double pre = sign * std::pow(PI_L, static_cast<long double>(k)) / factorial(k - 1);
    if (lambda == 0) {
        if (k == 1) return shifted ? -twopii * e / one_minus_e : PI_L * c;
        const cplxld s = -4.0L * e / (one_minus_e * one_minus_e);
        return pre * s * horner(kernel_polys().R[k - 1], c);
    }
    const cplxld h = std::exp(cplxld(0, PI_L) * w);
    const cplxld csc = -2.0L * I * h / one_minus_e;
    return pre * horner(kernel_polys().Q[k - 1], c) * csc;
}

// y^m-free term of the image sum at w = zeta + m tau, with the k = 1 constant removed for m != 0
cplxld image_term(int k, int lambda, cplxld w, long m) {
    const cplxld ipi(0, PI_L);
    const bool upper = w.imag() >= 0;
    const long double par = k % 2 == 0 ? 1.0L : -1.0L;
    if (k == 1 && lambda == 0 && m != 0) {
        if (m > 0) return upper ? g_upper(1, 0, w, true) : -g_upper(1, 0, -w, false) + ipi;
        return upper ? g_upper(1, 0, w, false) - ipi : -g_upper(1, 0, -w, true);
    }
    return upper ? g_upper(k, lambda, w, false) : par * g_upper(k, lambda, -w, false);
}

double lattice_distance(cplx zeta, cplx tau) {
    double m0 = std::round(zeta.imag() / tau.imag());
    double best = INFINITY;
    for (double dm = -1; dm <= 1; ++dm) {
        cplx r = zeta - (m0 + dm) * tau;
        double n0 = std::round(r.real());
        for (double dn = -1; dn <= 1; ++dn) best = std::min(best, std::abs(r - (n0 + dn)));
    }
    return best;
}

}  // namespace

PValue p_eval_ex(const PIndex& idx, cplx zeta, cplx tau, double tol) {
    check_tau(tau);
    if (idx.k < 1 || idx.k >= KMAX) fail("InvalidIndex", "k must lie in [1, " + std::to_string(KMAX - 1) + "]");
    if ((idx.kappa != 0 && idx.kappa != 1) || (idx.lambda != 0 && idx.lambda != 1))
        fail("InvalidIndex", "kappa and lambda must be 0 or 1");
    if (!std::isfinite(zeta.real()) || !std::isfinite(zeta.imag())) fail("InvalidArgument", "zeta is not finite");
    PValue out;
    out.pole_distance = lattice_distance(zeta, tau);
    if (out.pole_distance < 1e-14 * std::max(1.0, std::abs(zeta)))
        fail("PoleAtLatticePoint", "zeta lies on the lattice Z tau + Z");

    const cplxld z = to_l(zeta), t = to_l(tau);
    const cplxld phase = cplxld(0, PI_L) * (2.0L * to_l(idx.mu) + static_cast<long double>(idx.kappa));
    const long double ay = std::exp(phase.real());  // |y|
    const long double rho = idx.lambda ? 0.5L : 1.0L;
    const long double aq_rho = std::exp(-2 * PI_L * rho * t.imag());
    const long double r_plus = ay * aq_rho, r_minus = aq_rho / ay;
    if (!(r_plus < 1) || !(r_minus < 1))
        fail("NonconvergentMu", "|e^{2 pi i mu} q^n| does not decay in both directions");
    const long double C = idx.lambda ? 2 * std::pow(PI_L, static_cast<long double>(idx.k))
                                     : std::pow(2 * PI_L, static_cast<long double>(idx.k));

    // bound on sum_{m beyond M} given Im w at the first omitted image and |y|^m there
    auto tail = [&](long double im_abs, long double ym, long double ratio) -> long double {
        if (im_abs <= 0) return INFINITY;
        long double u = std::exp(-2 * PI_L * rho * im_abs);
        if (u >= 1) return INFINITY;
        return ym * C * u / std::pow(1 - u, static_cast<long double>(idx.k)) / (1 - ratio);
    };

    cplxld sum = image_term(idx.k, idx.lambda, z, 0);
    long double abs_sum = std::abs(sum);
    long terms = 1;
    long double tail_p = INFINITY, tail_m = INFINITY;
    const long double tol_half = static_cast<long double>(tol) / 2;
    for (long m = 1;; ++m) {
        if (terms > MAX_TERMS) fail("NonconvergentTolerance", "image sum did not reach the tolerance");
        if (tail_p >= tol_half) {
            cplxld w = z + static_cast<long double>(m) * t;
            cplxld v = std::exp(phase * static_cast<long double>(m)) * image_term(idx.k, idx.lambda, w, m);
            sum += v;
            abs_sum += std::abs(v);
            ++terms;
            tail_p = tail((w + t).imag(), std::pow(ay, static_cast<long double>(m + 1)), r_plus);
        }
        if (tail_m >= tol_half) {
            cplxld w = z - static_cast<long double>(m) * t;
            cplxld v = std::exp(-phase * static_cast<long double>(m)) * image_term(idx.k, idx.lambda, w, -m);
            sum += v;
            abs_sum += std::abs(v);
            ++terms;
            tail_m = tail(-(w - t).imag(), std::pow(ay, -static_cast<long double>(m + 1)), r_minus);
        }
        if (tail_p < tol_half && tail_m < tol_half) break;
    }
    out.value = to_d(sum);
    out.est_error = static_cast<double>(tail_p + tail_m + 64 * LDBL_EPSILON * abs_sum) +
                    DBL_EPSILON * std::abs(out.value);
    out.terms = terms;
    return out;
}

cplx p_kernel(int k, int lambda, cplx w) {
    if (k < 1 || k >= KMAX || (lambda != 0 && lambda != 1)) fail("InvalidIndex", "kernel index out of range");
    if (std::abs(w - std::round(w.real())) < 1e-14 * std::max(1.0, std::abs(w)))
        fail("PoleAtLatticePoint", "kernel evaluated at an integer");
    return to_d(image_term(k, lambda, to_l(w), 0));
}

cplx p_eval(const PIndex& idx, cplx zeta, cplx tau, double tol) { return p_eval_ex(idx, zeta, tau, tol).value; }

std::vector<PValue> p_eval_grid(const PIndex& idx, const std::vector<cplx>& zetas, cplx tau, double tol,
                                Exec exec) {
    kernel_polys();
    std::vector<PValue> out(zetas.size());
    std::vector<std::string> errs(zetas.size());
    for_each_index(zetas.size(), exec, [&](size_t i) {
        try {
            out[i] = p_eval_ex(idx, zetas[i], tau, tol);
        } catch (const Error& e) {
            errs[i] = e.what();
            out[i].value = cplx(NAN, NAN);
        }
    });
    return out;
}

namespace {

cplx g2_term(cplx tau) { return to_d(eisenstein_l(2, to_l(tau), 1e-18)); }

}  // namespace

cplx wp(cplx z, cplx tau) {
    const double pi = static_cast<double>(PI_L);
    return p_eval({2, 0, 0, 0}, z, tau, 1e-15) + 8 * pi * pi * g2_term(tau);
}

cplx wp_prime(cplx z, cplx tau) { return -2.0 * p_eval({3, 0, 0, 0}, z, tau, 1e-15); }

cplx wzeta(cplx z, cplx tau) {
    const double pi = static_cast<double>(PI_L);
    return p_eval({1, 0, 0, 0}, z, tau, 1e-15) - 8 * pi * pi * g2_term(tau) * z;
}

cplx g2_invariant(cplx tau) {
    check_tau(tau);
    const long double tp = 2 * PI_L;
    return to_d(std::pow(tp, 4.0L) * 20.0L * eisenstein_l(4, to_l(tau), 1e-18));
}

cplx g3_invariant(cplx tau) {
    check_tau(tau);
    const long double tp = 2 * PI_L;
    return to_d(-std::pow(tp, 6.0L) * 7.0L * eisenstein_l(6, to_l(tau), 1e-18) / 3.0L);
}

HalfPeriodRoots half_period_roots(cplx tau) {
    check_tau(tau);
    return {wp(tau / 2.0, tau), wp(0.5, tau), wp((tau + 1.0) / 2.0, tau)};
}

cplx theta_eval(int mu, int nu, cplx z, cplx tau, ThetaMethod method, double tol) {
    check_tau(tau);
    if ((mu != 0 && mu != 1) || (nu != 0 && nu != 1)) fail("InvalidIndex", "theta characteristics must be 0 or 1");
    const cplxld zl = to_l(z), t = to_l(tau);
    const cplxld ipi(0, PI_L);
    if (method == ThetaMethod::series) {
        const long double half_mu = mu / 2.0L, half_nu = nu / 2.0L;
        auto term = [&](long n) {
            long double x = n - half_mu;
            return std::exp(ipi * t * x * x + 2.0L * ipi * x * (zl - half_nu));
        };
        const long n0 = std::lround(-zl.imag() / t.imag() + half_mu);
        cplxld s = term(n0);
        for (long j = 1;; ++j) {
            if (j > MAX_TERMS) fail("NonconvergentTolerance", "theta series");
            cplxld a = term(n0 + j), b = term(n0 - j);
            s += a + b;
            long double rho = std::exp(-PI_L * t.imag() * (2 * j - 1));
            long double bound = (std::abs(a) + std::abs(b)) * rho / (1 - rho);
            if (rho < 1 && bound < tol * std::max(1.0L, std::abs(s)) * 0.1L) break;
        }
        return to_d(s);
    }
    const cplxld q = qnome(t), qh = std::exp(ipi * t);
    const long double aq = std::abs(q);
    const cplxld cos2 = std::cos(2.0L * PI_L * zl);
    cplxld prod = 1, qn = 1, qhalf = qh;  // qhalf = q^{n - 1/2}
    const long double growth = std::max(1.0L, std::abs(cos2));
    for (long n = 1;; ++n) {
        if (n > MAX_TERMS) fail("NonconvergentTolerance", "theta product");
        qn *= q;
        cplxld f = 1.0L - qn;
        if (mu == 0) {
            long double sgn = nu == 0 ? 1.0L : -1.0L;
            f *= 1.0L + sgn * 2.0L * qhalf * cos2 + qhalf * qhalf;
        } else {
            long double sgn = nu == 0 ? 1.0L : -1.0L;
            f *= 1.0L + sgn * 2.0L * qn * cos2 + qn * qn;
        }
        prod *= f;
        qhalf *= q;
        // remaining factors differ from one by at most 4 |q|^{m - 1/2} max(1, |cos 2 pi z|) + |q|^m each
        long double rest = (4 * std::abs(qhalf) * growth + std::abs(qn) * aq) / (1 - aq);
        if (rest < 0.5L && rest * 2 < tol * 0.1L) break;
    }
    if (mu == 0) return to_d(prod);
    const cplxld q8 = std::exp(ipi * t / 4.0L);
    const cplxld lead = nu == 0 ? std::cos(PI_L * zl) : std::sin(PI_L * zl);
    return to_d(2.0L * q8 * lead * prod);
}

// ----- curves -----

namespace {

template <class F>
F rhs(const F& x, const Curve<F>& c) {
    if (c.form == CurveForm::four_x_cubed) return F(4) * x * x * x - c.c1 * x - c.c2;
    return x * x * x + c.c1 * x + c.c2;
}

template <class F>
F discriminant_core(const Curve<F>& c) {
    if (c.form == CurveForm::four_x_cubed) return c.c1 * c.c1 * c.c1 - F(27) * c.c2 * c.c2;
    return F(4) * c.c1 * c.c1 * c.c1 + F(27) * c.c2 * c.c2;
}

struct ExactEq {
    bool zero(const Rational& a, const Rational&) const { return a == 0; }
};

struct ApproxEq {
    double tol;
    bool zero(const cplx& a, const cplx& scale) const { return std::abs(a) <= tol * std::max(1.0, std::abs(scale)); }
};

template <class F, class Eq>
CurvePoint<F> add_impl(const CurvePoint<F>& p, const CurvePoint<F>& q, const Curve<F>& c, const Eq& eq) {
    F disc = discriminant_core(c);
    F dscale = c.c1 * c.c1 * c.c1;
    if (eq.zero(disc, dscale + c.c2 * c.c2)) fail("SingularCurve", "discriminant vanishes");
    for (const auto* pt : {&p, &q}) {
        if (pt->infinity) continue;
        F r = rhs(pt->x, c);
        if (!eq.zero(pt->y * pt->y - r, r + pt->y * pt->y)) fail("NotOnCurve", "point does not satisfy the curve equation");
    }
    if (p.infinity) return q;
    if (q.infinity) return p;
    F m;
    if (eq.zero(p.x - q.x, p.x)) {
        if (eq.zero(p.y + q.y, p.y)) return CurvePoint<F>::at_infinity();
        if (c.form == CurveForm::four_x_cubed) m = (F(12) * p.x * p.x - c.c1) / (F(2) * p.y);
        else m = (F(3) * p.x * p.x + c.c1) / (F(2) * p.y);
    } else {
        m = (q.y - p.y) / (q.x - p.x);
    }
    CurvePoint<F> r;
    if (c.form == CurveForm::four_x_cubed) r.x = m * m / F(4) - p.x - q.x;
    else r.x = m * m - p.x - q.x;
    r.y = -(p.y + m * (r.x - p.x));
    return r;
}

}  // namespace

Rational curve_residual(const RatPoint& p, const RatCurve& c) {
    if (p.infinity) return 0;
    return Rational(p.y * p.y - rhs(p.x, c));
}

cplx curve_residual(const CplxPoint& p, const CplxCurve& c) {
    if (p.infinity) return 0;
    return p.y * p.y - rhs(p.x, c);
}

RatPoint curve_add(const RatPoint& p, const RatPoint& q, const RatCurve& c) {
    RatPoint r = add_impl(p, q, c, ExactEq{});
    r.x.canonicalize();
    r.y.canonicalize();
    return r;
}

CplxPoint curve_add(const CplxPoint& p, const CplxPoint& q, const CplxCurve& c, double tol) {
    return add_impl(p, q, c, ApproxEq{tol});
}

RatPoint curve_neg(const RatPoint& p) {
    RatPoint r = p;
    if (!r.infinity) r.y = -r.y;
    return r;
}

CplxPoint curve_neg(const CplxPoint& p) {
    CplxPoint r = p;
    if (!r.infinity) r.y = -r.y;
    return r;
}

namespace {

template <class F, class Eq>
QuarticReduction<F> quartic_impl(const F& e0, const F& e1, const F& e2, const F& e3, const Eq& eq) {
    const F es[4] = {e0, e1, e2, e3};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (eq.zero(es[i] - es[j], es[i])) fail("RepeatedRoot", "quartic roots must be distinct");
    F inv[3];
    for (int j = 0; j < 3; ++j) inv[j] = F(1) / (e0 - es[j + 1]);
    QuarticReduction<F> r;
    // e_j' = a - 1/(e0 - e_j) sums to zero for a = +(1/3) sum 1/(e0 - e_j)
    r.a = (inv[0] + inv[1] + inv[2]) / F(3);
    r.e1 = r.a - inv[0];
    r.e2 = r.a - inv[1];
    r.e3 = r.a - inv[2];
    r.A2 = (e0 - e1) * (e0 - e2) * (e0 - e3) / F(4);
    return r;
}

}  // namespace

QuarticReduction<Rational> quartic_reduce(const Rational& e0, const Rational& e1, const Rational& e2,
                                          const Rational& e3) {
    auto r = quartic_impl<Rational>(e0, e1, e2, e3, ExactEq{});
    for (Rational* x : {&r.a, &r.A2, &r.e1, &r.e2, &r.e3}) x->canonicalize();
    return r;
}

QuarticReduction<cplx> quartic_reduce(cplx e0, cplx e1, cplx e2, cplx e3) {
    return quartic_impl<cplx>(e0, e1, e2, e3, ApproxEq{1e-14});
}

SnResult sn_from_tau(cplx z, cplx tau) {
    check_tau(tau);
    HalfPeriodRoots e = half_period_roots(tau);
    SnResult r;
    r.sqrt_e23 = std::sqrt(e.e2 - e.e3);
    r.k_squared = (e.e1 - e.e3) / (e.e2 - e.e3);
    r.w = z * r.sqrt_e23;
    cplx p;
    try {
        p = p_eval({1, 1, 1, 0}, z, tau, 1e-15);
    } catch (const Error& err) {
        if (err.code() != "PoleAtLatticePoint") throw;
        r.sn = 0;
        return r;
    }
    if (std::abs(p) < 1e-12 * std::abs(r.sqrt_e23)) fail("PoleEncountered", "sn has a pole here");
    r.sn = r.sqrt_e23 / p;
    return r;
}

CplxPoint uniformize(cplx zeta, cplx tau) {
    check_tau(tau);
    if (lattice_distance(zeta, tau) < 1e-14 * std::max(1.0, std::abs(zeta))) return CplxPoint::at_infinity();
    CplxPoint p;
    p.x = wp(zeta, tau);
    p.y = wp_prime(zeta, tau);
    return p;
}

}  // namespace ellcft
