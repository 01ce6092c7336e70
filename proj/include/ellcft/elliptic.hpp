#ifndef ELLCFT_ELLIPTIC_HPP
#define ELLCFT_ELLIPTIC_HPP

#include "ellcft/modgroup.hpp"
#include "ellcft/parallel.hpp"
#include "ellcft/rational.hpp"

#include <complex>
#include <vector>

namespace ellcft {

// p_k^{kappa lambda}(zeta, tau, mu)
struct PIndex {
    int k = 1;
    int kappa = 0, lambda = 0;
    cplx mu = 0;
};

struct PValue {
    cplx value;
    double est_error = 0;      // tail bound plus accumulated rounding
    double pole_distance = 0;  // distance from zeta to the nearest lattice point
    long terms = 0;
};

// Image sum over zeta + m tau of the one-variable cotangent / cosecant kernels.
// Throws PoleAtLatticePoint, NonconvergentMu, InvalidTau.
PValue p_eval_ex(const PIndex& idx, cplx zeta, cplx tau, double tol = 1e-12);
cplx p_eval(const PIndex& idx, cplx zeta, cplx tau, double tol = 1e-12);
std::vector<PValue> p_eval_grid(const PIndex& idx, const std::vector<cplx>& zetas, cplx tau, double tol,
                                Exec exec = Exec::parallel);

// one-variable kernel sum_n (-1)^{lambda n} (w + n)^{-k} (symmetric summation for k = 1); throws
// PoleAtLatticePoint for integer w
cplx p_kernel(int k, int lambda, cplx w);

// Weierstrass functions for the lattice Z tau + Z
cplx wp(cplx z, cplx tau);
cplx wp_prime(cplx z, cplx tau);
cplx wzeta(cplx z, cplx tau);
cplx g2_invariant(cplx tau);
cplx g3_invariant(cplx tau);

// e1 = wp(tau/2), e2 = wp(1/2), e3 = wp((tau+1)/2)
struct HalfPeriodRoots {
    cplx e1, e2, e3;
};
HalfPeriodRoots half_period_roots(cplx tau);

enum class ThetaMethod { series, product };
// theta_{mu nu}(z, tau) = sum_n q^{(n - mu/2)^2/2} e^{2 pi i (n - mu/2)(z - nu/2)}, q^{1/2} = e^{i pi tau}
cplx theta_eval(int mu, int nu, cplx z, cplx tau, ThetaMethod method = ThetaMethod::series, double tol = 1e-15);

// Curves: four_x_cubed is y^2 = 4x^3 - c1 x - c2 (c1 = g2, c2 = g3); short_form is y^2 = x^3 + c1 x + c2
enum class CurveForm { four_x_cubed, short_form };

template <class F>
struct CurvePoint {
    bool infinity = false;
    F x{}, y{};
    static CurvePoint at_infinity() {
        CurvePoint p;
        p.infinity = true;
        return p;
    }
    bool operator==(const CurvePoint& o) const {
        return infinity == o.infinity && (infinity || (x == o.x && y == o.y));
    }
};

template <class F>
struct Curve {
    CurveForm form = CurveForm::short_form;
    F c1{}, c2{};
};

using RatPoint = CurvePoint<Rational>;
using CplxPoint = CurvePoint<cplx>;
using RatCurve = Curve<Rational>;
using CplxCurve = Curve<cplx>;

// y^2 - rhs(x); zero exactly for rational points on the curve
Rational curve_residual(const RatPoint& p, const RatCurve& c);
cplx curve_residual(const CplxPoint& p, const CplxCurve& c);

// Throws NotOnCurve, SingularCurve. Complex points are checked relative to tol.
RatPoint curve_add(const RatPoint& p, const RatPoint& q, const RatCurve& c);
CplxPoint curve_add(const CplxPoint& p, const CplxPoint& q, const CplxCurve& c, double tol = 1e-10);
RatPoint curve_neg(const RatPoint& p);
CplxPoint curve_neg(const CplxPoint& p);

// (x - e0)(x - e1)(x - e2)(x - e3) quartic to Weierstrass cubic
template <class F>
struct QuarticReduction {
    F a, A2;
    F e1, e2, e3;
};
// throws RepeatedRoot
QuarticReduction<Rational> quartic_reduce(const Rational& e0, const Rational& e1, const Rational& e2,
                                          const Rational& e3);
QuarticReduction<cplx> quartic_reduce(cplx e0, cplx e1, cplx e2, cplx e3);

struct SnResult {
    cplx sn;         // sn(w, k^2) with w = z sqrt(e2 - e3)
    cplx k_squared;  // (e1 - e3)/(e2 - e3)
    cplx sqrt_e23;   // principal branch of sqrt(e2 - e3)
    cplx w;
};
// throws PoleEncountered where p_1^{11}(z) vanishes
SnResult sn_from_tau(cplx z, cplx tau);

// (wp(z), wp'(z)) on y^2 = 4x^3 - g2 x - g3, infinity on the lattice
CplxPoint uniformize(cplx zeta, cplx tau);

}  // namespace ellcft

#endif
