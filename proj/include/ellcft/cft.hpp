#ifndef ELLCFT_CFT_HPP
#define ELLCFT_CFT_HPP

#include "ellcft/models.hpp"
#include "ellcft/modgroup.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace ellcft {

using RealVec = std::vector<double>;
using CplxVec = std::vector<cplx>;
using Mat2 = std::array<std::array<cplx, 2>, 2>;

Mat2 operator+(const Mat2& a, const Mat2& b);
Mat2 operator-(const Mat2& a, const Mat2& b);
Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 operator*(cplx s, const Mat2& a);
Mat2 adjoint(const Mat2& a);
double max_abs(const Mat2& a);

// C_n^lambda(x), explicit finite sum
cplx gegenbauer(int n, double lambda, cplx x);

struct Kinematics {
    cplx zeta1 = 0, zeta2 = 0;
    RealVec u1, u2;  // unit vectors on S^{D-1}; empty when only alpha is given
    double alpha = 0;  // cos 2 pi alpha = u1 . u2, alpha in [0, 1/2]

    cplx zeta12() const { return zeta1 - zeta2; }
    cplx zeta_plus() const { return zeta12() + alpha; }
    cplx zeta_minus() const { return zeta12() - alpha; }

    // throws InvalidArgument for non-unit vectors, CollinearVectors within 1e-8 of u1 = +-u2
    static Kinematics from_vectors(cplx zeta1, cplx zeta2, const RealVec& u1, const RealVec& u2);
    // u1 = (0,..,0, sin pi alpha, cos pi alpha), u2 = (0,..,0, -sin pi alpha, cos pi alpha)
    static Kinematics from_alpha(cplx zeta12, double alpha, int D = 4);
    Kinematics shifted(cplx dz) const;
};

// u1 = e^{i pi alpha} v + e^{-i pi alpha} vbar, u2 = e^{-i pi alpha} v + e^{i pi alpha} vbar
struct FrameVectors {
    CplxVec v, vbar;
    double alpha = 0;
};
FrameVectors moving_frame(const RealVec& u1, const RealVec& u2);
double frame_residual(const FrameVectors& f, const RealVec& u1, const RealVec& u2);

// quaternionic slash for D = 4: sum_{k<=3} v_k i sigma_k + v_4 1, and its conjugate slash
Mat2 slash_plus(const CplxVec& v);
Mat2 slash(const CplxVec& v);

// comps holds the scalar value, the Maxwell triple (W0(zeta, alpha), W0(zeta, -alpha), F3) or the
// four matrix entries (row major) for Weyl4 models, whose matrix is also set
struct CorrValue {
    CplxVec comps;
    std::optional<Mat2> matrix;
};
double max_abs_diff(const CorrValue& a, const CorrValue& b);

// throws PoleKinematics, UnknownModel (gauge_longitudinal)
CorrValue vacuum_2pt(const ModelId& m, const Kinematics& kin);
// throws PoleKinematics, NonconvergentMu, InvalidArgument (mu != 0 for a neutral model)
CorrValue thermal_2pt(const ModelId& m, const Kinematics& kin, cplx tau, cplx mu = 0);
// sum_{|k| <= cutoff} (-1)^{2dk} e^{2 pi i mu k} W(zeta12 + k tau)
CorrValue image_sum_2pt(const ModelId& m, const Kinematics& kin, cplx tau, int cutoff, cplx mu = 0);

bool is_charged(const ModelId& m);
bool is_chiral(const ModelId& m);

struct EnergyMean {
    cplx numeric;      // E0 + sum E d(E) q^E / (1 -+ q^E)
    cplx closed_form;  // modular expression
    cplx residual;
    double tail_bound = 0;
};
// throws UnknownModel for n2_super
EnergyMean energy_mean(const ModelId& m, cplx tau);

// Laurent coefficients of zeta^{-p}, ..., zeta^{-p+depth-1} of a chiral thermal 2-point function,
// p the pole order; throws ExtractionUnstable
struct LaurentResult {
    int lowest_power = 0;
    CplxVec coeffs;
    double condition = 0;  // two-radius discrepancy
};
LaurentResult laurent_coeffs(const ModelId& m, cplx tau, int depth, cplx mu = 0, double tol = 1e-6);
LaurentResult laurent_extract(const std::function<cplx(cplx)>& f, int pole_order, int depth, double radius,
                              double tol = 1e-6);

}  // namespace ellcft

#endif
