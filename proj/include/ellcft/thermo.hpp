#ifndef ELLCFT_THERMO_HPP
#define ELLCFT_THERMO_HPP

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace ellcft {

using cplx = std::complex<double>;

enum class ThermoModel { scalar4, maxwell };
ThermoModel parse_thermo_model(const std::string& s);  // throws UnknownModel
std::string thermo_model_name(ThermoModel m);

// inverse temperature beta and box radius R in the same length units
struct BoxState {
    double beta = 1;
    double R = 1;
};

// <H_R>/Vol_R with Vol_R = 2 pi^2 R^3, from G4 and G2 at tau_R = i beta/(2 pi R); throws InvalidArgument
double energy_density(ThermoModel m, const BoxState& s);
// the same density from G4, G2 at the inverted point 2 pi i R/beta
double energy_density_inverted(ThermoModel m, const BoxState& s);

// beta^4 * density = sum_k coeffs[k] (beta/R)^k + remainder
struct Asymptotics {
    std::array<double, 5> coeffs{};
    double prediction = 0;
    double residual = 0;  // beta^4 * density - prediction, evaluated in 100-digit arithmetic
    double bound = 0;     // 10 e^{-4 pi^2 R/beta}
    bool in_regime = false;  // R/beta > 2
};
Asymptotics density_asymptotics(ThermoModel m, const BoxState& s);

// lim_{R -> infinity} beta^4 * density by polynomial extrapolation in beta/R
struct SbLimit {
    double value = 0;
    double closed = 0;  // pi^2/30 or pi^2/15
    double residual = 0;
};
SbLimit sb_constant(ThermoModel m);

enum class TwoPointMode { limit, finite_R, fourier };
TwoPointMode parse_two_point_mode(const std::string& s);

struct MinkowskiPair {
    std::array<double, 4> x1{}, x2{};  // (x^0, x^1, x^2, x^3)
};

struct TwoPointValue {
    cplx value;
    double eps = 0;        // i eps regulator applied to x^0_12 (timelike pairs only)
    double est_error = 0;  // quadrature estimate (fourier mode)
};
// thermal 2-point function of the canonically normalized massless scalar, vacuum (2 pi)^{-2}/x^2;
// throws PoleKinematics, QuadratureFailure, InvalidArgument
TwoPointValue minkowski_thermal_2pt(const MinkowskiPair& p, double beta, TwoPointMode mode, double R = 0);

struct PlanckMode {
    long n = 0;
    double frequency = 0;  // n c/R
    double term = 0;       // n^3 e^{-n h c beta/R}/(1 - e^{-n h c beta/R})
};
// throws InvalidArgument for n_max < 1
std::vector<PlanckMode> planck_spectrum(double beta, double R, long n_max, double h = 1, double c = 1);

}  // namespace ellcft

#endif
