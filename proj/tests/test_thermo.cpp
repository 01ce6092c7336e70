#include "ellcft/errors.hpp"
#include "ellcft/thermo.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace ellcft;

namespace {

std::string code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

const double PI2 = M_PI * M_PI;

// sum n^p q^n/(1 - q^n), q = e^{-x}
double lambert(int p, double x) {
    double s = 0;
    for (int n = 1; n < 200000; ++n) {
        double t = std::pow(n, p) / std::expm1(n * x);
        s += t;
        if (t < 1e-18 * s) break;
    }
    return s;
}

MinkowskiPair pair(double t, double r) {
    MinkowskiPair p;
    p.x1 = {t / 2, r / 2, 0, 0};
    p.x2 = {-t / 2, -r / 2, 0, 0};
    return p;
}

}  // namespace

TEST_CASE("energy density at beta = 1, R = 50") {
    double x = 1.0 / 50;
    double s = energy_density(ThermoModel::scalar4, {1, 50});
    CHECK(std::abs(s - (PI2 / 30 - std::pow(x, 4) / (480 * PI2))) < 1e-12);
    double m = energy_density(ThermoModel::maxwell, {1, 50});
    double derived = PI2 / 15 - x * x / 6 + x * x * x / (2 * PI2) - 11 * std::pow(x, 4) / (240 * PI2);
    CHECK(std::abs(m - derived) < 1e-12);
    // the printed beta^3/R^3 coefficient 1/(4 pi^3) is off by about 3.4e-7 here
    double printed = PI2 / 15 - x * x / 6 + x * x * x / (4 * PI2 * M_PI) - 11 * std::pow(x, 4) / (240 * PI2);
    CHECK(std::abs(m - printed) > 1e-7);
}

TEST_CASE("energy density against a direct q-sum") {
    for (double R : {1 / (2 * M_PI), 0.3, 1.0, 4.0}) {
        double x = 1.0 / R;
        double vol = 2 * PI2 * R * R * R;
        CHECK(std::abs(energy_density(ThermoModel::scalar4, {1, R}) - lambert(3, x) / (R * vol)) <
              1e-12 * lambert(3, x) / (R * vol));
        double mx = (2 * lambert(3, x) - 2 * lambert(1, x)) / (R * vol);
        CHECK(std::abs(energy_density(ThermoModel::maxwell, {1, R}) - mx) < 1e-11 * std::abs(mx));
    }
    double v = energy_density(ThermoModel::scalar4, {2 * M_PI, 1});
    CHECK(v > 0);
    CHECK(code_of([] { energy_density(ThermoModel::scalar4, {0, 1}); }) == "InvalidArgument");
    CHECK(code_of([] { parse_thermo_model("dirac"); }) == "UnknownModel");
}

TEST_CASE("inverted-argument expressions agree") {
    for (ThermoModel m : {ThermoModel::scalar4, ThermoModel::maxwell})
        for (double x : {0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) {
            BoxState s{1.3, 1.3 / x};
            double a = energy_density(m, s), b = energy_density_inverted(m, s);
            CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
        }
}

TEST_CASE("beta^4 density decreases in beta/R") {
    double prev = 1e300;
    for (int i = 0; i <= 200; ++i) {
        double x = 0.01 + i * (0.99 / 200);
        double v = energy_density(ThermoModel::scalar4, {1, 1 / x});
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("asymptotic polynomial and its exponential remainder") {
    for (ThermoModel m : {ThermoModel::scalar4, ThermoModel::maxwell}) {
        Asymptotics a = density_asymptotics(m, {1, 3});
        CHECK(a.in_regime);
        double e = std::exp(-4 * PI2 * 3);
        // leading remainder 8 pi^2 e^{-4 pi^2 R/beta} (scalar) and (16 pi^2 + 4 beta^2/R^2) e^{...} (Maxwell)
        double lead = m == ThermoModel::scalar4 ? 8 * PI2 : 16 * PI2 + 4.0 / 9;
        CHECK(std::abs(a.residual / e - lead) < 1e-6 * lead);
        CHECK(std::abs(a.prediction - energy_density(m, {1, 3})) < 1e-14);
        // the remainder is larger than 10 e^{-4 pi^2 R/beta}
        CHECK(std::abs(a.residual) > a.bound);
    }
    Asymptotics out = density_asymptotics(ThermoModel::scalar4, {1, 1});
    CHECK_FALSE(out.in_regime);
    CHECK(std::isfinite(out.residual));
}

TEST_CASE("Stefan-Boltzmann constants") {
    SbLimit s = sb_constant(ThermoModel::scalar4), m = sb_constant(ThermoModel::maxwell);
    CHECK(std::abs(s.value - PI2 / 30) < 1e-10);
    CHECK(std::abs(m.value - PI2 / 15) < 1e-6);
    CHECK(std::abs(m.value / s.value - 2) < 1e-6);
    CHECK(std::abs(energy_density(ThermoModel::scalar4, {1, 100}) - PI2 / 30) < 1e-10);
}

TEST_CASE("infinite-volume limit: closed form") {
    TwoPointValue v = minkowski_thermal_2pt(pair(0, 0.3), 1, TwoPointMode::limit);
    double printed = std::sinh(0.6 * M_PI) / (8 * M_PI * 0.3 * (std::cosh(0.6 * M_PI) - 1));
    // the vacuum normalization (2 pi)^{-2}/x^2 and the Fourier form both fix 4 pi in the denominator
    CHECK(std::abs(v.value - 2 * printed) < 1e-12);
    CHECK(v.eps == 0);
    // large beta: vacuum plus the leading thermal shift 1/(12 beta^2)
    double beta = 50;
    TwoPointValue w = minkowski_thermal_2pt(pair(0.1, 0.3), beta, TwoPointMode::limit);
    double vac = 1 / (4 * PI2 * (0.09 - 0.01));
    CHECK(std::abs(w.value - vac - 1 / (12 * beta * beta)) < 1e-8);
    CHECK(std::abs(w.value - vac) > 1e-5);
}

TEST_CASE("Fourier integral matches the closed form") {
    for (double beta : {0.5, 1.0, 2.0})
        for (double r : {0.2, 0.7, 1.5})
            for (double t : {0.0, 0.1, 0.15}) {
                TwoPointValue a = minkowski_thermal_2pt(pair(t * r / 0.2, r), beta, TwoPointMode::limit);
                TwoPointValue b = minkowski_thermal_2pt(pair(t * r / 0.2, r), beta, TwoPointMode::fourier);
                CHECK(std::abs(a.value - b.value) < 1e-8);
                CHECK(b.est_error < 1e-9);
            }
    TwoPointValue a = minkowski_thermal_2pt(pair(0.8, 0.3), 1, TwoPointMode::limit);
    TwoPointValue b = minkowski_thermal_2pt(pair(0.8, 0.3), 1, TwoPointMode::fourier);
    CHECK(a.eps == doctest::Approx(1e-6));
    CHECK(std::abs(a.value - b.value) < 1e-8);
    CHECK(code_of([] { minkowski_thermal_2pt(pair(0.3, 0.3), 1, TwoPointMode::limit); }) == "PoleKinematics");
}

TEST_CASE("finite box approaches the limit with a -1/(4 pi^2 beta R) shift") {
    double beta = 1;
    MinkowskiPair p;
    p.x1 = {0.1, 0.2, 0.1, 0.0};
    p.x2 = {-0.05, -0.1, 0.0, 0.2};
    cplx lim = minkowski_thermal_2pt(p, beta, TwoPointMode::limit).value;
    auto dev = [&](double R) { return minkowski_thermal_2pt(p, beta, TwoPointMode::finite_R, R).value - lim; };
    double pred = -1 / (4 * PI2 * beta * 100);
    CHECK(std::abs(dev(100).real() - pred) < 0.1 * std::abs(pred));
    double e1 = std::abs(dev(100) - pred), e2 = std::abs(dev(200) - pred / 2), e3 = std::abs(dev(400) - pred / 4);
    double order1 = std::log2(e1 / e2), order2 = std::log2(e2 / e3);
    CHECK(std::abs(order1 - 2) < 0.3);
    CHECK(std::abs(order2 - 2) < 0.3);
    CHECK(code_of([&] { minkowski_thermal_2pt(p, beta, TwoPointMode::finite_R, 0); }) == "InvalidArgument");
}

TEST_CASE("Planck decomposition") {
    double R = 10, beta = 1;
    auto modes = planck_spectrum(beta, R, 2000);
    double sum = 0, prev = 0;
    for (const auto& m : modes) {
        sum += m.term;
        CHECK(m.term > 0);
        CHECK(sum >= prev);
        prev = sum;
    }
    double ref = energy_density(ThermoModel::scalar4, {beta, R}) * R * 2 * PI2 * R * R * R;
    CHECK(std::abs(sum - ref) < 1e-8 * ref);
    CHECK(modes[2].frequency == doctest::Approx(3 / R));
    auto small = planck_spectrum(50, 1, 1);
    double q = std::exp(-50.0);
    CHECK(std::abs(small[0].term - q / (1 - q)) < 1e-12 * q);
    double h = 0.01, riemann = 0;
    for (const auto& m : planck_spectrum(h, 1, 20000)) riemann += h * std::pow(h, 3) * m.term;
    CHECK(std::abs(riemann - std::pow(M_PI, 4) / 15) < 1e-4);
    CHECK(code_of([] { planck_spectrum(1, 1, 0); }) == "InvalidArgument");
}
