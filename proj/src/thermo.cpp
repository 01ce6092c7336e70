#include "ellcft/thermo.hpp"

#include "ellcft/elliptic.hpp"
#include "ellcft/errors.hpp"
#include "ellcft/modforms.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>

namespace ellcft {

namespace {

using big = boost::multiprecision::cpp_bin_float_100;

void require_state(const BoxState& s) {
    if (!(s.beta > 0) || !(s.R > 0) || !std::isfinite(s.beta) || !std::isfinite(s.R))
        fail("InvalidArgument", "need beta > 0 and R > 0");
}

std::array<double, 5> closed_coeffs(ThermoModel m) {
    const double pi2 = M_PI * M_PI;
    if (m == ThermoModel::scalar4) return {pi2 / 30, 0, 0, 0, -1 / (480 * pi2)};
    return {pi2 / 15, 0, -1.0 / 6, 1 / (2 * pi2), -11 / (240 * pi2)};
}

// sum_{n >= 1} n^p q^n/(1 - q^n) at q = e^{-x}
big lambert_sum(int p, const big& x) {
    big sum = 0;
    const big cut = big("1e-105");
    for (long n = 1;; ++n) {
        big t = boost::multiprecision::exp(-x * n);
        big term = boost::multiprecision::pow(big(n), p) * t / (1 - t);
        sum += term;
        if (term < cut * sum && n > 2) break;
        if (n > 10000000) fail("NonconvergentTolerance", "Lambert series did not converge");
    }
    return sum;
}

// compact coordinates of x/(2R): e^{2 pi i zeta} u = z(x/(2R)), with |omega(x/(2R))|
struct CompactPoint {
    double zeta = 0;        // time coordinate on the circle
    std::array<double, 4> u{};  // unit vector on S^3
    double abs_omega = 0;
};

CompactPoint compact_point(const std::array<double, 4>& x, double R) {
    double y0 = x[0] / (2 * R);
    double yy = 0;
    for (int i = 1; i < 4; ++i) yy += (x[i] / (2 * R)) * (x[i] / (2 * R));
    double y2 = yy - y0 * y0;
    cplx omega((1 + y2) / 2, -y0);
    CompactPoint c;
    c.abs_omega = std::abs(omega);
    c.zeta = -std::arg(omega) / (2 * M_PI);
    for (int i = 1; i < 4; ++i) c.u[i - 1] = x[i] / (2 * R) / c.abs_omega;
    c.u[3] = (1 - y2) / (2 * c.abs_omega);
    return c;
}

}  // namespace

ThermoModel parse_thermo_model(const std::string& s) {
    if (s == "scalar4") return ThermoModel::scalar4;
    if (s == "maxwell") return ThermoModel::maxwell;
    fail("UnknownModel", "thermo model must be scalar4 or maxwell, got " + s);
}

std::string thermo_model_name(ThermoModel m) { return m == ThermoModel::scalar4 ? "scalar4" : "maxwell"; }

TwoPointMode parse_two_point_mode(const std::string& s) {
    if (s == "limit") return TwoPointMode::limit;
    if (s == "finiteR" || s == "finite_R") return TwoPointMode::finite_R;
    if (s == "fourier") return TwoPointMode::fourier;
    fail("InvalidArgument", "mode must be limit, finiteR or fourier, got " + s);
}

double energy_density(ThermoModel m, const BoxState& s) {
    require_state(s);
    cplx tau(0, s.beta / (2 * M_PI * s.R));
    double g4 = form_eval(FormId::eisenstein(4), tau).value.real();
    double num = g4 - 1.0 / 240;
    if (m == ThermoModel::maxwell) {
        double g2 = form_eval(FormId::eisenstein(2), tau).value.real();
        num = 2 * g4 - 2 * g2 - 11.0 / 120;
    }
    return num / (s.R * 2 * M_PI * M_PI * s.R * s.R * s.R);
}

double energy_density_inverted(ThermoModel m, const BoxState& s) {
    require_state(s);
    double x = s.beta / s.R;
    cplx tau(0, 2 * M_PI / x);
    const double pi2 = M_PI * M_PI;
    double g4 = form_eval(FormId::eisenstein(4), tau).value.real();
    double b4;
    if (m == ThermoModel::scalar4) {
        b4 = 8 * pi2 * g4 - std::pow(x, 4) / (480 * pi2);
    } else {
        double g2 = form_eval(FormId::eisenstein(2), tau).value.real();
        b4 = 16 * pi2 * g4 + 4 * x * x * g2 + x * x * x / (2 * pi2) - 11 * std::pow(x, 4) / (240 * pi2);
    }
    return b4 / std::pow(s.beta, 4);
}

Asymptotics density_asymptotics(ThermoModel m, const BoxState& s) {
    require_state(s);
    Asymptotics a;
    a.coeffs = closed_coeffs(m);
    big x = big(s.beta) / big(s.R);
    big pi = boost::math::constants::pi<big>();
    big pi2 = pi * pi;
    big b4;
    if (m == ThermoModel::scalar4) {
        b4 = pow(x, 4) / (2 * pi2) * lambert_sum(3, x);
    } else {
        b4 = pow(x, 4) / (2 * pi2) * (2 * lambert_sum(3, x) - 2 * lambert_sum(1, x));
    }
    big pred = m == ThermoModel::scalar4 ? pi2 / 30 - pow(x, 4) / (480 * pi2)
                                         : pi2 / 15 - x * x / 6 + pow(x, 3) / (2 * pi2) - 11 * pow(x, 4) / (240 * pi2);
    a.prediction = static_cast<double>(pred);
    a.residual = static_cast<double>(b4 - pred);
    a.bound = 10 * std::exp(-4 * M_PI * M_PI * s.R / s.beta);
    a.in_regime = s.R / s.beta > 2;
    return a;
}

SbLimit sb_constant(ThermoModel m) {
    // Neville extrapolation to beta/R = 0 from beta/R = 0.01 * 2^{-j}
    const int N = 6;
    std::array<double, N> xs{}, ys{};
    for (int j = 0; j < N; ++j) {
        xs[j] = 0.01 / std::ldexp(1.0, j);
        ys[j] = energy_density(m, {1.0, 1.0 / xs[j]});
    }
    for (int k = 1; k < N; ++k)
        for (int j = N - 1; j >= k; --j) ys[j] = (xs[j - k] * ys[j] - xs[j] * ys[j - 1]) / (xs[j - k] - xs[j]);
    SbLimit r;
    r.value = ys[N - 1];
    r.closed = closed_coeffs(m)[0];
    r.residual = r.value - r.closed;
    return r;
}

TwoPointValue minkowski_thermal_2pt(const MinkowskiPair& p, double beta, TwoPointMode mode, double R) {
    if (!(beta > 0) || !std::isfinite(beta)) fail("InvalidArgument", "need beta > 0");
    double t = p.x1[0] - p.x2[0];
    double r = std::sqrt(std::pow(p.x1[1] - p.x2[1], 2) + std::pow(p.x1[2] - p.x2[2], 2) +
                         std::pow(p.x1[3] - p.x2[3], 2));
    if (std::abs(std::abs(t) - r) <= 1e-12 * std::max(1.0, r))
        fail("PoleKinematics", "x12 lies on the light cone");
    TwoPointValue out;
    cplx tc = t;
    if (std::abs(t) > r) {
        out.eps = 1e-6 * beta;
        tc = cplx(t, -out.eps);
    }
    const double four_pi2 = 4 * M_PI * M_PI;
    switch (mode) {
        case TwoPointMode::limit: {
            double a = 2 * M_PI * r / beta;
            cplx b = 2.0 * M_PI * tc / beta;
            // sinh(a)/r with its r -> 0 limit
            double sh = r < 1e-12 ? 2 * M_PI / beta : std::sinh(a) / r;
            double ch = r < 1e-12 ? 1.0 : std::cosh(a);
            out.value = sh / (4 * M_PI * beta * (ch - std::cosh(b)));
            return out;
        }
        case TwoPointMode::fourier: {
            double P = (35 + std::max(0.0, std::log(1 / beta))) / beta;
            // cos(k (t - i eps)) = cos(k t) cosh(k eps) + i sin(k t) sinh(k eps)
            auto radial = [&](double k) {
                if (k == 0) return r < 1e-12 ? 0.0 : 2 / beta;
                double s = r < 1e-12 ? 2 * k : 2 * std::sin(k * r) / r;
                return s / std::expm1(beta * k);
            };
            auto fre = [&](double k) { return std::cos(k * t) * std::cosh(k * out.eps) * radial(k); };
            auto fim = [&](double k) { return std::sin(k * t) * std::sinh(k * out.eps) * radial(k); };
            double err_re = 0, err_im = 0;
            using gk = boost::math::quadrature::gauss_kronrod<double, 61>;
            double I_re = gk::integrate(fre, 0.0, P, 20, 1e-14, &err_re);
            double I_im = out.eps > 0 ? gk::integrate(fim, 0.0, P, 20, 1e-14, &err_im) : 0.0;
            cplx I(I_re, I_im);
            double damp = beta - out.eps;
            double tail = -std::log1p(-std::exp(-damp * P)) / damp * (r < 1e-12 ? 2 * P : 2 / r);
            out.est_error = (err_re + err_im + tail) / four_pi2;
            if (!(out.est_error < 1e-9)) fail("QuadratureFailure", "Fourier integral did not reach 1e-9");
            cplx x2 = r * r - tc * tc;
            out.value = (1.0 / x2 + I) / four_pi2;
            return out;
        }
        case TwoPointMode::finite_R: {
            if (!(R > 0) || !std::isfinite(R)) fail("InvalidArgument", "finite_R mode needs R > 0");
            CompactPoint c1 = compact_point(p.x1, R), c2 = compact_point(p.x2, R);
            double dn = 0, sn = 0;
            for (int i = 0; i < 4; ++i) {
                dn += (c1.u[i] - c2.u[i]) * (c1.u[i] - c2.u[i]);
                sn += (c1.u[i] + c2.u[i]) * (c1.u[i] + c2.u[i]);
            }
            double alpha = std::atan2(std::sqrt(dn), std::sqrt(sn)) / M_PI;
            double s2a = std::sin(2 * M_PI * alpha);
            if (std::abs(s2a) < 1e-14) fail("PoleKinematics", "spatial images coincide");
            cplx z12 = c1.zeta - c2.zeta;
            if (out.eps > 0) z12 -= cplx(0, out.eps / (2 * M_PI * R));
            cplx tau(0, beta / (2 * M_PI * R));
            PIndex idx;
            cplx diff;
            try {
                diff = p_eval(idx, z12 + alpha, tau, 1e-14) - p_eval(idx, z12 - alpha, tau, 1e-14);
            } catch (const Error& e) {
                if (e.code() == "PoleAtLatticePoint") fail("PoleKinematics", "pair hits a thermal pole");
                throw;
            }
            out.value = diff / (16 * M_PI * R * R * c1.abs_omega * c2.abs_omega * s2a) / four_pi2;
            return out;
        }
    }
    fail("InvalidArgument", "unknown mode");
}

std::vector<PlanckMode> planck_spectrum(double beta, double R, long n_max, double h, double c) {
    require_state({beta, R});
    if (n_max < 1) fail("InvalidArgument", "n_max must be at least 1");
    if (!(h > 0) || !(c > 0)) fail("InvalidArgument", "h and c must be positive");
    std::vector<PlanckMode> out;
    out.reserve(static_cast<size_t>(n_max));
    double step = h * c * beta / R;
    for (long n = 1; n <= n_max; ++n) {
        double nd = static_cast<double>(n);
        out.push_back({n, nd * c / R, nd * nd * nd / std::expm1(nd * step)});
    }
    return out;
}

}  // namespace ellcft
