#include "ellcft/modforms.hpp"

#include "ellcft/errors.hpp"
#include "ellcft/qseries.hpp"
#include "numeric_detail.hpp"

#include <cmath>

namespace ellcft {

using namespace detail;

FormId FormId::eisenstein(long two_k) {
    FormId f;
    f.kind = FormKind::Eisenstein;
    f.two_k = two_k;
    if (two_k % 2 != 0) fail("OddWeight", "odd weight");
    if (two_k < 2) fail("ShapeError", "weight must be at least 2");
    return f;
}

FormId FormId::twisted(long two_k, int kappa, int lambda) {
    FormId f = eisenstein(two_k);
    if ((kappa != 0 && kappa != 1) || (lambda != 0 && lambda != 1)) fail("ShapeError", "indices must be 0 or 1");
    f.kind = (kappa == 0 && lambda == 0) ? FormKind::Eisenstein : FormKind::TwistedEisenstein;
    f.kappa = kappa;
    f.lambda = lambda;
    return f;
}

FormId FormId::named(FormKind k) {
    FormId f;
    f.kind = k;
    f.two_k = k == FormKind::F2 || k == FormKind::G2Star ? 2 : 0;
    return f;
}

FormId FormId::theta(const IntMatrix& gram) {
    check_gram(gram);
    FormId f;
    f.kind = FormKind::LatticeTheta;
    f.gram = gram;
    return f;
}

FormId parse_form(const std::string& s) {
    if (s == "eta") return FormId::named(FormKind::Eta);
    if (s == "delta") return FormId::named(FormKind::Delta);
    if (s == "j") return FormId::named(FormKind::J);
    if (s == "f2") return FormId::named(FormKind::F2);
    if (s == "g2star") return FormId::named(FormKind::G2Star);
    if (s.size() >= 2 && s[0] == 'G') {
        // G4, G4^{10}, G4^10
        std::string rest = s.substr(1);
        std::string idx;
        auto caret = rest.find('^');
        if (caret != std::string::npos) {
            for (char c : rest.substr(caret + 1))
                if (c == '0' || c == '1') idx += c;
            rest = rest.substr(0, caret);
        }
        long k = 0;
        try {
            k = std::stol(rest);
        } catch (...) {
            fail("UnknownForm", s);
        }
        if (idx.empty()) return FormId::eisenstein(k);
        if (idx.size() != 2) fail("UnknownForm", s);
        return FormId::twisted(k, idx[0] - '0', idx[1] - '0');
    }
    fail("UnknownForm", s);
}

std::string form_name(const FormId& f) {
    switch (f.kind) {
        case FormKind::Eisenstein: return "G" + std::to_string(f.two_k);
        case FormKind::TwistedEisenstein:
            return "G" + std::to_string(f.two_k) + "^{" + std::to_string(f.kappa) + std::to_string(f.lambda) + "}";
        case FormKind::Eta: return "eta";
        case FormKind::Delta: return "delta";
        case FormKind::J: return "j";
        case FormKind::F2: return "f2";
        case FormKind::G2Star: return "g2star";
        case FormKind::LatticeTheta: return "theta";
    }
    return "?";
}

long twice_weight(const FormId& f) {
    switch (f.kind) {
        case FormKind::Eisenstein:
        case FormKind::TwistedEisenstein: return 2 * f.two_k;
        case FormKind::Eta: return 1;
        case FormKind::Delta: return 24;
        case FormKind::J: return 0;
        case FormKind::F2:
        case FormKind::G2Star: return 4;
        case FormKind::LatticeTheta: return static_cast<long>(f.gram.size());
    }
    return 0;
}

cplxl eisenstein_l(long two_k, cplxl tau, double tol, double* err) {
    if (two_k % 2 != 0) fail("OddWeight", "odd weight");
    const cplxl q = qnome(tau);
    const long double aq = std::abs(q);
    const long p = two_k - 1;
    cplxl sum = 0, qn = 1;
    long double bound = 0;
    for (long n = 1;; ++n) {
        if (n > MAX_TERMS) fail("NonconvergentTolerance", "Lambert series did not reach the tolerance");
        qn *= q;
        long double np = std::pow(static_cast<long double>(n), static_cast<long double>(p));
        sum += np * qn / (1.0L - qn);
        // tail after n: sum_{m>n} m^p |q|^m / (1 - |q|), geometric once the ratio is below one
        long double ratio = std::pow((n + 2.0L) / (n + 1.0L), static_cast<long double>(p)) * aq;
        if (ratio < 1) {
            long double lead = std::pow(n + 1.0L, static_cast<long double>(p)) * std::abs(qn) * aq;
            bound = lead / ((1 - aq) * (1 - ratio));
            if (bound < tol) break;
        }
    }
    if (err) *err = static_cast<double>(bound);
    Rational c = -bernoulli(two_k) / (2 * two_k);
    return static_cast<long double>(c.get_d()) + sum;
}

cplxl euler_product_l(cplxl tau, double tol, double* err) {
    const cplxl q = qnome(tau);
    const long double aq = std::abs(q);
    cplxl prod = 1, qn = 1;
    long double rel = 0;
    for (long n = 1;; ++n) {
        if (n > MAX_TERMS) fail("NonconvergentTolerance", "product did not reach the tolerance");
        qn *= q;
        prod *= (1.0L - qn);
        // |log prod_{m>n}(1 - q^m)| <= |q|^{n+1} / (1 - |q|)^2
        rel = std::abs(qn) * aq / ((1 - aq) * (1 - aq));
        if (rel < tol) break;
    }
    if (err) *err = static_cast<double>(rel * std::abs(prod) * 1.01L);
    return prod;
}

cplxl eta_l(cplxl tau, double tol) {
    return std::exp(cplxl(0, 2 * PI_L / 24) * tau) * euler_product_l(tau, tol);
}

namespace {

cplxl twisted_eisenstein_l(long two_k, int kappa, int lambda, cplxl tau, double tol) {
    cplxl g = eisenstein_l(two_k, tau, tol);
    if (kappa == 0 && lambda == 0) return g;
    if (kappa == 1 && lambda == 0) return 2.0L * eisenstein_l(two_k, 2.0L * tau, tol) - g;
    long double f = std::ldexp(1.0L, static_cast<int>(1 - two_k));
    cplxl arg = kappa == 1 ? (tau + 1.0L) / 2.0L : tau / 2.0L;
    return f * eisenstein_l(two_k, arg, tol) - g;
}

std::vector<std::vector<Rational>> rational_inverse(const IntMatrix& gram) {
    const size_t r = gram.size();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(2 * r));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) a[i][j] = gram[i][j];
        a[i][r + i] = 1;
    }
    for (size_t k = 0; k < r; ++k) {
        size_t piv = k;
        while (a[piv][k] == 0) ++piv;
        std::swap(a[k], a[piv]);
        Rational inv = Rational(1) / a[k][k];
        for (auto& x : a[k]) x *= inv;
        for (size_t i = 0; i < r; ++i) {
            if (i == k || a[i][k] == 0) continue;
            Rational f = a[i][k];
            for (size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[k][j];
        }
    }
    std::vector<std::vector<Rational>> out(r, std::vector<Rational>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) out[i][j] = a[i][r + j];
    return out;
}

Integer determinant(const IntMatrix& gram) {
    const size_t r = gram.size();
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) a[i][j] = gram[i][j];
    Rational det = 1;
    for (size_t k = 0; k < r; ++k) {
        size_t piv = k;
        while (piv < r && a[piv][k] == 0) ++piv;
        if (piv == r) return 0;
        if (piv != k) {
            std::swap(a[k], a[piv]);
            det = -det;
        }
        det *= a[k][k];
        for (size_t i = k + 1; i < r; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j < r; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return det.get_num();
}

cplxl lattice_theta_l(const IntMatrix& gram, cplxl tau, double tol) {
    const cplxl q = qnome(tau);
    const long double aq = std::abs(q);
    const size_t r = gram.size();
    // integral gram: (x|x) >= 1, or >= 2 when even. Disjoint balls of radius sqrt(lmin)/2 give
    // #{(x|x)/2 <= m} <= (1 + 2 sqrt(2 m / lmin))^r
    bool even = true;
    for (size_t i = 0; i < r; ++i) even = even && gram[i][i] % 2 == 0;
    const long double lmin = even ? 2 : 1;
    auto count_bound = [&](long double m) { return std::pow(1 + 2 * std::sqrt(2 * m / lmin), static_cast<long double>(r)); };
    auto tail = [&](long double M) {
        long double s = 0;
        for (long double m = M;; m += 0.5L) {
            long double t = count_bound(m + 0.5L) * std::pow(aq, m);
            s += t;
            if (t < 1e-30L * (s + 1e-300L) || m > M + 1e6L) break;
        }
        return s;
    };
    long double M = 1;
    while (tail(M) >= tol) {
        M *= 1.25L;
        if (count_bound(M) > 5e8L) fail("NonconvergentTolerance", "too many lattice points for this tau");
    }
    FracSeries s = lattice_theta_series(gram, Rational(static_cast<long>(std::ceil(M))));
    cplxl acc = 0;
    const cplxl twopii(0, 2 * PI_L);
    for (const auto& [k, c] : s.terms)
        acc += static_cast<long double>(c.get_d()) * std::exp(twopii * tau * (static_cast<long double>(k) / s.den));
    return acc;
}

}  // namespace

cplxl g2_twisted_l(int kappa, int lambda, cplxl tau, double tol) { return twisted_eisenstein_l(2, kappa, lambda, tau, tol); }

long lattice_level(const IntMatrix& gram) {
    auto inv = rational_inverse(gram);
    const size_t r = gram.size();
    Integer det = abs(determinant(gram));
    for (long N = 1; N <= 4 * det.get_si() + 4; ++N) {
        bool ok = true;
        for (size_t i = 0; i < r && ok; ++i)
            for (size_t j = 0; j < r && ok; ++j) {
                Rational v = inv[i][j] * N;
                if (v.get_den() != 1) ok = false;
                else if (i == j && mpz_odd_p(v.get_num_mpz_t())) ok = false;
            }
        if (ok) return N;
    }
    fail("ShapeError", "could not determine the lattice level");
}

long lattice_char_disc(const IntMatrix& gram) {
    Integer det = determinant(gram);
    long r = static_cast<long>(gram.size());
    return ((r / 2) % 2 == 0 ? 1 : -1) * det.get_si();
}

namespace {
void check_tol(double tol) {
    if (!(tol >= 1e-18)) fail("NonconvergentTolerance", "tolerance below long double resolution");
}
}  // namespace

cplxl form_eval_l(const FormId& f, cplxl tau, double tol) {
    if (!(tau.imag() > 0)) fail("InvalidTau", "need Im tau > 0");
    switch (f.kind) {
        case FormKind::Eisenstein:
            return eisenstein_l(f.two_k, tau, tol);
        case FormKind::TwistedEisenstein:
            return twisted_eisenstein_l(f.two_k, f.kappa, f.lambda, tau, tol);
        case FormKind::Eta:
            return eta_l(tau, tol);
        case FormKind::Delta: {
            cplxl p = euler_product_l(tau, tol * 1e-2);
            cplxl p2 = p * p, p4 = p2 * p2, p8 = p4 * p4, p16 = p8 * p8;
            return qnome(tau) * p16 * p8;
        }
        case FormKind::J: {
            cplxl g4 = 240.0L * eisenstein_l(4, tau, tol * 1e-3);
            cplxl d = form_eval_l(FormId::named(FormKind::Delta), tau, tol * 1e-3);
            return g4 * g4 * g4 / d;
        }
        case FormKind::F2:
            return -2.0L * twisted_eisenstein_l(2, 1, 1, tau, tol);
        case FormKind::G2Star:
            return eisenstein_l(2, tau, tol) + 1.0L / (8 * PI_L * tau.imag());
        case FormKind::LatticeTheta:
            return lattice_theta_l(f.gram, tau, tol);
    }
    fail("UnknownForm", "unreachable");
}

FormValue form_eval(const FormId& f, cplx tau, double tol) {
    check_tau(tau);
    check_tol(tol);
    FormValue v;
    double err = 0;
    if (f.kind == FormKind::Eisenstein) {
        v.value = to_d(eisenstein_l(f.two_k, to_l(tau), tol, &err));
        v.err_bound = err;
        return v;
    }
    v.value = to_d(form_eval_l(f, to_l(tau), tol));
    v.err_bound = tol;
    return v;
}

SubgroupId form_group(const FormId& f) {
    SubgroupId h;
    switch (f.kind) {
        case FormKind::F2:
            h.kind = SubgroupKind::Theta;
            break;
        case FormKind::LatticeTheta:
            h.kind = SubgroupKind::Gamma0;
            h.N = f.level ? f.level : lattice_level(f.gram);
            break;
        default:
            h.kind = SubgroupKind::Full;
    }
    return h;
}

cplx covariance_residual(const FormId& f, const Unimodular& g, cplx tau, double tol) {
    check_tau(tau);
    check_tol(tol);
    if (f.kind == FormKind::Eta) fail("UnsupportedWeight", "eta has a multiplier system of weight 1/2");
    if (f.kind == FormKind::LatticeTheta && f.gram.size() % 2 != 0)
        fail("UnsupportedWeight", "odd rank lattice theta has half-integral weight");
    SubgroupId h = form_group(f);
    if (!subgroup_member(g, h)) fail("WrongSubgroup", g.str() + " is not in the group of " + form_name(f));
    const cplxl t = to_l(tau);
    const long double a = g.a.get_d(), b = g.b.get_d(), c = g.c.get_d(), d = g.d.get_d();
    const cplxl j = c * t + d;
    const cplxl gt = (a * t + b) / j;
    const long w2 = twice_weight(f);
    const cplxl factor = std::pow(j, -static_cast<long double>(w2 / 2));
    cplxl lhs = factor * form_eval_l(f, gt, tol);
    cplxl rhs;
    if (f.kind == FormKind::TwistedEisenstein) {
        // (c tau + d)^{-2k} G^{kl}(gamma tau) = G^{k'l'}(tau), (k', l') = (k d + l b, k c + l a) mod 2
        auto odd = [](const Integer& z) { return mpz_odd_p(z.get_mpz_t()) ? 1 : 0; };
        int k2 = odd(Integer(g.d * f.kappa + g.b * f.lambda));
        int l2 = odd(Integer(g.c * f.kappa + g.a * f.lambda));
        rhs = form_eval_l(FormId::twisted(f.two_k, k2, l2), t, tol);
    } else {
        rhs = form_eval_l(f, t, tol);
    }
    if (f.kind == FormKind::LatticeTheta) {
        long disc = f.char_disc ? f.char_disc : lattice_char_disc(f.gram);
        int chi = mpz_kronecker(Integer(disc).get_mpz_t(), g.d.get_mpz_t());
        rhs *= static_cast<long double>(chi);
    }
    return to_d(lhs - rhs);
}

}  // namespace ellcft
