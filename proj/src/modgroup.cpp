#include "ellcft/modgroup.hpp"

#include "ellcft/errors.hpp"

#include <cmath>
#include <sstream>

namespace ellcft {

Unimodular Unimodular::make(long a, long b, long c, long d) {
    Unimodular g;
    g.a = a;
    g.b = b;
    g.c = c;
    g.d = d;
    if (g.a * g.d - g.b * g.c != 1) fail("NotUnimodular", "ad - bc != 1 for " + g.str());
    return g;
}

Unimodular Unimodular::inverse() const {
    Unimodular g;
    g.a = d;
    g.b = -b;
    g.c = -c;
    g.d = a;
    return g;
}

std::string Unimodular::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

Unimodular operator*(const Unimodular& x, const Unimodular& y) {
    Unimodular g;
    g.a = x.a * y.a + x.b * y.c;
    g.b = x.a * y.b + x.b * y.d;
    g.c = x.c * y.a + x.d * y.c;
    g.d = x.c * y.b + x.d * y.d;
    return g;
}

void check_tau(cplx tau) {
    if (!(tau.imag() > 0) || !std::isfinite(tau.real()) || !std::isfinite(tau.imag()))
        fail("InvalidTau", "need Im tau > 0");
}

cplx automorphy(const Unimodular& g, cplx tau) { return g.c.get_d() * tau + g.d.get_d(); }

cplx moebius_act(const Unimodular& g, cplx tau) {
    check_tau(tau);
    return (g.a.get_d() * tau + g.b.get_d()) / automorphy(g, tau);
}

cplx ExactTau::value() const { return {re.get_d(), std::sqrt(im_sq.get_d())}; }

ExactTau moebius_act(const Unimodular& g, const ExactTau& t) {
    if (t.im_sq <= 0) fail("InvalidTau", "need Im tau > 0");
    Rational A(g.a), B(g.b), C(g.c), D(g.d);
    Rational den = (C * t.re + D) * (C * t.re + D) + C * C * t.im_sq;
    ExactTau out;
    out.re = ((A * t.re + B) * (C * t.re + D) + A * C * t.im_sq) / den;
    out.im_sq = t.im_sq / (den * den);
    out.re.canonicalize();
    out.im_sq.canonicalize();
    return out;
}

std::pair<int, int> index_act(const Unimodular& g, int kappa, int lambda) {
    auto mod2 = [](const Integer& z) { return mpz_odd_p(z.get_mpz_t()) ? 1 : 0; };
    return {mod2(g.a * kappa + g.b * lambda), mod2(g.c * kappa + g.d * lambda)};
}

Unimodular word_matrix(const Word& w) {
    Unimodular g;
    for (const auto& l : w) g = g * (l.is_s ? Unimodular::S() : Unimodular::T(l.n));
    return g;
}

std::string word_string(const Word& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) os << " ";
        if (w[i].is_s) os << "S";
        else os << "T^" << w[i].n;
    }
    return os.str();
}

namespace {

// applying h after the current gamma: gamma <- h gamma, word gets h in front
void apply(Unimodular& gamma, Word& word, const Letter& l) {
    Unimodular h = l.is_s ? Unimodular::S() : Unimodular::T(l.n);
    gamma = h * gamma;
    word.insert(word.begin(), l);
}

}  // namespace

Reduction reduce_fundamental(cplx tau) {
    check_tau(tau);
    const double eps = 1e-14;
    Reduction r{tau, Unimodular(), {}};
    for (int it = 0; it < 100000; ++it) {
        double n = std::floor(r.tau_star.real() + 0.5);
        if (n != 0) {
            r.tau_star -= n;
            apply(r.gamma, r.word, {false, -static_cast<long>(n)});
        }
        if (std::norm(r.tau_star) < 1 - eps) {
            r.tau_star = -1.0 / r.tau_star;
            apply(r.gamma, r.word, {true, 0});
            continue;
        }
        break;
    }
    if (std::abs(std::norm(r.tau_star) - 1) <= eps && r.tau_star.real() > eps) {
        r.tau_star = -1.0 / r.tau_star;
        apply(r.gamma, r.word, {true, 0});
    }
    if (r.tau_star.real() >= 0.5 - eps) {
        r.tau_star -= 1.0;
        apply(r.gamma, r.word, {false, -1});
    }
    return r;
}

ExactReduction reduce_fundamental(const ExactTau& tau) {
    if (tau.im_sq <= 0) fail("InvalidTau", "need Im tau > 0");
    ExactReduction r{tau, Unimodular(), {}};
    const Rational half(1, 2);
    auto norm = [](const ExactTau& t) -> Rational { return t.re * t.re + t.im_sq; };
    for (int it = 0; it < 100000; ++it) {
        // n = floor(re + 1/2) puts re in [-1/2, 1/2)
        Integer n = floor_q(r.tau_star.re + half);
        if (n != 0) {
            r.tau_star.re -= n;
            apply(r.gamma, r.word, {false, -n.get_si()});
        }
        if (norm(r.tau_star) < 1) {
            r.tau_star = moebius_act(Unimodular::S(), r.tau_star);
            apply(r.gamma, r.word, {true, 0});
            continue;
        }
        break;
    }
    if (norm(r.tau_star) == 1 && r.tau_star.re > 0) {
        r.tau_star = moebius_act(Unimodular::S(), r.tau_star);
        apply(r.gamma, r.word, {true, 0});
    }
    return r;
}

bool in_fundamental_domain(cplx tau, double tol) {
    return tau.imag() > 0 && tau.real() >= -0.5 - tol && tau.real() <= 0.5 + tol && std::norm(tau) >= 1 - tol;
}

SubgroupId parse_subgroup(const std::string& s) {
    SubgroupId h;
    auto colon = s.find(':');
    std::string head = s.substr(0, colon);
    if (colon != std::string::npos) h.N = std::stol(s.substr(colon + 1));
    if (head == "full") h.kind = SubgroupKind::Full;
    else if (head == "theta") h.kind = SubgroupKind::Theta;
    else if (head == "gamma0") h.kind = SubgroupKind::Gamma0;
    else if (head == "gamma1") h.kind = SubgroupKind::Gamma1;
    else if (head == "gamma") h.kind = SubgroupKind::GammaN;
    else
        fail("UnknownSubgroup", s);
    if (h.N < 1) fail("UnknownSubgroup", s);
    return h;
}

bool subgroup_member(const Unimodular& g, const SubgroupId& h) {
    if (g.a * g.d - g.b * g.c != 1) fail("NotUnimodular", g.str());
    auto divisible = [](const Integer& z, long N) { return mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(N)) != 0; };
    switch (h.kind) {
        case SubgroupKind::Full:
            return true;
        case SubgroupKind::Theta:
            // a c and b d both even
            return !mpz_odd_p(Integer(g.a * g.c).get_mpz_t()) && !mpz_odd_p(Integer(g.b * g.d).get_mpz_t());
        case SubgroupKind::Gamma0:
            return divisible(g.c, h.N);
        case SubgroupKind::Gamma1:
            return divisible(g.c, h.N) && divisible(g.a - 1, h.N) && divisible(g.d - 1, h.N);
        case SubgroupKind::GammaN:
            return divisible(g.b, h.N) && divisible(g.c, h.N) && divisible(g.a - 1, h.N) && divisible(g.d - 1, h.N);
    }
    return false;
}

GammaNData gamma_n_data(long N) {
    if (N < 1) fail("ShapeError", "level must be positive");
    GammaNData out;
    if (N == 1) {
        out.index = 1;
        out.psl_index = 1;
        out.top = {0, 1, 1, 1};
        return out;
    }
    Rational mu = Rational(Integer(N) * N * N);
    long m = N;
    for (long p = 2; p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        mu *= Rational(p * p - 1, p * p);
    }
    out.index = mu.get_num();
    // -1 lies in Gamma(2), so the PSL index is the full index there
    out.psl_index = N == 2 ? out.index : Integer(out.index / 2);
    Integer cusps = out.psl_index / N;
    Rational g = 1 + Rational(out.psl_index) / 12 - Rational(cusps) / 2;
    out.top = {g.get_num().get_si(), cusps.get_si(), 0, 0};
    return out;
}

long dim_forms(long two_k, const TopData& t) {
    if (two_k % 2 != 0) fail("OddWeight", "odd weight " + std::to_string(two_k));
    if (two_k < 0) return 0;
    if (two_k == 0) return 1;
    long k = two_k / 2;
    long d = (2 * k - 1) * (t.genus - 1) + t.nu_inf * k + (k * t.nu2) / 2 + (2 * k * t.nu3) / 3;
    return d < 0 ? 0 : d;
}

}  // namespace ellcft
