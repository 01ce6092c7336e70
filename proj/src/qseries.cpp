#include "ellcft/qseries.hpp"

#include <cmath>
#include <sstream>

namespace ellcft {

// ---- UnitPoly ----

UnitPoly UnitPoly::monomial(const Rational& e, const Rational& c) {
    UnitPoly p;
    if (c != 0) p.terms[e] = c;
    return p;
}

UnitPoly& UnitPoly::operator+=(const UnitPoly& o) {
    for (const auto& [e, c] : o.terms) {
        auto& v = terms[e];
        v += c;
        if (v == 0) terms.erase(e);
    }
    return *this;
}

UnitPoly& UnitPoly::operator-=(const UnitPoly& o) { return *this += -o; }

UnitPoly operator*(const UnitPoly& a, const UnitPoly& b) {
    UnitPoly out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) out.terms[ea + eb] += ca * cb;
    for (auto it = out.terms.begin(); it != out.terms.end();)
        it = it->second == 0 ? out.terms.erase(it) : std::next(it);
    return out;
}

UnitPoly UnitPoly::operator-() const {
    UnitPoly out = *this;
    for (auto& kv : out.terms) kv.second = -kv.second;
    return out;
}

UnitPoly UnitPoly::shift_mu(const Rational& s) const {
    UnitPoly out;
    for (const auto& [e, c] : terms) {
        Rational t = 2 * s * e;
        if (t.get_den() != 1) fail("ShapeError", "mu shift does not give a sign");
        bool odd = mpz_odd_p(t.get_num_mpz_t());
        out.terms[e] = odd ? Rational(-c) : c;
    }
    return out;
}

UnitPoly UnitPoly::rescale(const Rational& a) const {
    UnitPoly out;
    for (const auto& [e, c] : terms) out.terms[e * a] += c;
    return out;
}

cplx UnitPoly::eval_mu(cplx mu) const {
    cplx s = 0;
    const cplx twopii(0.0, 2.0 * M_PI);
    for (const auto& [e, c] : terms) s += c.get_d() * std::exp(twopii * mu * e.get_d());
    return s;
}

std::string UnitPoly::str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        if (!first) os << " + ";
        first = false;
        os << to_string(c);
        if (e != 0) os << "*y^(" << to_string(e) << ")";
    }
    return os.str();
}

// ---- power series operations ----

FracSeries power_one_plus(const FracSeries& a, const Rational& alpha) {
    if (a.terms.empty() || a.terms.begin()->first != 0 || a.terms.begin()->second != 1)
        fail("ShapeError", "power_one_plus needs 1 + O(q^{>0})");
    const long N = a.den;
    const long J = ceil_q(a.order * N).get_si();
    std::vector<std::pair<long, Rational>> b;
    for (const auto& [k, c] : a.terms)
        if (k > 0 && k < J) b.push_back({k, c});
    std::vector<Rational> g(static_cast<size_t>(J > 0 ? J : 0));
    if (J > 0) g[0] = 1;
    for (long j = 1; j < J; ++j) {
        Rational acc = 0;
        for (const auto& [i, bi] : b) {
            if (i > j) break;
            if (g[j - i] != 0) acc += (alpha * i - (j - i)) * bi * g[j - i];
        }
        g[j] = acc / j;
    }
    FracSeries out(a.order);
    out.den = N;
    for (long j = 0; j < J; ++j)
        if (g[j] != 0) out.terms[j] = g[j];
    return out.normalize();
}

FracSeries principal_root(const FracSeries& a, long n) {
    if (n < 1) fail("ShapeError", "root index must be positive");
    if (a.terms.empty()) fail("RootNotRational", "series has no leading term");
    const Rational v = a.valuation();
    const Rational c0 = a.terms.begin()->second;
    Rational r0;
    if (!rational_root(c0, static_cast<unsigned long>(n), r0))
        fail("RootNotRational", "leading coefficient " + to_string(c0) + " has no rational root of index " +
                                    std::to_string(n));
    FracSeries unit = scale(shift(a, -v), Rational(Rational(1) / c0));
    FracSeries root = power_one_plus(unit, Rational(1, n));
    return scale(shift(root, v / n), r0);
}

cplx evaluate(const FracSeries& s, cplx tau) {
    cplx acc = 0;
    const cplx twopii(0.0, 2.0 * M_PI);
    for (const auto& [k, c] : s.terms) acc += c.get_d() * std::exp(twopii * tau * (double(k) / double(s.den)));
    return acc;
}

cplx evaluate(const BiSeries& s, cplx tau, cplx mu) {
    cplx acc = 0;
    const cplx twopii(0.0, 2.0 * M_PI);
    for (const auto& [k, c] : s.terms) acc += c.eval_mu(mu) * std::exp(twopii * tau * (double(k) / double(s.den)));
    return acc;
}

BiSeries to_bi(const FracSeries& s) {
    BiSeries out(s.order);
    out.den = s.den;
    for (const auto& [k, c] : s.terms) out.terms[k] = UnitPoly(c);
    return out;
}

BiSeries rescale_y(const BiSeries& s, const Rational& a) {
    BiSeries out = s;
    for (auto& kv : out.terms) kv.second = kv.second.rescale(a);
    return out.normalize();
}

BiSeries shift_mu(const BiSeries& s, const Rational& sh) {
    BiSeries out = s;
    for (auto& kv : out.terms) kv.second = kv.second.shift_mu(sh);
    return out.normalize();
}

// ---- JSON ----

nlohmann::json to_json(const UnitPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms) arr.push_back({to_string(e), to_string(c)});
    return {{"y_terms", arr}};
}

nlohmann::json to_json(const FracSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : s.terms) terms.push_back({k, to_string(c)});
    return {{"exp_den", s.den}, {"terms", terms}, {"order", to_string(s.order)}};
}

nlohmann::json to_json(const BiSeries& s) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : s.terms) terms.push_back({k, to_json(c)});
    return {{"exp_den", s.den}, {"terms", terms}, {"order", to_string(s.order)}};
}

FracSeries frac_series_from_json(const nlohmann::json& j) {
    FracSeries s(parse_rational(j.at("order").get<std::string>()));
    s.den = j.at("exp_den").get<long>();
    if (s.den <= 0) fail("ParseError", "exp_den must be positive");
    for (const auto& t : j.at("terms")) s.terms[t.at(0).get<long>()] = parse_rational(t.at(1).get<std::string>());
    return s.normalize();
}

BiSeries bi_series_from_json(const nlohmann::json& j) {
    BiSeries s(parse_rational(j.at("order").get<std::string>()));
    s.den = j.at("exp_den").get<long>();
    if (s.den <= 0) fail("ParseError", "exp_den must be positive");
    for (const auto& t : j.at("terms")) {
        UnitPoly p;
        for (const auto& yt : t.at(1).at("y_terms"))
            p += UnitPoly::monomial(parse_rational(yt.at(0).get<std::string>()),
                                    parse_rational(yt.at(1).get<std::string>()));
        s.terms[t.at(0).get<long>()] = p;
    }
    return s.normalize();
}

std::string to_string(const FracSeries& s, int max_terms) {
    std::ostringstream os;
    int n = 0;
    for (const auto& [k, c] : s.terms) {
        if (n == max_terms) {
            os << " + ...";
            break;
        }
        if (n > 0) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Rational a = abs(c);
        Rational e(k, s.den);
        e.canonicalize();
        if (e == 0) os << to_string(a);
        else {
            if (a != 1) os << to_string(a) << "*";
            os << "q^(" << to_string(e) << ")";
        }
        ++n;
    }
    if (n == 0) os << "0";
    os << " + O(q^(" << to_string(s.order) << "))";
    return os.str();
}

// ---- number theory ----

Rational bernoulli(long n) {
    if (n < 0) fail("ShapeError", "negative Bernoulli index");
    std::vector<Rational> B(static_cast<size_t>(n) + 1);
    B[0] = 1;
    for (long m = 1; m <= n; ++m) {
        Rational s = 0;
        Integer binom = 1;  // C(m+1, j)
        for (long j = 0; j < m; ++j) {
            s += Rational(binom) * B[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        B[m] = -s / (m + 1);
    }
    return B[n];
}

Rational bernoulli_poly(long n, const Rational& x) {
    Rational s = 0, xp = 1;
    // sum_k C(n,k) B_{n-k} x^k
    Integer binom = 1;
    for (long k = 0; k <= n; ++k) {
        s += Rational(binom) * bernoulli(n - k) * xp;
        xp *= x;
        binom = binom * (n - k) / (k + 1);
    }
    return s;
}

Integer divisor_sigma(long l, long n) {
    if (n <= 0) fail("ShapeError", "divisor_sigma needs n >= 1");
    if (l < 0) fail("ShapeError", "divisor_sigma needs l >= 0");
    Integer s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        Integer t;
        mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(l));
        s += t;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(l));
            s += t;
        }
    }
    return s;
}

namespace {

FracSeries level_one_eisenstein(long two_k, const Rational& order) {
    FracSeries s = FracSeries::constant(-bernoulli(two_k) / (2 * two_k), order);
    long top = ceil_q(order).get_si();
    for (long n = 1; n < top; ++n) s.terms[n] = Rational(divisor_sigma(two_k - 1, n));
    return s.normalize();
}

void check_weight(long two_k, int kappa, int lambda) {
    if (two_k % 2 != 0) fail("OddWeight", "weight " + std::to_string(two_k) + " is odd");
    if (two_k < 2) fail("ShapeError", "weight must be at least 2");
    if ((kappa != 0 && kappa != 1) || (lambda != 0 && lambda != 1)) fail("ShapeError", "indices must be 0 or 1");
}

}  // namespace

FracSeries lattice_eisenstein_series(long two_k, int kappa, int lambda, const Rational& order) {
    check_weight(two_k, kappa, lambda);
    if (kappa == 0 && lambda == 0) return level_one_eisenstein(two_k, order);
    FracSeries g = level_one_eisenstein(two_k, order);
    if (kappa == 1 && lambda == 0) {
        FracSeries g2 = substitute(level_one_eisenstein(two_k, order / 2), Rational(2));
        return (scale(g2, Rational(2)) - g).truncated(order);
    }
    Rational f = Rational(2) / Rational(Integer(1) << static_cast<unsigned>(two_k));  // 2^{1-2k}
    FracSeries half = substitute(level_one_eisenstein(two_k, 2 * order), Rational(1, 2), lambda == 1 && kappa == 1 ? -1 : 1);
    return (scale(half, f) - g).truncated(order);
}

FracSeries eisenstein_series(long two_k, int kappa, int lambda, const Rational& order) {
    check_weight(two_k, kappa, lambda);
    if (two_k == 2 && kappa == 1 && lambda == 1)
        return scale(lattice_eisenstein_series(2, 1, 1, order), Rational(-2));
    return lattice_eisenstein_series(two_k, kappa, lambda, order);
}

FracSeries euler_product(const Rational& order) {
    // pentagonal numbers k(3k-1)/2 and k(3k+1)/2 with sign (-1)^k
    FracSeries s(order);
    for (long k = 0; Rational(k * (3 * k - 1) / 2) < order; ++k) {
        Rational c = (k % 2 == 0) ? 1 : -1;
        s.terms[k * (3 * k - 1) / 2] = c;
        if (k > 0 && Rational(k * (3 * k + 1) / 2) < order) s.terms[k * (3 * k + 1) / 2] = c;
    }
    return s.normalize();
}

NamedForm parse_named_form(const std::string& s) {
    if (s == "eta") return NamedForm::eta;
    if (s == "delta") return NamedForm::delta;
    if (s == "j") return NamedForm::j;
    if (s == "g4_240") return NamedForm::g4_240;
    if (s == "f2") return NamedForm::f2;
    fail("UnknownForm", s);
}

FracSeries named_form_series(NamedForm f, const Rational& order) {
    switch (f) {
        case NamedForm::eta:
            return shift(euler_product(order - Rational(1, 24)), Rational(1, 24));
        case NamedForm::delta:
            return shift(pow(euler_product(order - 1), 24), Rational(1));
        case NamedForm::j: {
            FracSeries num = pow(scale(level_one_eisenstein(4, order + 1), Rational(240)), 3);
            FracSeries delta = named_form_series(NamedForm::delta, order + 2);
            return (num * invert(delta)).truncated(order);
        }
        case NamedForm::g4_240:
            return scale(level_one_eisenstein(4, order), Rational(240));
        case NamedForm::f2:
            return eisenstein_series(2, 1, 1, order);
    }
    fail("UnknownForm", "unreachable");
}

FracSeries theta_null_series(int mu, int nu, const Rational& order) {
    if ((mu != 0 && mu != 1) || (nu != 0 && nu != 1)) fail("ShapeError", "theta characteristics must be 0 or 1");
    FracSeries s(order);
    if (mu == 1 && nu == 1) return s;
    if (mu == 0) {
        s.den = 2;
        for (long n = 0; Rational(n * n, 2) < order; ++n) {
            Rational c = n == 0 ? 1 : 2;
            if (nu == 1 && n % 2 == 1) c = -c;
            s.terms[n * n] = c;
        }
    } else {
        s.den = 8;
        for (long n = 1; Rational((2 * n - 1) * (2 * n - 1), 8) < order; ++n) s.terms[(2 * n - 1) * (2 * n - 1)] = 2;
    }
    return s.normalize();
}

FracSeries lattice_theta_series(const IntMatrix& gram, const Rational& order, Exec exec) {
    const size_t r = gram.size();
    check_gram(gram);
    FracSeries s(order);
    if (order <= 0) return s;
    NormIpCounts c = enumerate_norm_ip(gram, RatVector(r, Rational(0)), 2 * order, {}, exec);
    s.den = 2;
    for (const auto& [key, cnt] : c.counts) {
        Rational e(key.first, 2);
        if (e < order) s.terms[key.first] += cnt;
    }
    return s.normalize();
}

PartitionTag parse_partition_tag(const std::string& s) {
    if (s == "weyl_NS_product") return PartitionTag::weyl_NS_product;
    if (s == "weyl_NS_theta") return PartitionTag::weyl_NS_theta;
    if (s == "weyl_R") return PartitionTag::weyl_R;
    if (s == "ising_NS") return PartitionTag::ising_NS;
    if (s == "ising_R") return PartitionTag::ising_R;
    if (s == "generic") return PartitionTag::generic;
    fail("UnknownModel", "partition tag " + s);
}

namespace {

// 1 + c q^e + O(q^order)
BiSeries one_plus(const Rational& e, const UnitPoly& c, const Rational& order) {
    BiSeries one = BiSeries::constant(UnitPoly(Rational(1)), order);
    return one + BiSeries::monomial(e, c, order);
}

// prod over E = start, start+1, ... < order of (1 + c q^E)
BiSeries fermion_product(const Rational& start, const UnitPoly& c, const Rational& order) {
    BiSeries acc = BiSeries::constant(UnitPoly(Rational(1)), order);
    for (Rational E = start; E < order; E += 1) acc = acc * one_plus(E, c, order);
    return acc;
}

FracSeries geometric(const Rational& E, int sign, const Rational& order) {
    // 1/(1 - sign q^E)
    FracSeries s(order);
    s.den = E.get_den().get_si();
    Rational c = 1;
    for (Rational e = 0; e < order; e += E) {
        s.terms[Rational(e * s.den).get_num().get_si()] = c;
        if (sign < 0) c = -c;
    }
    return s.normalize();
}

}  // namespace

BiSeries partition_series(PartitionTag tag, const Rational& order, const ModelId& model) {
    const Rational half(1, 2);
    const UnitPoly y = UnitPoly::monomial(1), yinv = UnitPoly::monomial(-1);
    switch (tag) {
        case PartitionTag::weyl_NS_product: {
            Rational o = order + Rational(1, 24);
            BiSeries p = fermion_product(half, y, o) * fermion_product(half, yinv, o);
            return shift(p, Rational(-1, 24));
        }
        case PartitionTag::weyl_NS_theta: {
            Rational o = order + Rational(1, 24);
            BiSeries th(o);
            th.den = 2;
            for (long n = 0; Rational(n * n, 2) < o; ++n) {
                UnitPoly c = n == 0 ? UnitPoly(Rational(1)) : UnitPoly::monomial(n) + UnitPoly::monomial(-n);
                th.terms[n * n] = c;
            }
            th.normalize();
            BiSeries inv_eta = to_bi(invert(euler_product(o)));
            return shift(th * inv_eta, Rational(-1, 24));
        }
        case PartitionTag::weyl_R: {
            Rational o = order - Rational(1, 12);
            BiSeries p = fermion_product(1, y, o) * fermion_product(1, yinv, o);
            BiSeries pre = BiSeries::constant(UnitPoly::monomial(half) + UnitPoly::monomial(-half), o);
            return shift(pre * p, Rational(1, 12));
        }
        case PartitionTag::ising_NS: {
            Rational o = order + Rational(1, 48);
            return shift(fermion_product(half, UnitPoly(Rational(1)), o), Rational(-1, 48));
        }
        case PartitionTag::ising_R: {
            Rational o = order - Rational(1, 24);
            return shift(fermion_product(1, UnitPoly(Rational(1)), o), Rational(1, 24));
        }
        case PartitionTag::generic: {
            Spectrum sp = spectrum(model);
            Rational E0 = vacuum_energy(model);
            Rational o = order - E0;
            BiSeries acc = BiSeries::constant(UnitPoly(Rational(1)), o);
            Rational start = sp.min_energy;
            for (Rational E = start; E < o; E += 1) {
                Integer d = degeneracy(model, E);
                if (d == 0) continue;
                long dl = d.get_si();
                if (sp.fermion) {
                    if (sp.charge != 0) {
                        BiSeries f = one_plus(E, UnitPoly::monomial(sp.charge), o) *
                                     one_plus(E, UnitPoly::monomial(-sp.charge), o);
                        acc = acc * pow(f, dl / 2);
                    } else {
                        acc = acc * pow(one_plus(E, UnitPoly(Rational(1)), o), dl);
                    }
                } else {
                    acc = acc * to_bi(pow(geometric(E, 1, o), dl));
                }
            }
            return shift(acc, E0);
        }
    }
    fail("UnknownModel", "unreachable");
}

FracSeries energy_mean_series(const ModelId& model, const Rational& order) {
    if (model.tag == ModelTag::N2Super) fail("UnknownModel", "n2_super has no free-field energy series");
    Spectrum sp = spectrum(model);
    FracSeries s = FracSeries::constant(vacuum_energy(model), order);
    FracSeries acc(order);
    acc.den = sp.offset.get_den().get_si();
    for (Rational E = sp.min_energy; E < order; E += 1) {
        Integer d = degeneracy(model, E);
        if (d == 0) continue;
        Rational w = E * Rational(d);
        Rational c = w;
        for (Rational e = E; e < order; e += E) {
            acc.terms[Rational(e * acc.den).get_num().get_si()] += c;
            if (sp.fermion) c = -c;
        }
    }
    acc.normalize();
    return s + acc;
}

}  // namespace ellcft
