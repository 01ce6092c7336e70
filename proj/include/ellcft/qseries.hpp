#ifndef ELLCFT_QSERIES_HPP
#define ELLCFT_QSERIES_HPP

#include "ellcft/errors.hpp"
#include "ellcft/lattice_enum.hpp"
#include "ellcft/models.hpp"
#include "ellcft/rational.hpp"

#include <json.hpp>

#include <complex>
#include <map>
#include <numeric>
#include <optional>
#include <string>

namespace ellcft {

using cplx = std::complex<double>;

// Laurent polynomial in y = e^{2 pi i mu} with rational exponents
struct UnitPoly {
    std::map<Rational, Rational> terms;  // exponent -> coefficient, no zeros

    UnitPoly() = default;
    UnitPoly(const Rational& c) {  // NOLINT: constants convert implicitly
        if (c != 0) terms[Rational(0)] = c;
    }
    static UnitPoly monomial(const Rational& e, const Rational& c = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_monomial() const { return terms.size() == 1; }

    UnitPoly& operator+=(const UnitPoly& o);
    UnitPoly& operator-=(const UnitPoly& o);
    friend UnitPoly operator+(UnitPoly a, const UnitPoly& b) { return a += b; }
    friend UnitPoly operator-(UnitPoly a, const UnitPoly& b) { return a -= b; }
    friend UnitPoly operator*(const UnitPoly& a, const UnitPoly& b);
    UnitPoly operator-() const;
    friend bool operator==(const UnitPoly& a, const UnitPoly& b) { return a.terms == b.terms; }

    // mu -> mu + s; needs s*e in (1/2)Z for every exponent e
    UnitPoly shift_mu(const Rational& s) const;
    // y -> y^a
    UnitPoly rescale(const Rational& a) const;
    cplx eval_mu(cplx mu) const;
    std::string str() const;
};

template <class C>
struct CoefOps;

template <>
struct CoefOps<Rational> {
    static bool is_zero(const Rational& c) { return c == 0; }
    static Rational inverse(const Rational& c) {
        if (c == 0) fail("InvertZeroLeading", "zero coefficient");
        return Rational(1) / c;
    }
};

template <>
struct CoefOps<UnitPoly> {
    static bool is_zero(const UnitPoly& c) { return c.is_zero(); }
    static UnitPoly inverse(const UnitPoly& c) {
        if (!c.is_monomial()) fail("InvertZeroLeading", "leading coefficient is not a monomial in y");
        auto it = c.terms.begin();
        return UnitPoly::monomial(-it->first, Rational(1) / it->second);
    }
};

// Truncated series sum c_k q^{k/den} + O(q^order).
template <class C>
struct Series {
    long den = 1;
    std::map<long, C> terms;
    Rational order = 0;

    Series() = default;
    explicit Series(const Rational& ord) : order(ord) {}

    static Series constant(const C& c, const Rational& ord) {
        Series s(ord);
        if (!CoefOps<C>::is_zero(c) && 0 < ord) s.terms[0] = c;
        return s;
    }
    static Series monomial(const Rational& e, const C& c, const Rational& ord) {
        Series s(ord);
        s.den = e.get_den().get_si();
        if (!CoefOps<C>::is_zero(c) && e < ord) s.terms[e.get_num().get_si()] = c;
        return s;
    }

    Rational exponent(long k) const { return Rational(k, den); }
    bool is_zero() const { return terms.empty(); }
    Rational valuation() const { return terms.empty() ? order : exponent(terms.begin()->first); }

    C coeff(const Rational& e) const {
        Rational k = e * den;
        if (k.get_den() != 1) return C();
        auto it = terms.find(k.get_num().get_si());
        return it == terms.end() ? C() : it->second;
    }

    // largest key allowed is strictly below order*den
    long key_limit(long d) const { return ceil_q(order * d).get_si(); }

    Series with_den(long d) const {
        if (d % den != 0) fail("ShapeError", "denominator does not divide");
        Series out(order);
        out.den = d;
        long f = d / den;
        for (const auto& [k, c] : terms) out.terms[k * f] = c;
        return out;
    }

    Series& normalize() {
        long lim = key_limit(den);
        for (auto it = terms.begin(); it != terms.end();) {
            if (CoefOps<C>::is_zero(it->second) || it->first >= lim)
                it = terms.erase(it);
            else
                ++it;
        }
        long g = den;
        for (const auto& kv : terms) g = std::gcd(g, kv.first);
        if (g > 1) {
            std::map<long, C> t;
            for (auto& [k, c] : terms) t[k / g] = std::move(c);
            terms = std::move(t);
            den /= g;
        }
        return *this;
    }

    Series truncated(const Rational& ord) const {
        Series out = *this;
        if (ord < out.order) out.order = ord;
        return out.normalize();
    }
};

using FracSeries = Series<Rational>;
using BiSeries = Series<UnitPoly>;

template <class C>
Series<C> operator+(const Series<C>& a, const Series<C>& b) {
    long d = std::lcm(a.den, b.den);
    Series<C> x = a.with_den(d), y = b.with_den(d);
    x.order = a.order < b.order ? a.order : b.order;
    for (const auto& [k, c] : y.terms) x.terms[k] += c;
    return x.normalize();
}

template <class C>
Series<C> operator-(const Series<C>& a) {
    Series<C> out = a;
    for (auto& kv : out.terms) kv.second = -kv.second;
    return out;
}

template <class C>
Series<C> operator-(const Series<C>& a, const Series<C>& b) {
    return a + (-b);
}

template <class C>
Series<C> operator*(const Series<C>& a, const Series<C>& b) {
    long d = std::lcm(a.den, b.den);
    Series<C> x = a.with_den(d), y = b.with_den(d);
    Rational o1 = a.order + b.valuation(), o2 = b.order + a.valuation();
    Series<C> out(o1 < o2 ? o1 : o2);
    out.den = d;
    long lim = out.key_limit(d);
    for (const auto& [ka, ca] : x.terms) {
        for (const auto& [kb, cb] : y.terms) {
            if (ka + kb >= lim) break;
            out.terms[ka + kb] += ca * cb;
        }
    }
    return out.normalize();
}

template <class C>
Series<C> scale(const Series<C>& a, const C& c) {
    Series<C> out = a;
    for (auto& kv : out.terms) kv.second = kv.second * c;
    return out.normalize();
}

// multiply by q^e
template <class C>
Series<C> shift(const Series<C>& a, const Rational& e) {
    long d = std::lcm(a.den, e.get_den().get_si());
    Series<C> x = a.with_den(d);
    Series<C> out(a.order + e);
    out.den = d;
    long s = Rational(e * d).get_num().get_si();
    for (auto& [k, c] : x.terms) out.terms[k + s] = c;
    return out.normalize();
}

// q^e -> sign^e q^{r e}; sign = -1 needs integral exponents
template <class C>
Series<C> substitute(const Series<C>& a, const Rational& r, int sign = 1) {
    if (r <= 0) fail("ShapeError", "substitution exponent must be positive");
    long rn = r.get_num().get_si(), rd = r.get_den().get_si();
    Series<C> out(a.order * r);
    out.den = a.den * rd;
    for (const auto& [k, c] : a.terms) {
        C v = c;
        if (sign < 0) {
            if (k % a.den != 0) fail("ShapeError", "sign substitution on fractional exponent");
            if (((k / a.den) % 2 + 2) % 2 == 1) v = -v;
        }
        out.terms[k * rn] = v;
    }
    return out.normalize();
}

// 1/a; the leading coefficient must be a unit
template <class C>
Series<C> invert(const Series<C>& a) {
    if (a.terms.empty()) fail("InvertZeroLeading", "series has no nonzero coefficient below its order");
    const long N = a.den;
    const long k0 = a.terms.begin()->first;
    const Rational v = a.exponent(k0);
    const C c0inv = CoefOps<C>::inverse(a.terms.begin()->second);
    const long J = ceil_q((a.order - v) * N).get_si();
    std::vector<std::pair<long, C>> b;  // relative index, c/c0
    for (const auto& [k, c] : a.terms)
        if (k != k0 && k - k0 < J) b.push_back({k - k0, c * c0inv});
    std::vector<C> g(static_cast<size_t>(J > 0 ? J : 0));
    if (J > 0) g[0] = C(Rational(1));
    for (long j = 1; j < J; ++j) {
        C acc;
        for (const auto& [i, bi] : b) {
            if (i > j) break;
            if (!CoefOps<C>::is_zero(g[j - i])) acc += bi * g[j - i];
        }
        g[j] = -acc;
    }
    Series<C> out(-v + (a.order - v));
    out.den = N;
    for (long j = 0; j < J; ++j)
        if (!CoefOps<C>::is_zero(g[j])) out.terms[j - k0] = g[j] * c0inv;
    return out.normalize();
}

template <class C>
Series<C> pow(const Series<C>& a, long n) {
    if (n < 0) return pow(invert(a), -n);
    Series<C> result = Series<C>::constant(C(Rational(1)), a.order - a.valuation());
    // order of the identity is a placeholder, the first multiply fixes it
    bool first = true;
    Series<C> base = a;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : result * base;
            first = false;
        }
        n >>= 1;
        if (n) base = base * base;
    }
    if (first) {
        // a^0 = 1 known to the relative precision of a
        return Series<C>::constant(C(Rational(1)), a.order - a.valuation());
    }
    return result;
}

// a^alpha for a with leading coefficient 1 at exponent 0 (Miller recurrence)
FracSeries power_one_plus(const FracSeries& a, const Rational& alpha);

// series whose n-th power is a; leading coefficient must be a rational n-th power
FracSeries principal_root(const FracSeries& a, long n);

cplx evaluate(const FracSeries& s, cplx tau);
cplx evaluate(const BiSeries& s, cplx tau, cplx mu);

// promote rational coefficients to y^0
BiSeries to_bi(const FracSeries& s);
// y -> y^a on every coefficient, mu -> mu + s
BiSeries rescale_y(const BiSeries& s, const Rational& a);
BiSeries shift_mu(const BiSeries& s, const Rational& sh);

template <class C>
struct EqualityReport {
    bool equal = true;
    Rational exponent = 0;
    C lhs, rhs;
};

template <class C>
EqualityReport<C> series_equal(const Series<C>& a, const Series<C>& b, const Rational& through) {
    if (a.order < through || b.order < through)
        fail("InsufficientOrder", "series known only through q^" + to_string(a.order < b.order ? a.order : b.order));
    Series<C> d = (a - b).truncated(through);
    EqualityReport<C> r;
    if (!d.terms.empty()) {
        r.equal = false;
        r.exponent = d.exponent(d.terms.begin()->first);
        r.lhs = a.coeff(r.exponent);
        r.rhs = b.coeff(r.exponent);
    }
    return r;
}

nlohmann::json to_json(const FracSeries& s);
nlohmann::json to_json(const BiSeries& s);
nlohmann::json to_json(const UnitPoly& p);
FracSeries frac_series_from_json(const nlohmann::json& j);
BiSeries bi_series_from_json(const nlohmann::json& j);
std::string to_string(const FracSeries& s, int max_terms = 12);

// number theory
Rational bernoulli(long n);  // B_1 = -1/2
Rational bernoulli_poly(long n, const Rational& x);
Integer divisor_sigma(long l, long n);

// G_{2k}^{kappa lambda} with normalization G_{2k} = -B_{2k}/(4k) + sum sigma q^n.
// (2,1,1) returns F2 = 2 G2(tau) - G2((tau+1)/2).
FracSeries eisenstein_series(long two_k, int kappa, int lambda, const Rational& order);
// same but always in the lattice-sum normalization, (2,1,1) gives -F2/2
FracSeries lattice_eisenstein_series(long two_k, int kappa, int lambda, const Rational& order);

enum class NamedForm { eta, delta, j, g4_240, f2 };
NamedForm parse_named_form(const std::string& s);
FracSeries named_form_series(NamedForm f, const Rational& order);

FracSeries theta_null_series(int mu, int nu, const Rational& order);
FracSeries lattice_theta_series(const IntMatrix& gram, const Rational& order, Exec exec = Exec::parallel);

// prod_{n>=1} (1 - q^n)^{-1} and friends
FracSeries euler_product(const Rational& order);  // prod (1 - q^n)

enum class PartitionTag { weyl_NS_product, weyl_NS_theta, weyl_R, ising_NS, ising_R, generic };
PartitionTag parse_partition_tag(const std::string& s);
BiSeries partition_series(PartitionTag tag, const Rational& order, const ModelId& model = ModelId());

// <L0 - c/24> as an exact series including the vacuum constant
FracSeries energy_mean_series(const ModelId& model, const Rational& order);

}  // namespace ellcft

#endif
