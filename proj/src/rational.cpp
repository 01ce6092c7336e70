#include "ellcft/rational.hpp"

#include "ellcft/errors.hpp"

#include <cctype>
#include <numeric>

namespace ellcft {

Rational parse_rational(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) fail("ParseError", "empty rational");
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
            if (q == 0) fail("ParseError", "zero denominator in '" + raw + "'");
            Rational r(p, q);
            r.canonicalize();
            return r;
        }
        // decimal with optional exponent
        std::string mant = s;
        long ex = 0;
        auto epos = s.find_first_of("eE");
        if (epos != std::string::npos) {
            mant = s.substr(0, epos);
            ex = std::stol(s.substr(epos + 1));
        }
        bool neg = false;
        if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
            neg = mant[0] == '-';
            mant = mant.substr(1);
        }
        auto dot = mant.find('.');
        std::string digits = mant;
        if (dot != std::string::npos) {
            digits = mant.substr(0, dot) + mant.substr(dot + 1);
            ex -= static_cast<long>(mant.size() - dot - 1);
        }
        if (digits.empty()) fail("ParseError", "bad number '" + raw + "'");
        for (char c : digits)
            if (!std::isdigit(static_cast<unsigned char>(c))) fail("ParseError", "bad number '" + raw + "'");
        Integer num(digits);
        Integer p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(ex < 0 ? -ex : ex));
        Rational r = ex < 0 ? Rational(num, p10) : Rational(num * p10);
        r.canonicalize();
        return neg ? Rational(-r) : r;
    } catch (const std::invalid_argument&) {
        fail("ParseError", "bad rational '" + raw + "'");
    }
}

std::string to_string(const Rational& r) {
    Rational c = r;
    c.canonicalize();
    return c.get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

double to_double(const Rational& r) { return r.get_d(); }

Integer lcm(const Integer& a, const Integer& b) {
    Integer out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

Integer ceil_q(const Rational& r) {
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

Integer floor_q(const Rational& r) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

bool rational_root(const Rational& r, unsigned long n, Rational& out) {
    if (n == 0) return false;
    if (r == 0) {
        out = 0;
        return true;
    }
    bool neg = r < 0;
    if (neg && n % 2 == 0) return false;
    Integer p = abs(r.get_num()), q = r.get_den(), rp, rq;
    if (!mpz_root(rp.get_mpz_t(), p.get_mpz_t(), n)) return false;
    if (!mpz_root(rq.get_mpz_t(), q.get_mpz_t(), n)) return false;
    out = Rational(rp, rq);
    out.canonicalize();
    if (neg) out = -out;
    return true;
}

}  // namespace ellcft
