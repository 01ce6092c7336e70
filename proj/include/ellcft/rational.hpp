#ifndef ELLCFT_RATIONAL_HPP
#define ELLCFT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace ellcft {

using Rational = mpq_class;
using Integer = mpz_class;

// accepts "7", "-3/4", "0.125", "1e-3"
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Rational make_rational(long num, long den = 1);
double to_double(const Rational& r);

Integer lcm(const Integer& a, const Integer& b);
long lcm_long(long a, long b);

// ceil and floor of a rational
Integer ceil_q(const Rational& r);
Integer floor_q(const Rational& r);

// exact n-th root of a rational, false if it is not a rational n-th power
bool rational_root(const Rational& r, unsigned long n, Rational& out);

}  // namespace ellcft

#endif
