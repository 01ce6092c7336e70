#ifndef ELLCFT_NUMERIC_DETAIL_HPP
#define ELLCFT_NUMERIC_DETAIL_HPP

#include "ellcft/errors.hpp"

#include <cmath>
#include <complex>

namespace ellcft::detail {

using cplxd = std::complex<double>;
using cplxld = std::complex<long double>;

inline constexpr long double PI_L = 3.141592653589793238462643383279502884L;
inline constexpr long MAX_TERMS = 50000000;

inline cplxld qnome(cplxld tau) {
    if (!(tau.imag() > 0)) fail("InvalidTau", "need Im tau > 0");
    return std::exp(cplxld(0, 2 * PI_L) * tau);
}

inline cplxld to_l(cplxd z) { return {z.real(), z.imag()}; }
inline cplxd to_d(cplxld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

}  // namespace ellcft::detail

#endif
