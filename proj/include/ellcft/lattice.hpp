#ifndef ELLCFT_LATTICE_HPP
#define ELLCFT_LATTICE_HPP

#include "ellcft/lattice_enum.hpp"
#include "ellcft/qseries.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ellcft {

using CplxVector = std::vector<cplx>;

// "e8", "a1", "a2", "d4", "sqrt3" (gram (3)), or a JSON array of rows
IntMatrix parse_gram(const std::string& s);
IntMatrix e8_gram();
bool is_even(const IntMatrix& gram);

// Q*/Q with representatives lambda = G^{-1} n in lattice coordinates
struct DiscriminantGroup {
    long order = 1;
    std::vector<RatVector> reps;
};
// throws DegenerateGram
DiscriminantGroup discriminant_group(const IntMatrix& gram);
RatVector dual_coordinates(const IntMatrix& gram, const std::vector<long>& n);  // G^{-1} n

// chi_lambda = eta^{-r} sum_{gamma in lambda + Q} q^{(gamma|gamma)/2} y^{(gamma|mu_dir)}, y = e^{2 pi i t}
// for mu = t mu_dir; an empty mu_dir gives mu = 0. Throws NotEven, NotPositiveDefinite.
BiSeries voa_character_series(const IntMatrix& gram, const RatVector& lambda, const RatVector& mu_dir,
                              const Rational& order, Exec exec = Exec::parallel);
// numeric value at complex mu (lattice coordinates, may be empty)
cplx voa_character_value(const IntMatrix& gram, const RatVector& lambda, cplx tau, const CplxVector& mu = {},
                         double tol = 1e-15);

struct ModularCheck {
    double t_residual = 0;  // max over Q*/Q
    double s_residual = 0;
};
ModularCheck char_modular_check(const IntMatrix& gram, cplx tau, const CplxVector& mu = {}, double tol = 1e-15);

// epsilon(alpha, beta) = i^{exponent}, exact
struct CocycleTable {
    IntMatrix gram;
    long window = 0;                         // L1 radius of the vector window
    std::vector<std::vector<long>> vectors;  // all n with sum |n_i| <= window
    std::vector<std::uint8_t> exponent;      // row-major over vectors x vectors
    std::map<std::vector<long>, size_t> lookup;

    // exponent of epsilon for window vectors; throws WindowTooSmall outside the window
    int at(const std::vector<long>& a, const std::vector<long>& b) const;
    size_t index(const std::vector<long>& a) const;
};
// throws NotEven, WindowTooSmall (window < 3 leaves no closed triples)
CocycleTable cocycle_build(const IntMatrix& gram, long window);
// closed form for any pair of lattice vectors
int cocycle_exponent(const IntMatrix& gram, const std::vector<long>& a, const std::vector<long>& b);

struct CocycleReport {
    long pairs = 0, triples = 0;
    bool unit = true, normalized = true, two_cocycle = true, symmetry = true, conjugation = true;
    bool all() const { return unit && normalized && two_cocycle && symmetry && conjugation; }
};
// pairs over the whole window; triples over the sub-window of radius window/3
CocycleReport cocycle_verify(const CocycleTable& t);

// K_m(tau, mu; l) = eta^{-1} sum_n q^{(l/2)(n + m/l)^2} e^{2 pi i mu_scale mu (n + m/l)}
BiSeries k_series(const Rational& m, const Rational& l, const Rational& order, const Rational& mu_scale = 1);
cplx k_value(const Rational& m, const Rational& l, cplx tau, cplx mu = 0);
// |K_m(-1/tau, mu/tau; l) - e^{i pi mu^2/(l tau)} l^{-1/2} sum_{m'} e^{-2 pi i m m'/l} K_{m'}(tau, mu; l)|
double k_s_law_residual(const Rational& m, long l, cplx tau, cplx mu);

struct N2Label {
    int l = 0, m = 0;
};
std::vector<N2Label> n2_labels(int k);  // throws InvalidLabels for k outside {1, 2}
Rational n2_central_charge(int k);      // 3 - 6/(k+2)
Rational n2_weight(int k, int l, int m);  // (l(l+2) - m^2)/(4(k+2))
Rational n2_charge(int k, int m);         // m/(k+2)
// tr q^{L0 - c/24} y^{J0}; throws InvalidLabels
BiSeries n2_character_series(int k, int l, int m, const Rational& order);
cplx n2_character_value(int k, int l, int m, cplx tau, cplx mu = 0);
// chi(tau + 2) = e^{4 pi i (Delta - c/24)} chi(tau)
cplx n2_t2_eigenvalue(int k, int l, int m);
// S_{lm,l'm'} in the order of n2_labels(k)
std::vector<std::vector<cplx>> n2_smatrix(int k);

}  // namespace ellcft

#endif
