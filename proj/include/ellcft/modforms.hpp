#ifndef ELLCFT_MODFORMS_HPP
#define ELLCFT_MODFORMS_HPP

#include "ellcft/lattice_enum.hpp"
#include "ellcft/modgroup.hpp"

#include <complex>
#include <string>

namespace ellcft {

using cplxl = std::complex<long double>;

enum class FormKind { Eisenstein, TwistedEisenstein, Eta, Delta, J, F2, G2Star, LatticeTheta };

struct FormId {
    FormKind kind = FormKind::Eisenstein;
    long two_k = 4;
    int kappa = 0, lambda = 0;  // TwistedEisenstein, lattice-sum normalization
    IntMatrix gram;             // LatticeTheta
    long level = 0;             // LatticeTheta; 0 means derive from the gram matrix
    long char_disc = 0;         // LatticeTheta character d -> (char_disc / d); 0 means derive

    static FormId eisenstein(long two_k);
    static FormId twisted(long two_k, int kappa, int lambda);
    static FormId named(FormKind k);
    static FormId theta(const IntMatrix& gram);
};

// "G4", "G2", "G6^{10}", "eta", "delta", "j", "f2", "g2star"
FormId parse_form(const std::string& s);
std::string form_name(const FormId& f);
// weight numerator over 2 (eta has weight 1/2 -> 1)
long twice_weight(const FormId& f);

struct FormValue {
    cplx value;
    double err_bound = 0;  // rigorous bound on the q-series truncation
};

FormValue form_eval(const FormId& f, cplx tau, double tol = 1e-16);
cplxl form_eval_l(const FormId& f, cplxl tau, double tol = 1e-16);

// (c tau + d)^{-w} f(gamma tau) - chi(d) f(tau); WrongSubgroup if gamma is outside the group of f
cplx covariance_residual(const FormId& f, const Unimodular& g, cplx tau, double tol = 1e-16);
// group under which f is covariant
SubgroupId form_group(const FormId& f);

// building blocks, long double
cplxl eisenstein_l(long two_k, cplxl tau, double tol, double* err = nullptr);
cplxl euler_product_l(cplxl tau, double tol, double* err = nullptr);  // prod (1 - q^n)
cplxl eta_l(cplxl tau, double tol);
cplxl g2_twisted_l(int kappa, int lambda, cplxl tau, double tol);  // lattice-sum normalization

// level and Kronecker discriminant of an even lattice of even rank
long lattice_level(const IntMatrix& gram);
long lattice_char_disc(const IntMatrix& gram);

}  // namespace ellcft

#endif
