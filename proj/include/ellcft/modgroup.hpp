#ifndef ELLCFT_MODGROUP_HPP
#define ELLCFT_MODGROUP_HPP

#include "ellcft/rational.hpp"

#include <complex>
#include <string>
#include <vector>

namespace ellcft {

using cplx = std::complex<double>;

struct Unimodular {
    Integer a = 1, b = 0, c = 0, d = 1;

    static Unimodular make(long a, long b, long c, long d);  // throws NotUnimodular
    static Unimodular S() { return make(0, -1, 1, 0); }
    static Unimodular T(long n = 1) { return make(1, n, 0, 1); }
    Unimodular inverse() const;
    bool operator==(const Unimodular& o) const = default;
    std::string str() const;
};

Unimodular operator*(const Unimodular& x, const Unimodular& y);

// throws InvalidTau if Im tau <= 0
void check_tau(cplx tau);
cplx moebius_act(const Unimodular& g, cplx tau);
cplx automorphy(const Unimodular& g, cplx tau);  // c tau + d

// tau = re + i sqrt(im_sq) with rational re and im_sq
struct ExactTau {
    Rational re = 0, im_sq = 1;
    cplx value() const;
    bool operator==(const ExactTau& o) const = default;
};
ExactTau moebius_act(const Unimodular& g, const ExactTau& tau);

// (kappa, lambda) -> ([a kappa + b lambda]_2, [c kappa + d lambda]_2)
std::pair<int, int> index_act(const Unimodular& g, int kappa, int lambda);

// one letter: S, or T^n
struct Letter {
    bool is_s = false;
    long n = 0;
    bool operator==(const Letter& o) const = default;
};
using Word = std::vector<Letter>;
// product w[0] w[1] ... w[k-1]
Unimodular word_matrix(const Word& w);
std::string word_string(const Word& w);

// tau_star = gamma tau with tau_star in the closed fundamental domain.
// Ties: Re in [-1/2, 1/2), and on |tau| = 1 the point with Re <= 0.
struct Reduction {
    cplx tau_star;
    Unimodular gamma;
    Word word;  // word_matrix(word) == gamma
};
struct ExactReduction {
    ExactTau tau_star;
    Unimodular gamma;
    Word word;
};
Reduction reduce_fundamental(cplx tau);
ExactReduction reduce_fundamental(const ExactTau& tau);
bool in_fundamental_domain(cplx tau, double tol = 1e-12);

enum class SubgroupKind { Full, Gamma0, Gamma1, GammaN, Theta };
struct SubgroupId {
    SubgroupKind kind = SubgroupKind::Full;
    long N = 1;
};
SubgroupId parse_subgroup(const std::string& s);  // "full", "theta", "gamma0:4", "gamma:6"
bool subgroup_member(const Unimodular& g, const SubgroupId& h);

struct TopData {
    long genus = 0;
    long nu_inf = 1;  // cusps
    long nu2 = 0;     // elliptic points of order 2, 3
    long nu3 = 0;
};

struct GammaNData {
    Integer index;      // [SL2(Z) : Gamma(N)]
    Integer psl_index;  // index of the image in PSL2(Z)
    TopData top;
};
GammaNData gamma_n_data(long N);

// dimension of weight-2k forms from the topological data
long dim_forms(long two_k, const TopData& t);

}  // namespace ellcft

#endif
