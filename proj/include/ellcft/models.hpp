#ifndef ELLCFT_MODELS_HPP
#define ELLCFT_MODELS_HPP

#include "ellcft/rational.hpp"

#include <string>
#include <vector>

namespace ellcft {

enum class ModelTag {
    ChiralWeyl,
    IsingNS,
    IsingR,
    N2Super,
    Scalar,
    Weyl4Canonical,
    Weyl4Subcanonical,
    Maxwell,
    GaugeLongitudinal,
    ChiralU1,
};

struct ModelId {
    ModelTag tag = ModelTag::ChiralWeyl;
    int D = 4;               // scalar only, even and >= 4
    Rational c = 0;          // n2_super central charge
    Rational L0mean = 0;     // n2_super thermal <L0 - c/24>

    static ModelId scalar(int D);
    static ModelId n2(const Rational& c, const Rational& L0mean);
};

ModelId parse_model(const std::string& name);
std::string model_name(const ModelId& m);

// one-particle spectrum of a free model: energies offset + n, degeneracy polynomial in E
struct Spectrum {
    bool fermion = false;
    Rational offset = 0;             // 0 for integer energies, 1/2 for half-odd
    Rational min_energy = 1;
    std::vector<Rational> poly;      // d(E) = sum poly[i] E^i
    int charge = 0;                  // nonzero when the two halves carry y^{+-charge}
};

bool has_spectrum(const ModelId& m);
Spectrum spectrum(const ModelId& m);

// d(E) as an exact integer; OutOfSpectrum if E is not on the model's energy lattice
Integer degeneracy(const ModelId& m, const Rational& energy);

// zeta-regularized ground state energy, +-(1/2) sum E d(E)
Rational vacuum_energy(const ModelId& m);

Rational conformal_weight(const ModelId& m);  // d0 for scalar, 1/2, 3/2, 2 ...

}  // namespace ellcft

#endif
