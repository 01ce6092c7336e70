#include "ellcft/models.hpp"

#include "ellcft/errors.hpp"
#include "ellcft/qseries.hpp"

namespace ellcft {

ModelId ModelId::scalar(int D) {
    if (D < 4 || D % 2 != 0) fail("UnknownModel", "scalar needs even D >= 4");
    ModelId m;
    m.tag = ModelTag::Scalar;
    m.D = D;
    return m;
}

ModelId ModelId::n2(const Rational& c, const Rational& L0mean) {
    ModelId m;
    m.tag = ModelTag::N2Super;
    m.c = c;
    m.L0mean = L0mean;
    return m;
}

ModelId parse_model(const std::string& name) {
    ModelId m;
    if (name == "chiral_weyl") m.tag = ModelTag::ChiralWeyl;
    else if (name == "ising_NS") m.tag = ModelTag::IsingNS;
    else if (name == "ising_R") m.tag = ModelTag::IsingR;
    else if (name == "n2_super") m.tag = ModelTag::N2Super;
    else if (name == "weyl4_canonical") m.tag = ModelTag::Weyl4Canonical;
    else if (name == "weyl4_subcanonical") m.tag = ModelTag::Weyl4Subcanonical;
    else if (name == "maxwell") m.tag = ModelTag::Maxwell;
    else if (name == "gauge_longitudinal") m.tag = ModelTag::GaugeLongitudinal;
    else if (name == "chiral_u1") m.tag = ModelTag::ChiralU1;
    else if (name.rfind("scalar", 0) == 0) {
        std::string rest = name.substr(6);
        int D = 4;
        if (!rest.empty()) {
            try {
                D = std::stoi(rest);
            } catch (...) {
                fail("UnknownModel", name);
            }
        }
        return ModelId::scalar(D);
    } else
        fail("UnknownModel", name);
    return m;
}

std::string model_name(const ModelId& m) {
    switch (m.tag) {
        case ModelTag::ChiralWeyl: return "chiral_weyl";
        case ModelTag::IsingNS: return "ising_NS";
        case ModelTag::IsingR: return "ising_R";
        case ModelTag::N2Super: return "n2_super";
        case ModelTag::Scalar: return "scalar" + std::to_string(m.D);
        case ModelTag::Weyl4Canonical: return "weyl4_canonical";
        case ModelTag::Weyl4Subcanonical: return "weyl4_subcanonical";
        case ModelTag::Maxwell: return "maxwell";
        case ModelTag::GaugeLongitudinal: return "gauge_longitudinal";
        case ModelTag::ChiralU1: return "chiral_u1";
    }
    return "?";
}

bool has_spectrum(const ModelId& m) { return m.tag != ModelTag::N2Super; }

namespace {

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

Spectrum spectrum(const ModelId& m) {
    Spectrum s;
    const Rational half(1, 2);
    switch (m.tag) {
        case ModelTag::ChiralWeyl:
            s = {true, half, half, {2}, 1};
            break;
        case ModelTag::IsingNS:
            s = {true, half, half, {1}, 0};
            break;
        case ModelTag::IsingR:
            s = {true, 0, 1, {1}, 0};
            break;
        case ModelTag::ChiralU1:
            s = {false, 0, 1, {1}, 0};
            break;
        case ModelTag::Scalar: {
            int d0 = (m.D - 2) / 2;
            Integer fact = 1;
            for (int k = 2; k <= 2 * d0; ++k) fact *= k;
            std::vector<Rational> p{0, 0, Rational(2) / Rational(fact)};
            for (int k = 1; k < d0; ++k) p = poly_mul(p, {Rational(-k * k), 0, 1});
            s = {false, 0, Rational(d0), p, 0};
            break;
        }
        case ModelTag::Weyl4Canonical:
            // 2(n+1)(n+2) at E = n + 3/2, i.e. 2E^2 - 1/2
            s = {true, half, Rational(3, 2), {Rational(-1, 2), 0, 2}, 0};
            break;
        case ModelTag::Weyl4Subcanonical:
            // 2(3n(n+1)+2) at E = n + 1/2, i.e. 6E^2 + 5/2
            s = {true, half, half, {Rational(5, 2), 0, 6}, 0};
            break;
        case ModelTag::Maxwell:
            s = {false, 0, 2, {-2, 0, 2}, 0};
            break;
        case ModelTag::GaugeLongitudinal:
            s = {false, 0, 1, {2, 0, 2}, 0};
            break;
        case ModelTag::N2Super:
            fail("UnknownModel", "n2_super has no free-field spectrum");
    }
    return s;
}

Integer degeneracy(const ModelId& m, const Rational& energy) {
    Spectrum s = spectrum(m);
    Rational shifted = energy - s.offset;
    if (shifted.get_den() != 1) fail("OutOfSpectrum", "energy " + to_string(energy) + " not on the spectrum lattice");
    if (energy < s.min_energy) return 0;
    Rational v = 0, p = 1;
    for (const auto& c : s.poly) {
        v += c * p;
        p *= energy;
    }
    if (v.get_den() != 1) fail("OutOfSpectrum", "non-integral degeneracy");
    return v.get_num();
}

Rational vacuum_energy(const ModelId& m) {
    if (m.tag == ModelTag::N2Super) return -m.c / 24;
    Spectrum s = spectrum(m);
    // sum over E = offset + n, n >= 1 (or n >= 0 when offset = 1/2) of E^{j+1} -> zeta_H(-(j+1), s)
    Rational start = s.offset == 0 ? Rational(1) : s.offset;
    Rational total = 0;
    for (size_t j = 0; j < s.poly.size(); ++j) {
        if (s.poly[j] == 0) continue;
        long mpow = static_cast<long>(j) + 1;
        Rational zh = -bernoulli_poly(mpow + 1, start) / Rational(mpow + 1);
        total += s.poly[j] * zh;
    }
    Rational half(1, 2);
    return s.fermion ? Rational(-half * total) : Rational(half * total);
}

Rational conformal_weight(const ModelId& m) {
    switch (m.tag) {
        case ModelTag::ChiralWeyl:
        case ModelTag::IsingNS:
        case ModelTag::IsingR:
        case ModelTag::Weyl4Subcanonical:
            return Rational(1, 2);
        case ModelTag::Weyl4Canonical:
            return Rational(3, 2);
        case ModelTag::Scalar:
            return Rational((m.D - 2) / 2);
        case ModelTag::Maxwell:
            return 2;
        case ModelTag::ChiralU1:
            return 1;
        case ModelTag::GaugeLongitudinal:
            return 1;
        case ModelTag::N2Super:
            return Rational(3, 2);
    }
    return 0;
}

}  // namespace ellcft
