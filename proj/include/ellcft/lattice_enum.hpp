#ifndef ELLCFT_LATTICE_ENUM_HPP
#define ELLCFT_LATTICE_ENUM_HPP

#include "ellcft/parallel.hpp"
#include "ellcft/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ellcft {

using IntMatrix = std::vector<std::vector<long>>;
using RatVector = std::vector<Rational>;

// Throws NotPositiveDefinite (exact leading-minor test) or a shape error.
void check_gram(const IntMatrix& gram);

// Points x = n + shift, n integral, with (x|x) <= bound, grouped by ((x|x), (x|mu)).
// Keys are scaled to integers: norm_scale*(x|x) and ip_scale*(x|mu).
struct NormIpCounts {
    Integer norm_scale = 1;
    Integer ip_scale = 1;
    std::map<std::pair<long, long>, long> counts;
};

NormIpCounts enumerate_norm_ip(const IntMatrix& gram, const RatVector& shift, const Rational& bound,
                               const RatVector& mu, Exec exec = Exec::parallel);

// integer parts n of all points, serial; for small bounds
std::vector<std::vector<long>> lattice_points(const IntMatrix& gram, const RatVector& shift, const Rational& bound);

Rational inner(const IntMatrix& gram, const RatVector& a, const RatVector& b);

}  // namespace ellcft

#endif
