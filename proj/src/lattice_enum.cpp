#include "ellcft/lattice_enum.hpp"

#include "ellcft/errors.hpp"

#include <cmath>

namespace ellcft {

void check_gram(const IntMatrix& gram) {
    const size_t r = gram.size();
    for (const auto& row : gram)
        if (row.size() != r) fail("ShapeError", "gram matrix is not square");
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j)
            if (gram[i][j] != gram[j][i]) fail("ShapeError", "gram matrix is not symmetric");
    // exact Gaussian elimination, all pivots must be positive
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(r));
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) a[i][j] = gram[i][j];
    for (size_t k = 0; k < r; ++k) {
        if (a[k][k] <= 0) fail("NotPositiveDefinite", "leading minor " + std::to_string(k + 1) + " is not positive");
        for (size_t i = k + 1; i < r; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (size_t j = k; j < r; ++j) a[i][j] -= f * a[k][j];
        }
    }
}

Rational inner(const IntMatrix& gram, const RatVector& a, const RatVector& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            if (gram[i][j] != 0) s += a[i] * Rational(gram[i][j]) * b[j];
    return s;
}

namespace {

struct Walker {
    size_t r;
    std::vector<std::vector<long double>> q;  // Fincke-Pohst coefficients
    std::vector<long double> shift;
    long double bound;

    Walker(const IntMatrix& gram, const RatVector& sh, long double b) : r(gram.size()), bound(b) {
        q.assign(r, std::vector<long double>(r, 0.0L));
        std::vector<std::vector<long double>> a(r, std::vector<long double>(r));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < r; ++j) a[i][j] = static_cast<long double>(gram[i][j]);
        for (size_t i = 0; i < r; ++i) {
            long double d = a[i][i];
            for (size_t k = 0; k < i; ++k) d -= q[k][k] * q[k][i] * q[k][i];
            q[i][i] = d;
            for (size_t j = i + 1; j < r; ++j) {
                long double v = a[i][j];
                for (size_t k = 0; k < i; ++k) v -= q[k][k] * q[k][i] * q[k][j];
                q[i][j] = v / d;
            }
        }
        shift.resize(r);
        for (size_t i = 0; i < r; ++i) shift[i] = static_cast<long double>(sh[i].get_d());
    }

    // integer range for coordinate i given the already-fixed higher coordinates
    std::pair<long, long> range(size_t i, const std::vector<long>& n, long double used) const {
        long double c = 0;
        for (size_t j = i + 1; j < r; ++j) c -= q[i][j] * (static_cast<long double>(n[j]) + shift[j]);
        long double room = bound - used;
        if (room < 0) return {1, 0};
        long double rad = std::sqrt(room / q[i][i]) + 1e-9L;
        long lo = static_cast<long>(std::ceil(c - rad - shift[i]));
        long hi = static_cast<long>(std::floor(c + rad - shift[i]));
        return {lo, hi};
    }

    long double contribution(size_t i, const std::vector<long>& n) const {
        long double t = static_cast<long double>(n[i]) + shift[i];
        for (size_t j = i + 1; j < r; ++j) t += q[i][j] * (static_cast<long double>(n[j]) + shift[j]);
        return q[i][i] * t * t;
    }

    template <class F>
    void walk(long i, std::vector<long>& n, long double used, F& f) const {
        if (i < 0) {
            f(n);
            return;
        }
        auto [lo, hi] = range(static_cast<size_t>(i), n, used);
        for (long v = lo; v <= hi; ++v) {
            n[i] = v;
            walk(i - 1, n, used + contribution(static_cast<size_t>(i), n), f);
        }
        n[i] = 0;
    }
};

Integer denominator_lcm(const RatVector& v) {
    Integer d = 1;
    for (const auto& x : v) d = lcm(d, x.get_den());
    return d;
}

}  // namespace

NormIpCounts enumerate_norm_ip(const IntMatrix& gram, const RatVector& shift, const Rational& bound,
                               const RatVector& mu, Exec exec) {
    check_gram(gram);
    const size_t r = gram.size();
    if (shift.size() != r) fail("ShapeError", "shift has wrong length");
    RatVector m = mu.empty() ? RatVector(r, Rational(0)) : mu;
    if (m.size() != r) fail("ShapeError", "mu has wrong length");

    NormIpCounts out;
    if (r == 0) {
        if (bound >= 0) out.counts[{0, 0}] = 1;
        return out;
    }
    const Integer D = denominator_lcm(shift), Dm = denominator_lcm(m);
    out.norm_scale = D * D;
    out.ip_scale = D * Dm;
    std::vector<long> s(r), mm(r);
    for (size_t i = 0; i < r; ++i) {
        s[i] = Rational(shift[i] * D).get_num().get_si();
        mm[i] = Rational(m[i] * Dm).get_num().get_si();
    }
    std::vector<long> gm(r, 0);  // G m'
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) gm[i] += gram[i][j] * mm[j];
    const long bscaled = floor_q(bound * out.norm_scale).get_si();
    const long dl = D.get_si();

    Walker w(gram, shift, static_cast<long double>(bound.get_d()) * (1 + 1e-12L) + 1e-12L);

    auto tally = [&](const std::vector<long>& n, std::map<std::pair<long, long>, long>& acc) {
        std::vector<long> y(r);
        for (size_t i = 0; i < r; ++i) y[i] = dl * n[i] + s[i];
        long norm = 0, ip = 0;
        for (size_t i = 0; i < r; ++i) {
            long row = 0;
            for (size_t j = 0; j < r; ++j) row += gram[i][j] * y[j];
            norm += y[i] * row;
            ip += y[i] * gm[i];
        }
        if (norm <= bscaled) ++acc[{norm, ip}];
    };

    // split on the top coordinate
    std::vector<long> n0(r, 0);
    auto [lo, hi] = w.range(r - 1, n0, 0.0L);
    std::vector<long> tops;
    for (long v = lo; v <= hi; ++v) tops.push_back(v);
    std::vector<std::map<std::pair<long, long>, long>> parts(tops.size());

    for_each_index(tops.size(), exec, [&](size_t t) {
        std::vector<long> n(r, 0);
        n[r - 1] = tops[t];
        auto visit = [&](const std::vector<long>& pt) { tally(pt, parts[t]); };
        w.walk(static_cast<long>(r) - 2, n, w.contribution(r - 1, n), visit);
    });
    for (auto& p : parts)
        for (auto& [k, v] : p) out.counts[k] += v;
    return out;
}

std::vector<std::vector<long>> lattice_points(const IntMatrix& gram, const RatVector& shift, const Rational& bound) {
    check_gram(gram);
    const size_t r = gram.size();
    std::vector<std::vector<long>> out;
    if (r == 0) return out;
    Walker w(gram, shift, static_cast<long double>(bound.get_d()) * (1 + 1e-12L) + 1e-12L);
    std::vector<long> n(r, 0);
    auto visit = [&](const std::vector<long>& pt) {
        RatVector x(r);
        for (size_t i = 0; i < r; ++i) x[i] = Rational(pt[i]) + shift[i];
        if (inner(gram, x, x) <= bound) out.push_back(pt);
    };
    w.walk(static_cast<long>(r) - 1, n, 0.0L, visit);
    return out;
}

}  // namespace ellcft
