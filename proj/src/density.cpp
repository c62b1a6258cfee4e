#include "murm/density.hpp"

#include <cmath>
#include <numbers>

#include "murm/localfactors.hpp"
#include "murm/parallel.hpp"

namespace murm {

bool in_exclusion_zone(double xi, double radius) {
    // nearest squares of half-integers: y^2/4 for y near 2 sqrt(xi), plus y=1
    if (xi <= 0) return true;
    long y0 = std::lround(2.0 * std::sqrt(xi));
    for (long y = std::max<long>(1, y0 - 1); y <= y0 + 1; ++y)
        if (std::abs(xi - double(y) * double(y) / 4.0) < radius) return true;
    return false;
}

void check_exclusion(double xi, double radius) {
    if (xi <= 0) throw exclusion_error("xi must be positive");
    long y0 = std::lround(2.0 * std::sqrt(xi));
    for (long y = std::max<long>(1, y0 - 1); y <= y0 + 1; ++y) {
        double sq = double(y) * double(y) / 4.0;
        if (std::abs(xi - sq) < radius)
            throw exclusion_error("xi = " + std::to_string(xi) +
                                  " within exclusion radius of " + std::to_string(sq));
    }
}

int delta_y(u64 y, u64 p, const PrimeTable& base) {
    if (y % p == 0) throw std::invalid_argument("delta_y: p | y");
    for (auto& [q, e] : factorize(y, base).factors) {
        if (q == 2) {
            if (e == 1 && p % 4 != 3) return 0;
            if (e == 2 && p % 8 != 5) return 0;
            if (e >= 3 && p % 8 != 1) return 0;
        } else {
            if (kronecker(static_cast<i64>(p % q), static_cast<i64>(q)) != 1) return 0;
        }
    }
    return 1;
}

Rational vartheta(u64 y, const PrimeTable& base) {
    Factorization f = factorize(y, base);
    u32 e2 = std::min<u32>(f.v2(), 2);
    Rational r = rat(static_cast<long>(1) << (f.omega() + e2));
    for (auto& [q, e] : f.factors) {
        if (q == 2) continue;
        long ql = static_cast<long>(q);
        r *= rat(1) + rat(2 * ql * ql + ql - 1) /
                          rat(ql * ql * ql * ql - 3 * ql * ql - 2 * ql + 2);
    }
    return r;
}

Rational kappa(u64 y, const PrimeTable& base) {
    Factorization f = factorize(y, base);
    Rational r = rat(y % 2 == 0 ? 2 : 1);
    for (auto& [q, e] : f.factors) {
        if (q == 2) continue;
        long ql = static_cast<long>(q);
        r *= rat(1) + rat(ql * ql) / rat(ql * ql * ql * ql - 2 * ql * ql - ql + 1);
    }
    return r;
}

Rational eta_y(u64 y, const PrimeTable& base) {
    Factorization f = factorize(y, base);
    int star = (y % 4 == 0) ? -1 : 0;
    int e2 = static_cast<int>(f.omega()) * -1 + star;
    Rational r = e2 >= 0 ? rat(static_cast<long>(1) << e2)
                         : rat(1, static_cast<long>(1) << (-e2));
    for (auto& [q, e] : f.factors) {
        if (q == 2) continue;
        long ql = static_cast<long>(q);
        Rational li2 = rat(1, ql * ql);
        Rational li3 = rat(1, ql * ql * ql);
        Rational num = rat(1) - rat(2) * li2 - rat(2) * li3 / (rat(1) - li2);
        Rational den = rat(1) - li2 - li3 / (rat(1) - li2);
        r *= num / den;
    }
    return r;
}

double constant_A(u32 M, const PrimeTable& base) {
    if (M < 2) throw std::invalid_argument("constant_A: M >= 2");
    if (base.limit < M) throw std::invalid_argument("constant_A: prime table < M");
    double a = 1.0;
    for (u32 p : base.primes) {
        if (p > M) break;
        double pd = p;
        a *= 1.0 + pd / ((pd + 1) * (pd + 1) * (pd - 1));
    }
    return a;
}

double constant_cbar(u32 M, const PrimeTable& base) {
    if (M < 3) throw std::invalid_argument("constant_cbar: M >= 3");
    if (base.limit < M) throw std::invalid_argument("constant_cbar: prime table < M");
    double c = 1.0 / 3.0;
    for (u32 l : base.primes) {
        if (l > M) break;
        if (l == 2) continue;
        double li = 1.0 / double(l);
        c *= 1.0 - li * li - li * li * li / (1.0 - li * li);
    }
    return c;
}

DensityConstants DensityConstants::compute(u32 M, const PrimeTable& base) {
    DensityConstants c;
    c.cutoff = M;
    c.A = constant_A(M, base);
    c.cbar = constant_cbar(M, base);
    c.zeta2 = std::numbers::pi * std::numbers::pi / 6.0;
    return c;
}

namespace {

// assemble per_y-weighted density; weight(y) supplies the full y-term weight
template <typename WeightFn>
DensityValue assemble(double Xi, const DensityParams& params,
                      const DensityConstants& C, WeightFn&& weight) {
    params.validate();
    check_exclusion(Xi, params.exclusion_radius);
    DensityValue v;
    v.Xi = Xi;
    v.M_minus_term = -11.0 * std::numbers::pi / (12.0 * C.A) * std::sqrt(Xi);
    double front = 11.0 * C.zeta2 / (4.0 * C.A);
    for (u64 y = 1; double(y) * double(y) < 4.0 * Xi; ++y)
        v.per_y.push_back(weight(y) * front * std::sqrt(Xi / (4.0 * Xi - double(y) * y)));
    std::vector<double> parts = v.per_y;
    parts.push_back(v.M_minus_term);
    v.M_total = pairwise_sum(parts);
    return v;
}

}  // namespace

DensityValue density_per_prime(u64 p, double X, const DensityParams& params,
                               const DensityConstants& C, const PrimeTable& base) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("density_per_prime: p odd prime");
    double xi = double(p) / X;
    double cp = c_p(p, params.euler_cutoff, base);
    DensityValue v = assemble(xi, params, C, [&](u64 y) {
        return cp * delta_y(y, p, base) *
               vartheta(y, base).get_d();
    });
    v.form = DensityForm::per_prime;
    v.p = p;
    return v;
}

DensityValue density_averaged(double Xi, const DensityParams& params,
                              const DensityConstants& C, const PrimeTable& base) {
    DensityValue v = assemble(Xi, params, C, [&](u64 y) {
        return C.cbar * kappa(y, base).get_d();
    });
    v.form = DensityForm::averaged;
    return v;
}

double cbar_window_average(u64 X, u64 H, u32 M, const PrimeTable& base,
                           unsigned workers) {
    std::vector<u64> ps = primes_in_range(X, X + H, base);
    if (ps.empty()) throw std::invalid_argument("cbar_window_average: no primes in window");
    std::vector<double> vals(ps.size());
    parallel_for(ps.size(), workers, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) vals[i] = c_p(ps[i], M, base);
    });
    return pairwise_sum(vals) / double(ps.size());
}

double cbar_window_average_delta(u64 X, u64 H, u64 y, u32 M, const PrimeTable& base,
                                 unsigned workers) {
    std::vector<u64> ps = primes_in_range(X, X + H, base);
    if (ps.empty()) throw std::invalid_argument("cbar_window_average: no primes in window");
    std::vector<double> vals(ps.size(), 0.0);
    parallel_for(ps.size(), workers, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i)
            if (ps[i] % y != 0 && delta_y(y, ps[i], base))
                vals[i] = c_p(ps[i], M, base);
    });
    return pairwise_sum(vals) / double(ps.size());
}

DensityEvaluator::DensityEvaluator(u32 y_max, const DensityConstants& c,
                                   const PrimeTable& base)
    : C(c), kappa_f(y_max + 1, 1.0) {
    for (u32 y = 1; y <= y_max; ++y)
        kappa_f[y] = kappa(y, base).get_d();
}

double DensityEvaluator::operator()(double v) const {
    double out = -11.0 * std::numbers::pi / (12.0 * C.A) * std::sqrt(v);
    double front = C.cbar * 11.0 * C.zeta2 / (4.0 * C.A);
    u64 cap = static_cast<u64>(kappa_f.size()) - 1;
    for (u64 y = 1; double(y) * y < 4.0 * v; ++y) {
        if (y > cap) throw std::logic_error("DensityEvaluator: y_max too small");
        out += front * kappa_f[y] * std::sqrt(v / (4.0 * v - double(y) * y));
    }
    return out;
}

}  // namespace murm
