#include "murm/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "murm/parallel.hpp"
#include "murm/quadrature.hpp"

namespace murm {

namespace {

// quadratic-residue table mod p (qr[r] = 1 iff r is a nonzero square)
std::vector<uint8_t> qr_table(u64 p) {
    std::vector<uint8_t> qr(p, 0);
    for (u64 x = 1; x <= p / 2; ++x) qr[(x * x) % p] = 1;
    return qr;
}

}  // namespace

EmpiricalPoint empirical_point(const DiscriminantWindow& w, u64 p,
                               const std::vector<DiscriminantRecord>& family) {
    w.validate();
    if (p == 2) throw std::invalid_argument("empirical_point: p = 2 excluded");
    if ((p & 1) == 0 || p < 3) throw std::invalid_argument("empirical_point: p odd prime");

    EmpiricalPoint pt;
    pt.p = p;
    pt.xi = double(p) / double(w.X);
    pt.family_size = family.size();

    double denom = 0;
    for (auto& r : family) denom += double(r.h) - 1.0;
    pt.G_denom = denom;
    if (family.empty() || denom <= 0)
        throw std::invalid_argument("empirical_point: empty family (G_denom = 0)");

    const double sp = std::sqrt(double(p));
    u64 y_cap = static_cast<u64>(std::floor(2.0 * std::sqrt(pt.xi))) + 1;
    pt.by_y.assign(y_cap, 0.0);

    std::vector<uint8_t> qr = qr_table(p);
    std::vector<double> h_by_y(y_cap, 0.0);  // sum of h over split D with solution y
    for (auto& rec : family) {
        u64 r = p - (rec.D % p);
        if (r == p) r = 0;  // p | D: ramified or deeper, not split
        if (r == 0 || !qr[r]) continue;
        ++pt.split_size;
        // nu(D, p) via the norm equation; Prop-2.1 guard: at most one solution
        int found = 0;
        for (u64 y = 1; u64(rec.D) * y * y < 4 * p; ++y) {
            u64 t = 4 * p - u64(rec.D) * y * y;
            u64 x;
            if (is_square(t, &x) && x > 0) {
                if (++found > 1)
                    throw invariant_error("empirical_point: two norm solutions at D=" +
                                          std::to_string(rec.D) + " p=" + std::to_string(p));
                if (y > y_cap)
                    throw invariant_error("empirical_point: solution beyond y support");
                h_by_y[y - 1] += double(rec.h);
            }
        }
    }
    for (u64 i = 0; i < y_cap; ++i) pt.by_y[i] = 2.0 * sp * h_by_y[i];
    pt.G_num_minus = -2.0 * sp * double(pt.split_size);

    // ramified place D = p: the prime ideal above p is principal, so the
    // term is computed exactly instead of being dropped.
    if (p >= w.X && p <= w.X + w.Y && p % 4 == 3 && p > 3) {
        auto it = std::lower_bound(family.begin(), family.end(), p,
                                   [](const DiscriminantRecord& a, u64 v) { return a.D < v; });
        if (it == family.end() || it->D != p)
            throw invariant_error("empirical_point: prime in window missing from family");
        pt.ramified = sp * (double(it->h) - 1.0);
    }

    pt.G = pt.numerator_sum() / pt.G_denom;
    return pt;
}

std::vector<EmpiricalPoint> empirical_sweep(const DiscriminantWindow& w,
                                            const std::vector<DiscriminantRecord>& family,
                                            u64 p_lo, u64 p_hi, const PrimeTable& base,
                                            unsigned workers) {
    std::vector<u64> ps = primes_in_range(std::max<u64>(p_lo, 3), p_hi, base);
    std::vector<EmpiricalPoint> out(ps.size());
    parallel_for(ps.size(), workers, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) out[i] = empirical_point(w, ps[i], family);
    });
    return out;
}

PrimeWindowAverage rolling_average(const std::vector<EmpiricalPoint>& points,
                                   double P, double H, double X) {
    PrimeWindowAverage a;
    a.P = P;
    a.H = H;
    a.Xi = P / X;
    std::vector<double> g;
    for (auto& pt : points)
        if (double(pt.p) >= P && double(pt.p) <= P + H) g.push_back(pt.G);
    if (g.empty())
        throw std::invalid_argument("rolling_average: no primes in [P, P+H]");
    a.primes_used = g.size();
    a.G_avg = pairwise_sum(g) / double(g.size());
    return a;
}

double li_diff(double a, double b) {
    if (!(a >= 2 && b >= a)) throw std::invalid_argument("li_diff: need 2 <= a <= b");
    static const GaussLegendre g = gauss_legendre(64);
    return panel_integral([](double t) { return 1.0 / std::log(t); }, a, b, false,
                          false, g);
}

EquidistributionReport equidistribution_check(u64 X, u64 H, u64 q,
                                              const PrimeTable& base) {
    if (q < 2) throw std::invalid_argument("equidistribution_check: q >= 2");
    if (H < 10 * q) throw std::invalid_argument("equidistribution_check: H >= 10q");
    EquidistributionReport rep;
    rep.X = X;
    rep.H = H;
    rep.q = q;
    for (u64 a = 1; a < q; ++a)
        if (std::gcd(a, q) == 1) rep.residues.push_back(a);
    rep.counts.assign(rep.residues.size(), 0);
    std::vector<u64> idx(q, rep.residues.size());
    for (size_t i = 0; i < rep.residues.size(); ++i) idx[rep.residues[i]] = i;
    for (u64 p : primes_in_range(X, X + H, base)) {
        u64 r = p % q;
        if (idx[r] < rep.residues.size()) {
            rep.counts[idx[r]]++;
            rep.total++;
        }
    }
    rep.expected = li_diff(double(X), double(X + H)) / double(rep.residues.size());
    for (u64 c : rep.counts)
        rep.max_rel_deviation = std::max(
            rep.max_rel_deviation, std::abs(double(c) - rep.expected) / rep.expected);
    return rep;
}

}  // namespace murm
