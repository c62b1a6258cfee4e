#ifndef MURM_EMPIRICAL_HPP
#define MURM_EMPIRICAL_HPP

// Exact empirical trace average G(p, X, Y) over the discriminant family,
// decomposed per solution-y, plus rolling prime-window averages and the
// prime-equidistribution report.

#include <vector>

#include "murm/quadfield.hpp"

namespace murm {

struct EmpiricalPoint {
    u64 p = 0;
    double xi = 0;            // p/X
    double G = 0;
    double G_denom = 0;       // sum over family of (h - 1)
    double G_num_minus = 0;   // -2 sqrt(p) |D_p|
    double ramified = 0;      // sqrt(p)(h(-p) - 1) when D = p lies in the family
    std::vector<double> by_y; // by_y[i]: 2 sqrt(p) * sum of h over solutions with y = i+1
    u64 family_size = 0;
    u64 split_size = 0;       // |D_p|

    double numerator_sum() const {
        std::vector<double> parts = by_y;
        parts.push_back(G_num_minus);
        parts.push_back(ramified);
        return pairwise_sum(parts);
    }
};

struct PrimeWindowAverage {
    double P = 0;
    double H = 0;
    double Xi = 0;  // P/X
    u64 primes_used = 0;
    double G_avg = 0;
};

struct EquidistributionReport {
    u64 X = 0, H = 0, q = 0;
    std::vector<u64> residues;       // residues coprime to q
    std::vector<u64> counts;         // primes per class
    u64 total = 0;
    double expected = 0;             // (li(X+H) - li(X)) / phi(q)
    double max_rel_deviation = 0;
};

// One exact point. Family records must cover [X, X+Y]. Rejects p = 2 and
// families with G_denom = 0.
EmpiricalPoint empirical_point(const DiscriminantWindow& w, u64 p,
                               const std::vector<DiscriminantRecord>& family);

// One point per odd prime in [p_lo, p_hi], ascending; parallel over primes
// with deterministic output.
std::vector<EmpiricalPoint> empirical_sweep(const DiscriminantWindow& w,
                                            const std::vector<DiscriminantRecord>& family,
                                            u64 p_lo, u64 p_hi, const PrimeTable& base,
                                            unsigned workers = 1);

// Arithmetic mean of G over points with p in [P, P+H]; X is the window
// anchor used for Xi = P/X. Throws if the window holds no point.
PrimeWindowAverage rolling_average(const std::vector<EmpiricalPoint>& points,
                                   double P, double H, double X);

// li(b) - li(a) by Gauss-Legendre on [a, b] (a >= 2).
double li_diff(double a, double b);

EquidistributionReport equidistribution_check(u64 X, u64 H, u64 q,
                                              const PrimeTable& base);

}  // namespace murm

#endif
