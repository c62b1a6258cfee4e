#ifndef MURM_ANALYTIC_HPP
#define MURM_ANALYTIC_HPP

// Poisson/Bessel resummation of the density, the Euler-product identities,
// the weight-function integration producing the murmuration function, and
// the large-Xi asymptote fit.

#include <cmath>
#include <functional>
#include <vector>

#include "murm/density.hpp"

namespace murm {

// Q(d) = mu^2(d) prod_{q | d odd} q^2/(q^4 - 2q^2 - q + 1)
Rational Q_d(u64 d, const PrimeTable& base);

// J0 to 1e-10: power series below 14, Hankel asymptotics beyond.
double bessel_j0(double x);

enum class BesselAccel : uint8_t { none, cesaro, tail_integral };

struct BesselSeriesParams {
    u32 d_max = 1000;
    u32 m_max = 1000;
    BesselAccel acceleration = BesselAccel::tail_integral;

    void validate() const {
        if (d_max < 10 || m_max < 10)
            throw std::invalid_argument("bessel params: d_max, m_max >= 10");
    }
};

struct BesselDensity {
    double value = 0;
    double trunc_estimate = 0;
};

// M(Xi) = (11 pi zeta(2) cbar / 4A) sqrt(Xi) sum_d Q(d)/d sum_m J0(4 pi m sqrt(Xi)/d) - 1/2.
// The m-series is conditionally convergent; acceleration handles the tail.
BesselDensity density_bessel(double Xi, const BesselSeriesParams& params,
                             const DensityParams& dp, const DensityConstants& C,
                             const PrimeTable& base);

struct EulerIdentityResiduals {
    double sumQ_residual = 0;     // | zeta(2) cbar / A * sum Q(d) - 8/11 |
    double sumQ_d_residual = 0;   // | zeta(2) cbar * sum Q(d)/d - 2/3 |
};
// All Euler products and the d-sums share the cutoff M.
EulerIdentityResiduals euler_identities(u32 M, const PrimeTable& base);

// | sum_{d<=M} Q(d) d^-s  -  closed form | for s > 1/2. The closed form is
// zeta(s+2)/zeta(2s+4) * (1+2^-s)/(1+(4/7)2^-s) * prod_p (1 + (2p^2+p-1)/((p^4-2p^2-p+1)(p^{s+2}+1)))
// with the product over all primes (the p = 2 factor is required; see tests).
double L_series_check(double s, u32 M, const PrimeTable& base);

struct WeightFunction {
    enum class Kind : uint8_t { indicator_1_2, smooth_bump } kind = Kind::indicator_1_2;
    double a = 1.0, b = 2.0;  // support

    double eval(double u) const {
        if (kind == Kind::indicator_1_2) return (u >= a && u <= b) ? 1.0 : 0.0;
        double t = (2 * u - (a + b)) / (b - a);
        if (std::abs(t) >= 1) return 0.0;
        return std::exp(-1.0 / (1 - t * t));
    }
};

struct MurmurValue {
    double value = 0;
    double quad_error = 0;
};

// M_Phi(Xi): weight integration of the averaged density with the 3/2
// conductor-density exponent. The u-integrand has 1/sqrt singularities at
// u = 4 Xi / y^2; panels split there and use sqrt-adapted nodes.
// density_override (test hook) replaces the density evaluator.
MurmurValue murmuration_fn(double Xi, const WeightFunction& weight,
                           const DensityParams& params, const DensityConstants& C,
                           const PrimeTable& base,
                           const std::function<double(double)>* density_override = nullptr);

struct AsymptotePoint {
    double Xi = 0;
    double abs_dev = 0;  // |M_Phi + 1/2|
    double quad_error = 0;
    bool dropped = false;
};
struct AsymptoteReport {
    double slope = 0;
    double intercept = 0;
    u64 n_used = 0, n_dropped = 0;
    std::vector<AsymptotePoint> points;
};

// Least-squares slope of log|M_Phi(Xi) + 1/2| against log Xi. Grid must
// span >= 2 decades with every point >= 100. Points with
// |M_Phi + 1/2| < 10 * quad_error are dropped.
AsymptoteReport asymptote_report(const WeightFunction& weight,
                                 const std::vector<double>& grid,
                                 const DensityParams& params,
                                 const DensityConstants& C, const PrimeTable& base,
                                 const std::function<double(double)>* density_override = nullptr);

}  // namespace murm

#endif
