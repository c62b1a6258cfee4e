#ifndef MURM_DENSITY_HPP
#define MURM_DENSITY_HPP

// Closed-form murmuration density: the arithmetic weights delta_y, theta,
// kappa, eta; the Euler constants A and cbar; the per-prime and averaged
// density assemblies; prime-window averages of c(p).

#include <functional>
#include <vector>

#include "murm/arith.hpp"

namespace murm {

struct exclusion_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DensityParams {
    u32 euler_cutoff = 100000;       // M for c(p), A, cbar truncations
    double exclusion_radius = 0.05;  // min distance of xi from squares of half-integers

    void validate() const {
        if (euler_cutoff < 100) throw std::invalid_argument("params: euler_cutoff >= 100");
        if (!(exclusion_radius > 0)) throw std::invalid_argument("params: exclusion_radius > 0");
    }
};

// Throws exclusion_error naming the offending y^2/4 if xi is within radius
// of a square of a half-integer.
void check_exclusion(double xi, double radius);
bool in_exclusion_zone(double xi, double radius);

// Indicator table (1.10): product over prime-power components of y.
// Throws if p | y.
int delta_y(u64 y, u64 p, const PrimeTable& base);

// theta(y) = 2^{omega(y)+min(v2(y),2)} prod_{q|y odd} (1 + (2q^2+q-1)/(q^4-3q^2-2q+2))
Rational vartheta(u64 y, const PrimeTable& base);

// kappa(y) = 2^{1{2|y}} prod_{q|y odd} (1 + q^2/(q^4-2q^2-q+1))
Rational kappa(u64 y, const PrimeTable& base);

// eta(y) = 2^{-omega(y)+star} prod_{q|y odd} of the split/average factor
// ratio; star = 0 unless 4 | y where it is -1.  theta * eta = kappa.
Rational eta_y(u64 y, const PrimeTable& base);

// A = prod_p (1 + p/((p+1)^2 (p-1))), truncated at M; log-tail <= 2/M.
double constant_A(u32 M, const PrimeTable& base);

// cbar = (1/3) prod_{l>2} (1 - l^-2 - l^-3/(1-l^-2)), truncated at M.
double constant_cbar(u32 M, const PrimeTable& base);

// Shared constants bundle so every density evaluation prices A, cbar once.
struct DensityConstants {
    u32 cutoff = 0;
    double A = 0, cbar = 0, zeta2 = 0;
    static DensityConstants compute(u32 M, const PrimeTable& base);
};

enum class DensityForm : uint8_t { per_prime, averaged };

struct DensityValue {
    double Xi = 0;
    double M_total = 0;
    double M_minus_term = 0;
    std::vector<double> per_y;  // per_y[i] is the y = i+1 term; support y < 2 sqrt(Xi)
    DensityForm form = DensityForm::averaged;
    u64 p = 0;  // set for per_prime
};

// c(p) sum_{1<=y<2 sqrt(xi)} delta_y(p) M_y(xi) + M_-(xi), xi = p/X.
DensityValue density_per_prime(u64 p, double X, const DensityParams& params,
                               const DensityConstants& C, const PrimeTable& base);

// cbar sum kappa(y)-weighted + M_-(Xi).
DensityValue density_averaged(double Xi, const DensityParams& params,
                              const DensityConstants& C, const PrimeTable& base);

// Mean of c(p) over primes in [X, X+H]; throws if the window has no primes.
double cbar_window_average(u64 X, u64 H, u32 M, const PrimeTable& base,
                           unsigned workers = 1);

// Same, restricted by delta_y: mean of c(p) delta_y(p) over the window.
double cbar_window_average_delta(u64 X, u64 H, u64 y, u32 M, const PrimeTable& base,
                                 unsigned workers = 1);

// Fast float evaluator of the averaged density for quadrature: kappa as
// doubles precomputed up to y_max.
struct DensityEvaluator {
    DensityConstants C;
    std::vector<double> kappa_f;  // kappa_f[y], y <= y_max

    DensityEvaluator(u32 y_max, const DensityConstants& c, const PrimeTable& base);
    double operator()(double v) const;  // M(v); v > 0, caller avoids exclusion zones
};

}  // namespace murm

#endif
