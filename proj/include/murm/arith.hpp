#ifndef MURM_ARITH_HPP
#define MURM_ARITH_HPP

// Integer and character primitives shared by every other module: sieves,
// Kronecker symbol, multiplicative helpers, exact rationals.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace murm {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u32 = std::uint32_t;

// Exact rational arithmetic, backed by GMP. mpq arithmetic keeps results
// canonical (gcd(num,den)=1, den>0) as long as operands are canonical, so
// construction goes through rat() below.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invariant_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// floor(sqrt(n)), exact
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(u64 n, u64* root = nullptr) {
    u64 r = isqrt_u64(n);
    if (root) *root = r;
    return r * r == n;
}

// Kronecker symbol (a/n), full extension: n any integer (negative, even,
// zero). Binary algorithm, no factorization.
int kronecker(i64 a, i64 n);

// --- sieves ---------------------------------------------------------------

struct PrimeTable {
    u64 limit = 0;
    std::vector<u32> primes;              // ascending primes <= limit
    std::vector<u32> smallest_prime_factor;  // indexed [0, limit]; spf[n] | n

    bool is_prime(u64 n) const {
        return n >= 2 && n <= limit && smallest_prime_factor[n] == n;
    }
};

// Eratosthenes + smallest-prime-factor array. Memory budget guards the
// spf allocation (4 bytes per entry).
PrimeTable sieve_primes(u64 limit, u64 mem_budget_bytes = u64(1) << 33);

// Primes in [lo, hi] by segmented sieve; needs base primes up to sqrt(hi).
std::vector<u64> primes_in_range(u64 lo, u64 hi, const PrimeTable& base);

struct MobiusTable {
    u64 lo = 1, hi = 0;
    std::vector<int8_t> mu;          // mu[i] for n = lo + i
    std::vector<uint8_t> squarefree;

    int8_t mu_at(u64 n) const { return mu[n - lo]; }
    bool squarefree_at(u64 n) const { return squarefree[n - lo] != 0; }
};

// Segmented Mobius/squarefree sieve over [lo, hi]; never allocates a
// full-range array, only the window plus base primes.
MobiusTable sieve_mobius(u64 lo, u64 hi, const PrimeTable& base);

struct Factorization {
    u64 n = 1;
    std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), ascending

    u32 omega() const { return static_cast<u32>(factors.size()); }
    u32 v2() const {
        return (!factors.empty() && factors[0].first == 2) ? factors[0].second : 0;
    }
    u32 v(u64 p) const {
        for (auto& [q, e] : factors)
            if (q == p) return e;
        return 0;
    }
    u64 rad() const {
        u64 r = 1;
        for (auto& [q, e] : factors) r *= q;
        return r;
    }
    // squarefree part k(n): product of primes with odd exponent
    u64 squarefree_kernel() const {
        u64 k = 1;
        for (auto& [q, e] : factors)
            if (e & 1) k *= q;
        return k;
    }
    bool squarefree() const {
        for (auto& [q, e] : factors)
            if (e > 1) return false;
        return true;
    }
};

// Uses spf when n <= base.limit, trial division by base.primes otherwise
// (valid for n <= base.limit^2).
Factorization factorize(u64 n, const PrimeTable& base);

// --- character / residue sums ----------------------------------------------

// sum_{x mod p} ((x^2 - a)/p) for odd prime p, p not dividing a.
// Always -1 (used as an oracle elsewhere).
i64 legendre_residue_sum(i64 p, i64 a);

// eta(m) = prod_{p | m} p/(p+1)
Rational eta(u64 m, const PrimeTable& base);

// sum_{m <= T} eta(2m)/m^2, pairwise-summed double (relative error well
// under 2^-40 of the exact rational value).
double eta_partial_sum(u32 T, const PrimeTable& base);

// sum_{n <= N} mu^2(n) chi(n mod m) for a real character given as a value
// table chi[0..m-1] in {-1,0,+1}. Rejects tables that fail a
// multiplicativity spot-check.
i64 squarefree_char_sum(u32 N, u32 m, std::span<const int8_t> chi,
                        const PrimeTable& base);

// Riemann zeta for real s > 1 by Euler-Maclaurin (N = 10^4 base sum, four
// Bernoulli corrections); absolute error <= 1e-12 on s >= 1.1, and still
// ~1e-12 down to s > 1 where the N^{1-s}/(s-1) term is exact.
double zeta_real(double s);

// deterministic pairwise (tree) summation
double pairwise_sum(std::span<const double> xs);

}  // namespace murm

#endif
