#ifndef MURM_LOCALFACTORS_HPP
#define MURM_LOCALFACTORS_HPP

// Exact local character-sum machinery: the complete sums C_{8n,p} and their
// general C^{(y)} form, root counts R_{a,p}, the per-place sigma tables,
// c(p), and the per-place identity behind c_y(p).

#include <vector>

#include "murm/arith.hpp"

namespace murm {

struct LocalSumSpec {
    u64 y = 1, n = 1, a = 1;
    u64 p = 3;  // odd prime, p not dividing y

    void validate() const {
        if (y < 1 || n < 1 || a < 1) throw std::invalid_argument("spec: positive y,n,a");
        if (p < 3 || (p & 1) == 0) throw std::invalid_argument("spec: p odd prime");
        if (y % p == 0) throw std::invalid_argument("spec: p | y not allowed");
    }
};

// sum over odd x in [0, 8n) of ((x^2-4p)/n), Jacobi symbol bottom n.
i64 C_8n_p_bruteforce(u64 n, u64 p);

// The same value from the per-place product (2-part, p-part, even/odd
// exponent odd primes).
i64 C_8n_p_product(u64 n, u64 p, const PrimeTable& base);

// #{x mod a^2 : x^2 = 4p (mod a^2)} for odd a: 2^omega(a) when every prime
// of a has (p/q) = 1 (and p does not divide a), else 0.
i64 R_a_p(u64 a, u64 p, const PrimeTable& base);

// direct count, test oracle for R_a_p
i64 R_a_p_bruteforce(u64 a, u64 p);

// General y-version: sum over 0 <= x < 8 y^2 n a^2 with
// y^2 | (4p-x^2), (4p-x^2)/y^2 = 3 (mod 4), a^2 | (4p-x^2)/y^2,
// of ((x^2-4p)/y^2 / n).
i64 C_y_bruteforce(const LocalSumSpec& s, u64 loop_budget = 100000000);

enum class SigmaKind : uint8_t { sigma2, sigmap, sigmaI, sigmaII };

// One entry of the per-place case table. nu = v_place(y), mu = v_place(a_y),
// e = v_place(n). sigmap and sigmaII require nu = mu = 0.
i64 sigma_local(SigmaKind kind, u64 place, u32 nu, u32 mu, u32 e, u64 p);

struct LocalFactorTable {
    u64 place = 0;
    u32 nu = 0, mu = 0, e = 0;
    SigmaKind kind = SigmaKind::sigmaII;
    Rational value;
};

// C^{(y)} by the sigma product (no loop budget).
i64 C_y_product(const LocalSumSpec& s, const PrimeTable& base);

// c(p) = (p+1)/(3p) prod over odd l <= M with (p/l) = 1 of
// (1 - 2 l^-2 - 2 l^-3/(1-l^-2)); log-tail below 2/M.
double c_p(u64 p, u32 M, const PrimeTable& base);

// truncated double sum  sum_{n<=N0} sum_{a<=A0} mu(a)/(8 n^2 a^2) C_{8na^2,p,a}
// (product-formula C values); converges to c(p) as N0, A0 grow.
double cp_double_sum(u64 p, u32 N0, u32 A0, const PrimeTable& base);

// Per-place rational identity behind c_y(p) = theta(y)/y^2 delta_y(p) c(p):
// at each odd q^nu || y the complete local-factor ratio must equal
// theta(q^nu)/q^{2 nu}; at 2 the three nu-cases against the base factor 1/3.
struct PlaceCheck {
    u64 q = 0;
    u32 nu = 0;
    Rational lhs, rhs;
    bool equal = false;
};
struct CyIdentityReport {
    u64 y = 0, p = 0;
    std::vector<PlaceCheck> places;
    bool all_equal = true;
};
CyIdentityReport c_y_identity_check(u64 y, u64 p, const PrimeTable& base);

// Complete local factor of the n-sum in the c(p) rearrangement at an odd
// prime q (geometric series in closed form); exposed for the convergence
// tests.  split = ((p/q) == 1).
Rational cp_local_factor_odd(u64 q, bool split);

}  // namespace murm

#endif
