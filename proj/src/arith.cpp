#include "murm/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace murm {

int kronecker(i64 a, i64 n) {
    // (a/0) = 1 iff a = +-1
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -r;  // (a/-1) = -1 for a < 0
    }
    // factor 2s out of n: (a/2) = 0 if a even, +1 if a = +-1 mod 8, -1 else
    while ((n & 1) == 0) {
        n >>= 1;
        if ((a & 1) == 0) return 0;
        i64 am = a & 7;
        if (am == 3 || am == 5) r = -r;
    }
    if (n == 1) return r;
    // Jacobi on odd n > 1
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            i64 nm = n & 7;
            if (nm == 3 || nm == 5) r = -r;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

PrimeTable sieve_primes(u64 limit, u64 mem_budget_bytes) {
    if (limit < 2) throw std::invalid_argument("sieve_primes: limit < 2");
    if ((limit + 1) * sizeof(u32) > mem_budget_bytes)
        throw budget_error("sieve_primes: limit " + std::to_string(limit) +
                           " exceeds memory budget");
    PrimeTable t;
    t.limit = limit;
    t.smallest_prime_factor.assign(limit + 1, 0);
    auto& spf = t.smallest_prime_factor;
    for (u64 i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            t.primes.push_back(static_cast<u32>(i));
            for (u64 j = i; j <= limit; j += i)
                if (spf[j] == 0) spf[j] = static_cast<u32>(i);
        }
    }
    return t;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi, const PrimeTable& base) {
    if (lo > hi) return {};
    if (hi <= base.limit) {
        std::vector<u64> out;
        auto it = std::lower_bound(base.primes.begin(), base.primes.end(), lo);
        for (; it != base.primes.end() && *it <= hi; ++it) out.push_back(*it);
        return out;
    }
    if (base.limit * base.limit < hi)
        throw std::invalid_argument("primes_in_range: base table too small");
    lo = std::max<u64>(lo, 2);
    std::vector<uint8_t> is(hi - lo + 1, 1);
    u64 r = isqrt_u64(hi);
    for (u32 p : base.primes) {
        if (p > r) break;
        u64 start = std::max<u64>(u64(p) * p, ((lo + p - 1) / p) * u64(p));
        for (u64 j = start; j <= hi; j += p) is[j - lo] = 0;
    }
    std::vector<u64> out;
    for (u64 n = lo; n <= hi; ++n)
        if (is[n - lo]) out.push_back(n);
    return out;
}

MobiusTable sieve_mobius(u64 lo, u64 hi, const PrimeTable& base) {
    if (lo < 1 || lo > hi) throw std::invalid_argument("sieve_mobius: bad range");
    if (base.limit * base.limit < hi)
        throw std::invalid_argument("sieve_mobius: base table too small");
    u64 n = hi - lo + 1;
    MobiusTable t;
    t.lo = lo;
    t.hi = hi;
    t.mu.assign(n, 1);
    t.squarefree.assign(n, 1);
    std::vector<u64> rem(n);
    for (u64 i = 0; i < n; ++i) rem[i] = lo + i;
    u64 r = isqrt_u64(hi);
    for (u32 p : base.primes) {
        if (p > r) break;
        u64 p2 = u64(p) * p;
        for (u64 j = ((lo + p2 - 1) / p2) * p2; j <= hi; j += p2)
            t.squarefree[j - lo] = 0;
        for (u64 j = ((lo + p - 1) / p) * u64(p); j <= hi; j += p) {
            u64 i = j - lo;
            t.mu[i] = -t.mu[i];
            while (rem[i] % p == 0) rem[i] /= p;
        }
    }
    for (u64 i = 0; i < n; ++i) {
        if (rem[i] > 1) t.mu[i] = -t.mu[i];  // one prime factor > sqrt(hi)
        if (!t.squarefree[i]) t.mu[i] = 0;
    }
    if (lo == 1) {
        t.mu[0] = 1;
        t.squarefree[0] = 1;
    }
    return t;
}

Factorization factorize(u64 n, const PrimeTable& base) {
    if (n == 0) throw std::invalid_argument("factorize: n = 0");
    Factorization f;
    f.n = n;
    if (n <= base.limit) {
        while (n > 1) {
            u64 p = base.smallest_prime_factor[n];
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
        return f;
    }
    for (u32 p : base.primes) {
        if (u64(p) * p > n) break;
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
    }
    if (n > 1) {
        if (n > base.limit * base.limit)
            throw std::invalid_argument("factorize: n beyond base table reach");
        f.factors.emplace_back(n, 1);
    }
    std::sort(f.factors.begin(), f.factors.end());
    return f;
}

i64 legendre_residue_sum(i64 p, i64 a) {
    if (p == 2 || p < 2) throw std::invalid_argument("legendre_residue_sum: p must be an odd prime");
    if (a % p == 0) throw std::invalid_argument("legendre_residue_sum: p | a");
    // residue table of (r/p) via squares
    std::vector<int8_t> chi(p, -1);
    chi[0] = 0;
    for (i64 x = 1; x <= p / 2; ++x) chi[(x * x) % p] = 1;
    i64 s = 0;
    i64 am = ((a % p) + p) % p;
    for (i64 x = 0; x < p; ++x) {
        i64 t = (x * x - am) % p;
        if (t < 0) t += p;
        s += chi[t];
    }
    return s;
}

Rational eta(u64 m, const PrimeTable& base) {
    Rational r = 1;
    for (auto& [p, e] : factorize(m, base).factors)
        r *= rat(static_cast<long>(p), static_cast<long>(p + 1));
    return r;
}

double pairwise_sum(std::span<const double> xs) {
    size_t n = xs.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0;
        for (double x : xs) s += x;
        return s;
    }
    size_t h = n / 2;
    return pairwise_sum(xs.first(h)) + pairwise_sum(xs.subspan(h));
}

double eta_partial_sum(u32 T, const PrimeTable& base) {
    if (T < 1) throw std::invalid_argument("eta_partial_sum: T < 1");
    std::vector<double> terms(T);
    for (u32 m = 1; m <= T; ++m) {
        double v = 2.0 / 3.0;  // factor at 2, always present in eta(2m)
        u64 n = m;
        while ((n & 1) == 0) n >>= 1;
        if (n <= base.limit) {
            while (n > 1) {
                u64 p = base.smallest_prime_factor[n];
                v *= double(p) / double(p + 1);
                while (n % p == 0) n /= p;
            }
        } else {
            for (auto& [p, e] : factorize(n, base).factors)
                v *= double(p) / double(p + 1);
        }
        terms[m - 1] = v / (double(m) * double(m));
    }
    return pairwise_sum(terms);
}

i64 squarefree_char_sum(u32 N, u32 m, std::span<const int8_t> chi,
                        const PrimeTable& base) {
    if (m < 1 || chi.size() != m)
        throw std::invalid_argument("squarefree_char_sum: table size != m");
    if (chi[1 % m] != 1)
        throw std::invalid_argument("squarefree_char_sum: chi(1) != 1");
    // multiplicativity spot-check
    for (u32 a = 1; a <= std::min<u32>(m, 24); ++a)
        for (u32 b = a; b <= std::min<u32>(m, 24); ++b)
            if (chi[(u64(a) * b) % m] != chi[a % m] * chi[b % m])
                throw std::invalid_argument(
                    "squarefree_char_sum: table not multiplicative at (" +
                    std::to_string(a) + "," + std::to_string(b) + ")");
    if (base.limit * base.limit < N)
        throw std::invalid_argument("squarefree_char_sum: base table too small");
    i64 s = 0;
    const u64 seg = 1 << 16;
    for (u64 lo = 1; lo <= N; lo += seg) {
        u64 hi = std::min<u64>(N, lo + seg - 1);
        MobiusTable mt = sieve_mobius(lo, hi, base);
        for (u64 n = lo; n <= hi; ++n)
            if (mt.squarefree_at(n)) s += chi[n % m];
    }
    return s;
}

double zeta_real(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("zeta_real: requires s > 1");
    const int N = 10000;
    std::vector<double> terms(N);
    for (int n = 1; n <= N; ++n) terms[n - 1] = std::pow(double(n), -s);
    double sum = pairwise_sum(terms);
    double Nd = N;
    double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Nd, -s);
    // Euler-Maclaurin corrections B2/2!, B4/4!, B6/6!, B8/8! with rising
    // factorials of s
    static const double B[4] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
    double fact = 1.0;   // (2k)!
    double poch = 1.0;   // s (s+1) ... (s+2k-2)
    for (int k = 1; k <= 4; ++k) {
        fact *= (2 * k - 1) * (2 * k);
        poch *= (k == 1) ? s : (s + 2 * k - 3) * (s + 2 * k - 2);
        tail += B[k - 1] / fact * poch * std::pow(Nd, -s - 2 * k + 1);
    }
    return sum + tail;
}

}  // namespace murm
