#include "murm/localfactors.hpp"

#include <algorithm>
#include <numeric>

namespace murm {

namespace {

// (a/n) lookup table over a mod 8n; valid for any sign of a since the
// Kronecker symbol with positive bottom is periodic with period 8n.
std::vector<int8_t> kron_table(u64 n) {
    u64 period = 8 * n;
    std::vector<int8_t> t(period);
    for (u64 r = 0; r < period; ++r)
        t[r] = static_cast<int8_t>(kronecker(static_cast<i64>(r), static_cast<i64>(n)));
    return t;
}

inline int8_t table_at(const std::vector<int8_t>& t, i64 v) {
    i64 m = static_cast<i64>(t.size());
    i64 r = v % m;
    if (r < 0) r += m;
    return t[r];
}

i64 ipow(u64 b, u32 e) {
    i64 r = 1;
    while (e--) r *= static_cast<i64>(b);
    return r;
}

}  // namespace

i64 C_8n_p_bruteforce(u64 n, u64 p) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("C_8n_p: p odd prime");
    auto t = kron_table(n);
    i64 s = 0;
    i64 fourp = static_cast<i64>(4 * p);
    for (i64 x = 1; x < static_cast<i64>(8 * n); x += 2)
        s += table_at(t, x * x - fourp);
    return s;
}

i64 C_8n_p_product(u64 n, u64 p, const PrimeTable& base) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("C_8n_p: p odd prime");
    Factorization f = factorize(n, base);
    i64 val = 4;
    for (auto& [q, e] : f.factors) {
        if (q == 2) {
            val *= ipow(2, e);           // 4 (-2)^e, sign below
            if (e & 1) val = -val;
        } else if (q == p) {
            val *= static_cast<i64>(p - 1) * ipow(p, e - 1);
        } else if ((e & 1) == 0) {
            val *= ipow(q, e - 1) * (static_cast<i64>(q) - 1 -
                                     kronecker(static_cast<i64>(p), static_cast<i64>(q)));
        } else {
            val *= -ipow(q, e - 1);
        }
    }
    return val;
}

i64 R_a_p(u64 a, u64 p, const PrimeTable& base) {
    if ((a & 1) == 0) throw std::invalid_argument("R_a_p: a must be odd");
    i64 r = 1;
    for (auto& [q, e] : factorize(a, base).factors) {
        if (q == p || kronecker(static_cast<i64>(p), static_cast<i64>(q)) != 1)
            return 0;
        r *= 2;
    }
    return r;
}

i64 R_a_p_bruteforce(u64 a, u64 p) {
    if ((a & 1) == 0) throw std::invalid_argument("R_a_p: a must be odd");
    u64 m = a * a;
    i64 cnt = 0;
    u64 t = (4 * p) % m;
    for (u64 x = 0; x < m; ++x)
        if ((x * x) % m == t) ++cnt;
    return cnt;
}

i64 C_y_bruteforce(const LocalSumSpec& s, u64 loop_budget) {
    s.validate();
    u64 mod = 8 * s.y * s.y * s.n * s.a * s.a;
    if (mod > loop_budget)
        throw budget_error("C_y_bruteforce: modulus " + std::to_string(mod) +
                           " exceeds loop budget");
    auto t = kron_table(s.n);
    const i64 fourp = static_cast<i64>(4 * s.p);
    const i64 y2 = static_cast<i64>(s.y * s.y);
    const i64 a2 = static_cast<i64>(s.a * s.a);
    i64 sum = 0;
    for (i64 x = 0; x < static_cast<i64>(mod); ++x) {
        i64 v = fourp - x * x;
        if (v % y2 != 0) continue;
        i64 u = v / y2;                    // candidate discriminant -u... u = (4p-x^2)/y^2
        i64 um = ((u % 4) + 4) % 4;
        if (um != 3) continue;
        if (u % a2 != 0) continue;
        sum += table_at(t, -u);            // (x^2-4p)/y^2 = -u
    }
    return sum;
}

i64 sigma_local(SigmaKind kind, u64 place, u32 nu, u32 mu, u32 e, u64 p) {
    if (e > 40) throw std::invalid_argument("sigma_local: exponent too large");
    switch (kind) {
        case SigmaKind::sigma2: {
            if (place != 2) throw std::invalid_argument("sigma2: place must be 2");
            if (nu == 0) {
                if (mu != 0) throw std::invalid_argument("sigma2: mu > 0 needs nu > 0");
                if (e == 0) return 4;
                i64 v = 4 * ipow(2, e);
                return (e & 1) ? -v : v;
            }
            if (e & 1) return 0;
            if (nu == 1 && p % 4 == 3) return ipow(2, e + 3);
            if (nu == 2 && p % 8 == 5) return ipow(2, e + 4);
            if (nu >= 3 && p % 8 == 1) return ipow(2, e + 4);
            return 0;
        }
        case SigmaKind::sigmap: {
            if (place != p || nu != 0 || mu != 0)
                throw std::invalid_argument("sigmap: place = p, nu = mu = 0 required");
            if (e == 0) return 1;
            return static_cast<i64>(p - 1) * ipow(p, e - 1);
        }
        case SigmaKind::sigmaI: {
            if (place == 2 || place == p || nu == 0)
                throw std::invalid_argument("sigmaI: odd place dividing y required");
            if (kronecker(static_cast<i64>(p), static_cast<i64>(place)) != 1) return 0;
            if (e == 0) return 2;
            if ((e & 1) == 0 && mu == 0)
                return 2 * (static_cast<i64>(place) - 1) * ipow(place, e - 1);
            return 0;
        }
        case SigmaKind::sigmaII: {
            if (place == 2 || place == p || nu != 0 || mu != 0)
                throw std::invalid_argument("sigmaII: odd place, nu = mu = 0 required");
            if ((e & 1) == 0)
                return ipow(place, e - 1) *
                       (static_cast<i64>(place) - 1 -
                        kronecker(static_cast<i64>(p), static_cast<i64>(place)));
            return -ipow(place, e - 1);
        }
    }
    throw std::logic_error("sigma_local: bad kind");
}

i64 C_y_product(const LocalSumSpec& s, const PrimeTable& base) {
    s.validate();
    if (std::gcd(s.n, s.a) > 1) return 0;
    if ((s.a & 1) == 0) return 0;  // a^2 | odd discriminant forces a odd
    Factorization fy = factorize(s.y, base);
    Factorization fn = factorize(s.n, base);
    Factorization fa = factorize(s.a, base);
    // split a = a_y a', a_y supported on primes of y
    u64 a_rest = 1;
    for (auto& [q, e] : fa.factors)
        if (fy.v(q) == 0) a_rest *= ipow(q, e);

    i64 val = sigma_local(SigmaKind::sigma2, 2, fy.v2(), fa.v(2), fn.v2(), s.p);
    if (val == 0) return 0;
    val *= sigma_local(SigmaKind::sigmap, s.p, 0, 0, fn.v(s.p), s.p);
    for (auto& [q, nuq] : fy.factors) {
        if (q == 2) continue;
        val *= sigma_local(SigmaKind::sigmaI, q, nuq, fa.v(q), fn.v(q), s.p);
        if (val == 0) return 0;
    }
    for (auto& [q, eq] : fn.factors) {
        if (q == 2 || q == s.p || fy.v(q) != 0) continue;
        val *= sigma_local(SigmaKind::sigmaII, q, 0, 0, eq, s.p);
    }
    i64 r = R_a_p(a_rest, s.p, base);
    return val * r;
}

double c_p(u64 p, u32 M, const PrimeTable& base) {
    if (p < 3 || (p & 1) == 0) throw std::invalid_argument("c_p: p odd prime");
    if (M < 3) throw std::invalid_argument("c_p: M >= 3");
    if (base.limit < M) throw std::invalid_argument("c_p: prime table smaller than M");
    double v = double(p + 1) / (3.0 * double(p));
    for (u32 l : base.primes) {
        if (l > M) break;
        if (l == 2) continue;
        if (kronecker(static_cast<i64>(p % l), static_cast<i64>(l)) == 1) {
            double li = 1.0 / double(l);
            v *= 1.0 - 2 * li * li - 2 * li * li * li / (1.0 - li * li);
        }
    }
    return v;
}

double cp_double_sum(u64 p, u32 N0, u32 A0, const PrimeTable& base) {
    MobiusTable mt = sieve_mobius(1, A0, base);
    double s = 0;
    for (u64 n = 1; n <= N0; ++n) {
        i64 Cn = C_8n_p_product(n, p, base);
        if (Cn == 0) continue;
        double asum = 0;
        for (u64 a = 1; a <= A0; a += 2) {
            if (mt.mu_at(a) == 0 || std::gcd(a, n) > 1) continue;
            i64 r = R_a_p(a, p, base);
            if (r) asum += double(mt.mu_at(a)) * double(r) / double(a * a);
        }
        s += double(Cn) / (8.0 * double(n) * double(n)) * asum;
    }
    return s;
}

Rational cp_local_factor_odd(u64 q, bool split) {
    if (!split) return rat(1);
    long ql = static_cast<long>(q);
    // 1 - 2 q^{-3} / ((1 - 2 q^{-2})(1 - q^{-2})) = 1 - 2q / ((q^2-2)(q^2-1))
    return rat(1) - rat(2 * ql) / (rat(ql * ql - 2) * rat(ql * ql - 1));
}

CyIdentityReport c_y_identity_check(u64 y, u64 p, const PrimeTable& base) {
    if (y % p == 0) throw std::invalid_argument("c_y_identity_check: p | y");
    CyIdentityReport rep;
    rep.y = y;
    rep.p = p;
    for (auto& [q, nu] : factorize(y, base).factors) {
        PlaceCheck pc;
        pc.q = q;
        pc.nu = nu;
        if (q == 2) {
            // local factor of c_y at 2 over the base 1/3 of c(p)
            Rational lf = (nu <= 1) ? rat(1, 3) : rat(1, 3) / rat(ipow(2, 2 * nu - 3));
            pc.lhs = lf / rat(1, 3);
            long th = (nu == 1) ? 4 : 8;  // 2^{1+min(nu,2)}
            pc.rhs = rat(th) / rat(ipow(2, 2 * nu));
        } else {
            long ql = static_cast<long>(q);
            Rational q2nu = rat(ipow(q, 2 * nu));
            Rational num = rat(2) * rat(ql * ql * ql + ql * ql - 1) /
                           (rat(ql * ql) * rat(ql + 1)) / q2nu;
            Rational den = rat(ql * ql * ql * ql - 3 * ql * ql - 2 * ql + 2) /
                           (rat(ql * ql) * rat(ql * ql - 1));
            pc.lhs = num / den;
            Rational theta = rat(2) * (rat(1) + rat(2 * ql * ql + ql - 1) /
                                                    rat(ql * ql * ql * ql - 3 * ql * ql -
                                                        2 * ql + 2));
            pc.rhs = theta / q2nu;
        }
        pc.equal = (pc.lhs == pc.rhs);
        if (!pc.equal) rep.all_equal = false;
        rep.places.push_back(pc);
    }
    return rep;
}

}  // namespace murm
