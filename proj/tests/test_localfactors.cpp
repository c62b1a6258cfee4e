#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "murm/localfactors.hpp"

using namespace murm;

static const PrimeTable& base() {
    static PrimeTable t = sieve_primes(200000);
    return t;
}

TEST_CASE("C_8n_p spot values") {
    CHECK(C_8n_p_bruteforce(1, 5) == 4);
    CHECK(C_8n_p_bruteforce(3, 7) == -4);
    CHECK(C_8n_p_bruteforce(2, 5) == -8);
    CHECK(C_8n_p_product(3, 7, base()) == -4);
    CHECK(C_8n_p_product(9, 7, base()) == 12);
    CHECK(C_8n_p_bruteforce(9, 7) == 12);
    // n = p gives the 4(p-1) p-part
    for (u64 p : {3u, 7u, 13u}) {
        CHECK(C_8n_p_product(p, p, base()) == i64(4 * (p - 1)));
        CHECK(C_8n_p_bruteforce(p, p) == i64(4 * (p - 1)));
    }
}

TEST_CASE("C_8n_p oracle equivalence on the unit grid") {
    for (u64 p : {3u, 5u, 7u, 11u, 13u, 97u})
        for (u64 n = 1; n <= 50; ++n)
            CHECK(C_8n_p_bruteforce(n, p) == C_8n_p_product(n, p, base()));
}

TEST_CASE("R_a_p") {
    CHECK(R_a_p(1, 7, base()) == 1);
    CHECK(R_a_p(3, 7, base()) == 2);
    CHECK(R_a_p(7, 7, base()) == 0);  // q = p
    CHECK_THROWS(R_a_p(4, 7, base()));
    for (u64 p : {3u, 7u, 31u, 97u})
        for (u64 a = 1; a <= 99; a += 2)
            CHECK(R_a_p(a, p, base()) == R_a_p_bruteforce(a, p));
}

TEST_CASE("C_y brute force spot values") {
    CHECK(C_y_bruteforce({1, 3, 1, 7}) == -4);  // reduces to C_{24,7}
    CHECK(C_y_bruteforce({2, 1, 1, 7}) != 0);   // delta_2(7) = 1
    CHECK(C_y_bruteforce({2, 1, 1, 5}) == 0);   // 5 = 1 mod 4
    CHECK_THROWS_AS(C_y_bruteforce({100, 100, 100, 3}), budget_error);
    CHECK_THROWS(C_y_bruteforce({3, 1, 1, 3}));  // p | y
}

TEST_CASE("C_y oracle equivalence on a reduced grid") {
    // the full acceptance grid runs in the acceptance suite
    for (u64 y = 1; y <= 6; ++y)
        for (u64 n = 1; n <= 6; ++n)
            for (u64 a = 1; a <= 4; ++a)
                for (u64 p : {3u, 5u, 7u}) {
                    if (y % p == 0) continue;
                    LocalSumSpec s{y, n, a, p};
                    CHECK(C_y_bruteforce(s) == C_y_product(s, base()));
                }
}

TEST_CASE("sigma_local table") {
    CHECK(sigma_local(SigmaKind::sigma2, 2, 0, 0, 0, 7) == 4);
    CHECK(sigma_local(SigmaKind::sigma2, 2, 1, 0, 1, 7) == 0);  // odd e
    CHECK(sigma_local(SigmaKind::sigma2, 2, 1, 0, 0, 7) == 8);  // p = 3 mod 4
    CHECK(sigma_local(SigmaKind::sigma2, 2, 1, 0, 0, 5) == 0);
    CHECK(sigma_local(SigmaKind::sigma2, 2, 2, 0, 0, 5) == 16);  // p = 5 mod 8
    CHECK(sigma_local(SigmaKind::sigmaI, 3, 1, 0, 0, 7) == 2);   // (7/3) = 1
    CHECK(sigma_local(SigmaKind::sigmaI, 3, 1, 0, 2, 7) == 12);  // 2(q-1)q^{f-1}
    CHECK(sigma_local(SigmaKind::sigmaI, 3, 1, 1, 2, 7) == 0);   // mu > 0, f > 0
    CHECK(sigma_local(SigmaKind::sigmap, 7, 0, 0, 2, 7) == 42);
    CHECK(sigma_local(SigmaKind::sigmaII, 3, 0, 0, 2, 7) == 3);  // 3^1 (3 - 1 - (7/3))
    CHECK(sigma_local(SigmaKind::sigmaII, 3, 0, 0, 3, 7) == -9);
    CHECK_THROWS(sigma_local(SigmaKind::sigmap, 7, 1, 0, 1, 7));
    CHECK_THROWS(sigma_local(SigmaKind::sigmaII, 3, 1, 0, 1, 7));
}

TEST_CASE("c_p values and bounds") {
    // p=3, M=3: no qualifying odd ell, only the (p+1)/(3p) prefactor
    CHECK(c_p(3, 3, base()) == doctest::Approx(4.0 / 9).epsilon(1e-15));
    // p=7, M=3: (7/3) = 1 picks up the ell = 3 factor
    double f3 = 1.0 - 2.0 / 9 - (2.0 / 27) / (1.0 - 1.0 / 9);
    CHECK(c_p(7, 3, base()) == doctest::Approx(8.0 / 21 * f3).epsilon(1e-15));
    for (u64 p : {3u, 5u, 7u, 101u, 977u}) {
        double v = c_p(p, 10000, base());
        CHECK(v > 0);
        CHECK(v < 0.5);
    }
}

TEST_CASE("c_p double sum convergence") {
    // raw truncation: tail dominated by prime-power n beyond the cutoff;
    // shrinks roughly like N^{-1/2} and sits near 1e-2..1e-3 by N0 = 1000
    for (u64 p : {5u, 7u}) {
        double gap100 = std::abs(cp_double_sum(p, 100, 100, base()) - c_p(p, 100, base()));
        double gap1000 = std::abs(cp_double_sum(p, 1000, 1000, base()) - c_p(p, 1000, base()));
        CHECK(gap1000 < 0.01);
        CHECK(gap1000 / gap100 > 0.15);
        CHECK(gap1000 / gap100 < 0.55);
    }
}

TEST_CASE("cp local factor closed forms") {
    // (1 - 2/q^2) * split-factor equals the c(p) per-place factor exactly
    for (u64 q : {3u, 5u, 7u, 11u, 97u}) {
        long ql = long(q);
        Rational lhs = (rat(1) - rat(2, ql * ql)) * cp_local_factor_odd(q, true);
        Rational li2 = rat(1, ql * ql), li3 = rat(1, ql * ql * ql);
        Rational rhs = rat(1) - rat(2) * li2 - rat(2) * li3 / (rat(1) - li2);
        CHECK(lhs == rhs);
        CHECK(cp_local_factor_odd(q, false) == rat(1));
    }
    // and the geometric series it resums: 1 + (1/(1-2q^-2)) sum_e sigma_II(q,e)/q^{2e}
    for (u64 q : {3u, 7u}) {
        u64 p = (q == 3) ? 13 : 11;  // (13/3) = (11/7) = 1
        double target = cp_local_factor_odd(q, true).get_d();
        double qi = 1.0 / double(q);
        double denom_a = 1.0 - 2 * qi * qi;  // a-side factor at split q
        double acc = 0, qq2 = 1;
        for (u32 e = 1; e <= 18; ++e) {
            qq2 *= qi * qi;
            acc += double(sigma_local(SigmaKind::sigmaII, q, 0, 0, e, p)) * qq2;
        }
        CHECK(1.0 + acc / denom_a == doctest::Approx(target).epsilon(1e-8));
    }
}

TEST_CASE("c_y per-place identity") {
    for (u64 y = 1; y <= 100; ++y)
        for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u}) {
            if (y % p == 0) continue;
            CyIdentityReport rep = c_y_identity_check(y, p, base());
            CHECK(rep.all_equal);
        }
    CHECK_THROWS(c_y_identity_check(6, 3, base()));
    // y=4 example: two-place factor 1/6 against theta(4)/16 * 1/3
    CyIdentityReport r4 = c_y_identity_check(4, 5, base());
    REQUIRE(r4.places.size() == 1);
    CHECK(r4.places[0].lhs == rat(1, 2));
    CHECK(r4.places[0].rhs == rat(1, 2));
}

TEST_CASE("C bound spot check") {
    // |C_{8na^2,p,a}| <= 16 n d(a) / k(n) on a small grid
    for (u64 n = 1; n <= 30; ++n)
        for (u64 a = 1; a <= 9; a += 2)
            for (u64 p : {5u, 13u}) {
                if (std::gcd(n, a) > 1) continue;
                i64 C = C_8n_p_product(n, p, base()) * R_a_p(a, p, base());
                u64 k = factorize(n, base()).squarefree_kernel();
                u64 d = 1;
                for (auto& [q, e] : factorize(a, base()).factors) d *= (e + 1);
                CHECK(std::abs(double(C)) <= 16.0 * double(n) * double(d) / double(k));
            }
}
