#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "murm/empirical.hpp"
#include "murm/parallel.hpp"

using namespace murm;

static const PrimeTable& base() {
    static PrimeTable t = sieve_primes(1100000);
    return t;
}

// fully independent reference: trial-division squarefree test, Euler
// criterion for the Legendre symbol, form counting for h, exhaustive (x,y)
// loops for the norm equation
namespace naive {

bool squarefree(u64 n) {
    for (u64 d = 2; d * d <= n; ++d)
        if (n % (d * d) == 0) return false;
    return true;
}

int legendre(u64 a, u64 p) {  // a may exceed p
    a %= p;
    if (a == 0) return 0;
    u64 e = (p - 1) / 2, b = a, r = 1;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

u32 h_forms(u32 D) {
    u32 h = 0;
    for (u64 b = 1; 3 * b * b <= D; b += 2) {
        u64 m = (b * b + D) / 4;
        for (u64 a = b; a * a <= m; ++a) {
            if (m % a) continue;
            h += (a == b || a == m / a) ? 1 : 2;
        }
    }
    return h;
}

struct Parts {
    i64 denom = 0;
    i64 split = 0;
    std::vector<i64> h_by_y;
    i64 ram_h = -1;  // h(-p) - 1 when applicable
};

Parts reference(u64 X, u64 Y, u64 p) {
    Parts out;
    out.h_by_y.assign(16, 0);
    for (u64 D = X; D <= X + Y; ++D) {
        if (D % 4 != 3 || D <= 3 || !squarefree(D)) continue;
        u32 h = h_forms(u32(D));
        out.denom += i64(h) - 1;
        int chi = legendre((p - D % p) % p, p);
        if (D % p == 0) chi = 0;
        if (chi == 1) {
            ++out.split;
            for (u64 x = 1; x * x < 4 * p; ++x)
                for (u64 y = 1; x * x + D * y * y <= 4 * p; ++y)
                    if (x * x + D * y * y == 4 * p) out.h_by_y[y - 1] += h;
        }
        if (D == p && p % 4 == 3) out.ram_h = i64(h) - 1;
    }
    return out;
}

}  // namespace naive

TEST_CASE("empirical_point error paths") {
    // family {7, 11} has h = 1 for both: G_denom = 0
    std::vector<DiscriminantRecord> fam = {{7, 1, 0, ClassNumberMethod::forms},
                                           {11, 1, 0, ClassNumberMethod::forms}};
    CHECK_THROWS(empirical_point({4, 10}, 23, fam));
    CHECK_THROWS(empirical_point({4, 10}, 2, fam));
}

TEST_CASE("hand-evaluated point: window [20,30], p = 3") {
    DiscriminantWindow w{20, 10};
    auto fam = compute_family(w, base(), 1);
    REQUIRE(fam.size() == 1);  // only D = 23
    CHECK(fam[0].h == 3);
    EmpiricalPoint pt = empirical_point(w, 3, fam);
    CHECK(pt.G_denom == 2.0);
    CHECK(pt.split_size == 1);             // (-23/3) = 1
    CHECK(pt.G_num_minus == -2 * std::sqrt(3.0));
    for (double v : pt.by_y) CHECK(v == 0.0);  // 4p < D: no solutions
    CHECK(pt.G == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-15));
}

TEST_CASE("oracle equivalence against the naive reference") {
    struct Win {
        u64 X, Y;
    };
    for (Win w : {Win{20, 10}, Win{100, 80}, Win{300, 150}, Win{450, 50}}) {
        auto fam = compute_family({w.X, w.Y}, base(), 2);
        if (fam.empty()) continue;
        for (u32 p : base().primes) {
            if (p > 200) break;
            if (p == 2) continue;
            naive::Parts ref = naive::reference(w.X, w.Y, p);
            if (ref.denom == 0) continue;
            EmpiricalPoint pt = empirical_point({w.X, w.Y}, p, fam);
            double sp = std::sqrt(double(p));
            CHECK(pt.G_denom == double(ref.denom));
            CHECK(pt.split_size == u64(ref.split));
            for (size_t i = 0; i < ref.h_by_y.size(); ++i) {
                double want = 2.0 * sp * double(ref.h_by_y[i]);
                double got = i < pt.by_y.size() ? pt.by_y[i] : 0.0;
                CHECK(got == want);
            }
            double want_ram = ref.ram_h >= 0 ? sp * double(ref.ram_h) : 0.0;
            CHECK(pt.ramified == want_ram);
        }
    }
}

TEST_CASE("spot check at X = 2^15 against the naive reference") {
    u64 X = 1 << 15;
    DiscriminantWindow w{X, X};
    auto fam = compute_family(w, base(), 2);
    u64 p = 49157;  // ~1.5 X
    REQUIRE(base().is_prime(p));
    EmpiricalPoint pt = empirical_point(w, p, fam);
    CHECK(pt.xi == doctest::Approx(1.50015).epsilon(1e-4));
    naive::Parts ref = naive::reference(X, X, p);
    CHECK(pt.G_denom == double(ref.denom));
    CHECK(pt.split_size == u64(ref.split));
    for (size_t i = 0; i < 3; ++i)
        CHECK(pt.by_y[i] == 2.0 * std::sqrt(double(p)) * double(ref.h_by_y[i]));
}

TEST_CASE("sweep decomposition, support, determinism") {
    u64 X = 1 << 12;
    DiscriminantWindow w{X, X};
    auto fam = compute_family(w, base(), 2);
    auto pts1 = empirical_sweep(w, fam, 3, u64(2.2 * X), base(), 1);
    auto pts4 = empirical_sweep(w, fam, 3, u64(2.2 * X), base(), 4);
    REQUIRE(pts1.size() == pts4.size());
    REQUIRE(pts1.size() > 100);
    for (size_t i = 0; i < pts1.size(); ++i) {
        const EmpiricalPoint& a = pts1[i];
        CHECK(a.G == pts4[i].G);  // bitwise deterministic across worker counts
        // decomposition identity
        CHECK(std::abs(a.G * a.G_denom - a.numerator_sum()) <=
              1e-9 * std::max(1.0, std::abs(a.numerator_sum())));
        // per-y support: y^2 < 4 xi
        for (size_t j = 0; j < a.by_y.size(); ++j)
            if (a.by_y[j] != 0.0) CHECK(double((j + 1) * (j + 1)) < 4.0 * a.xi);
        CHECK(a.split_size <= a.family_size);
    }
}

TEST_CASE("all-inert prime gives G = 0 exactly") {
    DiscriminantWindow w{20, 10};             // family {23}
    auto fam = compute_family(w, base(), 1);
    EmpiricalPoint pt = empirical_point(w, 7, fam);  // (-23/7) = -1
    CHECK(pt.split_size == 0);
    CHECK(pt.G == 0.0);
}

TEST_CASE("3-mod-4 primes sit above 1-mod-4 primes on (1,2)") {
    u64 X = 1 << 12;
    DiscriminantWindow w{X, X};
    auto fam = compute_family(w, base(), 2);
    auto pts = empirical_sweep(w, fam, u64(1.1 * X), u64(2.0 * X), base(), 2);
    double s3 = 0, s1 = 0;
    u64 n3 = 0, n1 = 0;
    for (auto& pt : pts) {
        if (pt.p % 4 == 3) {
            s3 += pt.G;
            ++n3;
        } else {
            s1 += pt.G;
            ++n1;
        }
    }
    REQUIRE(n3 > 10);
    REQUIRE(n1 > 10);
    CHECK(s3 / double(n3) > s1 / double(n1));
}

TEST_CASE("rolling averages") {
    std::vector<EmpiricalPoint> pts(3);
    pts[0].p = 101;
    pts[0].G = 2.0;
    pts[1].p = 103;
    pts[1].G = 4.0;
    pts[2].p = 191;
    pts[2].G = 9.0;
    auto a1 = rolling_average(pts, 100, 2, 100);
    CHECK(a1.primes_used == 1);
    CHECK(a1.G_avg == 2.0);
    auto a2 = rolling_average(pts, 100, 5, 100);
    CHECK(a2.primes_used == 2);
    CHECK(a2.G_avg == 3.0);
    CHECK(a2.Xi == 1.0);
    CHECK_THROWS(rolling_average(pts, 120, 5, 100));
}

TEST_CASE("equidistribution of primes in residue classes") {
    EquidistributionReport r4 = equidistribution_check(1000000, 100000, 4, base());
    REQUIRE(r4.counts.size() == 2);
    CHECK(r4.max_rel_deviation < 0.05);
    CHECK(r4.total == r4.counts[0] + r4.counts[1]);

    EquidistributionReport r2 = equidistribution_check(1000000, 100000, 2, base());
    REQUIRE(r2.counts.size() == 1);  // all odd primes in the class 1 mod 2
    CHECK(r2.counts[0] == r2.total);

    EquidistributionReport r8 = equidistribution_check(1000000, 100000, 8, base());
    REQUIRE(r8.counts.size() == 4);
    CHECK(r8.max_rel_deviation < 0.05);
    CHECK_THROWS(equidistribution_check(1000000, 10, 8, base()));
}
