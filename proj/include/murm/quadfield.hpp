#ifndef MURM_QUADFIELD_HPP
#define MURM_QUADFIELD_HPP

// The discriminant family D = 3 (mod 4), squarefree, D > 3: enumeration,
// class numbers h(-D) by two independent methods, L(1, chi_{-D}) partial
// sums, and the norm equation x^2 + D y^2 = 4p.

#include <optional>
#include <string>
#include <vector>

#include "murm/arith.hpp"

namespace murm {

struct DiscriminantWindow {
    u64 X = 0;  // window start
    u64 Y = 0;  // window length; family is D in [X, X+Y]

    void validate() const {
        if (X < 2 || Y < 1) throw std::invalid_argument("window: X >= 2, Y >= 1 required");
        // Y = X is admitted: the [N, 2N] indicator-weight convention uses it.
        if (Y > X) throw std::invalid_argument("window: Y <= X required");
    }
};

enum class ClassNumberMethod : uint8_t { forms, dirichlet };

struct DiscriminantRecord {
    u32 D = 0;
    u32 h = 0;       // class number h(-D)
    double L1 = 0;   // L(1, chi_{-D}) = pi h / sqrt(D)
    ClassNumberMethod method = ClassNumberMethod::dirichlet;
};

struct NormSolution {
    u32 D = 0;
    u64 p = 0;
    u64 x = 0, y = 0;  // x^2 + D y^2 = 4p, x,y > 0
};

// Squarefree D = 3 (mod 4) in [X, X+Y], ascending, excluding D = 3.
std::vector<u32> enumerate_family(const DiscriminantWindow& w, const PrimeTable& base);

// Count of reduced primitive forms (a,b,c), b^2 - 4ac = -D, |b| <= a <= c,
// b > 0 when |b| = a or a = c. Exact oracle, O(sqrt(D) d(.)).
u32 class_number_forms(u32 D, const PrimeTable& base);

// h(-D) via the finite character sum h = (sum_{0<a<D/2} chi_{-D}(a)) / (2 - chi_{-D}(2)),
// chi values filled multiplicatively from a smallest-prime-factor sieve.
// Returns h and L1 = pi h / sqrt(D).
DiscriminantRecord class_number_dirichlet(u32 D, const PrimeTable& base);

// sum_{n<=T} chi_{-D}(n)/n in pairwise order.
double l1_partial_sum(u32 D, u32 T, const PrimeTable& base);

// All positive solutions of x^2 + D y^2 = 4p (p odd prime), by iterating y
// and testing 4p - D y^2 for squareness with integer sqrt.
std::vector<NormSolution> norm_solutions(u32 D, u64 p);

// For split p ((-D/p) = 1): 0 or 1; throws invariant_error if the norm
// equation has more than one positive solution.
int nu(u32 D, u64 p);

// ---- family computation with optional disk cache --------------------------

// Cache file: CSV `D,h,method` lines under a versioned header; documented in
// the README. Loads records for any D present; computes and appends the rest.
struct FamilyCache {
    std::string path;

    // returns map-like sorted vector of (D,h,method в tag)
    std::vector<DiscriminantRecord> load() const;  // empty if file missing
    void store(const std::vector<DiscriminantRecord>& recs) const;
};

// Enumerate + class numbers for the window (Dirichlet path, forms as the
// cross-check when `crosscheck` is set). Uses/updates the cache when given.
std::vector<DiscriminantRecord> compute_family(const DiscriminantWindow& w,
                                               const PrimeTable& base,
                                               unsigned workers = 1,
                                               FamilyCache* cache = nullptr,
                                               bool crosscheck = false);

}  // namespace murm

#endif
