#include "murm/quadfield.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "murm/parallel.hpp"

namespace murm {

static void check_family_D(u32 D, const PrimeTable& base) {
    if (D % 4 != 3) throw std::invalid_argument("D must be 3 mod 4");
    if (D <= 3) throw std::invalid_argument("D must exceed 3");
    if (!factorize(D, base).squarefree())
        throw std::invalid_argument("D must be squarefree");
}

std::vector<u32> enumerate_family(const DiscriminantWindow& w, const PrimeTable& base) {
    w.validate();
    MobiusTable mt = sieve_mobius(w.X, w.X + w.Y, base);
    std::vector<u32> out;
    // first D = 3 mod 4 in window
    u64 d0 = w.X + ((3 + 4 - (w.X % 4)) % 4);
    for (u64 D = d0; D <= w.X + w.Y; D += 4)
        if (D > 3 && mt.squarefree_at(D)) out.push_back(static_cast<u32>(D));
    return out;
}

u32 class_number_forms(u32 D, const PrimeTable& base) {
    check_family_D(D, base);
    // -D = 1 mod 4 forces b odd; primitivity is automatic for squarefree D
    u32 h = 0;
    for (u64 b = 1; 3 * b * b <= D; b += 2) {
        u64 m = (b * b + D) / 4;  // = a*c
        for (u64 a = b; a * a <= m; ++a) {
            if (m % a != 0) continue;
            u64 c = m / a;  // a <= c by loop bound
            if (a == b || a == c)
                h += 1;  // b = a or a = c: only +b is reduced
            else
                h += 2;  // (a, +-b, c)
        }
    }
    // b = a = c = 1 case is impossible here (D > 3), no special-casing needed
    return h;
}

namespace {

// chi_{-D}(a) for 0 <= a <= L, filled multiplicatively: chi(q) for prime q
// via one Kronecker evaluation, then one pass of sign flips per prime power.
void chi_table(u32 D, u64 L, const PrimeTable& base, std::vector<int8_t>& chi) {
    chi.assign(L + 1, 1);
    chi[0] = 0;
    i64 negD = -static_cast<i64>(D);
    for (u32 q : base.primes) {
        if (q > L) break;
        int cq = kronecker(negD, q);
        if (cq == 0) {
            for (u64 j = q; j <= L; j += q) chi[j] = 0;
        } else if (cq == -1) {
            for (u64 m = q; m <= L; m *= q) {
                for (u64 j = m; j <= L; j += m) chi[j] = -chi[j];
                if (m > L / q) break;  // overflow guard
            }
        }
    }
}

}  // namespace

DiscriminantRecord class_number_dirichlet(u32 D, const PrimeTable& base) {
    check_family_D(D, base);
    u64 L = (u64(D) - 1) / 2;
    if (base.limit < L)
        throw std::invalid_argument("class_number_dirichlet: prime table too small");
    std::vector<int8_t> chi;
    chi_table(D, L, base, chi);
    i64 S = 0;
    for (u64 a = 1; a <= L; ++a) S += chi[a];
    int chi2 = kronecker(-static_cast<i64>(D), 2);  // +1 if D=7 mod 8, -1 if D=3 mod 8
    i64 div = 2 - chi2;
    if (S <= 0 || S % div != 0)
        throw invariant_error("class_number_dirichlet: character sum " +
                              std::to_string(S) + " not a positive multiple of " +
                              std::to_string(div) + " at D=" + std::to_string(D));
    DiscriminantRecord r;
    r.D = D;
    r.h = static_cast<u32>(S / div);
    r.L1 = std::numbers::pi * double(r.h) / std::sqrt(double(D));
    r.method = ClassNumberMethod::dirichlet;
    return r;
}

double l1_partial_sum(u32 D, u32 T, const PrimeTable& base) {
    if (T < 1) throw std::invalid_argument("l1_partial_sum: T >= 1");
    std::vector<int8_t> chi;
    chi_table(D, T, base, chi);
    std::vector<double> terms(T);
    for (u32 n = 1; n <= T; ++n) terms[n - 1] = double(chi[n]) / double(n);
    return pairwise_sum(terms);
}

std::vector<NormSolution> norm_solutions(u32 D, u64 p) {
    if (p < 3 || (p & 1) == 0)
        throw std::invalid_argument("norm_solutions: p must be an odd prime");
    std::vector<NormSolution> out;
    u64 fourp = 4 * p;
    for (u64 y = 1; D * y * y < fourp; ++y) {
        u64 t = fourp - D * y * y;
        u64 x;
        if (is_square(t, &x) && x > 0) out.push_back({D, p, x, y});
    }
    return out;
}

int nu(u32 D, u64 p) {
    auto sols = norm_solutions(D, p);
    if (sols.size() > 1)
        throw invariant_error("nu: " + std::to_string(sols.size()) +
                              " norm solutions at D=" + std::to_string(D) +
                              " p=" + std::to_string(p));
    return static_cast<int>(sols.size());
}

// ---- cache ------------------------------------------------------------

static constexpr const char* kCacheMagic = "# murm family cache v1";

std::vector<DiscriminantRecord> FamilyCache::load() const {
    std::ifstream in(path);
    if (!in) return {};
    std::string line;
    if (!std::getline(in, line) || line != kCacheMagic)
        throw std::runtime_error("family cache: bad header in " + path);
    std::vector<DiscriminantRecord> recs;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        DiscriminantRecord r;
        char tag = 0;
        if (sscanf(line.c_str(), "%u,%u,%c", &r.D, &r.h, &tag) != 3 ||
            (tag != 'd' && tag != 'f'))
            throw std::runtime_error("family cache: corrupt line: " + line);
        r.method = tag == 'd' ? ClassNumberMethod::dirichlet : ClassNumberMethod::forms;
        r.L1 = std::numbers::pi * double(r.h) / std::sqrt(double(r.D));
        recs.push_back(r);
    }
    std::sort(recs.begin(), recs.end(),
              [](auto& a, auto& b) { return a.D < b.D; });
    return recs;
}

void FamilyCache::store(const std::vector<DiscriminantRecord>& recs) const {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("family cache: cannot write " + path);
    out << kCacheMagic << "\n";
    for (auto& r : recs)
        out << r.D << ',' << r.h << ','
            << (r.method == ClassNumberMethod::dirichlet ? 'd' : 'f') << "\n";
}

std::vector<DiscriminantRecord> compute_family(const DiscriminantWindow& w,
                                               const PrimeTable& base,
                                               unsigned workers,
                                               FamilyCache* cache,
                                               bool crosscheck) {
    std::vector<u32> Ds = enumerate_family(w, base);
    std::vector<DiscriminantRecord> cached;
    if (cache) cached = cache->load();

    std::vector<DiscriminantRecord> out(Ds.size());
    std::vector<uint8_t> have(Ds.size(), 0);
    {
        size_t j = 0;
        for (size_t i = 0; i < Ds.size(); ++i) {
            while (j < cached.size() && cached[j].D < Ds[i]) ++j;
            if (j < cached.size() && cached[j].D == Ds[i]) {
                out[i] = cached[j];
                have[i] = 1;
            }
        }
    }
    parallel_for(Ds.size(), workers, [&](size_t b, size_t e) {
        for (size_t i = b; i < e; ++i) {
            if (!have[i]) out[i] = class_number_dirichlet(Ds[i], base);
            if (crosscheck) {
                u32 hf = class_number_forms(Ds[i], base);
                if (hf != out[i].h)
                    throw invariant_error("class number mismatch at D=" +
                                          std::to_string(Ds[i]));
            }
        }
    });
    if (cache) {
        // merge window results into the cache (single writer)
        std::vector<DiscriminantRecord> merged = cached;
        for (auto& r : out) {
            auto it = std::lower_bound(
                merged.begin(), merged.end(), r.D,
                [](const DiscriminantRecord& a, u32 d) { return a.D < d; });
            if (it == merged.end() || it->D != r.D) merged.insert(it, r);
        }
        cache->store(merged);
    }
    return out;
}

}  // namespace murm
