// Command-line front end: family enumeration, empirical trace averages,
// closed-form densities, murmuration functions, cross-comparison, and the
// identity validation suites.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "murm/analytic.hpp"
#include "murm/csv.hpp"
#include "murm/density.hpp"
#include "murm/empirical.hpp"
#include "murm/localfactors.hpp"
#include "murm/parallel.hpp"
#include "murm/quadfield.hpp"

using namespace murm;

namespace {

struct RunConfig {
    u64 x = 1 << 14;
    u64 y = 0;  // 0: default to x (the [N, 2N] convention)
    u64 p_min = 3, p_max = 0;
    double h_exp = 0.55;
    u32 euler_cutoff = 100000;
    double exclusion = 0.05;
    std::string grid = "0.3:2.2:40";
    std::string out = "out.csv";
    unsigned workers = default_workers();
    std::string cache;
    std::string config_file;
    std::string weight = "indicator";
    std::string suite = "all";
    int density_p = 0;  // per-prime density when > 0

    u64 Y() const { return y ? y : x; }

    std::string canonical() const {
        std::ostringstream os;
        os << "x=" << x << ";y=" << Y() << ";p_min=" << p_min << ";p_max=" << p_max
           << ";h_exp=" << h_exp << ";M=" << euler_cutoff << ";excl=" << exclusion
           << ";grid=" << grid << ";weight=" << weight << ";suite=" << suite
           << ";density_p=" << density_p;
        return os.str();
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    double lo, hi;
    int n;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3 || n < 1 || hi < lo)
        throw std::invalid_argument("bad --grid, want lo:hi:n");
    std::vector<double> g;
    if (n == 1) return {lo};
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

// config file: `key = value` lines; values there override flags
void apply_config_file(RunConfig& c) {
    if (c.config_file.empty()) return;
    std::ifstream in(c.config_file);
    if (!in) throw std::runtime_error("cannot read config file: " + c.config_file);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            auto e = s.find_last_not_of(" \t");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (k == "x") c.x = std::stoull(v);
        else if (k == "y") c.y = std::stoull(v);
        else if (k == "p-min") c.p_min = std::stoull(v);
        else if (k == "p-max") c.p_max = std::stoull(v);
        else if (k == "h-exp") c.h_exp = std::stod(v);
        else if (k == "euler-cutoff") c.euler_cutoff = std::stoul(v);
        else if (k == "exclusion") c.exclusion = std::stod(v);
        else if (k == "grid") c.grid = v;
        else if (k == "out") c.out = v;
        else if (k == "workers") c.workers = std::stoul(v);
        else if (k == "cache") c.cache = v;
        else if (k == "weight") c.weight = v;
        else if (k == "suite") c.suite = v;
        else throw std::invalid_argument("unknown config key: " + k);
    }
}

PrimeTable base_table(const RunConfig& c) {
    u64 need = std::max<u64>({c.x + c.Y(), u64(c.euler_cutoff), u64(1) << 17});
    if (c.p_max) {
        // empirical sweeps only need base primes to sqrt(p_max), the family
        // character sums need (x+y)/2
        need = std::max(need, u64(std::sqrt(double(c.p_max))) + 2);
    }
    return sieve_primes(need);
}

std::vector<DiscriminantRecord> family_for(const RunConfig& c, const PrimeTable& base) {
    DiscriminantWindow w{c.x, c.Y()};
    FamilyCache cache;
    FamilyCache* cp = nullptr;
    if (!c.cache.empty()) {
        cache.path = c.cache;
        cp = &cache;
    }
    return compute_family(w, base, c.workers, cp);
}

WeightFunction weight_for(const RunConfig& c) {
    WeightFunction w;
    if (c.weight == "indicator") w.kind = WeightFunction::Kind::indicator_1_2;
    else if (c.weight == "bump") w.kind = WeightFunction::Kind::smooth_bump;
    else throw std::invalid_argument("weight must be 'indicator' or 'bump'");
    return w;
}

int cmd_family(const RunConfig& c) {
    PrimeTable base = base_table(c);
    auto recs = family_for(c, base);
    CsvWriter csv(c.out, "D,h,L1,method", fnv1a(c.canonical()));
    for (auto& r : recs)
        csv.row({std::to_string(r.D), std::to_string(r.h), fmt_g(r.L1),
                 r.method == ClassNumberMethod::dirichlet ? "dirichlet" : "forms"});
    return 0;
}

int cmd_empirical(const RunConfig& c, bool average_mode) {
    RunConfig cc = c;
    if (!cc.p_max) cc.p_max = static_cast<u64>(2.25 * double(cc.x));
    PrimeTable base = base_table(cc);
    auto recs = family_for(cc, base);
    DiscriminantWindow w{cc.x, cc.Y()};
    auto points = empirical_sweep(w, recs, cc.p_min, cc.p_max, base, cc.workers);
    if (!average_mode) {
        u64 ymax = 1;
        for (auto& pt : points) ymax = std::max<u64>(ymax, pt.by_y.size());
        std::string header = "p,p_mod_8,p_mod_3,p_mod_5,xi,G,G_denom,G_num_minus,ramified";
        for (u64 y = 1; y <= ymax; ++y) header += ",y" + std::to_string(y);
        CsvWriter csv(cc.out, header, fnv1a(cc.canonical()));
        for (auto& pt : points) {
            std::vector<std::string> row = {
                std::to_string(pt.p), std::to_string(pt.p % 8), std::to_string(pt.p % 3),
                std::to_string(pt.p % 5), fmt_g(pt.xi), fmt_g(pt.G), fmt_g(pt.G_denom),
                fmt_g(pt.G_num_minus), fmt_g(pt.ramified)};
            for (u64 y = 1; y <= ymax; ++y)
                row.push_back(fmt_g(y <= pt.by_y.size() ? pt.by_y[y - 1] : 0.0));
            csv.row(row);
        }
        return 0;
    }
    CsvWriter csv(cc.out, "P,Xi,H,n_primes,G_avg", fnv1a(cc.canonical()));
    for (auto& pt : points) {
        double P = double(pt.p);
        double H = std::pow(P, cc.h_exp);
        if (P + H > double(cc.p_max)) break;  // incomplete trailing windows
        auto avg = rolling_average(points, P, H, double(cc.x));
        csv.row({fmt_g(P), fmt_g(avg.Xi), fmt_g(H), std::to_string(avg.primes_used),
                 fmt_g(avg.G_avg)});
    }
    return 0;
}

int cmd_density(const RunConfig& c) {
    PrimeTable base = sieve_primes(std::max<u64>(c.euler_cutoff, 1 << 17));
    DensityParams dp{c.euler_cutoff, c.exclusion};
    DensityConstants C = DensityConstants::compute(c.euler_cutoff, base);
    auto grid = parse_grid(c.grid);
    u64 ymax = 1;
    for (double Xi : grid)
        ymax = std::max<u64>(ymax, u64(std::ceil(2 * std::sqrt(std::max(Xi, 0.0)))));
    std::string header = "Xi,M_total,M_minus";
    for (u64 y = 1; y <= ymax; ++y) header += ",y" + std::to_string(y);
    header += ",form,p_or_avg";
    CsvWriter csv(c.out, header, fnv1a(c.canonical()));
    for (double Xi : grid) {
        if (in_exclusion_zone(Xi, c.exclusion)) {
            std::cerr << "density: skipping excluded grid point Xi=" << Xi << "\n";
            continue;
        }
        DensityValue v = c.density_p > 0
                             ? density_per_prime(c.density_p, double(c.density_p) / Xi,
                                                 dp, C, base)
                             : density_averaged(Xi, dp, C, base);
        std::vector<std::string> row = {fmt_g(Xi), fmt_g(v.M_total), fmt_g(v.M_minus_term)};
        for (u64 y = 1; y <= ymax; ++y)
            row.push_back(fmt_g(y <= v.per_y.size() ? v.per_y[y - 1] : 0.0));
        row.push_back(v.form == DensityForm::per_prime ? "per_prime" : "averaged");
        row.push_back(v.form == DensityForm::per_prime ? std::to_string(v.p) : "avg");
        csv.row(row);
    }
    return 0;
}

int cmd_murmur_fn(const RunConfig& c) {
    PrimeTable base = sieve_primes(std::max<u64>(c.euler_cutoff, 1 << 17));
    DensityParams dp{c.euler_cutoff, c.exclusion};
    DensityConstants C = DensityConstants::compute(c.euler_cutoff, base);
    WeightFunction wf = weight_for(c);
    CsvWriter csv(c.out, "Xi,M_Phi,quad_error", fnv1a(c.canonical()));
    for (double Xi : parse_grid(c.grid)) {
        MurmurValue m = murmuration_fn(Xi, wf, dp, C, base);
        csv.row({fmt_g(Xi), fmt_g(m.value), fmt_g(m.quad_error)});
    }
    return 0;
}

int cmd_compare(const RunConfig& c) {
    RunConfig cc = c;
    auto grid = parse_grid(cc.grid);
    double xi_hi = *std::max_element(grid.begin(), grid.end());
    if (!cc.p_max)
        cc.p_max = static_cast<u64>((xi_hi + 0.1) * double(cc.x) +
                                    std::pow(xi_hi * double(cc.x), cc.h_exp)) + 10;
    PrimeTable base = base_table(cc);
    auto recs = family_for(cc, base);
    DiscriminantWindow w{cc.x, cc.Y()};
    auto points = empirical_sweep(w, recs, 3, cc.p_max, base, cc.workers);
    DensityParams dp{cc.euler_cutoff, cc.exclusion};
    PrimeTable cbase = sieve_primes(std::max<u64>(cc.euler_cutoff, 1 << 17));
    DensityConstants C = DensityConstants::compute(cc.euler_cutoff, cbase);
    WeightFunction wf = weight_for(cc);
    CsvWriter csv(cc.out, "Xi,P,H,n_primes,G_avg,M_Phi,residual", fnv1a(cc.canonical()));
    std::vector<double> res2;
    for (double Xi : grid) {
        if (in_exclusion_zone(Xi, cc.exclusion)) {
            std::cerr << "compare: skipping excluded grid point Xi=" << Xi << "\n";
            continue;
        }
        double P = Xi * double(cc.x);
        double H = std::pow(P, cc.h_exp);
        PrimeWindowAverage avg;
        try {
            avg = rolling_average(points, P, H, double(cc.x));
        } catch (const std::invalid_argument&) {
            std::cerr << "compare: no primes near Xi=" << Xi << "\n";
            continue;
        }
        MurmurValue m = murmuration_fn(Xi, wf, dp, C, cbase);
        double r = avg.G_avg - m.value;
        res2.push_back(r * r);
        csv.row({fmt_g(Xi), fmt_g(P), fmt_g(H), std::to_string(avg.primes_used),
                 fmt_g(avg.G_avg), fmt_g(m.value), fmt_g(r)});
    }
    double rms = res2.empty() ? 0.0 : std::sqrt(pairwise_sum(res2) / double(res2.size()));
    csv.comment("rms=" + fmt_g(rms));
    return 0;
}

int cmd_constants(const RunConfig& c) {
    PrimeTable base = sieve_primes(std::max<u64>(c.euler_cutoff, 1 << 17));
    DensityConstants C = DensityConstants::compute(c.euler_cutoff, base);
    auto ids = euler_identities(std::min<u32>(c.euler_cutoff, 100000), base);
    CsvWriter csv(c.out, "name,value", fnv1a(c.canonical()));
    csv.row({"A", fmt_g(C.A)});
    csv.row({"cbar", fmt_g(C.cbar)});
    csv.row({"zeta2", fmt_g(C.zeta2)});
    csv.row({"8A_over_11", fmt_g(8 * C.A / 11)});
    csv.row({"eta_partial_sum_1e5", fmt_g(eta_partial_sum(100000, base))});
    csv.row({"euler_identity_sumQ_residual", fmt_g(ids.sumQ_residual)});
    csv.row({"euler_identity_sumQd_residual", fmt_g(ids.sumQ_d_residual)});
    return 0;
}

int cmd_validate(const RunConfig& c) {
    PrimeTable base = sieve_primes(std::max<u64>(c.euler_cutoff, 1 << 17));
    bool all = c.suite == "all";
    bool pass = true;
    CsvWriter csv(c.out, "identity,params,lhs,rhs,pass", fnv1a(c.canonical()));
    auto report = [&](const std::string& id, const std::string& params, double lhs,
                      double rhs, bool ok) {
        pass = pass && ok;
        csv.row({id, params, fmt_g(lhs), fmt_g(rhs), ok ? "1" : "0"});
    };

    if (all || c.suite == "arith") {
        for (u32 p : {3u, 7u, 19u, 97u, 199u}) {
            bool ok = true;
            for (u32 a = 1; a < p && ok; ++a)
                ok = legendre_residue_sum(p, a) == -1;
            report("legendre_residue_sum", "p=" + std::to_string(p), -1, -1, ok);
        }
    }
    if (all || c.suite == "localfactors") {
        bool ok = true;
        for (u64 n = 1; n <= 50 && ok; ++n)
            for (u64 p : {3u, 5u, 7u, 11u, 97u})
                if (C_8n_p_bruteforce(n, p) != C_8n_p_product(n, p, base)) ok = false;
        report("C_8n_p oracle", "n<=50", 0, 0, ok);
        bool ok2 = true;
        for (u64 y = 1; y <= 8 && ok2; ++y)
            for (u64 n = 1; n <= 4; ++n)
                for (u64 a = 1; a <= 3; ++a)
                    for (u64 p : {3u, 5u, 7u}) {
                        if (y % p == 0) continue;
                        LocalSumSpec s{y, n, a, p};
                        if (C_y_bruteforce(s) != C_y_product(s, base)) ok2 = false;
                    }
        report("C_y oracle", "y<=8,n<=4,a<=3", 0, 0, ok2);
        bool ok3 = true;
        for (u64 yy = 1; yy <= 100; ++yy)
            for (u64 p : {3u, 5u, 7u, 11u, 13u, 17u}) {
                if (yy % p == 0) continue;
                if (!c_y_identity_check(yy, p, base).all_equal) ok3 = false;
            }
        report("c_y identity", "y<=100", 0, 0, ok3);
    }
    if (all || c.suite == "density") {
        bool ok = true;
        for (u64 yv = 1; yv <= 1000; ++yv) {
            if (vartheta(yv, base) * eta_y(yv, base) != kappa(yv, base)) ok = false;
            Rational s = 0;
            for (u64 d = 1; d <= yv; ++d)
                if (yv % d == 0) s += Q_d(d, base);
            if (s != kappa(yv, base)) ok = false;
        }
        report("theta*eta=kappa and kappa=sum Q", "y<=1000", 0, 0, ok);
    }
    if (all || c.suite == "analytic") {
        auto ids = euler_identities(10000, base);
        report("euler identity 8/11", "M=1e4", ids.sumQ_residual, 0,
               ids.sumQ_residual <= 1e-4);
        report("euler identity 2/3", "M=1e4", ids.sumQ_d_residual, 0,
               ids.sumQ_d_residual <= 1e-4);
    }
    if (all || c.suite == "quadfield") {
        bool ok = true;
        DiscriminantWindow w{4, 3000};
        for (u32 D : enumerate_family(w, base))
            if (class_number_forms(D, base) != class_number_dirichlet(D, base).h)
                ok = false;
        report("class number forms=dirichlet", "D<=3004", 0, 0, ok);
    }
    std::cout << (pass ? "validate: all checks passed" : "validate: FAILURES (see CSV)")
              << "\n";
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"murmuration computations for the imaginary-quadratic Hecke family"};
    app.require_subcommand(1);
    RunConfig c;

    auto add_common = [&](CLI::App* s) {
        s->add_option("--x", c.x, "window start X (conductor scale N)");
        s->add_option("--y", c.y, "window length Y (default: X, the [N,2N] convention)");
        s->add_option("--p-min", c.p_min, "smallest prime");
        s->add_option("--p-max", c.p_max, "largest prime (default from grid/x)");
        s->add_option("--h-exp", c.h_exp, "rolling-average exponent, H = P^h");
        s->add_option("--euler-cutoff", c.euler_cutoff, "Euler product cutoff M");
        s->add_option("--exclusion", c.exclusion, "exclusion radius around squares of half-integers");
        s->add_option("--grid", c.grid, "Xi grid lo:hi:n");
        s->add_option("--out", c.out, "output CSV path");
        s->add_option("--workers", c.workers, "worker threads");
        s->add_option("--cache", c.cache, "class-number cache file");
        s->add_option("--config", c.config_file, "key = value config file (overrides flags)");
        s->add_option("--weight", c.weight, "weight function: indicator | bump");
        s->add_option("--suite", c.suite, "validation suite selector");
        s->add_option("--density-p", c.density_p, "per-prime density at this p (density subcommand)");
    };
    for (const char* name : {"family", "empirical", "average", "density", "murmur-fn",
                             "compare", "constants", "validate"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    try {
        apply_config_file(c);
        std::string sub = app.get_subcommands().at(0)->get_name();
        if (sub == "family") return cmd_family(c);
        if (sub == "empirical") return cmd_empirical(c, false);
        if (sub == "average") return cmd_empirical(c, true);
        if (sub == "density") return cmd_density(c);
        if (sub == "murmur-fn") return cmd_murmur_fn(c);
        if (sub == "compare") return cmd_compare(c);
        if (sub == "constants") return cmd_constants(c);
        if (sub == "validate") return cmd_validate(c);
        std::cerr << "unknown subcommand\n";
        return 1;
    } catch (const budget_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const exclusion_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
