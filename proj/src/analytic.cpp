#include "murm/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "murm/quadrature.hpp"

namespace murm {

using std::numbers::pi;

Rational Q_d(u64 d, const PrimeTable& base) {
    if (d < 1) throw std::invalid_argument("Q_d: d >= 1");
    Rational r = 1;
    for (auto& [q, e] : factorize(d, base).factors) {
        if (e > 1) return rat(0);
        if (q == 2) continue;
        long ql = static_cast<long>(q);
        r *= rat(ql * ql) / rat(ql * ql * ql * ql - 2 * ql * ql - ql + 1);
    }
    return r;
}

double bessel_j0(double x) {
    if (x < 0) throw std::invalid_argument("bessel_j0: x >= 0");
    if (x <= 14.0) {
        // ascending series; cancellation at x = 14 stays ~1e-11 absolute
        double term = 1.0, sum = 1.0;
        double q = x * x / 4.0;
        for (int k = 1; k < 80; ++k) {
            term *= -q / (double(k) * double(k));
            sum += term;
            if (std::abs(term) < 1e-20) break;
        }
        return sum;
    }
    // Hankel asymptotics: J0(z) = sqrt(2/(pi z)) Re[e^{i(z - pi/4)} sum_k b_k i^k z^-k],
    // b_k = (-1)^k (1^2 3^2 ... (2k-1)^2)/(k! 8^k)
    std::complex<double> acc(1.0, 0.0);
    std::complex<double> iz(0.0, 1.0 / x);
    std::complex<double> cur(1.0, 0.0);
    double bk = 1.0;
    for (int k = 1; k <= 13; ++k) {
        bk *= -double(2 * k - 1) * double(2 * k - 1) / (8.0 * k);
        cur *= iz;
        acc += bk * cur;
    }
    double w = x - pi / 4;
    std::complex<double> phase(std::cos(w), std::sin(w));
    return std::sqrt(2.0 / (pi * x)) * (phase * acc).real();
}

namespace {

// Q(d) as doubles via the spf recurrence, up to limit
std::vector<double> qd_float(u32 limit, const PrimeTable& base) {
    std::vector<double> Q(limit + 1, 0.0);
    Q[1] = 1.0;
    for (u64 d = 2; d <= limit; ++d) {
        u64 q = base.smallest_prime_factor[d];
        u64 m = d / q;
        if (m % q == 0) continue;  // not squarefree
        double f = (q == 2) ? 1.0
                            : double(q) * double(q) /
                                  (double(q) * q * q * q - 2.0 * q * q - q + 1.0);
        Q[d] = Q[m] * f;
    }
    return Q;
}

// sum_{m > M0} f(m) z^m by K-fold Abel (partial-summation) recursion;
// valid while |1-z| M0 >> K.
std::complex<double> osc_tail(const std::function<double(double)>& f, double M0,
                              std::complex<double> z, std::complex<double> zM1, int K) {
    if (K == 0) return {0.0, 0.0};
    auto g = [&f](double m) { return f(m) - f(m - 1); };
    return (zM1 * f(M0 + 1) + osc_tail(g, M0 + 1, z, zM1 * z, K - 1)) / (1.0 - z);
}

struct TailResult {
    double value = 0;
    double estimate = 0;
};

// sum_{m=1..inf} J0(alpha m): explicit sum to m_max plus tail handling.
TailResult bessel_m_sum(double alpha, const BesselSeriesParams& p) {
    TailResult r;
    double s = 0;
    for (u32 m = 1; m <= p.m_max; ++m) s += bessel_j0(alpha * m);
    double amp = std::sqrt(2.0 / (pi * alpha));
    double gap = std::abs(1.0 - std::exp(std::complex<double>(0, alpha)));
    switch (p.acceleration) {
        case BesselAccel::none: {
            r.value = s;
            r.estimate = amp * std::pow(double(p.m_max), -0.5) * (2.0 / gap);
            return r;
        }
        case BesselAccel::cesaro: {
            // average the partial sums over the last L terms
            u32 L = std::max<u32>(p.m_max / 4, 8);
            double acc = 0, part = s;
            std::vector<double> tailvals(L);
            for (u32 j = 0; j < L; ++j) {
                tailvals[j] = part;
                part -= bessel_j0(alpha * (p.m_max - j));
            }
            for (double v : tailvals) acc += v;
            r.value = acc / L;
            r.estimate = amp * std::pow(double(p.m_max - L), -0.5) *
                         (2.0 / gap) * (2.0 / (L * gap) + 1.0 / L);
            return r;
        }
        case BesselAccel::tail_integral: {
            // two-term J0 asymptotics on the tail; oscillatory sums by Abel
            const int K = 8;
            std::complex<double> z = std::exp(std::complex<double>(0, alpha));
            std::complex<double> zM1 = std::exp(std::complex<double>(0, alpha * (p.m_max + 1)));
            std::complex<double> w = std::exp(std::complex<double>(0, -pi / 4));
            std::function<double(double)> f1 = [](double m) { return 1.0 / std::sqrt(m); };
            std::function<double(double)> f2 = [](double m) { return std::pow(m, -1.5); };
            std::complex<double> t1 = osc_tail(f1, p.m_max, z, zM1, K);
            std::complex<double> t2 = osc_tail(f2, p.m_max, z, zM1, K);
            r.value = s + amp * (w * t1).real() + amp / (8 * alpha) * (w * t2).imag();
            // next asymptotic order plus Abel truncation remainder
            double next = 9.0 / (128 * alpha * alpha) * amp * (2.0 / 3.0) *
                          std::pow(double(p.m_max), -1.5);
            double abel = std::pow(double(p.m_max), -0.5) *
                          std::pow(std::min(1.0, double(K) / (gap * p.m_max)), K) / gap;
            r.estimate = next + amp * abel;
            return r;
        }
    }
    throw std::logic_error("bessel_m_sum: bad acceleration");
}

}  // namespace

BesselDensity density_bessel(double Xi, const BesselSeriesParams& params,
                             const DensityParams& dp, const DensityConstants& C,
                             const PrimeTable& base) {
    params.validate();
    dp.validate();
    check_exclusion(Xi, dp.exclusion_radius);
    std::vector<double> Q = qd_float(params.d_max, base);
    double pref = 11.0 * pi * C.zeta2 * C.cbar / (4.0 * C.A) * std::sqrt(Xi);
    BesselDensity out;
    double acc = 0, est = 0;
    for (u32 d = 1; d <= params.d_max; ++d) {
        if (Q[d] == 0.0) continue;
        double alpha = 4.0 * pi * std::sqrt(Xi) / d;
        TailResult t = bessel_m_sum(alpha, params);
        acc += Q[d] / d * t.value;
        est += Q[d] / d * t.estimate;
    }
    // d-tail: |S(alpha_d)| <= d/(4 pi sqrt(Xi)) (1 + resonant part) + 1/2 and
    // sum_{d > D} Q(d) <= ~3/D  (crude majorant)
    double qtail = 3.0 / params.d_max;
    est += qtail * (1.0 / (4.0 * pi * std::sqrt(Xi)) * 4.0 + 0.5);
    out.value = pref * acc - 0.5;
    out.trunc_estimate = pref * est;
    return out;
}

EulerIdentityResiduals euler_identities(u32 M, const PrimeTable& base) {
    if (M < 1000) throw std::invalid_argument("euler_identities: M >= 1000");
    if (base.limit < M) throw std::invalid_argument("euler_identities: prime table < M");
    double z2 = 1.0, A = 1.0, cb = 1.0 / 3.0;
    for (u32 p : base.primes) {
        if (p > M) break;
        double pd = p;
        z2 /= 1.0 - 1.0 / (pd * pd);
        A *= 1.0 + pd / ((pd + 1) * (pd + 1) * (pd - 1));
        if (p > 2) {
            double li = 1.0 / pd;
            cb *= 1.0 - li * li - li * li * li / (1.0 - li * li);
        }
    }
    std::vector<double> Q = qd_float(M, base);
    std::vector<double> t1(M), t2(M);
    for (u64 d = 1; d <= M; ++d) {
        t1[d - 1] = Q[d];
        t2[d - 1] = Q[d] / double(d);
    }
    double sQ = pairwise_sum(t1), sQd = pairwise_sum(t2);
    EulerIdentityResiduals r;
    r.sumQ_residual = std::abs(z2 * cb / A * sQ - 8.0 / 11.0);
    r.sumQ_d_residual = std::abs(z2 * cb * sQd - 2.0 / 3.0);
    return r;
}

double L_series_check(double s, u32 M, const PrimeTable& base) {
    if (!(s > 0.5)) throw std::invalid_argument("L_series_check: s > 1/2 required");
    if (base.limit < M) throw std::invalid_argument("L_series_check: prime table < M");
    std::vector<double> Q = qd_float(M, base);
    std::vector<double> terms(M);
    for (u64 d = 1; d <= M; ++d)
        terms[d - 1] = Q[d] == 0.0 ? 0.0 : Q[d] * std::pow(double(d), -s);
    double direct = pairwise_sum(terms);
    double closed = zeta_real(s + 2) / zeta_real(2 * s + 4);
    closed *= (1.0 + std::pow(2.0, -s)) / (1.0 + 4.0 / 7.0 * std::pow(2.0, -s));
    for (u32 p : base.primes) {
        if (p > M) break;
        double pd = p;
        closed *= 1.0 + (2 * pd * pd + pd - 1) /
                            ((pd * pd * pd * pd - 2 * pd * pd - pd + 1) *
                             (std::pow(pd, s + 2) + 1));
    }
    return std::abs(direct - closed);
}

MurmurValue murmuration_fn(double Xi, const WeightFunction& weight,
                           const DensityParams& params, const DensityConstants& C,
                           const PrimeTable& base,
                           const std::function<double(double)>* density_override) {
    params.validate();
    if (Xi <= 0) return {0.0, 0.0};
    if (!(weight.b > weight.a && weight.a > 0))
        throw std::invalid_argument("murmuration_fn: weight support must be 0 < a < b");

    static const GaussLegendre g64 = gauss_legendre(64);
    static const GaussLegendre g32 = gauss_legendre(32);

    u32 y_max = static_cast<u32>(std::ceil(2.0 * std::sqrt(Xi / weight.a))) + 2;
    DensityEvaluator ev(y_max, C, base);
    auto density = [&](double v) -> double {
        return density_override ? (*density_override)(v) : ev(v);
    };
    auto fnum = [&](double u) {
        return density(Xi / u) * weight.eval(u) * std::sqrt(u);
    };

    // singular u where Xi/u crosses y^2/4; the blow-up sits on the u < u* side
    const double eps = 1e-12;
    std::vector<double> sing;
    for (u32 y = 1;; ++y) {
        double us = 4.0 * Xi / (double(y) * y);
        if (us < weight.a - eps) break;
        if (us <= weight.b + eps) sing.push_back(us);
    }
    std::sort(sing.begin(), sing.end());
    std::vector<double> edges;
    edges.push_back(weight.a);
    for (double s : sing)
        if (s > weight.a + eps && s < weight.b - eps) edges.push_back(s);
    edges.push_back(weight.b);

    auto is_sing = [&](double e) {
        for (double s : sing)
            if (std::abs(s - e) <= eps * std::max(1.0, std::abs(s))) return true;
        return false;
    };

    double num = 0, err = 0;
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        bool s_hi = is_sing(edges[i + 1]);
        double v64 = panel_integral(fnum, edges[i], edges[i + 1], false, s_hi, g64);
        double v32 = panel_integral(fnum, edges[i], edges[i + 1], false, s_hi, g32);
        num += v64;
        err += std::abs(v64 - v32);
    }
    double den = panel_integral([&](double u) { return weight.eval(u) * std::sqrt(u); },
                                weight.a, weight.b, false, false, g64);
    return {num / den, err / std::abs(den)};
}

AsymptoteReport asymptote_report(const WeightFunction& weight,
                                 const std::vector<double>& grid,
                                 const DensityParams& params,
                                 const DensityConstants& C, const PrimeTable& base,
                                 const std::function<double(double)>* density_override) {
    if (grid.size() < 2) throw std::invalid_argument("asymptote_report: need >= 2 points");
    auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
    if (*lo < 100.0) throw std::invalid_argument("asymptote_report: all points >= 100");
    if (*hi / *lo < 100.0)
        throw std::invalid_argument("asymptote_report: grid must span >= 2 decades");

    AsymptoteReport rep;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    u64 n = 0;
    for (double Xi : grid) {
        MurmurValue mv = murmuration_fn(Xi, weight, params, C, base, density_override);
        AsymptotePoint pt;
        pt.Xi = Xi;
        pt.abs_dev = std::abs(mv.value + 0.5);
        pt.quad_error = mv.quad_error;
        pt.dropped = pt.abs_dev < 10.0 * std::max(mv.quad_error, 1e-14);
        rep.points.push_back(pt);
        if (pt.dropped) {
            rep.n_dropped++;
            continue;
        }
        double x = std::log(Xi), y = std::log(pt.abs_dev);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    rep.n_used = n;
    if (n >= 2) {
        double det = n * sxx - sx * sx;
        rep.slope = (n * sxy - sx * sy) / det;
        rep.intercept = (sy * sxx - sx * sxy) / det;
    } else {
        rep.slope = std::nan("");
        rep.intercept = std::nan("");
    }
    return rep;
}

}  // namespace murm
