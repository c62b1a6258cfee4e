#ifndef MURM_QUADRATURE_HPP
#define MURM_QUADRATURE_HPP

#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

namespace murm {

struct GaussLegendre {
    std::vector<double> x, w;  // nodes/weights on [-1, 1]
};

// Nodes by Newton iteration on P_n; n modest (<= a few hundred).
inline GaussLegendre gauss_legendre(int n) {
    GaussLegendre g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double p1 = 0, dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        g.x[i] = x;
        g.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

// Integrate f over [a, b]; when sing_hi (resp. sing_lo) is set the integrand
// carries an integrable 1/sqrt singularity at b (resp. a), removed by the
// substitution u = b - t^2 (resp. u = a + t^2).
template <typename Fn>
double panel_integral(Fn&& f, double a, double b, bool sing_lo, bool sing_hi,
                      const GaussLegendre& g) {
    if (b <= a) return 0.0;
    if (sing_lo && sing_hi) {
        double m = 0.5 * (a + b);
        return panel_integral(f, a, m, true, false, g) +
               panel_integral(f, m, b, false, true, g);
    }
    double s = 0;
    if (sing_hi || sing_lo) {
        double T = std::sqrt(b - a);
        for (size_t i = 0; i < g.x.size(); ++i) {
            double t = 0.5 * T * (g.x[i] + 1);
            double u = sing_hi ? b - t * t : a + t * t;
            s += f(u) * 2 * t * 0.5 * T * g.w[i];
        }
        return s;
    }
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (size_t i = 0; i < g.x.size(); ++i) s += f(mid + half * g.x[i]) * g.w[i];
    return s * half;
}

}  // namespace murm

#endif
