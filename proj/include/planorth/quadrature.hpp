#pragma once

#include <cmath>
#include <complex>

namespace planorth {

/// Adaptive Gauss-Kronrod (G7,K15) on [a,b] for complex integrands.
/// Panels are accepted on the local K15-G7 discrepancy against the relative
/// tolerance or a global absolute floor derived from the first whole-interval
/// estimate; a panel budget bounds the work on noisy integrands.
template <typename F>
std::complex<double> integrate_gk(F&& f, double a, double b, double rel_tol = 1e-12,
                                  double abs_tol = 0.0, int max_depth = 44) {
    static const double xgk[8] = {0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
                                  0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
                                  0.2077849550078985, 0.0};
    static const double wgk[8] = {0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
                                  0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
                                  0.2044329400752989, 0.2094821410847278};
    static const double wg[4] = {0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
                                 0.4179591836734694};

    auto kernel = [&](double lo, double hi, std::complex<double>& k15,
                      std::complex<double>& g7) {
        double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        k15 = wgk[7] * f(c);
        g7 = wg[3] * f(c);
        for (int i = 0; i < 7; ++i) {
            std::complex<double> fp = f(c + h * xgk[i]), fm = f(c - h * xgk[i]);
            k15 += wgk[i] * (fp + fm);
            if (i % 2 == 1) g7 += wg[i / 2] * (fp + fm);
        }
        k15 *= h;
        g7 *= h;
    };

    std::complex<double> k0, g0;
    kernel(a, b, k0, g0);
    const double floor_abs = std::max(abs_tol, rel_tol * std::abs(k0)) + 1e-305;

    struct Panel {
        double a, b;
        int depth;
    };
    Panel stack[256];
    int top = 0;
    stack[top++] = {a, b, 0};
    std::complex<double> total = 0.0;
    long budget = 60000;

    while (top > 0) {
        Panel p = stack[--top];
        std::complex<double> k15, g7;
        kernel(p.a, p.b, k15, g7);
        --budget;
        double err = std::abs(k15 - g7);
        double width_frac = (p.b - p.a) / (b - a);
        bool accept = err <= rel_tol * std::abs(k15) + floor_abs * width_frac ||
                      p.depth >= max_depth || budget <= 0 || top > 250;
        if (accept) {
            total += k15;
        } else {
            double mid = 0.5 * (p.a + p.b);
            stack[top++] = {mid, p.b, p.depth + 1};
            stack[top++] = {p.a, mid, p.depth + 1};
        }
    }
    return total;
}

/// Integral of f along the straight segment from z0 to z1.
template <typename F>
std::complex<double> integrate_segment(F&& f, std::complex<double> z0, std::complex<double> z1,
                                       double rel_tol = 1e-12) {
    std::complex<double> d = z1 - z0;
    return d * integrate_gk([&](double s) { return f(z0 + s * d); }, 0.0, 1.0, rel_tol);
}

}  // namespace planorth
