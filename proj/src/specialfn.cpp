#include "planorth/specialfn.hpp"

#include "planorth/bigreal.hpp"
#include "planorth/model.hpp"

#include <algorithm>
#include <cmath>

namespace planorth {

double log_gamma_real(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma_real: x must be positive");
    static const double g[9] = {0.99999999999980993,      676.5203681218851,
                                -1259.1392167224028,      771.32342877765313,
                                -176.61502916214059,      12.507343278686905,
                                -0.13857109526572012,     9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - log_gamma_real(1.0 - x);
    }
    double z = x - 1.0;
    double acc = g[0];
    for (int i = 1; i < 9; ++i) acc += g[i] / (z + i);
    double t = z + 7.5;
    return 0.5 * std::log(2.0 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

// ---------------------------------------------------------------------------
// Airy function
// ---------------------------------------------------------------------------

namespace {

constexpr double kAirySwitch = 9.0;

// Maclaurin series in 320-bit arithmetic; cancellation at |z| = 9 costs ~52 bits.
void airy_series(cplx z, cplx& ai, cplx& aip) {
    const mpfr_prec_t prec = 320;
    static const struct Consts {
        BigReal c1, c2;
        Consts()
            : c1(BigReal(0.0, 320)), c2(BigReal(0.0, 320)) {
            BigReal third(1.0, 320);
            third = third / BigReal(3.0, 320);
            BigReal g13 = gamma_ref(third);                       // Gamma(1/3)
            BigReal g23 = gamma_ref(BigReal(2.0, 320) / BigReal(3.0, 320));  // Gamma(2/3)
            BigReal p13(1.0, 320), p23(1.0, 320);
            mpfr_rootn_ui(p13.raw(), BigReal(3.0, 320).raw(), 3, MPFR_RNDN);  // 3^{1/3}
            p23 = p13 * p13;                                                   // 3^{2/3}
            c1 = BigReal(1.0, 320) / (p23 * g23);  // Ai(0)
            c2 = BigReal(1.0, 320) / (p13 * g13);  // -Ai'(0)
        }
    } k;

    BigComplex z3 = BigComplex(z.real(), z.imag(), prec) * BigComplex(z.real(), z.imag(), prec) *
                    BigComplex(z.real(), z.imag(), prec);
    BigComplex zb(z.real(), z.imag(), prec);
    BigComplex f(BigReal(1.0, prec), BigReal(0.0, prec));
    BigComplex g = zb;
    BigComplex fp(BigReal(0.0, prec), BigReal(0.0, prec));
    BigComplex gp(BigReal(1.0, prec), BigReal(0.0, prec));
    BigComplex tf = f, tg = g;
    double zmag = std::abs(z);
    int kmax = 40 + static_cast<int>(6.0 * zmag);
    for (int j = 0; j < kmax; ++j) {
        double d1 = (3.0 * j + 2.0) * (3.0 * j + 3.0);
        double d2 = (3.0 * j + 3.0) * (3.0 * j + 4.0);
        tf = tf * z3;
        tf.re = tf.re / BigReal(d1, prec);
        tf.im = tf.im / BigReal(d1, prec);
        tg = tg * z3;
        tg.re = tg.re / BigReal(d2, prec);
        tg.im = tg.im / BigReal(d2, prec);
        f = f + tf;
        g = g + tg;
        // derivative series: d/dz z^{3k} = 3k z^{3k-1}, d/dz z^{3k+1} = (3k+1) z^{3k}
        BigComplex dtf = tf, dtg = tg;
        double m1 = 3.0 * (j + 1);
        double m2 = 3.0 * (j + 1) + 1.0;
        if (zmag > 0) {
            dtf = dtf / zb;
            dtf.re = dtf.re * BigReal(m1, prec);
            dtf.im = dtf.im * BigReal(m1, prec);
            dtg = dtg / zb;
            dtg.re = dtg.re * BigReal(m2, prec);
            dtg.im = dtg.im * BigReal(m2, prec);
            fp = fp + dtf;
            gp = gp + dtg;
        }
    }
    BigComplex aib = BigComplex(k.c1 * f.re - k.c2 * g.re, k.c1 * f.im - k.c2 * g.im);
    BigComplex aipb = BigComplex(k.c1 * fp.re - k.c2 * gp.re, k.c1 * fp.im - k.c2 * gp.im);
    ai = cplx(aib.re.to_double(), aib.im.to_double());
    aip = cplx(aipb.re.to_double(), aipb.im.to_double());
}

// asymptotic expansion, valid |arg z| < pi (used for |arg z| <= 2pi/3)
void airy_asymptotic(cplx z, cplx& ai, cplx& aip) {
    cplx z12 = std::sqrt(z);                  // principal
    cplx chi = (2.0 / 3.0) * z * z12;         // (2/3) z^{3/2}
    cplx z14 = std::sqrt(z12);                // z^{1/4}
    cplx su = 1.0, sv = 1.0;
    double uk = 1.0;
    cplx chipow = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 40; ++k) {
        uk *= (6.0 * k - 5.0) * (6.0 * k - 1.0) / (72.0 * k);
        double vk = uk * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
        chipow /= chi;
        double mag = uk * std::abs(chipow);
        if (mag > prev) break;  // past the optimal truncation
        prev = mag;
        double sgn = (k % 2 == 0) ? 1.0 : -1.0;
        su += sgn * uk * chipow;
        sv += sgn * vk * chipow;
    }
    cplx pref = std::exp(-chi) / (2.0 * std::sqrt(M_PI));
    ai = pref / z14 * su;
    aip = -pref * z14 * sv;
}

}  // namespace

cplx airy_ai(cplx z) {
    cplx ai, aip;
    if (std::abs(z) <= kAirySwitch) {
        airy_series(z, ai, aip);
        return ai;
    }
    if (std::abs(std::arg(z)) <= 2.0 * M_PI / 3.0 + 1e-14) {
        airy_asymptotic(z, ai, aip);
        return ai;
    }
    // connection: Ai(z) + w Ai(w z) + w^2 Ai(w^2 z) = 0, w = e^{2 pi i/3}
    cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    cplx a1, a1p, a2, a2p;
    airy_asymptotic(w * z, a1, a1p);
    airy_asymptotic(z / w, a2, a2p);
    return -w * a1 - a2 / w;
}

cplx airy_ai_prime(cplx z) {
    cplx ai, aip;
    if (std::abs(z) <= kAirySwitch) {
        airy_series(z, ai, aip);
        return aip;
    }
    if (std::abs(std::arg(z)) <= 2.0 * M_PI / 3.0 + 1e-14) {
        airy_asymptotic(z, ai, aip);
        return aip;
    }
    cplx w = std::polar(1.0, 2.0 * M_PI / 3.0);
    cplx a1, a1p, a2, a2p;
    airy_asymptotic(w * z, a1, a1p);
    airy_asymptotic(z / w, a2, a2p);
    // differentiate the connection identity
    return -w * w * a1p - a2p / (w * w);
}

// ---------------------------------------------------------------------------
// Faddeeva function and the entire function of the double-point parametrix
// ---------------------------------------------------------------------------

namespace {

// Maclaurin w(z) = sum (iz)^n / Gamma(n/2 + 1), summed in 384-bit arithmetic.
cplx faddeeva_series(cplx z) {
    const mpfr_prec_t prec = 384;
    BigComplex iz(-z.imag(), z.real(), prec);
    BigComplex term(BigReal(1.0, prec), BigReal(0.0, prec));
    BigComplex sum = term;
    BigReal pi = const_pi(prec);
    BigReal sqrtpi = sqrt(pi);
    // Gamma(n/2+1) by the two-step recurrence d_n = (n/2) d_{n-2};
    // run until the terms drop 40 digits below the largest one seen
    BigReal d_even(1.0, prec);                    // Gamma(1)
    BigReal d_odd = sqrtpi * BigReal(0.5, prec);  // Gamma(3/2)
    BigComplex izp = iz;
    double log_zmag = 0.5 * std::log(std::norm(z));
    double peak = 0.0;
    for (int n = 1; n <= 2000; ++n) {
        BigReal* denom;
        if (n % 2 == 1) {
            denom = &d_odd;
        } else {
            d_even *= BigReal(0.5 * n, prec);
            denom = &d_even;
        }
        sum = sum + BigComplex(izp.re / *denom, izp.im / *denom);
        double log_term = n * log_zmag - denom->log_abs();
        peak = std::max(peak, log_term);
        if (log_term < peak - 95.0 && n > 8) break;
        if (n % 2 == 1) d_odd *= BigReal(0.5 * (n + 2), prec);
        izp = izp * iz;
    }
    return {sum.re.to_double(), sum.im.to_double()};
}

// Laplace continued fraction, accurate for |z| >~ 7 in the upper half plane.
cplx faddeeva_cf(cplx z) {
    const int depth = 48;
    cplx t = 0.0;
    for (int k = depth; k >= 1; --k) t = (0.5 * k) / (z - t);
    return cplx(0.0, 1.0 / std::sqrt(M_PI)) / (z - t);
}

}  // namespace

cplx faddeeva_w(cplx z) {
    if (z.imag() < 0.0) {
        // w(z) = 2 e^{-z^2} - w(-z); usable while e^{-z^2} stays in range
        cplx e = std::exp(-z * z);
        return 2.0 * e - faddeeva_w(-z);
    }
    return std::abs(z) <= 7.0 ? faddeeva_series(z) : faddeeva_cf(z);
}

cplx entire_F(cplx zeta) {
    const double inv_sqrt2 = 0.7071067811865475244;
    if (zeta.real() <= 0.0) {
        // (1/2) e^{zeta^2/2} erfc(-zeta/sqrt2) = (1/2) w(-i zeta/sqrt2), Im arg >= 0
        return 0.5 * faddeeva_w(cplx(0.0, -1.0) * zeta * inv_sqrt2);
    }
    return std::exp(0.5 * zeta * zeta) - 0.5 * faddeeva_w(cplx(0.0, 1.0) * zeta * inv_sqrt2);
}

// ---------------------------------------------------------------------------
// Hastings-McLeod
// ---------------------------------------------------------------------------

namespace {

// 7-point interior second derivative, one-sided fallback near the edges
double second_deriv(const std::vector<double>& q, size_t i, double h) {
    size_t n = q.size();
    if (i >= 3 && i + 3 < n) {
        return (2.0 * q[i - 3] - 27.0 * q[i - 2] + 270.0 * q[i - 1] - 490.0 * q[i] +
                270.0 * q[i + 1] - 27.0 * q[i + 2] + 2.0 * q[i + 3]) /
               (180.0 * h * h);
    }
    return (q[i - 1] - 2.0 * q[i] + q[i + 1]) / (h * h);
}

double first_deriv(const std::vector<double>& q, size_t i, double h) {
    size_t n = q.size();
    if (i >= 3 && i + 3 < n) {
        return (-q[i - 3] + 9.0 * q[i - 2] - 45.0 * q[i - 1] + 45.0 * q[i + 1] - 9.0 * q[i + 2] +
                q[i + 3]) /
               (60.0 * h);
    }
    if (i == 0) return (-3.0 * q[0] + 4.0 * q[1] - q[2]) / (2.0 * h);
    if (i + 1 == n) return (3.0 * q[n - 1] - 4.0 * q[n - 2] + q[n - 3]) / (2.0 * h);
    return (q[i + 1] - q[i - 1]) / (2.0 * h);
}

// Newton on the 3-point discretization of q'' = s q + 2 q^3 with Dirichlet data.
std::vector<double> solve_bvp(double s_min, double s_max, int n) {
    double h = (s_max - s_min) / (n - 1);
    std::vector<double> s(n), q(n);
    for (int i = 0; i < n; ++i) s[i] = s_min + h * i;

    double q_right = airy_ai(cplx(s_max, 0.0)).real();
    double q_left = std::sqrt(-0.5 * s_min) * (1.0 + 1.0 / (8.0 * s_min * s_min * s_min));

    for (int i = 0; i < n; ++i) {
        if (s[i] >= 0.0) {
            q[i] = airy_ai(cplx(s[i], 0.0)).real();
        } else if (s[i] <= -1.5) {
            q[i] = std::sqrt(-0.5 * s[i]);
        } else {
            double w = -s[i] / 1.5;  // blend on (-1.5, 0)
            q[i] = (1.0 - w) * 0.3550280538878172 + w * std::sqrt(0.75);
        }
    }
    q[0] = q_left;
    q[n - 1] = q_right;

    std::vector<double> res(n, 0.0), dl(n), dd(n), du(n), delta(n);
    auto residual = [&](const std::vector<double>& qq, std::vector<double>& out) {
        double norm = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            out[i] = (qq[i - 1] - 2.0 * qq[i] + qq[i + 1]) / (h * h) - s[i] * qq[i] -
                     2.0 * qq[i] * qq[i] * qq[i];
            norm = std::max(norm, std::fabs(out[i]));
        }
        return norm;
    };

    // attainable residual floor: rounding of the 1/h^2 difference quotient
    const double floor_tol = 64.0 * 2.2e-16 / (h * h);
    double rnorm = residual(q, res);
    for (int iter = 0; iter < 80 && rnorm > floor_tol; ++iter) {
        // tridiagonal Jacobian solve (Thomas algorithm)
        for (int i = 1; i + 1 < n; ++i) {
            dl[i] = 1.0 / (h * h);
            du[i] = 1.0 / (h * h);
            dd[i] = -2.0 / (h * h) - s[i] - 6.0 * q[i] * q[i];
        }
        std::vector<double> cp(n), dp(n);
        cp[1] = du[1] / dd[1];
        dp[1] = -res[1] / dd[1];
        for (int i = 2; i + 1 < n; ++i) {
            double m = dd[i] - dl[i] * cp[i - 1];
            cp[i] = du[i] / m;
            dp[i] = (-res[i] - dl[i] * dp[i - 1]) / m;
        }
        delta[n - 2] = dp[n - 2];
        for (int i = n - 3; i >= 1; --i) delta[i] = dp[i] - cp[i] * delta[i + 1];

        double lambda = 1.0;
        std::vector<double> trial = q;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            for (int i = 1; i + 1 < n; ++i) trial[i] = q[i] + lambda * delta[i];
            double tn = residual(trial, res);
            if (tn < rnorm || tn < floor_tol) {
                q = trial;
                rnorm = tn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            rnorm = residual(q, res);  // restore the residual vector for q
            break;                     // rounding plateau
        }
    }
    if (rnorm > 1e-8) throw ConvergenceError("hastings_mcleod: Newton did not converge");
    return q;
}

}  // namespace

HastingsMcLeodTable hastings_mcleod(double s_min, double s_max, int n_grid) {
    if (!(s_min < 0.0 && 0.0 < s_max) || s_min < -12.0 || s_max > 12.0)
        throw std::invalid_argument("hastings_mcleod: need s_min < 0 < s_max, |s| <= 12");

    HastingsMcLeodTable tab;
    tab.s_min = s_min;
    tab.s_max = s_max;
    tab.h = (s_max - s_min) / (n_grid - 1);

    std::vector<double> coarse = solve_bvp(s_min, s_max, n_grid);
    std::vector<double> fine = solve_bvp(s_min, s_max, 2 * n_grid - 1);

    tab.grid.resize(n_grid);
    tab.q.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        tab.grid[i] = s_min + tab.h * i;
        tab.q[i] = (4.0 * fine[2 * i] - coarse[i]) / 3.0;  // Richardson, O(h^4)
    }
    tab.q_prime.resize(n_grid);
    tab.u.resize(n_grid);
    for (int i = 0; i < n_grid; ++i) {
        tab.q_prime[i] = first_deriv(tab.q, i, tab.h);
        double s = tab.grid[i], qi = tab.q[i];
        tab.u[i] = tab.q_prime[i] * tab.q_prime[i] - s * qi * qi - qi * qi * qi * qi;
    }
    return tab;
}

namespace {

double interp5(const std::vector<double>& grid, const std::vector<double>& val, double h,
               double s) {
    int n = static_cast<int>(grid.size());
    int i0 = static_cast<int>(std::floor((s - grid[0]) / h)) - 2;
    i0 = std::clamp(i0, 0, n - 6);
    // Neville on 6 nodes
    double x[6], y[6];
    for (int k = 0; k < 6; ++k) {
        x[k] = grid[i0 + k];
        y[k] = val[i0 + k];
    }
    for (int m = 1; m < 6; ++m)
        for (int k = 0; k < 6 - m; ++k)
            y[k] = ((s - x[k + m]) * y[k] + (x[k] - s) * y[k + 1]) / (x[k] - x[k + m]);
    return y[0];
}

}  // namespace

double HastingsMcLeodTable::eval_q(double s) const {
    if (!in_range(s)) throw TableRangeError("Hastings-McLeod table: s out of range");
    return interp5(grid, q, h, s);
}
double HastingsMcLeodTable::eval_q_prime(double s) const {
    if (!in_range(s)) throw TableRangeError("Hastings-McLeod table: s out of range");
    return interp5(grid, q_prime, h, s);
}
double HastingsMcLeodTable::eval_u(double s) const {
    if (!in_range(s)) throw TableRangeError("Hastings-McLeod table: s out of range");
    return interp5(grid, u, h, s);
}

double HastingsMcLeodTable::ode_residual() const {
    double worst = 0.0;
    for (size_t i = 3; i + 3 < q.size(); ++i) {
        double qpp = second_deriv(q, i, h);
        worst = std::max(worst, std::fabs(qpp - grid[i] * q[i] - 2.0 * q[i] * q[i] * q[i]));
    }
    return worst;
}

double u_prime_identity_check(const HastingsMcLeodTable& tab) {
    double worst = 0.0;
    for (size_t i = 3; i + 3 < tab.u.size(); ++i) {
        double up = first_deriv(tab.u, i, tab.h);
        worst = std::max(worst, std::fabs(up + tab.q[i] * tab.q[i]));
    }
    return worst;
}

}  // namespace planorth
