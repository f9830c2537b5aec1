#include "planorth/geometry.hpp"

#include <cmath>

namespace planorth {

namespace {

// P(X) = X^3 - p2 X^2 + q0, the branch-point cubic in X = alpha^2.
struct Cubic {
    double p2, q0;
    double operator()(double x) const { return ((x - p2) * x) * x + q0; }
    double deriv(double x) const { return (3.0 * x - 2.0 * p2) * x; }
};

double select_cubic_root(double a, double c, double t) {
    Cubic P{(a * a + 4.0 * c + 2.0 * t) / (2.0 * a * a), t * t / (2.0 * a * a * a * a)};
    double hi = std::min(1.0, t / (a * a));

    // Cardano (three real roots; the discriminant is strictly positive).
    double p = -P.p2 * P.p2 / 3.0;
    double q = P.q0 - 2.0 * std::pow(P.p2, 3) / 27.0;
    double m = 2.0 * std::sqrt(-p / 3.0);
    double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    double theta = std::acos(arg) / 3.0;
    double root = -1.0;
    for (int k = 0; k < 3; ++k) {
        double x = m * std::cos(theta - 2.0 * M_PI * k / 3.0) + P.p2 / 3.0;
        if (x > 0.0 && x < hi) root = x;
    }
    if (root < 0.0) {
        // bisection fallback; P(0) > 0 > P(hi)
        double lo = 0.0, h = hi;
        if (!(P(lo) > 0.0 && P(h) < 0.0)) throw ConvergenceError("cubic: bracket failed");
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + h);
            (P(mid) > 0.0 ? lo : h) = mid;
        }
        root = 0.5 * (lo + h);
    }
    // Newton polish in extended precision
    long double x = root;
    for (int i = 0; i < 6; ++i) {
        long double f = ((x - (long double)P.p2) * x) * x + (long double)P.q0;
        long double df = (3.0L * x - 2.0L * (long double)P.p2) * x;
        x -= f / df;
    }
    return static_cast<double>(x);
}

}  // namespace

PreGeometry solve_pre_geometry(double a, double c, double t) {
    double tc = critical_time(a, c);
    if (!(t > 0.0) || t >= tc) throw RegimeError("solve_pre_geometry requires 0 < t < t_c");

    PreGeometry g;
    g.a = a; g.c = c; g.t = t;
    double X = select_cubic_root(a, c, t);
    g.alpha = std::sqrt(X);
    g.rho = (t + a * a * X) / (2.0 * a * g.alpha);
    g.kappa = (1.0 - X) * (t - a * a * X) / (2.0 * a * g.alpha);
    if (!(g.kappa > 0.0) || !(g.rho > 0.0)) throw ConvergenceError("pre geometry: negative rho/kappa");

    g.beta = cplx(g.alpha * g.rho - g.kappa / g.alpha, 2.0 * std::sqrt(g.kappa * g.rho));
    g.v_beta = cplx(g.alpha, std::sqrt(g.kappa / g.rho));
    g.abs_beta = g.alpha * g.rho + g.kappa / g.alpha;
    g.b = g.rho / g.alpha;

    Cubic P{(a * a + 4.0 * c + 2.0 * t) / (2.0 * a * a), t * t / (2.0 * a * a * a * a)};
    double coeff_scale = std::max({1.0, P.p2, P.q0});
    g.residuals.cubic = std::fabs(P(X)) / coeff_scale;
    double s1 = (g.rho * X - g.rho + g.kappa) / (g.alpha * (X - 1.0));
    g.residuals.vals1 = std::fabs(s1 - a) / a;
    double s2 = (g.kappa / X) * (g.rho + g.kappa * X / ((1.0 - X) * (1.0 - X)));
    g.residuals.vals2 = std::fabs(s2 - c) / c;
    double s3 = g.kappa * g.rho / X + g.rho * g.rho;
    g.residuals.vals3 = std::fabs(s3 - (c + t)) / (c + t);
    return g;
}

PostGeometry solve_post_geometry(double a, double c, double t) {
    if (!(t > 0.0)) throw RegimeError("solve_post_geometry requires t > 0");
    PostGeometry g;
    g.a = a; g.c = c; g.t = t;
    g.big_radius = std::sqrt(t + c);
    g.small_radius = std::sqrt(c);
    double disc = (t - a * a) * (t - a * a) - 4.0 * a * a * c;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        g.beta = cplx((a * a + t - s) / (2.0 * a), 0.0);
        g.b = cplx((a * a + t + s) / (2.0 * a), 0.0);
        g.real_branch_points = true;
    } else {
        double s = std::sqrt(-disc);
        g.beta = cplx((a * a + t) / (2.0 * a), s / (2.0 * a));
        g.b = std::conj(g.beta);
        g.real_branch_points = false;
    }
    g.ell = robin_ell(a, c, t, g.beta);
    return g;
}

double robin_ell(double a, double c, double t, cplx beta) {
    cplx v = (t + c) * std::log(beta) - c * std::log(beta - a) - beta * a;
    return v.real() / t;
}

cplx y_antiderivative_ext(double a, double c, double t, cplx z) {
    return a * z + c * std::log(z - a) - (t + c) * std::log(z);
}

double re_y_antiderivative_ext(double a, double c, double t, cplx z) {
    return a * z.real() + c * std::log(std::abs(z - a)) - (t + c) * std::log(std::abs(z));
}

cplx eval_y_post_ext(const PostGeometry& g, cplx z) {
    if (z == 0.0 || z == cplx(g.a)) throw PoleError("y: pole at 0 or a");
    return g.a * (z - g.b) * (z - g.beta) / (z * (z - g.a));
}

cplx schwarz_S_post(const PostGeometry& g, cplx z, bool exterior) {
    cplx y = eval_y_post_ext(g, z);
    if (!exterior) y = -y;
    return 0.5 * g.a + 0.5 * g.c / (z - g.a) + 0.5 * (g.c + g.t) / z - 0.5 * y;
}

CriticalGeometry solve_critical_geometry(double a, double c, double t, double N) {
    CriticalGeometry g;
    g.a = a; g.c = c; g.t = t; g.N = N;
    g.b_c = a + std::sqrt(c);
    g.gamma_c = 2.0 * std::cbrt(g.b_c) * std::pow(c, 1.0 / 6.0) / std::cbrt(a);

    PostGeometry pg = solve_post_geometry(a, c, t);
    if (pg.beta.real() <= a)
        throw RegimeError("critical geometry: t too far from t_c (Re beta <= a)");
    // phi(b) along a path avoiding the log cuts: the straight segment from beta
    // to b crosses the real axis to the right of a.
    g.phi_b = y_antiderivative_ext(a, c, t, pg.b) - y_antiderivative_ext(a, c, t, pg.beta);

    double tc = critical_time(a, c);
    double w0 = std::cbrt(3.0) / std::pow(2.0, 5.0 / 3.0) * std::cbrt(std::abs(g.phi_b));
    g.W_beta = (t <= tc) ? cplx(w0, 0.0) : cplx(0.0, w0);
    cplx wb2 = g.W_beta * g.W_beta;
    g.s = -4.0 * std::pow(N, 2.0 / 3.0) * wb2.real();
    g.zeta_beta = std::cbrt(N) * g.W_beta;

    // b*_c solves phi_ext(z) = phi(b)/2; Newton from the first-order location.
    cplx target = y_antiderivative_ext(a, c, t, pg.beta) + 0.5 * g.phi_b;
    cplx z = g.b_c + (t - tc) / (4.0 * g.b_c);
    for (int i = 0; i < 60; ++i) {
        cplx f = y_antiderivative_ext(a, c, t, z) - target;
        cplx y = g.a * (z - pg.b) * (z - pg.beta) / (z * (z - g.a));
        cplx step = f / y;
        z -= step;
        if (std::abs(step) < 1e-15 * std::abs(z)) break;
    }
    g.b_star = z;
    cplx ybs = g.a * (z - pg.b) * (z - pg.beta) / (z * (z - g.a));
    cplx gs = 8.0 * wb2 / ybs;
    g.gamma_star = gs.real();
    return g;
}

// -- pre-critical maps --------------------------------------------------------

cplx conformal_f(const PreGeometry& g, cplx v) {
    if (v == cplx(g.alpha)) throw PoleError("f: pole at v = alpha");
    return g.rho * v - g.kappa / (v - g.alpha) - g.kappa / g.alpha;
}

cplx conformal_f_prime(const PreGeometry& g, cplx v) {
    if (v == cplx(g.alpha)) throw PoleError("f': pole at v = alpha");
    cplx d = v - g.alpha;
    return g.rho + g.kappa / (d * d);
}

cplx deck(const PreGeometry& g, cplx v) {
    if (v == cplx(g.alpha)) throw PoleError("deck: pole at v = alpha");
    return g.alpha - (g.kappa / g.rho) / (v - g.alpha);
}

namespace {

// Crossings of segment [p,q] with the two vertical rays {Re beta + iy, |y| >= Im beta},
// the principal-branch discontinuities of sqrt((z-beta)(z-conj beta)).
int ray_crossings(const PreGeometry& g, cplx p, cplx q) {
    double xb = g.beta.real(), yb = g.beta.imag();
    double dx = q.real() - p.real();
    if (dx == 0.0) return 0;
    double s = (xb - p.real()) / dx;
    if (s <= 0.0 || s >= 1.0) return 0;
    double y = p.imag() + s * (q.imag() - p.imag());
    return (std::fabs(y) >= yb) ? 1 : 0;
}

}  // namespace

cplx sqrt_cut(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    cplx r0 = std::sqrt((z - g.beta) * (z - std::conj(g.beta)));
    cplx anchor(3.0 * std::max({g.b, std::abs(g.beta), g.a}) + 10.0 * g.scale(), 0.0);
    int flips = count_crossings(cut, anchor, z) + ray_crossings(g, anchor, z);
    return (flips & 1) ? -r0 : r0;
}

cplx conformal_F(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    return (z + g.abs_beta + sqrt_cut(g, cut, z)) / (2.0 * g.rho);
}

cplx conformal_F_prime(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    cplx R = sqrt_cut(g, cut, z);
    return (1.0 + (z - g.beta.real()) / R) / (2.0 * g.rho);
}

cplx eval_y_pre(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    if (z == 0.0 || z == cplx(g.a)) throw PoleError("y: pole at 0 or a");
    return g.a * (z - g.b) * sqrt_cut(g, cut, z) / ((z - g.a) * z);
}

cplx schwarz_S_pre(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    return 0.5 * g.a + 0.5 * g.c / (z - g.a) + 0.5 * (g.c + g.t) / z -
           0.5 * eval_y_pre(g, cut, z);
}

cplx schwarz_S_back(const PreGeometry& g, const TracedCurve& cut, cplx z) {
    return schwarz_S_pre(g, cut, z) + eval_y_pre(g, cut, z);
}

double u_op_closed_abs(const PreGeometry& g, cplx z) {
    // Re of the antiderivative of f(1/u) f'(u) between the two preimages of z.
    double D = (g.kappa / g.alpha) * (g.rho - g.kappa / (1.0 - g.alpha * g.alpha));
    auto reG = [&](cplx u) {
        return (g.c + g.t) * std::log(std::abs(u)) + g.c * std::log(std::abs(u - 1.0 / g.alpha)) -
               g.c * std::log(std::abs(u - g.alpha)) - (D / (u - g.alpha)).real();
    };
    cplx r0 = std::sqrt((z - g.beta) * (z - std::conj(g.beta)));
    cplx v = (z + g.abs_beta + r0) / (2.0 * g.rho);
    cplx w = deck(g, v);
    return std::fabs(reG(w) - reG(v));
}

TracedCurve pre_boundary_curve(const PreGeometry& g, size_t n_nodes) {
    TracedCurve curve;
    curve.kind = CurveKind::Boundary;
    curve.closed = true;
    curve.points.reserve(n_nodes);
    for (size_t k = 0; k < n_nodes; ++k) {
        double th = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n_nodes);
        curve.points.push_back(conformal_f(g, std::polar(1.0, th)));
    }
    curve.rebuild_arclength();
    return curve;
}

double ell_2d_pre(const PreGeometry& g) {
    double a = g.a, c = g.c, t = g.t, al = g.alpha, rho = g.rho;
    return 2.0 * (c + t) * std::log(rho) - 2.0 * c * std::log(al) +
           (al * al - 1.0) * (a * a - 2.0 * a * rho / al) - rho * rho / (al * al);
}

double ell_2d_post(double c, double t) {
    return (c + t) * std::log(c + t) - (c + t);
}

}  // namespace planorth
