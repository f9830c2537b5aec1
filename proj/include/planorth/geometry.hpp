#pragma once

#include "planorth/curves.hpp"
#include "planorth/model.hpp"

#include <complex>
#include <stdexcept>

namespace planorth {

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OnCutError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pre-critical geometry: parameters of the rational exterior map
/// f(v) = rho v - kappa/(v-alpha) - kappa/alpha and derived branch data.
struct PreGeometry {
    double a = 0, c = 0, t = 0;
    double rho = 0, kappa = 0, alpha = 0;
    cplx beta;      // branch point, Im > 0
    cplx v_beta;    // critical point alpha + i sqrt(kappa/rho)
    double abs_beta = 0;  // alpha rho + kappa/alpha
    double b = 0;         // rho/alpha, the real zero of y in (a, inf)

    struct Residuals {
        double cubic = 0, vals1 = 0, vals2 = 0, vals3 = 0;
    } residuals;

    double scale() const { return std::max({rho, b, std::abs(beta)}); }
};

/// Post-critical data; for t < t_c this is the complex-conjugate critical
/// extension with Im beta > 0 > Im b.
struct PostGeometry {
    double a = 0, c = 0, t = 0;
    cplx beta, b;
    double ell = 0;         // Robin constant, Eq. for Re g continuity at beta
    double big_radius = 0;  // sqrt(t+c)
    double small_radius = 0;  // sqrt(c)
    bool real_branch_points = true;
};

struct CriticalGeometry {
    double a = 0, c = 0, t = 0, N = 0;
    double b_c = 0;      // a + sqrt(c)
    double gamma_c = 0;  // 2 b_c^{1/3} c^{1/6} a^{-1/3}
    cplx phi_b;          // phi(b) from the closed antiderivative
    cplx W_beta;         // real for t <= t_c, purely imaginary for t > t_c
    double s = 0;        // -4 N^{2/3} W_beta^2
    cplx b_star;         // root of the local cubic coordinate
    double gamma_star = 0;
    cplx zeta_beta;      // N^{1/3} W_beta
};

PreGeometry solve_pre_geometry(double a, double c, double t);
PostGeometry solve_post_geometry(double a, double c, double t);
CriticalGeometry solve_critical_geometry(double a, double c, double t, double N);

// -- pre-critical maps --------------------------------------------------------

cplx conformal_f(const PreGeometry& g, cplx v);
cplx conformal_f_prime(const PreGeometry& g, cplx v);
cplx deck(const PreGeometry& g, cplx v);

/// sqrt((z-beta)(z-conj beta)) with branch cut on the traced curve and
/// asymptotics ~ z at infinity.
cplx sqrt_cut(const PreGeometry& g, const TracedCurve& cut, cplx z);

cplx conformal_F(const PreGeometry& g, const TracedCurve& cut, cplx z);
cplx conformal_F_prime(const PreGeometry& g, const TracedCurve& cut, cplx z);

cplx eval_y_pre(const PreGeometry& g, const TracedCurve& cut, cplx z);
cplx schwarz_S_pre(const PreGeometry& g, const TracedCurve& cut, cplx z);
cplx schwarz_S_back(const PreGeometry& g, const TracedCurve& cut, cplx z);

/// |Re phi(z)| from the exact antiderivative in the uniformizing variable;
/// branch-insensitive, used as the independent residual oracle for traces.
double u_op_closed_abs(const PreGeometry& g, cplx z);

/// Boundary of K, the image of the unit circle under f, as a polyline.
TracedCurve pre_boundary_curve(const PreGeometry& g, size_t n_nodes = 4096);

// -- post/critical closed forms ----------------------------------------------

/// Antiderivative of the exterior branch of y: a z + c Log(z-a) - (t+c) Log z.
cplx y_antiderivative_ext(double a, double c, double t, cplx z);

/// Re of the above (single-valued).
double re_y_antiderivative_ext(double a, double c, double t, cplx z);

/// y on the exterior branch: a (z-b)(z-beta) / (z (z-a)).
cplx eval_y_post_ext(const PostGeometry& g, cplx z);

/// Schwarz function per Def of the post/critical case (+/- exterior flag).
cplx schwarz_S_post(const PostGeometry& g, cplx z, bool exterior);

double robin_ell(double a, double c, double t, cplx beta);

double ell_2d_pre(const PreGeometry& g);
double ell_2d_post(double c, double t);

}  // namespace planorth
