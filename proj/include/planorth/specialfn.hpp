#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace planorth {

using cplx = std::complex<double>;

/// log Gamma(x) for x > 0, Lanczos approximation (~1e-14 relative).
double log_gamma_real(double x);

/// Airy function of complex argument: Maclaurin series in extended precision
/// inside |z| <= switch radius, asymptotic expansion with sector rotation beyond.
cplx airy_ai(cplx z);
cplx airy_ai_prime(cplx z);

/// Faddeeva function w(z) = e^{-z^2} erfc(-iz) for Im z >= 0.
cplx faddeeva_w(cplx z);

/// Entire function from the double-point parametrix:
/// F(zeta) = (1/2pi i) int_{-i inf}^{i inf} e^{s^2/2}/(s - zeta) ds  (+ e^{zeta^2/2} for Re zeta > 0),
/// equal to (1/2) e^{zeta^2/2} erfc(-zeta/sqrt 2) in closed form.
cplx entire_F(cplx zeta);

struct HastingsMcLeodTable {
    double s_min = 0, s_max = 0, h = 0;
    std::vector<double> grid;
    std::vector<double> q, q_prime, u;
    int interpolation_order = 5;

    double eval_q(double s) const;
    double eval_q_prime(double s) const;
    double eval_u(double s) const;

    /// max |q'' - s q - 2 q^3| over interior nodes, 7-point second derivative
    double ode_residual() const;
    bool in_range(double s) const { return s >= s_min && s <= s_max; }
};

struct TableRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Hastings-McLeod solution of q'' = s q + 2 q^3: two-point BVP with
/// q ~ Ai at s_max and the interior expansion sqrt(-s/2)(1 + 1/(8 s^3)) at s_min,
/// damped Newton on the finite-difference discretization with Richardson refinement.
HastingsMcLeodTable hastings_mcleod(double s_min = -10.0, double s_max = 10.0,
                                    int n_grid = 4001);

/// max |u'(s) + q(s)^2| over interior nodes (finite-difference u').
double u_prime_identity_check(const HastingsMcLeodTable& table);

}  // namespace planorth
