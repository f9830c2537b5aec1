#pragma once

#include "planorth/bigreal.hpp"
#include "planorth/curves.hpp"

#include <complex>
#include <stdexcept>
#include <vector>

namespace planorth {

struct ScopeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Moment matrix mu_ij = integral z^i conj(z)^j |z-a|^{2m} e^{-N|z|^2} dA,
/// stored without the overall factor pi. Requires integer m = N c.
struct MomentMatrix {
    long size = 0;  // entries 0..size-1 in each index
    double a = 0, N = 0;
    long m = 0;
    mpfr_prec_t precision_bits = 256;
    std::vector<BigReal> mu;  // row-major, mu/pi

    const BigReal& at(long i, long j) const { return mu[i * size + j]; }
};

MomentMatrix exact_moments(double a, double N, long m, long size, mpfr_prec_t precision_bits);

/// Monic orthogonal polynomial with its norming constant, exact to the stated
/// working precision.
struct ExactPolynomial {
    long n = 0;
    double a = 0, N = 0;
    long m = 0;
    mpfr_prec_t precision_bits = 256;
    std::vector<BigReal> coeffs;  // c_0..c_n, c_n = 1
    BigReal h_n;                  // norming constant (pi factor included)

    double log_hn() const { return h_n.log_abs(); }
    BigComplex eval(const BigComplex& z) const;
    /// (ln |P_n(z)|, arg P_n(z)) at full working precision
    std::pair<double, double> eval_log(std::complex<double> z) const;
};

/// Solve the moment system for P_n; h_n from the LDL^T pivot (diagonally
/// prescaled). Retries at doubled precision on a nonpositive pivot.
ExactPolynomial exact_polynomial(const MomentMatrix& mm, long n);

/// max_k |<P_n, z^k>| / (sum of term magnitudes), k < n.
double orthogonality_residual(const MomentMatrix& mm, const ExactPolynomial& ep);

struct ContourCheckResult {
    double max_scaled_residual = 0;  // contour orthogonality, k < n
    BigReal h_n_contour;             // from the k = n identity
    double h_n_rel_diff = 0;         // contour vs area route
    double norming_chain_rel = 0;    // Prop-norming identity through P_{n+1}(0)
};

/// Residue-based contour orthogonality of Lemma "area = contour": the integrand
/// P_n(z)(z-a)^m e^{-Naz} z^{-m-k-1} has an exact finite Laurent coefficient.
ContourCheckResult contour_moment_check(const ExactPolynomial& ep, const ExactPolynomial& ep_next,
                                        const MomentMatrix& mm);

/// All n roots by Aberth-Ehrlich simultaneous iteration in working precision.
std::vector<std::complex<double>> exact_zeros(const ExactPolynomial& ep, double radius_hint,
                                              unsigned seed = 1);

}  // namespace planorth
