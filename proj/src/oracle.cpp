#include "planorth/oracle.hpp"

#include "planorth/model.hpp"

#include <algorithm>
#include <cmath>

namespace planorth {

MomentMatrix exact_moments(double a, double N, long m, long size, mpfr_prec_t prec) {
    if (m < 0) throw ScopeError("exact_moments: m = Nc must be a nonnegative integer");
    if (size > 201) throw ScopeError("exact_moments: n must stay <= 200");
    MomentMatrix mm;
    mm.size = size;
    mm.a = a;
    mm.N = N;
    mm.m = m;
    mm.precision_bits = prec;
    mm.mu.assign(static_cast<size_t>(size) * size, BigReal(prec));

    BigReal aa(a, prec), NN(N, prec);
    std::vector<BigReal> binom(m + 1, BigReal(prec));
    for (long k = 0; k <= m; ++k) binom[k] = binomial(m, k, prec);
    std::vector<BigReal> neg_a_pow(2 * m + 1, BigReal(prec));
    neg_a_pow[0] = BigReal(1.0, prec);
    for (long k = 1; k <= 2 * m; ++k) neg_a_pow[k] = neg_a_pow[k - 1] * (-aa);
    long pmax = size - 1 + m;
    std::vector<BigReal> fact_over_pow(pmax + 1, BigReal(prec));
    BigReal npow = NN;  // N^{p+1}
    for (long p = 0; p <= pmax; ++p) {
        fact_over_pow[p] = factorial(p, prec) / npow;
        npow *= NN;
    }

    for (long i = 0; i < size; ++i) {
        for (long j = i; j < size; ++j) {
            // l = k + i - j must lie in [0, m]
            BigReal acc(0.0, prec);
            for (long k = std::max(0L, j - i); k <= m && k + i - j <= m; ++k) {
                long l = k + i - j;
                acc += binom[k] * binom[l] * neg_a_pow[2 * m - k - l] * fact_over_pow[i + k];
            }
            mm.mu[i * size + j] = acc;
            mm.mu[j * size + i] = acc;  // a real: matrix real symmetric
        }
    }
    return mm;
}

namespace {

// LDL^T of the diagonally prescaled matrix; returns pivots of the scaled
// matrix and the unit-lower factor. Throws SingularError on a nonpositive pivot.
struct Ldlt {
    long n;
    std::vector<BigReal> L;  // strictly lower, row-major
    std::vector<BigReal> d;  // pivots (scaled matrix)
    std::vector<BigReal> s;  // scaling 1/sqrt(mu_ii)
};

Ldlt ldlt_scaled(const MomentMatrix& mm, long n) {
    mpfr_prec_t prec = mm.precision_bits;
    Ldlt f;
    f.n = n;
    f.L.assign(static_cast<size_t>(n) * n, BigReal(prec));
    f.d.assign(n, BigReal(prec));
    f.s.assign(n, BigReal(prec));
    for (long i = 0; i < n; ++i) {
        if (!(mm.at(i, i) > BigReal(0.0, prec)))
            throw SingularError("moment matrix: nonpositive diagonal");
        f.s[i] = BigReal(1.0, prec) / sqrt(mm.at(i, i));
    }
    std::vector<BigReal> col(n, BigReal(prec));
    for (long j = 0; j < n; ++j) {
        for (long i = j; i < n; ++i) {
            BigReal acc = mm.at(i, j) * (f.s[i] * f.s[j]);
            for (long k = 0; k < j; ++k) acc -= f.L[i * n + k] * (f.d[k] * f.L[j * n + k]);
            if (i == j) {
                if (!(acc > BigReal(0.0, prec)))
                    throw SingularError("moment matrix: nonpositive pivot (precision exhausted)");
                f.d[j] = acc;
            } else {
                f.L[i * n + j] = acc / f.d[j];
            }
        }
    }
    return f;
}

}  // namespace

ExactPolynomial exact_polynomial(const MomentMatrix& mm, long n) {
    if (n + 1 > mm.size) throw std::invalid_argument("exact_polynomial: n exceeds matrix size");
    mpfr_prec_t prec = mm.precision_bits;

    for (int attempt = 0; attempt < 2; ++attempt) {
        try {
            const MomentMatrix& use =
                attempt == 0 ? mm : exact_moments(mm.a, mm.N, mm.m, mm.size, 2 * prec);
            Ldlt f = ldlt_scaled(use, n + 1);

            ExactPolynomial ep;
            ep.n = n;
            ep.a = mm.a;
            ep.N = mm.N;
            ep.m = mm.m;
            ep.precision_bits = use.precision_bits;
            // pivot of the scaled matrix times mu_nn, then the pi factor
            ep.h_n = f.d[n] * use.at(n, n) * const_pi(use.precision_bits);

            // monic coefficients: solve M c = -mu_{., n} on the leading n x n block
            // via the same factorization restricted to indices < n.
            std::vector<BigReal> rhs(n, BigReal(use.precision_bits));
            for (long k = 0; k < n; ++k) rhs[k] = -(use.at(k, n) * f.s[k]);  // scaled rhs
            // forward solve L y = rhs
            for (long i = 0; i < n; ++i)
                for (long k = 0; k < i; ++k) rhs[i] -= f.L[(i) * (n + 1) + k] * rhs[k];
            for (long i = 0; i < n; ++i) rhs[i] /= f.d[i];
            for (long i = n - 1; i >= 0; --i)
                for (long k = i + 1; k < n; ++k) rhs[i] -= f.L[(k) * (n + 1) + i] * rhs[k];

            ep.coeffs.assign(n + 1, BigReal(use.precision_bits));
            for (long k = 0; k < n; ++k) ep.coeffs[k] = rhs[k] * f.s[k];
            ep.coeffs[n] = BigReal(1.0, use.precision_bits);
            return ep;
        } catch (const SingularError&) {
            if (attempt == 1) throw;
        }
    }
    throw PrecisionError("exact_polynomial: unreachable");
}

double orthogonality_residual(const MomentMatrix& mm, const ExactPolynomial& ep) {
    double worst = 0.0;
    mpfr_prec_t prec = mm.precision_bits;
    for (long k = 0; k < ep.n; ++k) {
        BigReal acc(0.0, prec), scale(0.0, prec);
        for (long j = 0; j <= ep.n; ++j) {
            BigReal term = ep.coeffs[j] * mm.at(j, k);
            acc += term;
            scale += abs(term);
        }
        if (scale.is_zero()) continue;
        worst = std::max(worst, std::exp((abs(acc) / scale).log_abs()));
    }
    return worst;
}

// ---------------------------------------------------------------------------
// contour route
// ---------------------------------------------------------------------------

namespace {

// coefficients of P(z) (z-a)^m
std::vector<BigReal> times_z_minus_a_pow(const std::vector<BigReal>& p, double a, long m,
                                         mpfr_prec_t prec) {
    std::vector<BigReal> out = p;
    BigReal aa(a, prec);
    for (long rep = 0; rep < m; ++rep) {
        std::vector<BigReal> next(out.size() + 1, BigReal(prec));
        for (size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] -= aa * out[i];
        }
        out = std::move(next);
    }
    return out;
}

// Laurent coefficient of z^{target} in poly(z) e^{-Naz}: an exact finite sum.
// Also reports the magnitude sum for residual scaling.
void exp_series_coefficient(const std::vector<BigReal>& poly, double Na, long target,
                            mpfr_prec_t prec, BigReal& value, BigReal& scale) {
    BigReal mna(-Na, prec);
    value = BigReal(0.0, prec);
    scale = BigReal(0.0, prec);
    // e^{-Naz} = sum_q (-Na)^q z^q / q!
    BigReal pw(1.0, prec);
    std::vector<BigReal> powq(target + 1, BigReal(prec));
    for (long q = 0; q <= target; ++q) {
        powq[q] = pw / factorial(q, prec);
        pw *= mna;
    }
    for (size_t p = 0; p < poly.size(); ++p) {
        long q = target - static_cast<long>(p);
        if (q < 0) break;
        BigReal term = poly[p] * powq[q];
        value += term;
        scale += abs(term);
    }
}

}  // namespace

ContourCheckResult contour_moment_check(const ExactPolynomial& ep, const ExactPolynomial& ep_next,
                                        const MomentMatrix& mm) {
    mpfr_prec_t prec = ep.precision_bits;
    const long n = ep.n, m = ep.m;
    const double Na = ep.N * ep.a;
    ContourCheckResult out;

    std::vector<BigReal> pm = times_z_minus_a_pow(ep.coeffs, ep.a, m, prec);

    // k < n: coefficient of z^{m+k} must vanish
    for (long k = 0; k < n; ++k) {
        BigReal v(prec), s(prec);
        exp_series_coefficient(pm, Na, m + k, prec, v, s);
        if (!s.is_zero())
            out.max_scaled_residual =
                std::max(out.max_scaled_residual, std::exp((abs(v) / s).log_abs()));
    }

    // k = n: oint = 2 pi i coeff = 2 i N^{m+n+1} h_n / (m+n)!
    BigReal v(prec), s(prec);
    exp_series_coefficient(pm, Na, m + n, prec, v, s);
    out.h_n_contour = const_pi(prec) * v * factorial(m + n, prec) / pow_si(BigReal(ep.N, prec), m + n + 1);
    out.h_n_rel_diff = std::exp((abs(out.h_n_contour - ep.h_n) / ep.h_n).log_abs());

    // Prop-norming chain: h_n = -((m+n)!/(2i N^{m+n+1})) h~_n / P_{n+1}(0),
    // h~_n = oint P_n^2 w dz = 2 pi i [z^{m+n-1}] P_n^2 (z-a)^m e^{-Naz}
    std::vector<BigReal> p2(2 * n + 1, BigReal(prec));
    for (long i = 0; i <= n; ++i)
        for (long j = 0; j <= n; ++j) p2[i + j] += ep.coeffs[i] * ep.coeffs[j];
    std::vector<BigReal> p2m = times_z_minus_a_pow(p2, ep.a, m, prec);
    BigReal v2(prec), s2(prec);
    exp_series_coefficient(p2m, Na, m + n - 1, prec, v2, s2);
    BigReal rhs = -const_pi(prec) * factorial(m + n, prec) * v2 /
                  (pow_si(BigReal(ep.N, prec), m + n + 1) * ep_next.coeffs[0]);
    out.norming_chain_rel = std::exp((abs(rhs - ep.h_n) / ep.h_n).log_abs());
    (void)mm;
    return out;
}

// ---------------------------------------------------------------------------
// zeros
// ---------------------------------------------------------------------------

BigComplex ExactPolynomial::eval(const BigComplex& z) const {
    mpfr_prec_t prec = precision_bits;
    BigComplex acc(BigReal(0.0, prec), BigReal(0.0, prec));
    for (long i = n; i >= 0; --i) {
        acc = acc * z;
        acc.re += coeffs[i];
    }
    return acc;
}

std::pair<double, double> ExactPolynomial::eval_log(std::complex<double> z) const {
    BigComplex v = eval(BigComplex(z.real(), z.imag(), precision_bits));
    return {v.log_abs(), v.arg()};
}

std::vector<std::complex<double>> exact_zeros(const ExactPolynomial& ep, double radius_hint,
                                              unsigned seed) {
    const long n = ep.n;
    mpfr_prec_t prec = ep.precision_bits;
    if (n == 0) return {};

    std::vector<BigReal> dcoef(n, BigReal(prec));
    for (long i = 1; i <= n; ++i) dcoef[i - 1] = ep.coeffs[i] * BigReal(static_cast<double>(i), prec);

    auto horner = [&](const std::vector<BigReal>& cs, const BigComplex& z) {
        BigComplex acc(BigReal(0.0, prec), BigReal(0.0, prec));
        for (long i = static_cast<long>(cs.size()) - 1; i >= 0; --i) {
            acc = acc * z;
            acc.re += cs[i];
        }
        return acc;
    };

    std::vector<BigComplex> zs;
    zs.reserve(n);
    double r0 = radius_hint > 0 ? radius_hint : 1.0;
    for (long k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * (k + 0.5) / n + 0.31 * (seed % 97) / 97.0;
        zs.emplace_back(r0 * std::cos(th), r0 * std::sin(th), prec);
    }

    const double stop_log = -0.35 * static_cast<double>(prec) * 0.6931;  // 2^{-0.35 prec}
    bool converged = false;
    for (int iter = 0; iter < 600 && !converged; ++iter) {
        double worst = -1e300;
        for (long i = 0; i < n; ++i) {
            BigComplex p = horner(ep.coeffs, zs[i]);
            if (p.re.is_zero() && p.im.is_zero()) continue;
            BigComplex dp = horner(dcoef, zs[i]);
            BigComplex w = p / dp;  // Newton correction
            BigComplex S(BigReal(0.0, prec), BigReal(0.0, prec));
            for (long j = 0; j < n; ++j) {
                if (j == i) continue;
                BigComplex d = zs[i] - zs[j];
                BigReal den = d.abs2();
                S.re += d.re / den;
                S.im -= d.im / den;
            }
            BigComplex one(BigReal(1.0, prec), BigReal(0.0, prec));
            BigComplex corr = w / (one - w * S);
            zs[i] = zs[i] - corr;
            worst = std::max(worst, corr.log_abs() - std::log1p(std::exp(zs[i].log_abs())));
        }
        converged = worst < stop_log;
    }
    if (!converged) throw ConvergenceError("exact_zeros: Aberth iteration did not converge");

    std::vector<std::complex<double>> out;
    out.reserve(n);
    for (auto& z : zs) out.emplace_back(z.re.to_double(), z.im.to_double());
    return out;
}

}  // namespace planorth
