#include "planorth/bigreal.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace planorth {

double BigReal::log_abs() const {
    if (mpfr_zero_p(v_)) return -INFINITY;
    long e;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log(std::fabs(m)) + static_cast<double>(e) * 0.6931471805599453094172321214581766;
}

std::string BigReal::to_string(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    size_t nd = digits > 0 ? static_cast<size_t>(digits)
                           : static_cast<size_t>(static_cast<double>(prec()) * 0.30103) + 2;
    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, nd, v_, MPFR_RNDN);
    std::string mant(s);
    mpfr_free_str(s);
    std::string sign;
    if (mant[0] == '-') { sign = "-"; mant.erase(0, 1); }
    // strip trailing zeros of the mantissa
    size_t last = mant.find_last_not_of('0');
    mant = mant.substr(0, last == std::string::npos ? 1 : last + 1);
    return sign + "0." + mant + "e" + std::to_string(static_cast<long>(e));
}

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}
BigReal operator-(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
BigReal sqrt(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
BigReal exp(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
BigReal log(const BigReal& a) {
    BigReal r(a.prec());
    mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
BigReal pow_si(const BigReal& a, long e) {
    BigReal r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
BigReal factorial(unsigned long n, mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
    return r;
}
BigReal binomial(unsigned long n, unsigned long k, mpfr_prec_t prec) {
    if (k > n) return BigReal(0.0, prec);
    BigReal r = factorial(n, prec) / (factorial(k, prec) * factorial(n - k, prec));
    return r;
}
BigReal const_pi(mpfr_prec_t prec) {
    BigReal r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}
BigReal gamma_ref(const BigReal& x) {
    BigReal r(x.prec());
    mpfr_gamma(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}
BigReal airy_ref(const BigReal& x) {
    BigReal r(x.prec());
    mpfr_ai(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

double BigComplex::arg() const {
    BigReal a(std::max(re.prec(), im.prec()));
    mpfr_atan2(a.raw(), im.raw(), re.raw(), MPFR_RNDN);
    return a.to_double();
}

}  // namespace planorth
