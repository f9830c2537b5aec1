#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace planorth {

/// Arbitrary-precision real number. Thin RAII wrapper around mpfr_t;
/// results carry the larger precision of the operands.
class BigReal {
public:
    BigReal() { mpfr_init2(v_, 128); mpfr_set_zero(v_, 1); }
    explicit BigReal(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigReal(double x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_d(v_, x, MPFR_RNDN); }
    BigReal(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    BigReal(const char* s, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_str(v_, s, 10, MPFR_RNDN); }
    BigReal(const BigReal& o) { mpfr_init2(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
    BigReal(BigReal&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    BigReal& operator=(const BigReal& o) {
        if (this != &o) { mpfr_set_prec(v_, o.prec()); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    BigReal& operator=(BigReal&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~BigReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Natural log of |x| as a double; well-defined far outside double range.
    double log_abs() const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    std::string to_string(int digits = 0) const;

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a);
    BigReal& operator+=(const BigReal& b) { mpfr_add(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator-=(const BigReal& b) { mpfr_sub(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator*=(const BigReal& b) { mpfr_mul(v_, v_, b.v_, MPFR_RNDN); return *this; }
    BigReal& operator/=(const BigReal& b) { mpfr_div(v_, v_, b.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

BigReal abs(const BigReal& a);
BigReal sqrt(const BigReal& a);
BigReal exp(const BigReal& a);
BigReal log(const BigReal& a);
BigReal pow_si(const BigReal& a, long e);
BigReal factorial(unsigned long n, mpfr_prec_t prec);
BigReal binomial(unsigned long n, unsigned long k, mpfr_prec_t prec);
BigReal const_pi(mpfr_prec_t prec);
/// Reference Gamma for tests; the library's own log_gamma_real lives in specialfn.
BigReal gamma_ref(const BigReal& x);
BigReal airy_ref(const BigReal& x);

/// Complex number over BigReal (MPC is not assumed present).
struct BigComplex {
    BigReal re, im;

    BigComplex() = default;
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(double r, double i, mpfr_prec_t prec) : re(r, prec), im(i, prec) {}

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
        BigReal d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    BigReal abs2() const { return re * re + im * im; }
    double log_abs() const { return 0.5 * abs2().log_abs(); }
    double arg() const;
};

}  // namespace planorth
