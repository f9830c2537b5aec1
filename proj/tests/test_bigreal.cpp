#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planorth/bigreal.hpp"

#include <cmath>
#include <complex>

using namespace planorth;

TEST_CASE("arithmetic round trip against double") {
    BigReal x(1.375, 256), y(-2.5, 256);
    CHECK((x + y).to_double() == doctest::Approx(-1.125).epsilon(1e-15));
    CHECK((x * y).to_double() == doctest::Approx(-3.4375).epsilon(1e-15));
    CHECK((x / y).to_double() == doctest::Approx(-0.55).epsilon(1e-15));
    CHECK(sqrt(BigReal(2.0, 256)).to_double() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("log_abs far outside double range") {
    BigReal x = pow_si(BigReal(2.0, 256), 5000);
    CHECK(x.log_abs() == doctest::Approx(5000.0 * std::log(2.0)).epsilon(1e-13));
    BigReal y = exp(BigReal(-900.0, 256));
    CHECK(y.log_abs() == doctest::Approx(-900.0).epsilon(1e-12));
}

TEST_CASE("pi and factorial") {
    CHECK(const_pi(256).to_double() == doctest::Approx(M_PI).epsilon(1e-15));
    CHECK(factorial(20, 256).to_double() == doctest::Approx(2432902008176640000.0).epsilon(1e-15));
    CHECK(binomial(10, 3, 128).to_double() == doctest::Approx(120.0).epsilon(1e-15));
}

TEST_CASE("complex division and log magnitude") {
    BigComplex z(3.0, 4.0, 256), w(1.0, -2.0, 256);
    BigComplex q = z / w;
    std::complex<double> zr(3, 4), wr(1, -2), qr = zr / wr;
    CHECK(q.re.to_double() == doctest::Approx(qr.real()).epsilon(1e-14));
    CHECK(q.im.to_double() == doctest::Approx(qr.imag()).epsilon(1e-14));
    CHECK(z.log_abs() == doctest::Approx(std::log(5.0)).epsilon(1e-14));
    CHECK(z.arg() == doctest::Approx(std::atan2(4.0, 3.0)).epsilon(1e-14));
}

TEST_CASE("decimal string output round trips through parse") {
    BigReal x(1.0 / 3.0, 128);
    std::string s = x.to_string();
    BigReal y(s.c_str(), 128);
    CHECK((x - y).log_abs() < -100.0 * 0.69);
}
