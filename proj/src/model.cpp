#include "planorth/model.hpp"

#include <sstream>

namespace planorth {

double critical_time(double a, double c) {
    return a * (a + 2.0 * std::sqrt(c));
}

ModelParams ModelParams::from_t(double a, double c, double t, long n, long r) {
    ModelParams p;
    p.a = a; p.c = c; p.t = t; p.n = n; p.r = r;
    p.N = (static_cast<double>(n) - static_cast<double>(r)) / t;
    p.t_c = critical_time(a, c);
    p.validate();
    return p;
}

ModelParams ModelParams::from_N(double a, double c, double N, long n, long r) {
    ModelParams p;
    p.a = a; p.c = c; p.N = N; p.n = n; p.r = r;
    p.t = (static_cast<double>(n) - static_cast<double>(r)) / N;
    p.t_c = critical_time(a, c);
    p.validate();
    return p;
}

void ModelParams::validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("ModelParams: a must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("ModelParams: c must be positive");
    if (!(t > 0.0)) throw std::invalid_argument("ModelParams: t must be positive");
    if (n < 0) throw std::invalid_argument("ModelParams: n must be nonnegative");
    if (!(N > 0.0)) throw std::invalid_argument("ModelParams: N must be positive");
}

const char* Regime::name() const {
    switch (tag) {
        case RegimeTag::PreCritical: return "pre-critical";
        case RegimeTag::Critical: return "critical";
        case RegimeTag::PostCritical: return "post-critical";
    }
    return "?";
}

double rescaled_time_estimate(const ModelParams& p) {
    double b_c = p.a + std::sqrt(p.c);
    return std::pow(p.c, 1.0 / 6.0) * std::pow(p.a, -1.0 / 3.0) * std::pow(b_c, -2.0 / 3.0) *
           std::pow(p.N, 2.0 / 3.0) * (p.t - p.t_c);
}

Regime classify(const ModelParams& p, double window) {
    double delta = window * std::pow(p.N, -2.0 / 3.0);
    Regime reg;
    if (p.t < p.t_c - delta) {
        reg.tag = RegimeTag::PreCritical;
    } else if (p.t > p.t_c + delta) {
        reg.tag = RegimeTag::PostCritical;
    } else {
        reg.tag = RegimeTag::Critical;
        reg.s_estimate = rescaled_time_estimate(p);
    }
    return reg;
}

std::string model_params_json(const ModelParams& p, const Regime& reg) {
    std::ostringstream os;
    os.precision(17);
    os << "{\"a\":" << p.a << ",\"c\":" << p.c << ",\"t\":" << p.t
       << ",\"n\":" << p.n << ",\"N\":" << p.N << ",\"r\":" << p.r
       << ",\"t_c\":" << p.t_c << ",\"regime\":\"" << reg.name() << "\"}";
    return os.str();
}

}  // namespace planorth
