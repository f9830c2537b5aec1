#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace planorth {

/// Problem parameters for the planar weight |z-a|^{2Nc} e^{-N|z|^2}.
/// Scaling convention: N = (n - r)/t, so N need not be an integer.
struct ModelParams {
    double a = 1.0;   // pole location, a > 0
    double c = 1.0;   // charge, c > 0
    double t = 1.0;   // time, t > 0
    long n = 0;       // polynomial degree
    long r = 0;       // degree offset
    double N = 1.0;   // derived: (n - r)/t

    double t_c = 3.0;  // a(a + 2 sqrt(c)), cached

    static ModelParams from_t(double a, double c, double t, long n, long r);
    static ModelParams from_N(double a, double c, double N, long n, long r);

    void validate() const;
};

double critical_time(double a, double c);

enum class RegimeTag { PreCritical, Critical, PostCritical };

struct Regime {
    RegimeTag tag = RegimeTag::PreCritical;
    double s_estimate = 0.0;  // rescaled distance to criticality (Critical only)

    bool pre() const { return tag == RegimeTag::PreCritical; }
    bool critical() const { return tag == RegimeTag::Critical; }
    bool post() const { return tag == RegimeTag::PostCritical; }
    const char* name() const;
};

/// Rescaled time s = c^{1/6} a^{-1/3} b_c^{-2/3} N^{2/3} (t - t_c).
double rescaled_time_estimate(const ModelParams& p);

/// Window: Critical iff |t - t_c| <= window * N^{-2/3}. Default window = 1
/// (see decisions ledger; the tag boundary is configurable).
Regime classify(const ModelParams& p, double window = 1.0);

struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string model_params_json(const ModelParams& p, const Regime& reg);

}  // namespace planorth
