#pragma once

#include "planorth/potentials.hpp"
#include "planorth/specialfn.hpp"

#include <optional>
#include <string>

namespace planorth {

struct ZoneError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Asymptotic value of P_{n,N}(z), carried as log-magnitude + phase since
/// e^{N t g} overflows double precision already for moderate N.
struct EvalResult {
    cplx value;          // mantissa with |value| in [1,2), or 0 for bound-only
    double log_scale = 0;  // P = value * e^{log_scale}
    double log_abs = 0;    // ln |P|
    double phase = 0;      // arg P, in (-pi, pi]
    Zone zone = Zone::ExtB;
    std::string error_order;
    bool bound_only = false;  // critical disk: only the envelope is reported

    static EvalResult from_log(double log_abs, double phase, Zone zone, const char* order);
    /// |this/other - 1| with both values given in log form.
    double rel_error_vs(double other_log_abs, double other_phase) const;
};

/// Local coordinate data around the turning point (diagnostics/tests).
struct LocalCoordinates {
    cplx zeta_airy;   // Airy coordinate, (4/3) zeta^{3/2} = N (phi - phi(conj beta))
    cplx c_beta_bar;  // leading coefficient of y at conj(beta)
    double gamma_1 = 0;
    cplx xi;
    double s = 0;
};

struct AsymptoticContext {
    PotentialContext pot;
    std::optional<HastingsMcLeodTable> hm;  // critical regime
    ZoneRadii radii;
    double calib_phase = 0.0;  // pre-critical branch-bookkeeping phase, fixed at infinity
    double calib_mag_err = 0.0;  // |kappa|-1 at the calibration point (diagnostic)
    cplx airy_seed_rot = 1.0;  // 4th-root branch in the turning disk, anchored
                               // by matching the outer formula on the steepest axis
    cplx airy_phi_anchor = 0.0;  // phi(conj beta) in the routing class of eval_phi
};

AsymptoticContext make_asymptotic_context(const ModelParams& p, const Regime& regime,
                                          const TraceOptions& topt = {});

/// Strong asymptotics of P_{n,N}(z), dispatched on regime and zone.
EvalResult eval_P(const AsymptoticContext& ctx, cplx z);

EvalResult eval_P_pre(const AsymptoticContext& ctx, cplx z);
EvalResult eval_P_post(const AsymptoticContext& ctx, cplx z);
EvalResult eval_P_critical(const AsymptoticContext& ctx, cplx z);

/// Airy coordinate near conj(beta) (pre-critical).
cplx airy_zeta(const AsymptoticContext& ctx, cplx z);

/// log h_n = log(2 pi sqrt(pi/(2N))) + (2r+1) log rho + N ell_2d.
double eval_hn_asymptotic(const AsymptoticContext& ctx);

/// Asymptotic density |F|^{2r}/(2pi) sqrt(2N/pi) |F'| e^{-N U}; log form.
double eval_log_rho_n(const AsymptoticContext& ctx, cplx z);
double eval_rho_n(const AsymptoticContext& ctx, cplx z);

}  // namespace planorth
