#pragma once

#include "planorth/contours.hpp"
#include "planorth/curves.hpp"
#include "planorth/geometry.hpp"
#include "planorth/model.hpp"

#include <optional>
#include <vector>

namespace planorth {

struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// External potential Q(z) = |z|^2 + 2c log 1/|z-a|.
double external_Q(double a, double c, cplx z);

/// Contour potential V(z) = a z - c log(z-a) + (c+t) log z, log cut on [0,+inf).
cplx contour_V(double a, double c, double t, cplx z);

/// Immutable evaluation context: geometry, traced cut, normalization constants.
struct PotentialContext {
    ModelParams params;
    Regime regime;

    std::optional<PreGeometry> pre;
    std::optional<PostGeometry> post;       // also the critical extension
    std::optional<CriticalGeometry> crit;   // critical regime only

    TracedCurve cut;
    TracedCurve cut_coarse;   // decimated copy for crossing-parity tests
    TracedCurve boundary;     // dK (pre-critical: image of the unit circle)
    TracedCurve lens_plus, lens_minus;

    double ell = 0.0;     // Robin constant of the g-function
    double ell_2d = 0.0;  // planar equilibrium constant
    double phi_b = 0.0;   // pre-critical: phi(b) (real, positive)
    cplx phi_beta_bar_plus;   // pre-critical: phi(conj beta), Omega_plus side
    cplx phi_beta_bar_minus;  // the other side

    std::vector<cplx> waypoints;  // routing nodes around the cut (pre-critical)
    cplx launch;                  // start point just off beta along the ascent ray
    cplx launch_stub;             // phi(launch) from the local 3/2-power model
    double quad_rel_tol = 1e-12;

    double scale() const;
    bool exterior_of_cut(cplx z) const;  // Ext(B) test for closed cuts
};

PotentialContext make_potential_context(const ModelParams& p, const Regime& regime,
                                        const TraceOptions& topt = {});

/// phi(z) = int_beta^z y ds along a cut-avoiding path (pre-critical: routed
/// adaptive quadrature; post/critical: closed antiderivative with the Ext/Int sign).
cplx eval_phi(const PotentialContext& ctx, cplx z);

/// Re phi: the effective potential of the zero distribution.
double eval_u_op(const PotentialContext& ctx, cplx z);

/// g-function; exact closed form post/critically, (V - phi + t ell)/(2t) otherwise.
cplx eval_g(const PotentialContext& ctx, cplx z);

/// Re g without quadrature (uses the closed Re phi routes).
double eval_re_g(const PotentialContext& ctx, cplx z);

/// Smooth extension U(z) = Q(z) - 2t Re g(z) + ell_2d of the effective potential.
double eval_U(const PotentialContext& ctx, cplx z);

/// Equilibrium effective potential: equals U off K and 0 on K.
double eval_U_2D(const PotentialContext& ctx, cplx z);

bool in_K(const PotentialContext& ctx, cplx z);

/// Route from the launch point to z avoiding the cut; used by eval_phi and
/// exposed for the route-independence tests.
std::vector<cplx> route_to(const PotentialContext& ctx, cplx z, size_t skip_waypoint = SIZE_MAX);

/// phi along an explicit polyline path (first node must be the context launch).
cplx phi_along(const PotentialContext& ctx, const std::vector<cplx>& path);

}  // namespace planorth
