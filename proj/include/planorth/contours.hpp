#pragma once

#include "planorth/curves.hpp"
#include "planorth/geometry.hpp"
#include "planorth/model.hpp"

#include <optional>
#include <stdexcept>

namespace planorth {

struct TraceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TopologyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TraceOptions {
    double h_max_frac = 1e-3;       // max node spacing / curve diameter
    double seed_delta_frac = 1e-4;  // seed offset from the branch point / scale
    double level_tol = 1e-11;       // corrector target for the level residual
    double lens_halfwidth_frac = 0.05;
    size_t max_nodes = 400000;
};

struct TraceResult {
    TracedCurve curve;
    std::vector<double> residuals;  // |Re phi| at nodes from the closed-form route
    double max_abs_re_phi = 0.0;
    double endpoint_error = 0.0;  // |last - target| (open) or closure gap (closed)
    int neg_axis_crossings = 0;
};

/// Branch cut for the pre-critical regime: level line Re phi = 0 from beta to
/// conj(beta), selected among the three local rays as the one crossing the
/// negative real axis.
TraceResult trace_branch_cut_pre(const PreGeometry& geo, const TraceOptions& opt = {});

/// Branch cut for the post-critical and critical regimes: the Jordan level
/// curve through beta enclosing 0 and a.
TraceResult trace_branch_cut_post(const PostGeometry& geo, const TraceOptions& opt = {});

/// Lens contours on both sides of the traced cut; returns (Gamma_plus on the
/// side containing 0, Gamma_minus on the other side).
std::pair<TracedCurve, TracedCurve> trace_lens(const TracedCurve& cut, double halfwidth);

/// Steepest ascent path from conj(beta) toward b (pre-critical diagnostic,
/// the Airy-coordinate axis).
TracedCurve trace_steepest_to_b(const PreGeometry& geo, const TracedCurve& cut,
                                const TraceOptions& opt = {});

/// Curve where the zeros accumulate (post-critical): level set
/// Re phi = -(ln N)/(2N) + (1/N) ln |sqrt(beta(beta-a)) beta^r / (sqrt(2 pi a (b-beta)) z^r (z-beta))|.
TracedCurve trace_zero_curve(const PostGeometry& geo, const ModelParams& p,
                             const TracedCurve& cut, const TraceOptions& opt = {});

enum class Zone { ExtB, IntB, OmegaPlus, OmegaMinus, NearBeta, NearBetaBar };

struct ZoneTag {
    Zone zone = Zone::ExtB;
    double signed_distance_to_B = 0.0;  // >0 on the Ext side
};

struct ZoneRadii {
    double near_beta = 0.0;  // disk radius around beta (and conj beta pre-critically)
    double lens_halfwidth = 0.0;
};

const char* zone_name(Zone z);

/// Zone assignment: disks first, then side of the cut, refined to the lens
/// bands. `beta_bar` is ignored unless pre-critical.
ZoneTag classify_zone(cplx z, const TracedCurve& cut, cplx beta, std::optional<cplx> beta_bar,
                      const ZoneRadii& radii, bool pre_critical);

}  // namespace planorth
