#include "planorth/contours.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace planorth {

namespace {

// Branch-continued holomorphic derivative field. `exact_level` is Re of the
// antiderivative when a closed form exists (post/critical); otherwise the
// tracer accumulates the level incrementally.
struct Field {
    std::function<cplx(cplx, cplx)> w;        // (z, hint) -> derivative
    std::function<double(cplx)> exact_level;  // empty when incremental
};

// 4-point Gauss-Legendre increment of Re int w dz over a short segment.
double re_increment(const Field& f, cplx z0, cplx z1, cplx& hint) {
    static const double xs[4] = {0.06943184420297371, 0.33000947820757187,
                                 0.66999052179242813, 0.93056815579702629};
    static const double ws[4] = {0.17392742256872693, 0.32607257743127307,
                                 0.32607257743127307, 0.17392742256872693};
    cplx d = z1 - z0;
    cplx acc = 0.0;
    cplx h = hint;
    for (int i = 0; i < 4; ++i) {
        cplx wi = f.w(z0 + xs[i] * d, h);
        h = wi;
        acc += ws[i] * wi;
    }
    hint = h;
    return (acc * d).real();
}

enum class StopKind { None, Target, Escape, NodeBudget, StepFail };

struct TracerResult {
    TracedCurve curve;
    StopKind stop = StopKind::None;
    int neg_axis_crossings = 0;
    int pos_axis_crossings = 0;
};

struct TracerConfig {
    double ds_init = 1e-3;
    double ds_min = 1e-9;
    double ds_max = 1e-2;
    double level_tol = 1e-11;
    size_t max_nodes = 400000;
    double escape_radius = 1e9;
    std::optional<cplx> target;      // endpoint (snap when reached)
    double target_arm_length = 0.0;  // ignore the target until this length is traced
    double target_final_hop = 0.0;   // refine the approach down to this distance
    double target_level = 0.0;       // level value the curve keeps
};

// Predictor-corrector tracer for Re H = const along the field H' = w.
// `orient` fixes the initial walking direction.
TracerResult trace_level_curve(const Field& f, cplx seed, cplx seed_hint, cplx orient,
                               const TracerConfig& cfg) {
    TracerResult out;
    auto tangent = [](cplx w) { return cplx(0, 1) * std::conj(w) / std::abs(w); };

    cplx z = seed;
    cplx w = f.w(seed, seed_hint);
    double level = f.exact_level ? f.exact_level(seed) : cfg.target_level;
    double ds = cfg.ds_init;
    double sgn = ((tangent(w) * std::conj(orient)).real() >= 0.0) ? 1.0 : -1.0;

    out.curve.points.push_back(seed);
    double length = 0.0;

    for (size_t step = 0; step < cfg.max_nodes; ++step) {
        cplx t0 = sgn * tangent(w);
        cplx zm = z + 0.5 * ds * t0;
        cplx wm = f.w(zm, w);
        cplx tm = sgn * tangent(wm);
        if ((tm * std::conj(t0)).real() < 0) tm = -tm;  // guard against branch flip
        cplx z1 = z + ds * tm;

        // corrector: Newton back onto the level set
        cplx w1 = f.w(z1, wm);
        bool ok = true;
        for (int it = 0; it < 6; ++it) {
            double lv1;
            if (f.exact_level) {
                lv1 = f.exact_level(z1);
            } else {
                cplx hint = w;
                lv1 = level + re_increment(f, z, z1, hint);
                w1 = hint;
            }
            double miss = lv1 - cfg.target_level;
            if (std::fabs(miss) < cfg.level_tol) break;
            if (it == 5) { ok = false; break; }
            cplx g = std::conj(w1);
            z1 -= miss * g / std::norm(g);
            w1 = f.w(z1, w1);
        }
        if (!ok || !std::isfinite(z1.real()) || !std::isfinite(z1.imag())) {
            ds *= 0.5;
            if (ds < cfg.ds_min) { out.stop = StopKind::StepFail; break; }
            continue;
        }

        double dang = std::abs(std::arg(w1 / w));
        if (dang > 0.35 && ds > 2.0 * cfg.ds_min) { ds *= 0.5; continue; }
        if (std::abs(z1 - z) > std::max(1.8 * ds, cfg.ds_max) && ds > 2.0 * cfg.ds_min) {
            ds *= 0.5;  // corrector overshot the step budget
            continue;
        }

        // accept the node
        cplx prev = z;
        if (!f.exact_level) {
            cplx hint = w;
            level += re_increment(f, z, z1, hint);
            w1 = f.w(z1, hint);
        }
        z = z1;
        w = w1;
        length += std::abs(z1 - prev);
        out.curve.points.push_back(z1);

        if (prev.imag() * z1.imag() < 0.0) {
            double x = prev.real() +
                       (z1.real() - prev.real()) * prev.imag() / (prev.imag() - z1.imag());
            (x < 0.0 ? out.neg_axis_crossings : out.pos_axis_crossings)++;
        }

        double grow = dang > 1e-12 ? std::sqrt(0.08 / dang) : 2.0;
        ds = std::clamp(ds * std::clamp(grow, 0.5, 2.0), cfg.ds_min, cfg.ds_max);

        if (cfg.target && length > cfg.target_arm_length) {
            double dt = std::abs(z1 - *cfg.target);
            if (dt <= std::max(cfg.target_final_hop, 3.0 * cfg.ds_min)) {
                out.curve.points.push_back(*cfg.target);
                out.stop = StopKind::Target;
                break;
            }
            ds = std::min(ds, std::max(0.3 * dt, 2.0 * cfg.ds_min));
        }
        if (std::abs(z1) > cfg.escape_radius) { out.stop = StopKind::Escape; break; }
        if (step + 2 >= cfg.max_nodes) { out.stop = StopKind::NodeBudget; break; }
    }
    out.curve.rebuild_arclength();
    return out;
}

cplx sqrt_match(cplx val2, cplx hint) {
    cplx r = std::sqrt(val2);
    if ((r * std::conj(hint)).real() < 0.0) r = -r;
    return r;
}

double bbox_diameter(const TracedCurve& c) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : c.points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    return std::hypot(xmax - xmin, ymax - ymin);
}

}  // namespace

// ---------------------------------------------------------------------------
// pre-critical branch cut
// ---------------------------------------------------------------------------

TraceResult trace_branch_cut_pre(const PreGeometry& geo, const TraceOptions& opt) {
    const double scale = geo.scale();
    const cplx beta = geo.beta, betab = std::conj(geo.beta);

    Field f;
    f.w = [&geo](cplx z, cplx hint) {
        cplx y2 = geo.a * geo.a * (z - geo.b) * (z - geo.b) * (z - geo.beta) *
                  (z - std::conj(geo.beta)) / ((z - geo.a) * (z - geo.a) * z * z);
        return sqrt_match(y2, hint);
    };

    // local model y ~ 2 C sqrt(z - beta): three level rays, 2pi/3 apart
    cplx C = geo.a * (beta - geo.b) * std::sqrt(beta - betab) / (2.0 * beta * (beta - geo.a));
    double base = (M_PI / 2.0 - std::arg(C)) * (2.0 / 3.0);
    double delta = opt.seed_delta_frac * scale;
    double diam_est = 2.0 * std::abs(beta - betab) + 2.0 * std::abs(beta.real()) + scale;

    TracerConfig cfg;
    cfg.ds_init = 3.0 * delta;
    cfg.ds_max = opt.h_max_frac * diam_est;
    cfg.ds_min = 1e-12 * scale;
    cfg.level_tol = opt.level_tol * std::max(1.0, scale);
    cfg.max_nodes = opt.max_nodes;
    cfg.escape_radius = 50.0 * scale;
    cfg.target = betab;
    cfg.target_final_hop = 1e-5 * scale;

    TracerResult chosen;
    bool found = false;
    for (int attempt = 0; attempt < 2 && !found; ++attempt) {
        for (int k = 0; k < 3 && !found; ++k) {
            double th = base + 2.0 * M_PI * k / 3.0;
            cplx ray = std::polar(1.0, th);
            cplx z0 = beta + delta * ray;
            cplx hint = 2.0 * C * std::sqrt(delta * ray);
            TracerResult r = trace_level_curve(f, z0, hint, ray, cfg);
            if (r.stop == StopKind::Target && r.neg_axis_crossings == 1 &&
                r.pos_axis_crossings == 0) {
                chosen = std::move(r);
                found = true;
            }
        }
        if (found && attempt == 0) {
            double diam = bbox_diameter(chosen.curve);
            if (chosen.curve.max_spacing() > opt.h_max_frac * diam) {
                cfg.ds_max = 0.9 * opt.h_max_frac * diam;  // retrace at the measured scale
                found = false;
            }
        }
    }
    if (!found)
        throw TraceError(
            "trace_branch_cut_pre: no ray reaches conj(beta) across the negative axis");

    TraceResult res;
    res.curve = std::move(chosen.curve);
    res.curve.kind = CurveKind::BranchCut;
    res.curve.closed = false;
    res.curve.points.front() = beta;  // seed was offset by delta
    res.neg_axis_crossings = chosen.neg_axis_crossings;
    res.curve.rebuild_arclength();

    res.endpoint_error = std::abs(res.curve.points.back() - betab);
    res.residuals.reserve(res.curve.size());
    for (size_t i = 0; i < res.curve.size(); ++i) {
        double v = u_op_closed_abs(geo, res.curve.points[i]);
        res.residuals.push_back(v);
        if (i > 0 && i + 1 < res.curve.size())
            res.max_abs_re_phi = std::max(res.max_abs_re_phi, v);
    }
    return res;
}

// ---------------------------------------------------------------------------
// post/critical branch cut
// ---------------------------------------------------------------------------

TraceResult trace_branch_cut_post(const PostGeometry& geo, const TraceOptions& opt) {
    const double a = geo.a, c = geo.c, t = geo.t;
    const cplx beta = geo.beta;
    const double scale = std::max({geo.big_radius, std::abs(geo.b), a});

    const double re_w_beta = re_y_antiderivative_ext(a, c, t, beta);
    Field f;
    f.w = [&geo](cplx z, cplx) { return eval_y_post_ext(geo, z); };
    f.exact_level = [a, c, t, re_w_beta](cplx z) {
        return re_y_antiderivative_ext(a, c, t, z) - re_w_beta;
    };

    // generic level-ray search on a small circle around beta
    double delta = std::max(std::min(opt.seed_delta_frac, 0.1 * opt.h_max_frac) * scale,
                            1e-7 * scale);
    const int nth = 192;
    std::vector<double> roots;
    double prev = f.exact_level(beta + std::polar(delta, 0.0));
    for (int i = 1; i <= nth; ++i) {
        double th = 2.0 * M_PI * i / nth;
        double cur = f.exact_level(beta + std::polar(delta, th));
        if ((prev < 0) != (cur < 0)) {
            double lo = 2.0 * M_PI * (i - 1) / nth, hi = th;
            bool lo_neg = prev < 0;
            for (int bs = 0; bs < 60; ++bs) {
                double mid = 0.5 * (lo + hi);
                double v = f.exact_level(beta + std::polar(delta, mid));
                ((v < 0) == lo_neg ? lo : hi) = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev = cur;
    }
    if (roots.empty()) throw TraceError("trace_branch_cut_post: no level rays at beta");

    TracerConfig cfg;
    cfg.ds_max = opt.h_max_frac * 2.0 * geo.big_radius;
    cfg.ds_init = std::min(10.0 * delta, 0.5 * cfg.ds_max);
    cfg.ds_min = 1e-12 * scale;
    cfg.level_tol = opt.level_tol * std::max(1.0, scale);
    cfg.max_nodes = opt.max_nodes;
    cfg.escape_radius = 20.0 * scale;
    cfg.target = beta;  // the curve returns to beta along the opposite ray
    cfg.target_arm_length = 2.0 * std::abs(beta);
    cfg.target_final_hop = std::max(1e-6 * scale, 0.5 * cfg.ds_max);

    for (double th : roots) {
        cplx ray = std::polar(1.0, th);
        cplx z0 = beta + delta * ray;
        TracerResult r = trace_level_curve(f, z0, eval_y_post_ext(geo, z0), ray, cfg);
        if (r.stop != StopKind::Target) continue;
        r.curve.closed = true;
        if (winding_number(r.curve, cplx(0.0, 0.0)) == 0 ||
            winding_number(r.curve, cplx(a, 0.0)) == 0)
            continue;

        TraceResult res;
        res.curve = std::move(r.curve);
        res.curve.kind = CurveKind::BranchCut;
        // closure defect: level offset of the closing segment, as a distance
        {
            cplx mid = 0.5 * (res.curve.points.back() + res.curve.points.front());
            double grad = std::abs(eval_y_post_ext(geo, mid));
            res.endpoint_error = grad > 0 ? std::fabs(f.exact_level(mid)) / grad : 0.0;
        }
        res.neg_axis_crossings = r.neg_axis_crossings;
        res.residuals.reserve(res.curve.size());
        for (size_t i = 0; i < res.curve.size(); ++i) {
            double v = std::fabs(f.exact_level(res.curve.points[i]));
            res.residuals.push_back(v);
            if (i > 0) res.max_abs_re_phi = std::max(res.max_abs_re_phi, v);
        }
        res.curve.rebuild_arclength();
        return res;
    }
    throw TopologyError("trace_branch_cut_post: no Jordan level curve enclosing 0 and a");
}

// ---------------------------------------------------------------------------

std::pair<TracedCurve, TracedCurve> trace_lens(const TracedCurve& cut, double halfwidth) {
    // offset bands, tapered to the branch points at the curve ends
    auto build = [&](double h, CurveKind kind) {
        TracedCurve band = offset_curve(cut, h, kind);
        const double total = cut.length();
        const double ramp = std::min(0.15 * total, 10.0 * std::fabs(h));
        for (size_t i = 0; i < band.points.size(); ++i) {
            double sa = cut.arclength[i];
            double wgt = std::min({sa / ramp, (total - sa) / ramp, 1.0});
            band.points[i] = cut.points[i] + wgt * (band.points[i] - cut.points[i]);
        }
        band.closed = cut.closed;
        band.rebuild_arclength();
        return band;
    };
    TracedCurve left = build(+halfwidth, CurveKind::LensPlus);
    TracedCurve right = build(-halfwidth, CurveKind::LensMinus);

    // Gamma_plus is the side containing the origin
    bool left_is_plus;
    if (cut.closed) {
        double ml = 0, mr = 0;
        for (auto& p : left.points) ml += std::abs(p);
        for (auto& p : right.points) mr += std::abs(p);
        left_is_plus = ml < mr;  // inner offset
    } else {
        left_is_plus = side_of_curve(cut, cplx(0.0, 0.0)) > 0;
    }
    if (!left_is_plus) std::swap(left, right);
    left.kind = CurveKind::LensPlus;
    right.kind = CurveKind::LensMinus;
    return {left, right};
}

TracedCurve trace_steepest_to_b(const PreGeometry& geo, const TracedCurve& cut,
                                const TraceOptions& opt) {
    // The steepest-descent path of Re phi from b reaches conj(beta); we trace
    // it from b (where the local ray is exact: straight down, since y has a
    // simple positive-slope zero at b) and reverse at the end.
    const cplx betab = std::conj(geo.beta);
    Field f;
    f.w = [&geo, &cut](cplx z, cplx) { return cplx(0, -1) * eval_y_pre(geo, cut, z); };

    double scale = geo.scale();
    double delta = opt.seed_delta_frac * scale;

    TracerConfig cfg;
    cfg.ds_init = 3.0 * delta;
    cfg.ds_max = 2e-2 * scale;
    cfg.ds_min = 1e-12 * scale;
    cfg.level_tol = opt.level_tol * std::max(1.0, scale);
    cfg.max_nodes = opt.max_nodes;
    cfg.escape_radius = 30.0 * scale;
    cfg.target = betab;
    cfg.target_final_hop = 1e-4 * scale;

    cplx z0 = cplx(geo.b, -delta);
    TracerResult r = trace_level_curve(f, z0, f.w(z0, cplx(1.0, 0.0)), cplx(0.0, -1.0), cfg);
    if (r.stop != StopKind::Target) throw TraceError("trace_steepest_to_b: path did not reach conj(beta)");
    r.curve.points.front() = cplx(geo.b, 0.0);
    std::reverse(r.curve.points.begin(), r.curve.points.end());
    r.curve.kind = CurveKind::SteepestToB;
    r.curve.rebuild_arclength();
    return r.curve;
}

TracedCurve trace_zero_curve(const PostGeometry& geo, const ModelParams& p,
                             const TracedCurve& cut, const TraceOptions& opt) {
    const double a = geo.a, c = geo.c, t = geo.t;
    const double N = p.N;
    const double r = static_cast<double>(p.r);
    const cplx beta = geo.beta, b = geo.b;
    if (!geo.real_branch_points)
        throw RegimeError("zero curve is defined for the post-critical regime");

    const double re_w_beta = re_y_antiderivative_ext(a, c, t, beta);
    const double ln_c0 = 0.5 * std::log((beta * (beta - a)).real()) +
                         r * std::log(beta.real()) -
                         0.5 * std::log(2.0 * M_PI * a * (b - beta).real());

    // level(z) = -u_op_ext(z) + lnN/(2N) - (1/N)(ln c0 - r ln|z| - ln|z-beta|)
    auto level = [=](cplx z) {
        double uop = re_y_antiderivative_ext(a, c, t, z) - re_w_beta;
        return -uop + 0.5 * std::log(N) / N -
               (ln_c0 - r * std::log(std::abs(z)) - std::log(std::abs(z - beta))) / N;
    };
    Field f;
    f.exact_level = level;
    f.w = [&geo, beta, r, N](cplx z, cplx) {
        return -eval_y_post_ext(geo, z) + (r / z + 1.0 / (z - beta)) / N;
    };

    // seed on the inward normal at the cut node farthest from beta
    size_t far_idx = 0;
    double fd = -1.0;
    for (size_t i = 0; i < cut.points.size(); ++i) {
        double d = std::abs(cut.points[i] - beta);
        if (d > fd) { fd = d; far_idx = i; }
    }
    cplx p0 = cut.points[far_idx];
    cplx tang = cut.points[(far_idx + 1) % cut.points.size()] - p0;
    cplx normal = cplx(0, 1) * tang / std::abs(tang);
    double scale = std::max(geo.big_radius, std::abs(b));
    if (winding_number(cut, p0 + 0.01 * scale * normal) == 0) normal = -normal;

    double lo = 1e-9, hi = 0.0;
    bool lo_neg = level(p0 + lo * scale * normal) < 0;
    bool found = false;
    for (double sd = 1e-4; sd < 0.5; sd *= 1.3) {
        if ((level(p0 + sd * scale * normal) < 0) != lo_neg) { hi = sd; found = true; break; }
        lo = sd;
    }
    if (!found) throw TraceError("zero_curve: no sign change along the inward normal");
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        ((level(p0 + mid * scale * normal) < 0) == lo_neg ? lo : hi) = mid;
    }
    cplx seed = p0 + 0.5 * (lo + hi) * scale * normal;

    TracerConfig cfg;
    cfg.ds_init = 1e-3 * scale;
    cfg.ds_max = opt.h_max_frac * 2.0 * geo.big_radius;
    cfg.ds_min = 1e-12 * scale;
    cfg.level_tol = opt.level_tol * std::max(1.0, scale);
    cfg.max_nodes = opt.max_nodes;
    cfg.escape_radius = 20.0 * scale;
    cfg.target = seed;  // smooth closed curve through the seed
    cfg.target_arm_length = 2.0 * std::abs(beta);
    cfg.target_final_hop = 1e-7 * scale;

    TracerResult res = trace_level_curve(f, seed, f.w(seed, cplx(1, 0)), tang, cfg);
    if (res.stop != StopKind::Target) throw TraceError("zero_curve: trace did not close");
    res.curve.points.pop_back();  // drop the duplicated seed node
    res.curve.kind = CurveKind::ZeroCurve;
    res.curve.closed = true;
    res.curve.rebuild_arclength();
    return res.curve;
}

const char* zone_name(Zone z) {
    switch (z) {
        case Zone::ExtB: return "ExtB";
        case Zone::IntB: return "IntB";
        case Zone::OmegaPlus: return "OmegaPlus";
        case Zone::OmegaMinus: return "OmegaMinus";
        case Zone::NearBeta: return "NearBeta";
        case Zone::NearBetaBar: return "NearBetaBar";
    }
    return "?";
}

ZoneTag classify_zone(cplx z, const TracedCurve& cut, cplx beta, std::optional<cplx> beta_bar,
                      const ZoneRadii& radii, bool pre_critical) {
    ZoneTag tag;
    auto [d, spacing] = distance_and_local_spacing(cut, z);

    if (std::abs(z - beta) < radii.near_beta) {
        tag.zone = Zone::NearBeta;
        tag.signed_distance_to_B = d;
        return tag;
    }
    if (pre_critical && beta_bar && std::abs(z - *beta_bar) < radii.near_beta) {
        tag.zone = Zone::NearBetaBar;
        tag.signed_distance_to_B = d;
        return tag;
    }
    if (d < spacing) throw AmbiguousError("classify_zone: point within node spacing of the cut");

    bool interior_side;
    if (cut.closed) {
        interior_side = winding_number(cut, z) != 0;
    } else {
        // The cut is an arc, so the plane is connected; the side test is only
        // meaningful near the cut. Omega_plus is the side containing 0.
        if (d >= 3.0 * radii.lens_halfwidth) {
            tag.signed_distance_to_B = d;
            tag.zone = Zone::ExtB;
            return tag;
        }
        int s0 = side_of_curve(cut, cplx(0.0, 0.0));
        interior_side = side_of_curve(cut, z) == s0;
    }
    tag.signed_distance_to_B = interior_side ? -d : d;
    if (d < radii.lens_halfwidth) {
        tag.zone = interior_side ? Zone::OmegaPlus : Zone::OmegaMinus;
    } else {
        tag.zone = interior_side ? Zone::IntB : Zone::ExtB;
    }
    return tag;
}

}  // namespace planorth
