#include "planorth/potentials.hpp"

#include "planorth/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace planorth {

cplx eval_phi_routed(const PotentialContext& ctx, cplx z);

double external_Q(double a, double c, cplx z) {
    return std::norm(z) - 2.0 * c * std::log(std::abs(z - a));
}

namespace {

// log with the branch cut on [0, +inf): arg in (0, 2pi)
cplx log_cut_positive_axis(cplx w) {
    double th = std::arg(w);
    if (th <= 0.0) th += 2.0 * M_PI;
    return cplx(std::log(std::abs(w)), th);
}

}  // namespace

cplx contour_V(double a, double c, double t, cplx z) {
    return a * z - c * log_cut_positive_axis(z - a) + (c + t) * log_cut_positive_axis(z);
}

double PotentialContext::scale() const {
    if (pre) return pre->scale();
    return std::max({post->big_radius, std::abs(post->b), post->a});
}

bool PotentialContext::exterior_of_cut(cplx z) const {
    if (cut.closed) return winding_number(cut, z) == 0;
    return true;
}

// ---------------------------------------------------------------------------
// context construction
// ---------------------------------------------------------------------------

namespace {

TracedCurve decimate(const TracedCurve& c, size_t stride) {
    TracedCurve out;
    out.kind = c.kind;
    out.closed = c.closed;
    for (size_t i = 0; i < c.points.size(); i += stride) out.points.push_back(c.points[i]);
    if (!c.points.empty() && (c.points.size() - 1) % stride != 0)
        out.points.push_back(c.points.back());
    out.rebuild_arclength();
    return out;
}

// steepest-ascent ray of the local 3/2-power model at a cut endpoint,
// oriented toward the given reference point
double ascent_angle(const PreGeometry& geo, cplx endpoint, cplx toward) {
    cplx other = std::conj(endpoint);
    cplx C = geo.a * (endpoint - geo.b) * std::sqrt(endpoint - other) /
             (2.0 * endpoint * (endpoint - geo.a));
    double best_th = 0.0, best_align = -2.0;
    for (int k = 0; k < 3; ++k) {
        double th = (-std::arg(C) + 2.0 * M_PI * k) * (2.0 / 3.0);
        cplx d = std::polar(1.0, th);
        if ((C * std::pow(d, 1.5)).real() <= 0.0) continue;  // not an ascent ray
        double align = std::cos(th - std::arg(toward - endpoint));
        if (align > best_align) {
            best_align = align;
            best_th = th;
        }
    }
    return best_th;
}

double curve_diameter(const TracedCurve& c) {
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

PotentialContext make_potential_context(const ModelParams& p, const Regime& regime,
                                        const TraceOptions& topt) {
    PotentialContext ctx;
    ctx.params = p;
    ctx.regime = regime;

    if (regime.pre()) {
        ctx.pre = solve_pre_geometry(p.a, p.c, p.t);
        const PreGeometry& geo = *ctx.pre;
        TraceResult tr = trace_branch_cut_pre(geo, topt);
        ctx.cut = std::move(tr.curve);
        ctx.cut_coarse = decimate(ctx.cut, 8);
        ctx.boundary = pre_boundary_curve(geo);
        ctx.ell_2d = ell_2d_pre(geo);

        const double scale = geo.scale();
        const cplx beta = geo.beta, betab = std::conj(beta);

        // launch point just off beta along the steepest-ascent ray toward b
        double th = ascent_angle(geo, beta, cplx(geo.b, 0.0));
        double eps = 1e-6 * scale;
        ctx.launch = beta + std::polar(eps, th);
        cplx C = geo.a * (beta - geo.b) * std::sqrt(beta - betab) /
                 (2.0 * beta * (beta - geo.a));
        cplx stub = (4.0 / 3.0) * C * std::pow(std::polar(eps, th), 1.5);
        cplx y_launch = eval_y_pre(geo, ctx.cut, ctx.launch);
        cplx y_model = 2.0 * C * std::sqrt(std::polar(eps, th));
        if ((y_launch * std::conj(y_model)).real() < 0.0) stub = -stub;
        ctx.launch_stub = stub;

        // routing waypoints: past both endpoints, beside b, a surrounding ring,
        // and offsets on both sides of the cut; all off the slit [0, +inf)
        auto past_end = [&](size_t i0, size_t i1) {
            cplx dir = ctx.cut.points[i0] - ctx.cut.points[i1];
            return ctx.cut.points[i0] + 0.25 * scale * dir / std::abs(dir);
        };
        size_t m = ctx.cut.points.size();
        ctx.waypoints.push_back(cplx(geo.b, 0.15 * scale));
        ctx.waypoints.push_back(cplx(geo.b, -0.15 * scale));
        ctx.waypoints.push_back(past_end(0, std::min<size_t>(40, m - 1)));
        ctx.waypoints.push_back(past_end(m - 1, m - 1 - std::min<size_t>(40, m - 1)));
        for (double frac : {0.25, 0.5, 0.75}) {
            size_t idx = static_cast<size_t>(frac * (m - 1));
            cplx tan = ctx.cut.points[idx + 1] - ctx.cut.points[idx];
            cplx nrm = cplx(0, 1) * tan / std::abs(tan);
            ctx.waypoints.push_back(ctx.cut.points[idx] + 0.2 * scale * nrm);
            ctx.waypoints.push_back(ctx.cut.points[idx] - 0.2 * scale * nrm);
        }
        for (int k = 0; k < 12; ++k) {
            double th = 2.0 * M_PI * (k + 0.5) / 12.0;
            ctx.waypoints.push_back(std::polar(2.2 * scale, th));
        }

        // Robin constant: ell = (1/t) lim [phi - a z + t log z] along the upper axis
        const double R = 1e4 * scale;
        cplx phi_R = eval_phi_routed(ctx, cplx(0.0, R));
        cplx tail = integrate_gk(
            [&](double u) {
                cplx z = cplx(0.0, R) / u;
                cplx f = eval_y_pre(geo, ctx.cut_coarse, z) - geo.a + p.t / z;
                return f * cplx(0.0, R) / (u * u);
            },
            1e-12, 1.0, 1e-13);
        cplx lim = phi_R + tail - geo.a * cplx(0.0, R) + p.t * std::log(cplx(0.0, R));
        ctx.ell = lim.real() / p.t;

        // phi(b) and the two one-sided values of phi at conj(beta)
        ctx.phi_b = eval_phi_routed(ctx, cplx(geo.b, 0.0)).real();
        {
            size_t iend = ctx.cut.points.size() - 1;
            cplx tan = ctx.cut.points[iend] - ctx.cut.points[iend - std::min<size_t>(20, iend)];
            tan /= std::abs(tan);
            cplx nleft = cplx(0, 1) * tan;
            double off = 1e-6 * scale;
            int side0 = side_of_curve(ctx.cut, cplx(0.0, 0.0));
            bool left_is_plus = side_of_curve(ctx.cut, betab + 0.05 * scale * nleft) == side0;
            cplx pp = betab + (left_is_plus ? off : -off) * nleft;
            cplx pm = betab + (left_is_plus ? -off : off) * nleft;
            ctx.phi_beta_bar_plus = eval_phi_routed(ctx, pp);
            ctx.phi_beta_bar_minus = eval_phi_routed(ctx, pm);
        }
    } else {
        ctx.post = solve_post_geometry(p.a, p.c, p.t);
        if (regime.critical()) ctx.crit = solve_critical_geometry(p.a, p.c, p.t, p.N);
        TraceResult tr = trace_branch_cut_post(*ctx.post, topt);
        ctx.cut = std::move(tr.curve);
        ctx.cut_coarse = decimate(ctx.cut, 8);
        ctx.ell = ctx.post->ell;
        ctx.ell_2d = ell_2d_post(p.c, p.t);
    }

    auto lenses = trace_lens(ctx.cut, topt.lens_halfwidth_frac * curve_diameter(ctx.cut));
    ctx.lens_plus = std::move(lenses.first);
    ctx.lens_minus = std::move(lenses.second);
    return ctx;
}

// ---------------------------------------------------------------------------
// routed quadrature (pre-critical)
// ---------------------------------------------------------------------------

namespace {

// crossing test against the slit [0, +inf); endpoints on the slit don't count
bool crosses_positive_axis(cplx u, cplx v) {
    if (u.imag() * v.imag() >= 0.0) return false;
    double x = u.real() + (v.real() - u.real()) * u.imag() / (u.imag() - v.imag());
    return x > 0.0;
}

}  // namespace

std::vector<cplx> route_to(const PotentialContext& ctx, cplx z, size_t skip_waypoint) {
    // Paths avoid the cut and the slit [0, +inf): the slit plane minus the cut
    // is simply connected, so phi is a single determination independent of the
    // waypoint choice (Def. of phi with auxiliary cuts).
    const TracedCurve& cut = ctx.cut_coarse;
    auto clear = [&](cplx u, cplx v) {
        return count_crossings(cut, u, v) == 0 && !crosses_positive_axis(u, v);
    };

    if (clear(ctx.launch, z)) return {ctx.launch, z};

    size_t nw = ctx.waypoints.size();
    std::vector<int> parent(nw + 2, -2);  // 0..nw-1 waypoints, nw = launch, nw+1 = z
    std::vector<size_t> queue;
    queue.push_back(nw);
    parent[nw] = -1;
    auto node = [&](size_t i) -> cplx {
        if (i == nw) return ctx.launch;
        if (i == nw + 1) return z;
        return ctx.waypoints[i];
    };
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        size_t u = queue[qi];
        for (size_t v = 0; v < nw + 2; ++v) {
            if (v == u || parent[v] != -2 || v == skip_waypoint) continue;
            if (!clear(node(u), node(v))) continue;
            parent[v] = static_cast<int>(u);
            if (v == nw + 1) {
                std::vector<cplx> path;
                int cur = static_cast<int>(v);
                while (cur != -1) {
                    path.push_back(node(static_cast<size_t>(cur)));
                    cur = parent[static_cast<size_t>(cur)];
                }
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(v);
        }
    }
    throw RoutingError("route_to: no cut-avoiding path found");
}

cplx phi_along(const PotentialContext& ctx, const std::vector<cplx>& path) {
    // Each leg integrates the regularized field y - a + t/w and adds the
    // elementary antiderivative a w - t log w with continuous log tracking, so
    // the absolute accuracy is uniform even on long legs.
    const PreGeometry& geo = *ctx.pre;
    const double t = ctx.params.t;
    cplx acc = ctx.launch_stub;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        cplx u = path[i], v = path[i + 1];
        acc += integrate_segment(
            [&](cplx w) { return eval_y_pre(geo, ctx.cut, w) - geo.a + t / w; }, u, v,
            ctx.quad_rel_tol);
        acc += geo.a * (v - u);
        acc -= t * cplx(std::log(std::abs(v) / std::abs(u)), std::arg(v / u));
    }
    return acc;
}

cplx eval_phi_routed(const PotentialContext& ctx, cplx z) {
    return phi_along(ctx, route_to(ctx, z));
}

cplx eval_phi(const PotentialContext& ctx, cplx z) {
    if (ctx.pre) return eval_phi_routed(ctx, z);
    const PostGeometry& g = *ctx.post;
    cplx w = y_antiderivative_ext(g.a, g.c, g.t, z) - y_antiderivative_ext(g.a, g.c, g.t, g.beta);
    return ctx.exterior_of_cut(z) ? w : -w;
}

double eval_u_op(const PotentialContext& ctx, cplx z) {
    if (ctx.pre) {
        // signed closed form: phi = G(deck(F)) - G(F) in the uniformizing variable
        const PreGeometry& g = *ctx.pre;
        cplx v = conformal_F(g, ctx.cut_coarse, z);
        cplx w = deck(g, v);
        double D = (g.kappa / g.alpha) * (g.rho - g.kappa / (1.0 - g.alpha * g.alpha));
        auto reG = [&](cplx u) {
            return (g.c + g.t) * std::log(std::abs(u)) +
                   g.c * std::log(std::abs(u - 1.0 / g.alpha)) -
                   g.c * std::log(std::abs(u - g.alpha)) - (D / (u - g.alpha)).real();
        };
        return reG(w) - reG(v);
    }
    const PostGeometry& g = *ctx.post;
    double u = re_y_antiderivative_ext(g.a, g.c, g.t, z) -
               re_y_antiderivative_ext(g.a, g.c, g.t, g.beta);
    return ctx.exterior_of_cut(z) ? u : -u;
}

cplx eval_g(const PotentialContext& ctx, cplx z) {
    const ModelParams& p = ctx.params;
    if (ctx.pre) {
        cplx phi = eval_phi(ctx, z);
        return (contour_V(p.a, p.c, p.t, z) - phi) / (2.0 * p.t) + 0.5 * ctx.ell;
    }
    if (ctx.exterior_of_cut(z))
        return std::log(z) + (p.c / p.t) * (std::log(z) - std::log(z - p.a));
    return (p.a / p.t) * z + ctx.ell;
}

double eval_re_g(const PotentialContext& ctx, cplx z) {
    const ModelParams& p = ctx.params;
    if (ctx.pre) {
        double re_v = p.a * z.real() - p.c * std::log(std::abs(z - p.a)) +
                      (p.c + p.t) * std::log(std::abs(z));
        return (re_v - eval_u_op(ctx, z)) / (2.0 * p.t) + 0.5 * ctx.ell;
    }
    return eval_g(ctx, z).real();
}

double eval_U(const PotentialContext& ctx, cplx z) {
    return external_Q(ctx.params.a, ctx.params.c, z) - 2.0 * ctx.params.t * eval_re_g(ctx, z) +
           ctx.ell_2d;
}

bool in_K(const PotentialContext& ctx, cplx z) {
    if (ctx.pre) return winding_number(ctx.boundary, z) != 0;
    return std::abs(z) <= ctx.post->big_radius &&
           std::abs(z - ctx.params.a) >= ctx.post->small_radius;
}

double eval_U_2D(const PotentialContext& ctx, cplx z) {
    return in_K(ctx, z) ? 0.0 : eval_U(ctx, z);
}

}  // namespace planorth
