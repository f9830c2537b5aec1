#include "planorth/asymptotics.hpp"

#include "planorth/quadrature.hpp"

#include <cmath>

namespace planorth {

EvalResult EvalResult::from_log(double log_abs_in, double phase_in, Zone zone_in,
                                const char* order) {
    EvalResult r;
    r.log_abs = log_abs_in;
    r.phase = std::remainder(phase_in, 2.0 * M_PI);
    r.zone = zone_in;
    r.error_order = order;
    double lg2 = log_abs_in / std::log(2.0);
    double k = std::floor(lg2);
    r.log_scale = k * std::log(2.0);
    r.value = std::polar(std::exp2(lg2 - k), r.phase);
    return r;
}

double EvalResult::rel_error_vs(double other_log_abs, double other_phase) const {
    cplx ratio = std::polar(std::exp(log_abs - other_log_abs), phase - other_phase);
    return std::abs(ratio - 1.0);
}

namespace {

// integer power, exact and single-valued
cplx ipow(cplx z, long e) {
    if (e < 0) return 1.0 / ipow(z, -e);
    cplx r = 1.0, b = z;
    for (long k = e; k > 0; k >>= 1) {
        if (k & 1) r *= b;
        b *= b;
    }
    return r;
}

struct LogC {
    double lr = 0.0;  // ln|.|
    double ph = 0.0;  // arg
    LogC& operator*=(cplx w) {
        lr += std::log(std::abs(w));
        ph += std::arg(w);
        return *this;
    }
    LogC& mul_exp(cplx e) {  // multiply by e^{e}
        lr += e.real();
        ph += e.imag();
        return *this;
    }
};

// z^n (z/(z-a))^{Nc} in log form; single-valued off [0,a]
LogC ext_leading_post(const ModelParams& p, cplx z) {
    LogC l;
    double nc = p.N * p.c;
    l.lr = p.n * std::log(std::abs(z)) + nc * (std::log(std::abs(z)) - std::log(std::abs(z - p.a)));
    l.ph = p.n * std::arg(z) + nc * (std::arg(z) - std::arg(z - p.a));
    return l;
}

// e^{N a z + t N ell} in log form
LogC int_exponent_post(const ModelParams& p, double ell, cplx z) {
    LogC l;
    l.lr = p.N * p.a * z.real() + p.t * p.N * ell;
    l.ph = p.N * p.a * z.imag();
    return l;
}

EvalResult conj_result(const EvalResult& r, Zone zone) {
    EvalResult out = EvalResult::from_log(r.log_abs, -r.phase, zone, r.error_order.c_str());
    out.bound_only = r.bound_only;
    if (r.bound_only) out.value = 0.0;
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// pre-critical pieces
// ---------------------------------------------------------------------------

namespace {

// e^{N t g} in log form: the contour potential with log cut on [0, +inf)
// paired with the slit determination of phi is jump-free off the cut.
LogC pre_exponent(const PotentialContext& pot, cplx z, cplx phi) {
    const ModelParams& p = pot.params;
    cplx e = 0.5 * p.N * (contour_V(p.a, p.c, p.t, z) - phi) + 0.5 * p.t * p.N * pot.ell;
    LogC l;
    l.lr = e.real();
    l.ph = e.imag();
    return l;
}

// steepest-ascent ray angle of the local model at conj(beta)
double axis_angle_at_betabar(const PreGeometry& g) {
    cplx betab = std::conj(g.beta);
    cplx C = std::conj(g.a * (g.beta - g.b) * std::sqrt(g.beta - betab) /
                       (2.0 * g.beta * (g.beta - g.a)));
    double best = -2.0, th_axis = 0.0;
    for (int k = 0; k < 3; ++k) {
        double th = (-std::arg(C) + 2.0 * M_PI * k) * (2.0 / 3.0);
        if ((C * std::pow(std::polar(1.0, th), 1.5)).real() <= 0.0) continue;
        double align = std::cos(th - std::arg(cplx(g.b, 0.0) - betab));
        if (align > best) {
            best = align;
            th_axis = th;
        }
    }
    return th_axis;
}

cplx sqrt_match(cplx val, cplx hint) {
    cplx r = std::sqrt(val);
    if ((r * std::conj(hint)).real() < 0.0) r = -r;
    return r;
}

// direction of the cut where it enters conj(beta)
double cut_angle_at_betabar(const PotentialContext& pot) {
    const auto& pts = pot.cut.points;
    size_t m = pts.size();
    size_t k = std::min<size_t>(40, m - 1);
    return std::arg(pts[m - 1 - k] - pts[m - 1]);
}

struct AiryFrame {
    cplx w;     // N (phi(z) - phi(conj beta)), along a local slit-disk path
    cplx zeta;  // Airy coordinate
    cplx sq;    // sqrt(rho F'), continued along the same path
};

// Local construction inside the turning disk: both the phi increment and the
// square-root branch are carried along a radial path from conj(beta), so no
// global routing or principal-branch choices enter.
AiryFrame airy_frame(const AsymptoticContext& ctx, cplx z) {
    const PreGeometry& g = *ctx.pot.pre;
    const ModelParams& p = ctx.pot.params;
    const cplx betab = std::conj(g.beta);
    const double scale = g.scale();
    const double r0 = 1e-9 * scale;
    const double r_z = std::abs(z - betab);
    const double th = std::arg(z - betab);
    const double th_cut = cut_angle_at_betabar(ctx.pot);

    // path: radial ray at angle th; when th hugs the cut direction, go out at
    // a sidestepped angle and come around on a circular arc of chords
    std::vector<cplx> path;
    double th_start = th;
    double dcut = std::remainder(th - th_cut, 2.0 * M_PI);
    if (std::fabs(dcut) < 0.2) {
        th_start = th_cut + (dcut >= 0.0 ? 0.6 : -0.6);
        path.push_back(betab + std::polar(r0, th_start));
        path.push_back(betab + std::polar(r_z, th_start));
        const int arc_steps = 16;
        double span = std::remainder(th - th_start, 2.0 * M_PI);
        for (int k = 1; k <= arc_steps; ++k)
            path.push_back(betab + std::polar(r_z, th_start + span * k / arc_steps));
    } else {
        path.push_back(betab + std::polar(r0, th));
    }
    path.push_back(z);

    AiryFrame fr;
    cplx acc = 0.0;
    for (size_t i = 0; i + 1 < path.size(); ++i)
        acc += integrate_segment(
            [&](cplx u) { return eval_y_pre(g, ctx.pot.cut, u); }, path[i], path[i + 1],
            ctx.pot.quad_rel_tol);
    fr.w = p.N * acc;

    double th_axis = axis_angle_at_betabar(g);
    double est = 1.5 * std::remainder(th - th_axis, 2.0 * M_PI);
    double argw = std::arg(fr.w) + 2.0 * M_PI * std::round((est - std::arg(fr.w)) / (2.0 * M_PI));
    fr.zeta = std::pow(std::abs(0.75 * fr.w), 2.0 / 3.0) * std::polar(1.0, argw * (2.0 / 3.0));

    // sqrt(rho F') by hint-matched continuation from the local model seed
    cplx c4 = std::pow(std::sqrt(g.kappa * g.rho) / cplx(0.0, 4.0), 0.25);
    double th_tilde = th_cut + std::remainder(th_start - th_cut, 2.0 * M_PI) +
                      (std::remainder(th_start - th_cut, 2.0 * M_PI) < 0.0 ? 2.0 * M_PI : 0.0);
    cplx sq = ctx.airy_seed_rot * c4 * std::pow(r0, -0.25) * std::polar(1.0, -0.25 * th_tilde);
    const int walk = 48;
    double lr0 = std::log(r0), lr1 = std::log(std::max(r_z, 2.0 * r0));
    for (int k = 1; k <= walk; ++k) {
        double r = std::exp(lr0 + (lr1 - lr0) * k / walk);
        cplx u = betab + std::polar(r, th_start);
        sq = sqrt_match(g.rho * conformal_F_prime(g, ctx.pot.cut, u), sq);
    }
    if (th_start != th) {
        const int arc_steps = 24;
        double span = std::remainder(th - th_start, 2.0 * M_PI);
        for (int k = 1; k <= arc_steps; ++k) {
            cplx u = betab + std::polar(r_z, th_start + span * k / arc_steps);
            sq = sqrt_match(g.rho * conformal_F_prime(g, ctx.pot.cut, u), sq);
        }
    }
    fr.sq = sqrt_match(g.rho * conformal_F_prime(g, ctx.pot.cut, z), sq);
    return fr;
}

// uniform Airy-parametrix formula in the disk around conj(beta); valid for z
// on either side of the real axis within the disk
EvalResult eval_airy_disk_betabar(const AsymptoticContext& ctx, cplx z) {
    const PreGeometry& g = *ctx.pot.pre;
    const ModelParams& p = ctx.pot.params;

    cplx F = conformal_F(g, ctx.pot.cut, z);
    AiryFrame fr = airy_frame(ctx, z);
    cplx z14 = std::pow(std::abs(fr.zeta), 0.25) * std::polar(1.0, 0.25 * std::arg(fr.zeta));
    cplx ai = airy_ai(fr.zeta), aip = airy_ai_prime(fr.zeta);
    cplx phi11 = fr.sq * ipow(g.rho * F, p.r);
    cplx phi12 = fr.sq * ipow(g.rho * g.alpha, p.r) * std::sqrt(g.kappa * g.rho) /
                 ((g.rho * F - g.rho * g.alpha) * ipow(g.rho * F, p.r));
    cplx bracket = std::sqrt(M_PI) * (phi11 * (z14 * ai - aip / z14) -
                                      cplx(0, 1) * ipow(z, p.r) * phi12 * (z14 * ai + aip / z14));

    // e^{N t g} e^{(2/3) zeta^{3/2}} collapses to a phi-independent exponent
    // through the stored anchor value of phi at conj(beta)
    LogC l = pre_exponent(ctx.pot, z, ctx.airy_phi_anchor);
    l.ph += ctx.calib_phase;
    l *= bracket;
    return EvalResult::from_log(l.lr, l.ph, Zone::NearBetaBar, "N^-1/3");
}

}  // namespace

cplx airy_zeta(const AsymptoticContext& ctx, cplx z) { return airy_frame(ctx, z).zeta; }

EvalResult eval_P_pre(const AsymptoticContext& ctx, cplx z) {
    const PreGeometry& g = *ctx.pot.pre;
    const ModelParams& p = ctx.pot.params;
    if (z.imag() == 0.0 && z.real() > 0.0) z -= cplx(0.0, 1e-13 * g.scale());

    if (z.imag() < 0.0) {
        // parameters are real: P(conj z) = conj(P(z))
        cplx zu = std::conj(z);
        if (std::abs(zu - std::conj(g.beta)) < ctx.radii.near_beta) {
            // z is near beta-bar itself; evaluate there directly
            return eval_airy_disk_betabar(ctx, z);
        }
        EvalResult r = eval_P_pre(ctx, zu);
        Zone zone = r.zone == Zone::NearBeta ? Zone::NearBetaBar
                    : (r.zone == Zone::NearBetaBar ? Zone::NearBeta : r.zone);
        return conj_result(r, zone);
    }

    ZoneTag tag = classify_zone(z, ctx.pot.cut, g.beta, std::conj(g.beta), ctx.radii, true);
    if (tag.zone == Zone::NearBeta) {
        EvalResult r = eval_airy_disk_betabar(ctx, std::conj(z));
        return conj_result(r, Zone::NearBeta);
    }
    if (tag.zone == Zone::NearBetaBar) return eval_airy_disk_betabar(ctx, z);

    cplx F = conformal_F(g, ctx.pot.cut, z);
    cplx Fp = conformal_F_prime(g, ctx.pot.cut, z);
    cplx sq = std::sqrt(g.rho * Fp);
    cplx phi = eval_phi(ctx.pot, z);

    LogC core = pre_exponent(ctx.pot, z, phi);
    core.ph += ctx.calib_phase;

    if (tag.zone == Zone::ExtB || tag.zone == Zone::IntB) {
        LogC l = core;
        l *= sq * ipow(g.rho * F, p.r);
        return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-1");
    }
    // lens bands
    double sgn = tag.zone == Zone::OmegaPlus ? +1.0 : -1.0;
    cplx eNphi = std::exp(p.N * phi);  // Re phi < 0 in the bands
    cplx first = ipow(g.rho * F, p.r);
    cplx second =
        ipow(g.alpha * z / F, p.r) * std::sqrt(g.kappa * g.rho) / (g.rho * F - g.rho * g.alpha);
    LogC l = core;
    l *= sq * (first + sgn * eNphi * second);
    return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-1");
}

// ---------------------------------------------------------------------------
// post-critical
// ---------------------------------------------------------------------------

EvalResult eval_P_post(const AsymptoticContext& ctx, cplx z) {
    if (z.imag() < 0.0) {
        EvalResult r = eval_P_post(ctx, std::conj(z));
        return conj_result(r, r.zone);  // zones are conjugation-symmetric here
    }
    const PostGeometry& g = *ctx.pot.post;
    const ModelParams& p = ctx.pot.params;
    const double beta = g.beta.real(), b = g.b.real();
    const double gamma1 = std::sqrt(beta * (beta - p.a) / (p.a * (b - beta)));
    ZoneTag tag = classify_zone(z, ctx.pot.cut, g.beta, std::nullopt, ctx.radii, false);

    switch (tag.zone) {
        case Zone::ExtB: {
            LogC l = ext_leading_post(p, z);
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-3/2");
        }
        case Zone::IntB: {
            LogC l = int_exponent_post(p, ctx.pot.ell, z);
            l *= gamma1 * ipow(g.beta, p.r) / (std::sqrt(2.0 * M_PI * p.N) * (g.beta - z));
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-3/2");
        }
        case Zone::OmegaMinus: {
            LogC l = ext_leading_post(p, z);
            cplx eNphi = std::exp(p.N * eval_phi(ctx.pot, z));
            l *= 1.0 - gamma1 * ipow(g.beta, p.r) * eNphi /
                           (std::sqrt(2.0 * M_PI * p.N) * ipow(z, p.r) * (z - g.beta));
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-3/2");
        }
        case Zone::OmegaPlus: {
            LogC l = int_exponent_post(p, ctx.pot.ell, z);
            cplx eNphi = std::exp(p.N * eval_phi(ctx.pot, z));  // interior branch
            l *= ipow(z, p.r) * eNphi +
                 gamma1 * ipow(g.beta, p.r) / (std::sqrt(2.0 * M_PI * p.N) * (g.beta - z));
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-3/2");
        }
        case Zone::NearBeta: {
            cplx zeta = (z - g.beta) * std::sqrt(p.N) / gamma1;
            LogC l = int_exponent_post(p, ctx.pot.ell, z);
            l *= ipow(g.beta, p.r) * entire_F(zeta);
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-1/2");
        }
        default:
            throw ZoneError("eval_P_post: pre-critical zone in post-critical evaluation");
    }
}

// ---------------------------------------------------------------------------
// critical
// ---------------------------------------------------------------------------

EvalResult eval_P_critical(const AsymptoticContext& ctx, cplx z) {
    if (z.imag() < 0.0) {
        EvalResult r = eval_P_critical(ctx, std::conj(z));
        return conj_result(r, r.zone);
    }
    const ModelParams& p = ctx.pot.params;
    const CriticalGeometry& cg = *ctx.pot.crit;
    const PostGeometry& g = *ctx.pot.post;
    if (!ctx.hm || !ctx.hm->in_range(cg.s))
        throw TableRangeError("eval_P_critical: s outside the Hastings-McLeod table");
    const double q = ctx.hm->eval_q(cg.s);
    const double u = ctx.hm->eval_u(cg.s);
    const double N13 = std::cbrt(p.N);
    // e^{(2/3)|s| sqrt(s)}: growth for s > 0, pure phase for s < 0
    cplx es = cg.s >= 0.0 ? cplx(2.0 / 3.0 * std::pow(cg.s, 1.5), 0.0)
                          : cplx(0.0, 2.0 / 3.0 * std::pow(-cg.s, 1.5));
    ZoneTag tag = classify_zone(z, ctx.pot.cut, cplx(cg.b_c, 0.0), std::nullopt, ctx.radii, false);

    switch (tag.zone) {
        case Zone::ExtB: {
            LogC l = ext_leading_post(p, z);
            l *= 1.0 - cg.gamma_c * u / (2.0 * N13 * (z - cg.b_c));
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-2/3");
        }
        case Zone::IntB: {
            LogC l = int_exponent_post(p, ctx.pot.ell, z);
            l.mul_exp(es);
            l *= cg.gamma_c * q * std::pow(cg.b_c, static_cast<double>(p.r)) /
                 (2.0 * N13 * (g.beta - z));
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-2/3");
        }
        case Zone::OmegaMinus: {
            LogC l = ext_leading_post(p, z);
            cplx eNphi = std::exp(p.N * eval_phi(ctx.pot, z));
            cplx bracket = 1.0 - cg.gamma_c * u / (2.0 * N13 * (z - cg.b_c)) +
                           cg.gamma_c * q * std::pow(cg.b_c, static_cast<double>(p.r)) *
                               std::exp(es) * eNphi /
                               (2.0 * N13 * ipow(z, p.r) * (cg.b_c - z));
            l *= bracket;
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-2/3");
        }
        case Zone::OmegaPlus: {
            LogC l = int_exponent_post(p, ctx.pot.ell, z);
            cplx eNphi = std::exp(p.N * eval_phi(ctx.pot, z));
            cplx bracket = (1.0 - cg.gamma_c * u / (2.0 * N13 * (z - cg.b_c))) * ipow(z, p.r) *
                               eNphi +
                           cg.gamma_c * q * std::pow(cg.b_c, static_cast<double>(p.r)) *
                               std::exp(es) / (2.0 * N13 * (cg.b_c - z));
            l *= bracket;
            return EvalResult::from_log(l.lr, l.ph, tag.zone, "N^-2/3");
        }
        case Zone::NearBeta: {
            // only the uniform envelope O(N^{1/6}) e^{N t Re g} is reported here
            double log_env = p.t * p.N * eval_re_g(ctx.pot, z) + std::log(p.N) / 6.0;
            EvalResult r = EvalResult::from_log(log_env, 0.0, tag.zone, "N^1/6-envelope");
            r.bound_only = true;
            r.value = 0.0;
            return r;
        }
        default:
            throw ZoneError("eval_P_critical: unexpected zone");
    }
}

EvalResult eval_P(const AsymptoticContext& ctx, cplx z) {
    if (ctx.pot.regime.pre()) return eval_P_pre(ctx, z);
    if (ctx.pot.regime.post()) return eval_P_post(ctx, z);
    return eval_P_critical(ctx, z);
}

// ---------------------------------------------------------------------------

AsymptoticContext make_asymptotic_context(const ModelParams& p, const Regime& regime,
                                          const TraceOptions& topt) {
    AsymptoticContext ctx{make_potential_context(p, regime, topt), std::nullopt, {}, 0.0, 0.0};

    if (regime.pre()) {
        const PreGeometry& g = *ctx.pot.pre;
        ctx.radii.near_beta =
            std::min(0.1 * std::abs(g.beta - g.b), 0.9 * std::abs(g.beta.imag()));
        ctx.radii.lens_halfwidth = 0.05 * (2.0 * std::abs(g.beta.imag()) + g.b);
    } else if (regime.post()) {
        const PostGeometry& g = *ctx.pot.post;
        double beta = g.beta.real(), b = g.b.real();
        double gamma1 = std::sqrt(beta * (beta - p.a) / (p.a * (b - beta)));
        ctx.radii.near_beta = 6.0 * gamma1 / std::sqrt(p.N);
        ctx.radii.lens_halfwidth = 0.05 * 2.0 * g.big_radius;
    } else {
        const CriticalGeometry& cg = *ctx.pot.crit;
        ctx.hm = hastings_mcleod();
        ctx.radii.near_beta = 0.25 * std::min(cg.b_c - p.a, ctx.pot.post->big_radius - cg.b_c);
        ctx.radii.lens_halfwidth = 0.05 * 2.0 * ctx.pot.post->big_radius;
    }

    if (regime.pre()) {
        // pin the branch bookkeeping against the monic normalization at
        // infinity; the radius must beat the N * centroid / z tail
        cplx zc = std::polar(1e8 * ctx.pot.scale(), 0.25 * M_PI);
        EvalResult probe = eval_P_pre(ctx, zc);
        double want_lr = p.n * std::log(std::abs(zc));
        double want_ph = p.n * std::arg(zc);
        ctx.calib_mag_err = std::fabs(std::exp(probe.log_abs - want_lr) - 1.0);
        ctx.calib_phase = std::remainder(want_ph - probe.phase, 2.0 * M_PI);

        // anchor the turning-disk data at a handoff point on the steepest axis
        // just outside the disk: phi(conj beta) in the routing class of
        // eval_phi, and the overall branch rotation from matching the outer
        // formula there (the possible offsets form the {1, i, -1, -i} grid)
        const PreGeometry& g = *ctx.pot.pre;
        const cplx betab = std::conj(g.beta);
        double th_axis = axis_angle_at_betabar(g);
        double r_cap = 0.8 * std::abs(cplx(g.b, 0.0) - betab);
        auto abs_w = [&](double r) {
            return std::abs(airy_frame(ctx, betab + std::polar(r, th_axis)).w);
        };
        double r_hand = std::min(r_cap, 1.2 * ctx.radii.near_beta);
        if (abs_w(r_hand) < 8.0 && abs_w(r_cap) > 8.0) {
            double lo = r_hand, hi = r_cap;
            for (int i = 0; i < 40; ++i) {
                double mid = 0.5 * (lo + hi);
                (abs_w(mid) < 8.0 ? lo : hi) = mid;
            }
            r_hand = 0.5 * (lo + hi);
        } else if (abs_w(r_cap) <= 8.0) {
            r_hand = r_cap;
        }
        cplx zh = betab + std::polar(r_hand, th_axis);
        AiryFrame frh = airy_frame(ctx, zh);  // seed_rot still 1
        ctx.airy_phi_anchor = eval_phi(ctx.pot, zh) - frh.w / p.N;

        EvalResult disk = eval_airy_disk_betabar(ctx, zh);
        cplx F = conformal_F(g, ctx.pot.cut, zh);
        cplx Fp = conformal_F_prime(g, ctx.pot.cut, zh);
        cplx sq_out = std::sqrt(g.rho * Fp) * ipow(g.rho * F, p.r);
        LogC oc = pre_exponent(ctx.pot, zh, eval_phi(ctx.pot, zh));
        double outer_ph = oc.ph + std::arg(sq_out) + ctx.calib_phase;
        double delta = std::remainder(disk.phase - outer_ph, 2.0 * M_PI);
        ctx.airy_seed_rot = std::polar(1.0, -M_PI_2 * std::round(delta / M_PI_2));
    }
    return ctx;
}

double eval_hn_asymptotic(const AsymptoticContext& ctx) {
    const ModelParams& p = ctx.pot.params;
    double rho = ctx.pot.pre ? ctx.pot.pre->rho : std::sqrt(p.t + p.c);
    return std::log(2.0 * M_PI) + 0.5 * std::log(M_PI / (2.0 * p.N)) +
           (2.0 * p.r + 1.0) * std::log(rho) + p.N * ctx.pot.ell_2d;
}

double eval_log_rho_n(const AsymptoticContext& ctx, cplx z) {
    const ModelParams& p = ctx.pot.params;
    double logF, logFp;
    if (ctx.pot.pre) {
        const PreGeometry& g = *ctx.pot.pre;
        logF = std::log(std::abs(conformal_F(g, ctx.pot.cut, z)));
        logFp = std::log(std::abs(conformal_F_prime(g, ctx.pot.cut, z)));
    } else {
        double rho = ctx.pot.post->big_radius;
        logF = std::log(std::abs(z) / rho);
        logFp = -std::log(rho);
    }
    return 2.0 * p.r * logF + logFp + 0.5 * std::log(2.0 * p.N / M_PI) - std::log(2.0 * M_PI) -
           p.N * eval_U(ctx.pot, z);
}

double eval_rho_n(const AsymptoticContext& ctx, cplx z) {
    double lg = eval_log_rho_n(ctx, z);
    return lg < -700.0 ? 0.0 : std::exp(lg);
}

}  // namespace planorth
