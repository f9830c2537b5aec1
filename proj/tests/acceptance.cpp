// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include "planorth/asymptotics.hpp"
#include "planorth/oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace planorth;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Case {
    ModelParams params;
    AsymptoticContext actx;
    ExactPolynomial ep;
};

Case& get_case(long n, double N, long m, mpfr_prec_t bits_override = 0) {
    static std::map<std::string, Case> cache;
    std::string key = std::to_string(n) + "/" + std::to_string(N) + "/" + std::to_string(m) +
                      "/" + std::to_string(bits_override);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    double c = static_cast<double>(m) / N;
    ModelParams p = ModelParams::from_N(1.0, c, N, n, 0);
    Regime reg = classify(p);
    AsymptoticContext actx = make_asymptotic_context(p, reg);
    mpfr_prec_t bits = bits_override ? bits_override : std::max<mpfr_prec_t>(256, 8 * (n + 1));
    MomentMatrix mm = exact_moments(1.0, N, m, n + 1, bits);
    ExactPolynomial ep = exact_polynomial(mm, n);
    auto [pos, ok] = cache.emplace(key, Case{p, std::move(actx), std::move(ep)});
    (void)ok;
    return pos->second;
}

std::vector<cplx> probe_ring(const AsymptoticContext& actx, size_t want, double min_dist,
                             bool exterior_only) {
    std::vector<cplx> out;
    for (double r : {0.6, 1.4, 1.9, 2.4, 3.0}) {
        for (int k = 0; k < 24 && out.size() < want; ++k) {
            cplx z = std::polar(r, 2.0 * M_PI * (k + 0.37) / 24.0);
            if (distance_to_curve(actx.pot.cut, z) < min_dist) continue;
            if (exterior_only && !actx.pot.exterior_of_cut(z)) continue;
            cplx beta = actx.pot.pre ? actx.pot.pre->beta : actx.pot.post->beta;
            if (std::abs(z - beta) < std::max(min_dist, actx.radii.near_beta)) continue;
            if (std::abs(z - std::conj(beta)) < std::max(min_dist, actx.radii.near_beta)) continue;
            if (std::abs(z) < 0.1 || std::abs(z - 1.0) < 0.15) continue;
            out.push_back(z);
        }
    }
    return out;
}

double worst_probe_error(Case& cs, size_t count, bool exterior_only = false) {
    auto pts = probe_ring(cs.actx, count, 0.2, exterior_only);
    double worst = 0.0;
    for (cplx z : pts) {
        EvalResult r = eval_P(cs.actx, z);
        auto lv = cs.ep.eval_log(z);
        worst = std::max(worst, r.rel_error_vs(lv.first, lv.second));
    }
    return worst;
}

char buf[512];

void criterion1() {
    auto t0 = Clock::now();
    PreGeometry g = solve_pre_geometry(3.7619, 6.9168, 4.0557);
    for (int i = 0; i < 99; ++i) g = solve_pre_geometry(3.7619, 6.9168, 4.0557);
    double ms = seconds_since(t0) * 1000.0 / 100.0;
    double vals = std::max({g.residuals.vals1, g.residuals.vals2, g.residuals.vals3});
    bool pass = std::fabs(g.rho - 2.1) <= 1e-3 && std::fabs(g.alpha - 0.4) <= 1e-3 &&
                std::fabs(g.kappa - 0.5) <= 1e-3 && vals < 1e-9 && ms < 1.0;
    std::snprintf(buf, sizeof buf,
                  "rho=%.6f alpha=%.6f kappa=%.6f valS=%.1e time=%.3fms", g.rho, g.alpha,
                  g.kappa, vals, ms);
    report(1, "figure-2 geometry", pass, buf);
}

void criterion2() {
    double tc1 = critical_time(1.0, 1.0 / 6.0);
    double tc2 = critical_time(1.0, 1.0);
    PostGeometry g = solve_post_geometry(1.0, 1.0 / 6.0, 59.0 / 30.0);
    double e1 = std::abs(g.beta + g.b - cplx(89.0 / 30.0));
    double e2 = std::abs(g.beta * g.b - cplx(64.0 / 30.0));
    bool pass = std::fabs(tc1 - 1.816497) <= 1e-5 && tc2 == 3.0 && e1 < 1e-13 && e2 < 1e-13;
    std::snprintf(buf, sizeof buf, "t_c=%.7f, %.1f; sum/prod residuals %.1e, %.1e", tc1, tc2,
                  e1, e2);
    report(2, "critical time and post identities", pass, buf);
}

void criterion3() {
    bool pass = true;
    std::string detail;
    {
        auto t0 = Clock::now();
        PreGeometry g = solve_pre_geometry(1.0, 1.0, 1.0);
        TraceResult tr = trace_branch_cut_pre(g);
        double dt = seconds_since(t0);
        bool ok = tr.max_abs_re_phi < 1e-7 && tr.endpoint_error < 1e-6 &&
                  tr.neg_axis_crossings == 1 && dt < 5.0;
        pass = pass && ok;
        std::snprintf(buf, sizeof buf, "pre(1,1,1): res=%.1e end=%.1e %.2fs; ",
                      tr.max_abs_re_phi, tr.endpoint_error, dt);
        detail += buf;
    }
    for (auto [c, t] : {std::pair<double, double>{1.0, 3.02},
                        std::pair<double, double>{1.0 / 6.0, 59.0 / 30.0}}) {
        auto t0 = Clock::now();
        PostGeometry g = solve_post_geometry(1.0, c, t);
        TraceResult tr = trace_branch_cut_post(g);
        double dt = seconds_since(t0);
        bool jordan = winding_number(tr.curve, cplx(0, 0)) != 0 &&
                      winding_number(tr.curve, cplx(1, 0)) != 0;
        bool ok = tr.max_abs_re_phi < 1e-7 && tr.endpoint_error < 1e-6 && jordan && dt < 5.0;
        pass = pass && ok;
        std::snprintf(buf, sizeof buf, "post(t=%.3f): res=%.1e end=%.1e %.2fs; ", t,
                      tr.max_abs_re_phi, tr.endpoint_error, dt);
        detail += buf;
    }
    report(3, "branch-cut quality", pass, detail);
}

void criterion4() {
    auto t0 = Clock::now();
    bool pass = true;
    std::string detail;
    for (long n : {25L, 59L}) {
        MomentMatrix mm = exact_moments(1.0, 30.0, 5, n + 2, 256);
        ExactPolynomial ep = exact_polynomial(mm, n);
        ExactPolynomial ep1 = exact_polynomial(mm, n + 1);
        ContourCheckResult cc = contour_moment_check(ep, ep1, mm);
        double orth = orthogonality_residual(mm, ep);
        bool ok = cc.h_n_rel_diff < 1e-25 && orth < std::pow(2.0, -64) &&
                  cc.norming_chain_rel < 1e-20;
        pass = pass && ok;
        std::snprintf(buf, sizeof buf, "n=%ld: routes=%.1e orth=%.1e chain=%.1e; ", n,
                      cc.h_n_rel_diff, orth, cc.norming_chain_rel);
        detail += buf;
    }
    double dt = seconds_since(t0);
    pass = pass && dt < 120.0;
    std::snprintf(buf, sizeof buf, "time=%.1fs", dt);
    detail += buf;
    report(4, "oracle self-consistency (256 bits)", pass, detail);
}

void criterion5() {
    Case& c30 = get_case(25, 30.0, 5);
    Case& c60 = get_case(50, 60.0, 10);
    double w30 = worst_probe_error(c30, 12);
    double w60 = worst_probe_error(c60, 12);
    bool pass = w30 <= 0.15 && w60 * 1.5 <= w30;
    std::snprintf(buf, sizeof buf, "max err N=30: %.4f, N=60: %.4f (ratio %.2f)", w30, w60,
                  w30 / w60);
    report(5, "pre-critical strong asymptotics", pass, buf);
}

void criterion6() {
    Case& c30 = get_case(59, 30.0, 5);
    Case& c60 = get_case(118, 60.0, 10);
    double w30 = worst_probe_error(c30, 10, true);
    double w60 = worst_probe_error(c60, 10, true);
    // interior log-magnitude against the leading-term prediction
    double worst_int = 0.0;
    const PostGeometry& g = *c30.actx.pot.post;
    double beta = g.beta.real(), b = g.b.real();
    double gamma1 = std::sqrt(beta * (beta - 1.0) / (b - beta));
    for (cplx z : {cplx(0.25, 0.2), cplx(-0.3, 0.15), cplx(-0.1, -0.5), cplx(0.0, 0.55)}) {
        auto lv = c30.ep.eval_log(z);
        const ModelParams& p = c30.params;
        double pred = std::log(gamma1 / (std::sqrt(2.0 * M_PI * p.N) * std::abs(g.beta - z))) +
                      p.N * p.a * z.real() + p.t * p.N * c30.actx.pot.ell;
        worst_int = std::max(worst_int, std::fabs(lv.first - pred));
    }
    bool pass = w30 <= 0.05 && w60 * 2.0 <= w30 && worst_int <= 0.7;
    std::snprintf(buf, sizeof buf, "ext err: %.4f -> %.4f (ratio %.2f); int log-diff %.3f", w30,
                  w60, w30 / w60, worst_int);
    report(6, "post-critical strong asymptotics", pass, buf);
}

void criterion7() {
    Case& c30 = get_case(59, 30.0, 5);
    Case& c60 = get_case(118, 60.0, 10);
    double frac_close = 0.0, max30 = 0.0, arg30 = 0.0;
    {
        TracedCurve zc = trace_zero_curve(*c30.actx.pot.post, c30.params, c30.actx.pot.cut);
        auto zeros = exact_zeros(c30.ep, std::sqrt(c30.params.t + c30.params.c) + 1.0, 1);
        int close = 0;
        cplx beta = c30.actx.pot.post->beta;
        for (auto z : zeros) {
            if (distance_to_curve(zc, z) <= 5.0 / c30.params.N) ++close;
            // convergence to the cut excludes a disk at the turning point
            if (std::abs(z - beta) < 0.5) continue;
            double d = distance_to_curve(c30.actx.pot.cut, z);
            if (d > max30) {
                max30 = d;
                arg30 = std::abs(z - beta);
            }
        }
        frac_close = static_cast<double>(close) / static_cast<double>(zeros.size());
    }
    // the N=60 distance at the matched location, by interpolating the profile
    // of distances against |z - beta| (the shrink is a rate statement at fixed
    // position; the raw maxima sit at different positions)
    double d60_matched = 0.0;
    {
        auto zeros = exact_zeros(c60.ep, std::sqrt(c60.params.t + c60.params.c) + 1.0, 1);
        cplx beta = c60.actx.pot.post->beta;
        std::vector<std::pair<double, double>> prof;
        for (auto z : zeros)
            if (z.imag() >= 0.0)
                prof.push_back({std::abs(z - beta), distance_to_curve(c60.actx.pot.cut, z)});
        std::sort(prof.begin(), prof.end());
        for (size_t i = 0; i + 1 < prof.size(); ++i) {
            if (prof[i].first <= arg30 && arg30 <= prof[i + 1].first) {
                double w = (arg30 - prof[i].first) / (prof[i + 1].first - prof[i].first);
                d60_matched = (1.0 - w) * prof[i].second + w * prof[i + 1].second;
                break;
            }
        }
    }
    bool pass = frac_close >= 0.95 && d60_matched > 0.0 && max30 >= 1.5 * d60_matched;
    std::snprintf(buf, sizeof buf,
                  "on-curve fraction %.3f; dist %.4f -> %.4f at |z-beta|=%.2f (ratio %.2f)",
                  frac_close, max30, d60_matched, arg30,
                  d60_matched > 0 ? max30 / d60_matched : 0.0);
    report(7, "zeros follow the predicted curve", pass, buf);
}

void criterion8() {
    Case& c30 = get_case(55, 30.0, 5);
    Case& c60 = get_case(110, 60.0, 10);
    double w30 = worst_probe_error(c30, 10, true);
    double w60 = worst_probe_error(c60, 10, true);

    // s -> infinity matching of the interior prefactors at s = 6
    double a = 1.0, c = 1.0 / 6.0;
    double tc = critical_time(a, c);
    double b_c = a + std::sqrt(c);
    double gamma_c = 2.0 * std::cbrt(b_c) * std::pow(c, 1.0 / 6.0);
    double N = 1e5, s = 6.0;
    double t = tc + s * std::cbrt(a) * std::pow(b_c, 2.0 / 3.0) /
                        (std::pow(c, 1.0 / 6.0) * std::pow(N, 2.0 / 3.0));
    PostGeometry g = solve_post_geometry(a, c, t);
    double beta = g.beta.real(), b = g.b.real();
    double gamma1 = std::sqrt(beta * (beta - a) / (a * (b - beta)));
    double q6 = c30.actx.hm->eval_q(6.0);
    double crit_pref = gamma_c * q6 * std::exp(2.0 / 3.0 * std::pow(s, 1.5)) / (2.0 * std::cbrt(N));
    double post_pref = gamma1 / std::sqrt(2.0 * M_PI * N);
    double match = std::fabs(crit_pref / post_pref - 1.0);

    bool pass = w30 <= 0.3 && w60 < w30 && match <= 0.10 && std::fabs(c30.actx.pot.crit->s) <= 2.0;
    std::snprintf(buf, sizeof buf, "ext err %.4f -> %.4f; s=%.3f; s=6 matching %.3f", w30, w60,
                  c30.actx.pot.crit->s, match);
    report(8, "critical regime (Hastings-McLeod)", pass, buf);
}

void criterion9() {
    auto t0 = Clock::now();
    HastingsMcLeodTable tab = hastings_mcleod(-10.0, 10.0, 4001);
    double dt = seconds_since(t0);
    double res = 0.0;
    for (size_t i = 3; i + 3 < tab.grid.size(); ++i) {
        if (tab.grid[i] < -8.0 || tab.grid[i] > 8.0) continue;
        double qpp = (2.0 * tab.q[i - 3] - 27.0 * tab.q[i - 2] + 270.0 * tab.q[i - 1] -
                      490.0 * tab.q[i] + 270.0 * tab.q[i + 1] - 27.0 * tab.q[i + 2] +
                      2.0 * tab.q[i + 3]) /
                     (180.0 * tab.h * tab.h);
        res = std::max(res, std::fabs(qpp - tab.grid[i] * tab.q[i] -
                                      2.0 * tab.q[i] * tab.q[i] * tab.q[i]));
    }
    double rq6 = tab.eval_q(6.0) / airy_ai(cplx(6.0, 0.0)).real();
    double rqm8 = tab.eval_q(-8.0) / 2.0;
    double up = u_prime_identity_check(tab);
    bool pass = res < 1e-8 && std::fabs(rq6 - 1.0) <= 1e-6 && std::fabs(rqm8 - 1.0) <= 1e-3 &&
                up < 1e-6 && dt < 10.0;
    std::snprintf(buf, sizeof buf, "residual=%.1e q(6)/Ai=%+.1e q(-8)/2=%+.1e u'=%.1e %.2fs",
                  res, rq6 - 1.0, rqm8 - 1.0, up, dt);
    report(9, "Hastings-McLeod table", pass, buf);
}

void criterion10() {
    Case& cpre = get_case(25, 30.0, 5);
    Case& cpost = get_case(59, 30.0, 5);
    double d1 = std::fabs(eval_hn_asymptotic(cpre.actx) - cpre.ep.log_hn());
    double d2 = std::fabs(eval_hn_asymptotic(cpost.actx) - cpost.ep.log_hn());
    double a = 1.0, c = 1.0 / 6.0;
    double tc = critical_time(a, c);
    double jump = std::fabs(ell_2d_pre(solve_pre_geometry(a, c, tc - 1e-8)) -
                            ell_2d_post(c, tc + 1e-8));
    bool pass = d1 <= 3.0 / 30.0 && d2 <= 3.0 / 30.0 && jump < 1e-6;
    std::snprintf(buf, sizeof buf, "log h_n diffs %.2e, %.2e (<= 0.1); ell_2d jump %.1e", d1,
                  d2, jump);
    report(10, "norming constants", pass, buf);
}

void criterion11() {
    Case& cs = get_case(59, 30.0, 5);
    const ModelParams& p = cs.params;
    double R = cs.actx.pot.post->big_radius + 5.0 / std::sqrt(p.N);
    int nr = 640, nth = 256;
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        double r = (i + 0.5) * R / nr;
        double row = 0.0;
        for (int j = 0; j < nth; ++j) {
            cplx z = std::polar(r, 2.0 * M_PI * j / nth);
            if (winding_number(cs.actx.pot.cut, z) != 0) continue;
            row += eval_rho_n(cs.actx, z);
        }
        total += row * (2.0 * M_PI / nth) * r * (R / nr);
    }

    // transverse Gaussian exponent at a ridge point
    double R0 = cs.actx.pot.post->big_radius;
    cplx p0 = std::polar(R0, 1.1);
    cplx nrm = p0 / std::abs(p0);
    double A0 = eval_log_rho_n(cs.actx, p0);
    double sxx = 0, sxy = 0;
    for (double x = -0.12; x <= 0.12; x += 0.01) {
        if (std::fabs(x) < 1e-9) continue;
        double lg = eval_log_rho_n(cs.actx, p0 + x * nrm);
        sxx += x * x * x * x;
        sxy += x * x * (A0 - lg);
    }
    double B = sxy / sxx;

    // interior suppression of the exact density
    double worst = -1e300;
    for (cplx z : {cplx(0.25, 0.2), cplx(-0.3, 0.15), cplx(-0.1, -0.5), cplx(0.0, 0.55)}) {
        auto lv = cs.ep.eval_log(z);
        double log_rho = 2.0 * lv.first - p.N * external_Q(p.a, p.c, z) - cs.ep.log_hn();
        worst = std::max(worst, log_rho + p.N * eval_U(cs.actx.pot, z));
    }
    bool pass = std::fabs(total - 1.0) <= 1e-2 && B >= 1.8 * p.N && B <= 2.2 * p.N &&
                worst <= std::log(10.0 / p.N);
    std::snprintf(buf, sizeof buf, "mass=%.4f; fit=%.1f (2N=%.0f); suppression=e^%.2f<=%.3f",
                  total, B, 2.0 * p.N, worst, 10.0 / p.N);
    report(11, "density and harmonic measure", pass, buf);
}

void criterion12() {
    ModelParams p = ModelParams::from_N(1.0, 1.0, 30.0, 30, 0);  // t = 1
    PotentialContext ctx = make_potential_context(p, classify(p));
    const PreGeometry& g = *ctx.pre;

    double u_boundary = 0.0, u_normal = 0.0;
    for (double th : {0.2, 1.0, 1.7, 2.5, 3.3, 4.1, 5.0, 5.9}) {
        cplx z0 = conformal_f(g, std::polar(1.0, th));
        u_boundary = std::max(u_boundary, std::fabs(eval_U(ctx, z0)));
        cplx tang = conformal_f_prime(g, std::polar(1.0, th)) * cplx(0, 1) * std::polar(1.0, th);
        cplx nrm = tang / std::abs(tang) * cplx(0, -1);
        double eps = 1e-3;
        double val = eval_U(ctx, z0 + eps * nrm);
        u_normal = std::max(u_normal, std::fabs(val / (2.0 * eps * eps) - 1.0));
    }

    // exterior log-potential identity via the boundary-integral reduction
    auto log_pot = [&](cplx z) {
        cplx acc = 0.0;
        size_t nn = ctx.boundary.points.size();
        auto hfun = [&](cplx w) {
            cplx l1 = std::log(z - w);
            cplx l2 = std::log(std::conj(z) - std::conj(w));
            return 0.5 * (std::conj(w) * l1 - (std::conj(z) - std::conj(w)) * l2 +
                          (std::conj(z) - std::conj(w)));
        };
        for (size_t i = 0; i < nn; ++i) {
            cplx w0 = ctx.boundary.points[i];
            cplx w1 = ctx.boundary.points[(i + 1) % nn];
            acc += hfun(0.5 * (w0 + w1)) * (w1 - w0);
        }
        return (acc / cplx(0.0, 2.0)).real() / M_PI;
    };
    double logpot_err = 0.0;
    for (cplx z : {cplx(2.8, 1.2), cplx(-2.4, 1.9), cplx(0.3, 3.0), cplx(3.3, -1.1),
                   cplx(-1.5, -2.7)}) {
        logpot_err = std::max(logpot_err, std::fabs(eval_re_g(ctx, z) - log_pot(z) / p.t));
    }

    // involution identity
    double inv_err = 0.0;
    int used = 0;
    for (int i = 0; i < 400 && used < 10; ++i) {
        double x = -2.8 + 0.11 * (i % 60), y = -2.5 + 0.37 * (i / 60);
        cplx z(x, y);
        if (std::abs(z) < 0.2 || std::abs(z - 1.0) < 0.2) continue;
        if (distance_to_curve(ctx.cut, z) < 0.15) continue;
        cplx sb = schwarz_S_back(g, ctx.cut, z);
        if (std::abs(sb) < 0.2 || std::abs(sb - 1.0) < 0.2 || std::abs(sb) > 20.0) continue;
        if (distance_to_curve(ctx.cut, sb) < 0.15) continue;
        double lhs = 2.0 * eval_u_op(ctx, z);
        double rhs = eval_U(ctx, z) + eval_U(ctx, std::conj(sb)) - std::norm(sb - std::conj(z));
        inv_err = std::max(inv_err, std::fabs(lhs - rhs) / (1.0 + std::fabs(lhs)));
        ++used;
    }
    bool pass = u_boundary < 1e-8 && u_normal <= 0.05 && logpot_err <= 1e-4 && inv_err <= 1e-7 &&
                used == 10;
    std::snprintf(buf, sizeof buf, "U|dK=%.1e normal=%.3f logpot=%.1e involution=%.1e",
                  u_boundary, u_normal, logpot_err, inv_err);
    report(12, "potential-theory invariants", pass, buf);
}

}  // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    auto t0 = Clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12();
    std::printf("================\n%d of 12 criteria passed (%.1f s total)\n", 12 - g_failures,
                seconds_since(t0));
    return g_failures;
}
