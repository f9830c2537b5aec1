#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "planorth/asymptotics.hpp"
#include "planorth/oracle.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace planorth;

namespace {

struct Fixture {
    ModelParams params;
    AsymptoticContext actx;
    ExactPolynomial ep;
};

Fixture make_fixture(long n, double N, long m) {
    double c = static_cast<double>(m) / N;
    ModelParams p = ModelParams::from_N(1.0, c, N, n, 0);
    Regime reg = classify(p);
    AsymptoticContext actx = make_asymptotic_context(p, reg);
    mpfr_prec_t prec = std::max<mpfr_prec_t>(256, 8 * (n + 1));
    MomentMatrix mm = exact_moments(1.0, N, m, n + 1, prec);
    ExactPolynomial ep = exact_polynomial(mm, n);
    return {p, std::move(actx), std::move(ep)};
}

const Fixture& pre_fix() {
    static Fixture f = make_fixture(25, 30.0, 5);
    return f;
}
const Fixture& post_fix() {
    static Fixture f = make_fixture(59, 30.0, 5);
    return f;
}
const Fixture& crit_fix() {
    static Fixture f = make_fixture(55, 30.0, 5);
    return f;
}

double rel_err(const Fixture& f, cplx z) {
    EvalResult r = eval_P(f.actx, z);
    auto lv = f.ep.eval_log(z);
    return r.rel_error_vs(lv.first, lv.second);
}

// probe ring: points on circles kept away from the cut and the turning disks
std::vector<cplx> probes(const AsymptoticContext& actx, std::initializer_list<double> radii,
                         double min_dist, size_t want) {
    std::vector<cplx> out;
    for (double r : radii) {
        for (int k = 0; k < 24 && out.size() < want; ++k) {
            cplx z = std::polar(r, 2.0 * M_PI * (k + 0.37) / 24.0);
            if (distance_to_curve(actx.pot.cut, z) < min_dist) continue;
            cplx beta = actx.pot.pre ? actx.pot.pre->beta : actx.pot.post->beta;
            if (std::abs(z - beta) < std::max(min_dist, actx.radii.near_beta)) continue;
            if (std::abs(z - std::conj(beta)) < std::max(min_dist, actx.radii.near_beta))
                continue;
            if (std::abs(z) < 0.1 || std::abs(z - 1.0) < 0.15) continue;
            out.push_back(z);
        }
    }
    return out;
}

}  // namespace

TEST_CASE("pre-critical calibration pins the monic normalization") {
    const Fixture& f = pre_fix();
    CHECK(f.actx.calib_mag_err < 1e-6);
}

TEST_CASE("pre-critical strong asymptotics vs the exact oracle (n=25, N=30)") {
    const Fixture& f = pre_fix();
    auto pts = probes(f.actx, {0.6, 1.4, 2.2, 3.0}, 0.2, 12);
    REQUIRE(pts.size() >= 10);
    double worst = 0.0;
    for (cplx z : pts) worst = std::max(worst, rel_err(f, z));
    CAPTURE(worst);
    CHECK(worst <= 0.15);
}

TEST_CASE("pre-critical lens formula agrees with the oracle near the cut") {
    const Fixture& f = pre_fix();
    // points straddling the cut inside the lens band
    const TracedCurve& cut = f.actx.pot.cut;
    size_t m = cut.points.size();
    double worst = 0.0;
    int used = 0;
    for (size_t idx : {m / 3, m / 2, (2 * m) / 3}) {
        cplx p = cut.points[idx];
        cplx tan = cut.points[idx + 1] - cut.points[idx];
        cplx nn = cplx(0, 1) * tan / std::abs(tan);
        for (double off : {0.4, -0.4}) {
            cplx z = p + off * f.actx.radii.lens_halfwidth * nn;
            Zone zone = classify_zone(z, cut, f.actx.pot.pre->beta,
                                      std::conj(f.actx.pot.pre->beta), f.actx.radii, true)
                            .zone;
            if (zone != Zone::OmegaPlus && zone != Zone::OmegaMinus) continue;
            worst = std::max(worst, rel_err(f, z));
            ++used;
        }
    }
    CAPTURE(worst);
    CHECK(used >= 4);
    CHECK(worst < 0.25);
}

TEST_CASE("cut-continuity of the two-term lens formula") {
    // leading terms from the Omega_plus and Omega_minus sides agree on the cut
    const Fixture& f = pre_fix();
    const TracedCurve& cut = f.actx.pot.cut;
    size_t m = cut.points.size();
    for (size_t idx : {m / 3, (2 * m) / 5, m / 2}) {
        cplx p = cut.points[idx];
        cplx tan = cut.points[idx + 1] - cut.points[idx];
        cplx nn = cplx(0, 1) * tan / std::abs(tan);
        // Richardson-extrapolate both one-sided limits onto the cut: the
        // leading terms are analytic continuations of each other there
        double e1 = 4.0 * cut.max_spacing(), e2 = 0.5 * e1;
        auto lim = [&](double sgn) {
            EvalResult a = eval_P(f.actx, p + sgn * e1 * nn);
            EvalResult b = eval_P(f.actx, p + sgn * e2 * nn);
            double lr = 2.0 * b.log_abs - a.log_abs;
            double dPh = std::remainder(b.phase - a.phase, 2.0 * M_PI);
            return std::make_pair(lr, b.phase + dPh);
        };
        auto [lrp, php] = lim(+1.0);
        auto [lrm, phm] = lim(-1.0);
        cplx ratio = std::polar(std::exp(lrp - lrm), php - phm);
        CHECK(std::abs(ratio - 1.0) < 0.1);
    }
}

TEST_CASE("airy zone: uniform formula matches the outer formula at |zeta| = 5") {
    // pure formula-to-formula matching at large N (no oracle needed)
    ModelParams p = ModelParams::from_N(1.0, 1.0 / 6.0, 3000.0, 2500, 0);
    AsymptoticContext actx = make_asymptotic_context(p, classify(p));
    const PreGeometry& g = *actx.pot.pre;
    TracedCurve gtb = trace_steepest_to_b(g, actx.pot.cut);
    // walk the steepest path until |zeta| ~ 5
    cplx zstar;
    bool found = false;
    for (size_t i = 1; i < gtb.points.size(); ++i) {
        cplx zeta = airy_zeta(actx, gtb.points[i]);
        if (std::abs(zeta) >= 5.0) {
            zstar = gtb.points[i];
            found = true;
            break;
        }
    }
    REQUIRE(found);
    cplx zeta = airy_zeta(actx, zstar);
    CHECK(std::abs(zeta.imag()) < 0.05 * std::abs(zeta));  // maps the path into R+

    EvalResult uniform = eval_P_pre(actx, zstar);
    REQUIRE(uniform.zone == Zone::NearBetaBar);
    // outer formula evaluated at the same point: e^{Ntg} from the jump-free
    // pairing of the contour potential with the slit phi
    cplx Fp = conformal_F_prime(g, actx.pot.cut, zstar);
    cplx phi = eval_phi(actx.pot, zstar);
    cplx e = 0.5 * p.N * (contour_V(p.a, p.c, p.t, zstar) - phi) +
             0.5 * p.t * p.N * actx.pot.ell;
    cplx bracket = std::sqrt(g.rho * Fp);
    double lr = e.real() + std::log(std::abs(bracket));
    double ph = e.imag() + std::arg(bracket) + actx.calib_phase;
    CHECK(uniform.rel_error_vs(lr, ph) < 1e-2);
}

TEST_CASE("airy zone against the oracle at N=30") {
    const Fixture& f = pre_fix();
    const PreGeometry& g = *f.actx.pot.pre;
    cplx bb = std::conj(g.beta);
    double R = f.actx.radii.near_beta;
    double worst = 0.0;
    int used = 0;
    for (double fr : {0.3, 0.6, 0.9}) {
        for (double th : {0.4, 1.9, 3.1, 4.3, 5.5}) {
            cplx z = bb + std::polar(fr * R, th);
            EvalResult r = eval_P_pre(f.actx, z);
            if (r.zone != Zone::NearBetaBar) continue;
            auto lv = f.ep.eval_log(z);
            worst = std::max(worst, r.rel_error_vs(lv.first, lv.second));
            ++used;
        }
    }
    CAPTURE(worst);
    CHECK(used >= 12);
    CHECK(worst < 0.5);  // error order N^{-1/3} at N=30
}

TEST_CASE("post-critical strong asymptotics vs the oracle (n=59, N=30)") {
    const Fixture& f = post_fix();
    double worst_ext = 0.0;
    auto ext = probes(f.actx, {1.8, 2.4, 3.2}, 0.15, 10);
    REQUIRE(ext.size() >= 8);
    for (cplx z : ext) worst_ext = std::max(worst_ext, rel_err(f, z));
    CAPTURE(worst_ext);
    CHECK(worst_ext <= 0.05);

    // interior: log-magnitude within 0.7 of the predicted leading term
    for (cplx z : {cplx(0.25, 0.2), cplx(-0.3, 0.15), cplx(-0.1, -0.5), cplx(0.0, 0.55)}) {
        EvalResult r = eval_P(f.actx, z);
        REQUIRE(r.zone == Zone::IntB);
        auto lv = f.ep.eval_log(z);
        CHECK(std::fabs(r.log_abs - lv.first) < 0.7);
    }
}

TEST_CASE("entire-function zone matches the interior formula at large N") {
    // formula-to-formula matching at |zeta| = 4 (spec example), N large
    // the linearized local coordinate carries an O(|zeta|^3 N^{-1/2}) defect,
    // so the 5e-2 match at |zeta| = 4 needs N of a few times 1e7
    ModelParams p = ModelParams::from_t(1.0, 1.0 / 6.0, 59.0 / 30.0, 39333333, 0);
    TraceOptions fine;
    fine.h_max_frac = 2e-5;  // the zeta ring hugs beta at this N
    AsymptoticContext actx = make_asymptotic_context(p, classify(p), fine);
    const PostGeometry& g = *actx.pot.post;
    double beta = g.beta.real(), b = g.b.real();
    double gamma1 = std::sqrt(beta * (beta - p.a) / (p.a * (b - beta)));
    // compare near the cut directions (arg zeta = +-pi/4), where the lens
    // two-term formula and the entire function share both constituents
    for (double th : {0.665, 0.905, -0.665, -0.905}) {
        cplx zeta = std::polar(4.0, th);
        cplx z = g.beta + gamma1 / std::sqrt(p.N) * zeta;
        EvalResult local = eval_P_post(actx, z);
        if (local.zone != Zone::NearBeta) continue;
        // compare against the two-term lens formulas by suppressing the disk
        AsymptoticContext outer = actx;
        outer.radii.near_beta = 0.0;
        EvalResult ref = eval_P_post(outer, z);
        REQUIRE((ref.zone == Zone::OmegaPlus || ref.zone == Zone::OmegaMinus));
        CHECK(local.rel_error_vs(ref.log_abs, ref.phase) < 5e-2);
        (void)gamma1;
    }
}

TEST_CASE("critical regime vs the oracle (n=55, N=30)") {
    const Fixture& f = crit_fix();
    CHECK(f.actx.pot.crit.has_value());
    CHECK(std::fabs(f.actx.pot.crit->s) <= 2.0);

    auto ext = probes(f.actx, {1.9, 2.5, 3.1}, 0.15, 10);
    REQUIRE(ext.size() >= 8);
    double worst = 0.0;
    for (cplx z : ext) worst = std::max(worst, rel_err(f, z));
    CAPTURE(worst);
    CHECK(worst <= 0.3);

    // s = 0 sanity at exactly t_c: formulas stay finite
    ModelParams pc = ModelParams::from_t(1.0, 1.0, 3.0, 300, 0);
    AsymptoticContext actx_c = make_asymptotic_context(pc, classify(pc));
    EvalResult r0 = eval_P(actx_c, cplx(2.6, 0.4));
    CHECK(std::isfinite(r0.log_abs));
}

TEST_CASE("critical-to-post matching as s grows (prefactor comparison at s=6)") {
    double a = 1.0, c = 1.0 / 6.0;
    double tc = critical_time(a, c);
    double b_c = a + std::sqrt(c);
    double gamma_c = 2.0 * std::cbrt(b_c) * std::pow(c, 1.0 / 6.0);
    double N = 1e5;
    double s = 6.0;
    double t = tc + s * std::cbrt(a) * std::pow(b_c, 2.0 / 3.0) /
                        (std::pow(c, 1.0 / 6.0) * std::pow(N, 2.0 / 3.0));
    PostGeometry g = solve_post_geometry(a, c, t);
    double beta = g.beta.real(), b = g.b.real();
    double gamma1 = std::sqrt(beta * (beta - a) / (a * (b - beta)));

    HastingsMcLeodTable hm = hastings_mcleod();
    double q = hm.eval_q(s);
    double crit_pref = gamma_c * q * std::exp(2.0 / 3.0 * std::pow(s, 1.5)) /
                       (2.0 * std::cbrt(N));
    double post_pref = gamma1 / std::sqrt(2.0 * M_PI * N);
    CHECK(std::fabs(crit_pref / post_pref - 1.0) < 0.10);

    // the gamma_1 asymptotic used in the remark
    double gamma1_asym = gamma_c * std::pow(N, 1.0 / 6.0) / (2.0 * std::sqrt(2.0) * std::pow(s, 0.25));
    CHECK(std::fabs(gamma1 / gamma1_asym - 1.0) < 0.10);
}

TEST_CASE("norming constants: asymptotic vs exact") {
    // |log h_n(asym) - log h_n(exact)| <= 3/N
    for (const Fixture* f : {&pre_fix(), &post_fix()}) {
        double asym = eval_hn_asymptotic(f->actx);
        double exact = f->ep.log_hn();
        CAPTURE(f->params.n);
        CHECK(std::fabs(asym - exact) <= 3.0 / f->params.N);
    }
    // critical case: error order N^{-1/3}
    const Fixture& fc = crit_fix();
    CHECK(std::fabs(eval_hn_asymptotic(fc.actx) - fc.ep.log_hn()) <=
          3.0 / std::cbrt(fc.params.N));
}

TEST_CASE("geometric-form equivalence in the post-critical exterior") {
    // z^n (z/(z-a))^{Nc} = (rho F)^r sqrt(rho F') e^{N t g} with rho F = z
    const Fixture& f = post_fix();
    const ModelParams& p = f.params;
    for (cplx z : {cplx(1.9, 1.0), cplx(-1.2, 1.9), cplx(2.6, -0.7)}) {
        double nc = p.N * p.c;
        double lr1 = p.n * std::log(std::abs(z)) +
                     nc * (std::log(std::abs(z)) - std::log(std::abs(z - p.a)));
        cplx g2 = eval_g(f.actx.pot, z);
        double lr2 = p.t * p.N * g2.real();  // r = 0, sqrt(rho F') = 1
        CHECK(std::fabs(lr1 - lr2) < 1e-9 * std::max(1.0, std::fabs(lr1)));
    }
}

TEST_CASE("uniform-bound envelopes for the oracle polynomials") {
    // |P_n e^{-N t g}| as predicted by the regime envelopes
    const Fixture& fpost = post_fix();
    for (cplx z : {cplx(0.3, 0.3), cplx(-0.2, 0.4)}) {
        auto lv = fpost.ep.eval_log(z);
        double envelope = fpost.params.t * fpost.params.N * eval_re_g(fpost.actx.pot, z);
        // post-critical interior: O(N^{-1/2})
        CHECK(lv.first - envelope < std::log(10.0) - 0.5 * std::log(fpost.params.N));
    }
    const Fixture& fpre = pre_fix();
    for (cplx z : {cplx(2.2, 0.9), cplx(-1.6, 1.6)}) {
        auto lv = fpre.ep.eval_log(z);
        double envelope = fpre.params.t * fpre.params.N * eval_re_g(fpre.actx.pot, z);
        CHECK(std::fabs(lv.first - envelope) < std::log(20.0));  // O(1) zone
    }
}

TEST_CASE("density: asymptotic rho_n integrates to one (post-critical)") {
    // the leading form holds on Ext(B); the interior mass of the true density
    // is O(1/N)-suppressed and is bounded by the interior-suppression check
    const Fixture& f = post_fix();
    double R = f.actx.pot.post->big_radius + 5.0 / std::sqrt(f.params.N);
    int nr = 640, nth = 256;
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
        double r = (i + 0.5) * R / nr;
        double row = 0.0;
        for (int j = 0; j < nth; ++j) {
            cplx z = std::polar(r, 2.0 * M_PI * j / nth);
            if (winding_number(f.actx.pot.cut, z) != 0) continue;
            row += eval_rho_n(f.actx, z);
        }
        total += row * (2.0 * M_PI / nth) * r * (R / nr);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-2));
}

TEST_CASE("density: transverse Gaussian profile and ridge location") {
    const Fixture& f = post_fix();
    double R0 = f.actx.pot.post->big_radius;
    cplx p0 = std::polar(R0, 1.1);
    cplx nrm = p0 / std::abs(p0);
    // fit log rho = A - B x^2 on a transverse sample
    double sxx = 0, sxy = 0;  // x := displacement^2 regressor
    int cnt = 0;
    double A0 = eval_log_rho_n(f.actx, p0);
    for (double x = -0.12; x <= 0.12; x += 0.01) {
        if (std::fabs(x) < 1e-9) continue;
        double lg = eval_log_rho_n(f.actx, p0 + x * nrm);
        sxx += x * x * x * x;
        sxy += x * x * (A0 - lg);
        ++cnt;
    }
    double B = sxy / sxx;
    CHECK(B > 1.8 * f.params.N);
    CHECK(B < 2.2 * f.params.N);

    // ridge on the circle |z| = sqrt(t+c)
    double best_r = 0, best_v = -1e300;
    for (double r = R0 - 0.4; r <= R0 + 0.4; r += 0.004) {
        double v = eval_log_rho_n(f.actx, std::polar(r, 0.9));
        if (v > best_v) {
            best_v = v;
            best_r = r;
        }
    }
    CHECK(std::fabs(best_r - R0) < 0.01);
}

TEST_CASE("density: interior suppression of the exact polynomial") {
    const Fixture& f = post_fix();
    // rho_n e^{N U} = O(1/N) on interior probes (exact oracle route)
    double worst = -1e300;
    for (cplx z : {cplx(0.3, 0.25), cplx(-0.25, 0.3), cplx(0.1, -0.5), cplx(0.55, 0.35)}) {
        auto lv = f.ep.eval_log(z);
        double log_rho = 2.0 * lv.first - f.params.N * external_Q(f.params.a, f.params.c, z) -
                         f.ep.log_hn();
        double val = log_rho + f.params.N * eval_U(f.actx.pot, z);
        worst = std::max(worst, val);
    }
    CHECK(worst <= std::log(10.0 / f.params.N));
}

TEST_CASE("nonzero degree offset r") {
    // r enters through (rho F)^r and the beta^r prefactors; exercised against
    // the oracle at r = 1 in both regimes
    for (auto [n, N, m] : {std::tuple<long, double, long>{25, 30.0, 5}, {59, 30.0, 5}}) {
        double c = static_cast<double>(m) / N;
        ModelParams p = ModelParams::from_N(1.0, c, N, n, 1);  // t = (n-1)/N
        Regime reg = classify(p);
        AsymptoticContext actx = make_asymptotic_context(p, reg);
        mpfr_prec_t bits = std::max<mpfr_prec_t>(256, 8 * (n + 1));
        MomentMatrix mm = exact_moments(1.0, N, m, n + 1, bits);
        ExactPolynomial ep = exact_polynomial(mm, n);
        double worst = 0.0;
        int used = 0;
        for (int k = 0; k < 24 && used < 6; ++k) {
            cplx z = std::polar(2.3, 2.0 * M_PI * (k + 0.4) / 12.0);
            if (distance_to_curve(actx.pot.cut, z) < 0.25) continue;
            if (!actx.pot.exterior_of_cut(z)) continue;
            EvalResult r = eval_P(actx, z);
            auto lv = ep.eval_log(z);
            worst = std::max(worst, r.rel_error_vs(lv.first, lv.second));
            ++used;
        }
        CAPTURE(n);
        CAPTURE(worst);
        CHECK(used >= 5);
        CHECK(worst < 0.15);
    }
}

TEST_CASE("pre-critical density ridge sits on the droplet boundary") {
    const Fixture& f = pre_fix();
    const PreGeometry& g = *f.actx.pot.pre;
    // walk radial rays from a point inside K and locate the density argmax
    cplx inside = 0.5 * (conformal_f(g, cplx(1.0, 0.0)) + conformal_f(g, cplx(-1.0, 0.0)));
    for (double th : {0.3, 1.4, 2.8, 4.2, 5.3}) {
        cplx dir = std::polar(1.0, th);
        double best_s = 0.0, best_v = -1e300;
        for (double s = 0.05; s < 3.0; s += 0.004) {
            cplx z = inside + s * dir;
            if (std::abs(z) < 0.02 || std::abs(z - 1.0) < 0.02) continue;
            if (distance_to_curve(f.actx.pot.cut, z) < 0.02) continue;
            double v = eval_log_rho_n(f.actx, z);
            if (v > best_v) {
                best_v = v;
                best_s = s;
            }
        }
        // the peak sits O(1/N) off the boundary through the F' prefactor
        CHECK(distance_to_curve(f.actx.pot.boundary, inside + best_s * dir) < 2.0 / f.params.N);
    }

    // EvalResult mantissa convention
    EvalResult r = eval_P(f.actx, cplx(2.2, 1.1));
    CHECK(std::abs(r.value) >= 1.0);
    CHECK(std::abs(r.value) < 2.0);
    CHECK(r.log_scale + std::log(std::abs(r.value)) == doctest::Approx(r.log_abs).epsilon(1e-12));
}
