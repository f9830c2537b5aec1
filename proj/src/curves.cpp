#include "planorth/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace planorth {

double TracedCurve::max_spacing() const {
    double m = 0.0;
    for (size_t i = 1; i < points.size(); ++i) m = std::max(m, std::abs(points[i] - points[i - 1]));
    if (closed && points.size() > 1) m = std::max(m, std::abs(points.front() - points.back()));
    return m;
}

void TracedCurve::rebuild_arclength() {
    arclength.assign(points.size(), 0.0);
    for (size_t i = 1; i < points.size(); ++i)
        arclength[i] = arclength[i - 1] + std::abs(points[i] - points[i - 1]);
}

const char* curve_kind_name(CurveKind k) {
    switch (k) {
        case CurveKind::BranchCut: return "branch_cut";
        case CurveKind::LensPlus: return "lens_plus";
        case CurveKind::LensMinus: return "lens_minus";
        case CurveKind::SteepestToB: return "steepest_to_b";
        case CurveKind::ZeroCurve: return "zero_curve";
        case CurveKind::Boundary: return "boundary";
    }
    return "?";
}

static double cross2(cplx u, cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    double d1 = cross2(b - a, c - a);
    double d2 = cross2(b - a, d - a);
    double d3 = cross2(d - c, a - c);
    double d4 = cross2(d - c, b - c);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    auto on = [](cplx p, cplx q, cplx x) {
        return std::abs(cross2(q - p, x - p)) == 0.0 &&
               std::min(p.real(), q.real()) <= x.real() && x.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= x.imag() && x.imag() <= std::max(p.imag(), q.imag());
    };
    return (d1 == 0 && on(a, b, c)) || (d2 == 0 && on(a, b, d)) ||
           (d3 == 0 && on(c, d, a)) || (d4 == 0 && on(c, d, b));
}

int count_crossings(const TracedCurve& curve, cplx p, cplx q) {
    int n = 0;
    const auto& pts = curve.points;
    for (size_t i = 1; i < pts.size(); ++i)
        if (segments_intersect(pts[i - 1], pts[i], p, q)) ++n;
    if (curve.closed && pts.size() > 1)
        if (segments_intersect(pts.back(), pts.front(), p, q)) ++n;
    return n;
}

static double point_segment_dist(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double l2 = std::norm(ab);
    if (l2 == 0.0) return std::abs(p - a);
    double s = std::clamp(((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / l2, 0.0, 1.0);
    return std::abs(p - (a + s * ab));
}

double distance_to_curve(const TracedCurve& curve, cplx z) {
    return distance_and_local_spacing(curve, z).first;
}

std::pair<double, double> distance_and_local_spacing(const TracedCurve& curve, cplx z) {
    double d = INFINITY, seg = 0.0;
    const auto& pts = curve.points;
    for (size_t i = 1; i < pts.size(); ++i) {
        double di = point_segment_dist(z, pts[i - 1], pts[i]);
        if (di < d) {
            d = di;
            seg = std::abs(pts[i] - pts[i - 1]);
        }
    }
    if (curve.closed && pts.size() > 1) {
        double di = point_segment_dist(z, pts.back(), pts.front());
        if (di < d) {
            d = di;
            seg = std::abs(pts.front() - pts.back());
        }
    }
    return {d, seg};
}

size_t nearest_node(const TracedCurve& curve, cplx z) {
    size_t best = 0;
    double bd = INFINITY;
    for (size_t i = 0; i < curve.points.size(); ++i) {
        double d = std::abs(curve.points[i] - z);
        if (d < bd) { bd = d; best = i; }
    }
    return best;
}

int winding_number(const TracedCurve& curve, cplx z) {
    double total = 0.0;
    const auto& pts = curve.points;
    size_t n = pts.size();
    if (n < 2) return 0;
    for (size_t i = 0; i < n; ++i) {
        cplx a = pts[i] - z, b = pts[(i + 1) % n] - z;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

int side_of_curve(const TracedCurve& curve, cplx z) {
    const auto& pts = curve.points;
    size_t n = pts.size();
    if (n < 2) return 0;
    double bd = INFINITY;
    size_t bi = 0;
    for (size_t i = 0; i + 1 < n; ++i) {
        double d = point_segment_dist(z, pts[i], pts[i + 1]);
        if (d < bd) { bd = d; bi = i; }
    }
    return cross2(pts[bi + 1] - pts[bi], z - pts[bi]) >= 0.0 ? +1 : -1;
}

TracedCurve offset_curve(const TracedCurve& curve, double h, CurveKind kind) {
    TracedCurve out;
    out.kind = kind;
    out.closed = curve.closed;
    const auto& pts = curve.points;
    size_t n = pts.size();
    out.points.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        cplx tan;
        if (curve.closed) {
            tan = pts[(i + 1) % n] - pts[(i + n - 1) % n];
        } else if (i == 0) {
            tan = pts[1] - pts[0];
        } else if (i == n - 1) {
            tan = pts[n - 1] - pts[n - 2];
        } else {
            tan = pts[i + 1] - pts[i - 1];
        }
        tan /= std::abs(tan);
        out.points.push_back(pts[i] + h * cplx(0, 1) * tan);  // left normal
    }
    out.rebuild_arclength();
    return out;
}

std::string curve_csv(const TracedCurve& curve, const std::vector<double>& residuals,
                      const std::string& header_json) {
    std::ostringstream os;
    os.precision(17);
    os << "# " << header_json << "\n";
    os << "index,x,y,arclength,re_phi_residual\n";
    for (size_t i = 0; i < curve.points.size(); ++i) {
        double res = i < residuals.size() ? residuals[i] : 0.0;
        os << i << "," << curve.points[i].real() << "," << curve.points[i].imag() << ","
           << curve.arclength[i] << "," << res << "\n";
    }
    return os.str();
}

}  // namespace planorth
