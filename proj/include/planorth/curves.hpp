#pragma once

#include <complex>
#include <utility>
#include <string>
#include <vector>

namespace planorth {

using cplx = std::complex<double>;

enum class CurveKind { BranchCut, LensPlus, LensMinus, SteepestToB, ZeroCurve, Boundary };

/// Oriented polyline with cumulative arc length.
struct TracedCurve {
    std::vector<cplx> points;
    std::vector<double> arclength;  // same size as points, arclength[0] = 0
    bool closed = false;
    CurveKind kind = CurveKind::BranchCut;

    size_t size() const { return points.size(); }
    double length() const { return arclength.empty() ? 0.0 : arclength.back(); }
    double max_spacing() const;
    void rebuild_arclength();
};

const char* curve_kind_name(CurveKind k);

// -- polyline geometry ------------------------------------------------------

/// True if segments [a,b] and [c,d] properly intersect (shared endpoints count).
bool segments_intersect(cplx a, cplx b, cplx c, cplx d);

/// Number of times segment [p,q] crosses the polyline (closing segment included
/// when the curve is closed).
int count_crossings(const TracedCurve& curve, cplx p, cplx q);

/// Distance from z to the polyline.
double distance_to_curve(const TracedCurve& curve, cplx z);

/// Distance from z to the polyline plus the length of the nearest segment.
std::pair<double, double> distance_and_local_spacing(const TracedCurve& curve, cplx z);

/// Index of the node nearest to z.
size_t nearest_node(const TracedCurve& curve, cplx z);

/// Winding number of the closed polyline around z (0 when outside).
int winding_number(const TracedCurve& curve, cplx z);

/// For an open oriented curve: +1 if z lies to the left of the nearest segment,
/// -1 to the right.
int side_of_curve(const TracedCurve& curve, cplx z);

/// Offset polyline: each node displaced by h along the left (+) normal.
TracedCurve offset_curve(const TracedCurve& curve, double h, CurveKind kind);

/// Curve CSV per the external interface: header line with kind/parameters, then
/// (index, x, y, arclength, re_phi_residual).
std::string curve_csv(const TracedCurve& curve, const std::vector<double>& residuals,
                      const std::string& header_json);

}  // namespace planorth
