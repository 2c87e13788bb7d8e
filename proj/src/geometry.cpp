#include "frostlab/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace frostlab {

namespace {

// |u| <= (2 + sqrt(2)) * sqrt(w), decided exactly:
// u^2 <= (6 + 4*sqrt(2)) w  <=>  u^2 - 6w <= 4*sqrt(2)*w  <=>  u^2 <= 6w or (u^2-6w)^2 <= 32 w^2.
bool within_tube_threshold(i128 u, i128 w) {
    i128 u2 = u * u;
    i128 lhs = u2 - 6 * w;
    if (lhs <= 0) return true;
    // lhs, w < 2^62 in all uses; squares stay inside __int128
    return lhs * lhs <= 32 * w * w;
}

}  // namespace

bool incident(const GridSquare& sq, const Tube& t) {
    if (sq.scale != t.scale) throw std::invalid_argument("incident: scale mismatch");
    const int m = t.scale.m;
    i64 dom2, oth2;  // center * 2^{m+1} along the dominant / other coordinate
    if (t.axis == Axis::X) {
        dom2 = 2 * sq.i + 1;
        oth2 = 2 * sq.j + 1;
    } else {
        dom2 = 2 * sq.j + 1;
        oth2 = 2 * sq.i + 1;
    }
    i128 u = (i128)t.slope * dom2 + ((i128)t.intercept << (m + 1)) - ((i128)oth2 << m);
    i128 w = ((i128)1 << (2 * m)) + (i128)t.slope * t.slope;
    return within_tube_threshold(u, w);
}

std::vector<Point2i> rasterize(const Tube& t) {
    const i64 n = t.scale.inv_delta();
    std::vector<Point2i> out;
    out.reserve(4 * n);
    // The center-line offset within a column is < 2.5 delta in the non-dominant direction
    // (threshold * sqrt(1+s^2) <= (1+sqrt(2)/2)*sqrt(2) < 2.5), so scan a fixed band and
    // filter with the exact predicate.
    for (i64 d = 0; d < n; ++d) {
        // axis value at the column center, in delta units
        double a = (double)t.slope / (double)n;
        double c = (double)t.intercept;
        double yc = a * (d + 0.5) + c;
        i64 j0 = (i64)std::floor(yc);
        for (i64 o = j0 - 3; o <= j0 + 3; ++o) {
            if (o < 0 || o >= n) continue;
            GridSquare sq;
            sq.scale = t.scale;
            if (t.axis == Axis::X) {
                sq.i = d;
                sq.j = o;
            } else {
                sq.i = o;
                sq.j = d;
            }
            if (incident(sq, t)) out.push_back(Point2i{sq.i, sq.j});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<i64> rasterize_linear(const Tube& t) {
    auto pts = rasterize(t);
    std::vector<i64> out(pts.size());
    for (size_t k = 0; k < pts.size(); ++k) out[k] = square_linear(pts[k], t.scale.m);
    return out;
}

bool rect_contains(const OrientedRect& R, i64 px2, i64 py2) {
    // Work in coordinates * 2^{m+1}; direction u = (2^m, slope) (unnormalized, dominant-first).
    const int m = R.scale.m;
    i64 ddom, doth;
    if (R.axis == Axis::X) {
        ddom = px2 - R.cx2;
        doth = py2 - R.cy2;
    } else {
        ddom = py2 - R.cy2;
        doth = px2 - R.cx2;
    }
    // <p-c, U> with U = (2^m, slope) unnormalized; |<d,U>| <= (r/2)*delta*|U| clears to
    // along^2 <= r^2 * |U|^2 with d in units of 2^{-(m+1)} and r in delta units.
    i128 along = ((i128)ddom << m) + (i128)R.slope * doth;
    i128 across = -((i128)R.slope * ddom) + ((i128)doth << m);
    i128 n2 = ((i128)1 << (2 * m)) + (i128)R.slope * R.slope;
    if (along * along > (i128)R.r * R.r * n2) return false;
    if (across * across > (i128)R.rp * R.rp * n2) return false;
    return true;
}

i64 count_in_rect(const DiscreteSet2D& s, const OrientedRect& R) {
    if (s.scale != R.scale) throw std::invalid_argument("count_in_rect: scale mismatch");
    i64 n = 0;
    for (const auto& p : s.pts)
        if (rect_contains(R, 2 * p.i + 1, 2 * p.j + 1)) ++n;
    return n;
}

Tube snap_tube(double a, double b, Scale sc) {
    Tube t;
    t.scale = sc;
    const double n = (double)sc.inv_delta();
    if (std::abs(a) <= 1.0) {
        t.axis = Axis::X;
        t.slope = (i64)std::llround(a * n);
        t.intercept = (i64)std::llround(b * n);
    } else {
        t.axis = Axis::Y;
        t.slope = (i64)std::llround(n / a);
        t.intercept = (i64)std::llround(-b * n / a);
    }
    t.slope = std::clamp<i64>(t.slope, -sc.inv_delta(), sc.inv_delta());
    return t;
}

}  // namespace frostlab
