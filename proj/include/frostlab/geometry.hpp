#pragma once

#include <vector>

#include "frostlab/core.hpp"
#include "frostlab/sets.hpp"

namespace frostlab {

// Closed square [i*delta, (i+1)*delta] x [j*delta, (j+1)*delta].
struct GridSquare {
    i64 i = 0, j = 0;
    Scale scale;
};

enum class Axis : std::uint8_t { X = 0, Y = 1 };

// delta-tube in canonical slope form: the closed delta-neighborhood of the axis line
//   X-dominant:  y = (S*delta)*x + C*delta,   |S| <= 1/delta
//   Y-dominant:  x = (S*delta)*y + C*delta
// Slope and intercept are snapped to multiples of delta.
struct Tube {
    Axis axis = Axis::X;
    i64 slope = 0;      // S, |S| <= 2^m
    i64 intercept = 0;  // C
    Scale scale;

    bool operator==(const Tube& o) const {
        return axis == o.axis && slope == o.slope && intercept == o.intercept && scale == o.scale;
    }
};

// Exact predicate: distance from the square center to the tube axis line <= delta*(1 + sqrt(2)/2).
// Decided in integer arithmetic (the sqrt(2) in the threshold squares away over two comparisons).
bool incident(const GridSquare& sq, const Tube& t);

// All squares of [0,1]^2 incident to the tube; equals the exhaustive all-squares scan.
std::vector<Point2i> rasterize(const Tube& t);

// Same squares as linear indices i*2^m + j, sorted.
std::vector<i64> rasterize_linear(const Tube& t);

inline i64 square_linear(const Point2i& p, int m) { return (p.i << m) | p.j; }
inline Point2i square_from_linear(i64 v, int m) { return Point2i{v >> m, v & ((i64(1) << m) - 1)}; }

// Rectangle with center c, long axis along direction (1, theta) (or (theta, 1) when Y-dominant),
// half-lengths (r/2 along the axis, rp/2 across), all dyadic. Coordinates are in units of
// delta/2 (so grid square centers are odd integers), half-lengths in units of delta.
struct OrientedRect {
    Scale scale;
    Axis axis = Axis::X;
    i64 cx2 = 0, cy2 = 0;  // center * 2^{m+1}
    i64 slope = 0;         // theta = slope*delta along the dominant axis
    i64 rp = 1, r = 1;     // side lengths in delta units, rp <= r
};

bool rect_contains(const OrientedRect& R, i64 px2, i64 py2);  // point * 2^{m+1}
i64 count_in_rect(const DiscreteSet2D& s, const OrientedRect& R);

// Canonical line snapping: given a real line y = a*x + b (or x = a*y + b after axis swap),
// produce the nearest canonical tube at scale sc.
Tube snap_tube(double a, double b, Scale sc);

}  // namespace frostlab
