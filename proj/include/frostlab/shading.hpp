#pragma once

#include <iosfwd>

#include "frostlab/family.hpp"

namespace frostlab {

// Map from tube index to a set of incident grid squares (linear indices i*2^m + j).
struct Shading {
    Scale scale;
    std::vector<std::vector<i64>> per_tube;  // each sorted
    double sigma = 0.0;
    double K3 = 0.0;  // max over tubes of the KT constant of Y(T) at exponent sigma

    i64 total() const;
    std::vector<i64> union_squares() const;  // distinct squares of Y(T) over all T
};

Shading full_shading(const TubeFamily& f);  // Y(T) = rasterize(T)

// Intersect every Y(T) with the given square set; K3 re-certified at the input's sigma.
Shading restrict_shading(const TubeFamily& f, const Shading& y, const std::vector<i64>& squares);

// K3 at exponent sigma, windows centered on a net along each tube axis (spacing h/2 per
// window half-width h). Sets y.sigma, y.K3 and returns K3.
double certify_shading(const TubeFamily& f, Shading& y, double sigma);

// Inverted incidence index over a square set P: tube lists per square, with the per-square
// slope sets certified at exponent sigma.
struct DualShading {
    std::vector<std::vector<i64>> tubes_per_square;  // parallel to P.pts
    double sigma = 0.0;
    double worst_C = 0.0;  // max KT constant of a per-square slope set
};
DualShading dual_shading(const TubeFamily& f, const DiscreteSet2D& P, double sigma);

// No ball of radius delta^{eps1} (centered on an eps1-net along the axis) holds more than a
// delta^{eps2}-fraction of the tube's shading.
bool two_ends_check(const Tube& t, const std::vector<i64>& squares, double eps1, double eps2);

struct TwoEndsRefinement {
    double L = 1.0;      // segment length (dominant-coordinate extent)
    i64 N = 0;           // squares retained in the segment
    i64 lo = 0, hi = 0;  // dominant-coordinate range of the segment, in delta units
    int iterations = 0;
};

// Iterative refinement: shrink the segment by the factor (delta/L)^eps whenever some
// sub-segment holds more than a (delta/L)^{eps^3}-fraction of the current squares.
TwoEndsRefinement two_ends_refine(const Tube& t, const std::vector<i64>& squares, double s,
                                  double eps);

// One line per tube: `tube_index: i1,i2,...` with linear square indices. Round-trips exactly.
void write_shading(std::ostream& os, const Shading& y);
Shading read_shading(std::istream& is, Scale sc);

}  // namespace frostlab
