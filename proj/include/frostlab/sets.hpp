#pragma once

#include <iosfwd>
#include <vector>

#include "frostlab/core.hpp"

namespace frostlab {

// delta-separated subset of the line, stored as sorted grid indices (value = idx * delta).
// Indices may be negative or exceed 1/delta; the ambient interval is implicit.
struct DiscreteSet1D {
    Scale scale;
    std::vector<i64> idx;  // sorted, distinct
    std::string label;

    i64 size() const { return (i64)idx.size(); }
    bool empty() const { return idx.empty(); }
    double value(i64 k) const { return (double)idx[k] * scale.delta(); }

    void normalize();                         // sort + dedup
    i64 count_in_window(i64 lo, i64 hi) const;  // #{idx in [lo, hi)}
};

struct Point2i {
    i64 i = 0, j = 0;
    bool operator==(const Point2i& o) const { return i == o.i && j == o.j; }
    bool operator<(const Point2i& o) const { return i < o.i || (i == o.i && j < o.j); }
};

// delta-separated planar set (grid squares / grid points), sorted lexicographically.
struct DiscreteSet2D {
    Scale scale;
    std::vector<Point2i> pts;  // sorted, distinct
    std::string label;

    i64 size() const { return (i64)pts.size(); }
    bool empty() const { return pts.empty(); }
    void normalize();
};

// Number of nonempty rho-adic cells meeting the set, rho = 2^-k (k <= m).
i64 covering_number(const DiscreteSet1D& a, int k);
i64 covering_number(const DiscreteSet2D& p, int k);

DiscreteSet1D full_grid(Scale sc);                       // {0, ..., 1/delta - 1}
DiscreteSet1D set_from_indices(Scale sc, std::vector<i64> v, std::string label = "");
DiscreteSet2D product_set(const DiscreteSet1D& a, const DiscreteSet1D& b, std::string label = "");

// Restriction to a dyadic cell [a*rho, (a+1)*rho), rho = 2^-k, rescaled by rho^-1
// to live at scale delta/rho.
DiscreteSet1D restrict_rescale(const DiscreteSet1D& a, i64 cell, int k);

// One-line header `scale=m label=... kind=...`, then sorted indices, ASCII decimal.
void write_set(std::ostream& os, const DiscreteSet1D& a);
void write_set(std::ostream& os, const DiscreteSet2D& p);
DiscreteSet1D read_set1d(std::istream& is);
DiscreteSet2D read_set2d(std::istream& is);

}  // namespace frostlab
