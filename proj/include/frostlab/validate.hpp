#pragma once

#include "frostlab/geometry.hpp"
#include "frostlab/sets.hpp"

namespace frostlab {

// Result of a regularity scan: the tightest constant achieved and the witness window.
// Windows are half-open dyadic balls [x-r, x+r) centered at set points; this under-estimates
// the sup over arbitrary centers by at most the recorded net_slack factor.
struct RegularityCertificate {
    enum class Kind { frostman, kt, rect_kt } kind = Kind::kt;
    double exponent = 0.0;
    double C = 0.0;
    double net_slack = 2.0;
    // witness
    i64 wit_i = 0, wit_j = 0;  // window center (grid index; 1D uses wit_i)
    int wit_t = 0;             // window half-width 2^t in delta units
    i64 wit_rp = 0, wit_r = 0;  // rect-KT: side lengths in delta units
    i64 wit_slope = 0;
    Axis wit_axis = Axis::X;
};

RegularityCertificate validate_frostman(const DiscreteSet1D& a, double s);
RegularityCertificate validate_kt(const DiscreteSet1D& a, double s);
RegularityCertificate validate_kt(const DiscreteSet2D& p, double s);
RegularityCertificate validate_rect_kt(const DiscreteSet2D& p, double u);

// Re-evaluate the witness window; returns the ratio it achieves (== C for a valid certificate).
double reevaluate_witness(const DiscreteSet1D& a, const RegularityCertificate& c);
double reevaluate_witness(const DiscreteSet2D& p, const RegularityCertificate& c);

namespace serial {
RegularityCertificate validate_kt(const DiscreteSet1D& a, double s);
RegularityCertificate validate_kt(const DiscreteSet2D& p, double s);
}  // namespace serial

}  // namespace frostlab
