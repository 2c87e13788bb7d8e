#pragma once

#include "frostlab/geometry.hpp"
#include "frostlab/sets.hpp"
#include "frostlab/validate.hpp"

namespace frostlab {

// Collection of X-dominant delta-tubes organized by direction: a direction (slope) set Lambda
// and, per direction, a set of intercept offsets.
struct TubeFamily {
    Scale scale;
    std::vector<i64> slopes;                  // sorted distinct slope indices
    std::vector<std::vector<i64>> offsets;    // per slope, sorted intercept indices
    double declared_s = 0.0, declared_d = 0.0;
    double K1 = 0.0, K2 = 0.0;                // certified constants
    std::vector<Tube> tubes;                  // flattened in (slope, offset) order

    i64 size() const { return (i64)tubes.size(); }
    DiscreteSet1D direction_set() const;
    void rebuild_tubes();                     // tubes from (slopes, offsets)
    void certify(double s, double d);         // recompute K1, K2
};

TubeFamily quasi_product_family(Scale sc, const DiscreteSet1D& directions,
                                const std::vector<DiscreteSet1D>& offsets, double s, double d);

// All canonical X-dominant tubes meeting [0,1]^2: slopes in [0,1), all valid intercepts.
TubeFamily grid_family(Scale sc);

struct BushResult {
    TubeFamily family;
    DiscreteSet2D anchors;  // squares on [0,1] x {0}
};

// For each anchor square on the bottom row, every tube through its center with slope in an
// Ahlfors-regular direction set. Single-anchor bushes use slopes over [0,1); multi-anchor
// bushes use [1/2,1) so the per-direction offsets inherit the anchors' regularity.
// sep_bits > 0 builds the direction set with minimum gap 2^sep_bits * delta (the same
// regularity class; keeps distinct tubes from sharing their squares at desk scales).
BushResult bush_construction(double s, Scale sc, u64 seed = 0, i64 anchor_count = -1,
                             int sep_bits = 0);

// Two-scale sharpness family: a coarse bush at scale rho = delta*K2^{1/s}, each rho-tube
// packed with K1*K2 directions times rho/delta offsets of delta-tubes.
TubeFamily layered_sharpness_family(double s, i64 K1, i64 K2, Scale sc, u64 seed = 0);

// KT certificate of the family viewed as a point set in (slope, intercept) parameter space.
RegularityCertificate tube_param_certificate(const TubeFamily& f, double t);

}  // namespace frostlab
