#pragma once

#include "frostlab/sets.hpp"
#include "frostlab/validate.hpp"

namespace frostlab {

enum class CantorMode { deterministic, random };

// delta-separated subset of [0,1] built by T-adic branching, keeping round(2^{T*s})
// children per block cell. Deterministic mode keeps leftmost children.
DiscreteSet1D cantor_set(Scale sc, double s, u64 seed = 0,
                         CantorMode mode = CantorMode::deterministic, int block = 4);

// Slope set with two-sided (Ahlfors-regular) window counts: for every theta in the set and
// every dyadic rho >= delta, #([theta-rho, theta+rho]) is within a bounded factor of (rho/delta)^s.
// Domain [lo_num/2, hi_num/2] of [0,1] in halves; default the full [0,1).
DiscreteSet1D ad_regular_directions(Scale sc, double s, u64 seed = 0, bool upper_half = false);

// Exact optimum of sum diam(U)^s over covers by dyadic intervals of length >= delta,
// computed bottom-up on the dyadic tree.
double hausdorff_content(const DiscreteSet1D& a, double s);

struct BranchingProfile {
    int block = 1;                 // T: levels per block
    std::vector<int> depths;       // dyadic depth of each ladder level, 0 = coarsest cell
    std::vector<i64> branching;    // children kept per cell between consecutive levels
    i64 top_cells = 1;             // occupied cells at depths[0]
    double retained = 1.0;         // |A0| / |A|
};

struct UniformizeResult {
    DiscreteSet1D set;
    BranchingProfile profile;
};

// Keep, level by level, the most popular dyadic branching bucket and trim every surviving
// cell to exactly that many children (leftmost kept, ties to the smaller count).
// Every cell of a ladder level then holds exactly the same number of points.
UniformizeResult uniformize(const DiscreteSet1D& a, double eps);

// Branching exponents along the uniformization ladder; picks the first (finest) ladder scale
// rho whose exponent drops to t - 10*eps, with rho = delta and rho = 1 as degenerate answers.
// Returns the dyadic depth of rho (rho = 2^-depth, 0 <= depth <= m).
int multiscale_split(const UniformizeResult& u, double t, double eps, i64* cell_floor = nullptr);

// Greedy top-down pruning to a (delta,s)-KT subset with constant O(1); combined with
// hausdorff_content this realizes the content-to-cardinality extraction.
DiscreteSet1D extract_frostman_subset(const DiscreteSet1D& a, double s);

int uniformize_block_size(double eps, int m);

}  // namespace frostlab
