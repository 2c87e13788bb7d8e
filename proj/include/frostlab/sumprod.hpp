#pragma once

#include "frostlab/family.hpp"
#include "frostlab/fractal.hpp"
#include "frostlab/sets.hpp"
#include "frostlab/shading.hpp"

namespace frostlab {

// A+A as a set of delta-grid indices (exact sums).
DiscreteSet1D sumset(const DiscreteSet1D& a);

// Covering number of A+A by 2^-k cells.
i64 sumset_cover(const DiscreteSet1D& a, int k);

// Covering number of A/A by 2^-k cells (exact rational binning; k may exceed the set scale).
// Requires A inside [1/2, 1] so the ratio set stays inside [1/2, 2].
i64 ratioset_cover(const DiscreteSet1D& a, int k);

// Distinct delta-bin representatives of A/A (bin floor indices at the set's own scale).
DiscreteSet1D ratioset_bins(const DiscreteSet1D& a);

// pi_x(a, b) = a + x*b, exact then binned at delta; x is a grid value x_idx * delta.
DiscreteSet1D project(const DiscreteSet2D& p, i64 x_idx);

struct ProjectionRow {
    i64 x_idx = 0;
    i64 min_N = 0;          // covering count of the worst sampled projection
    double min_ratio = 0;   // min over sampled Q of N(pi_x(Q)) / #Q
    double rhs = 0;         // K1^-1 K2^-1 K3^-1/2 delta^{s/2} sqrt(#E)
    bool passes = false;
    double content = 0;     // H^{(s+t)/2} of pi_x(P)
};

struct ProjectionReport {
    double s1 = 0, s2 = 0, t = 0;
    double K1 = 1, K2 = 1, K3 = 1;
    double pass_fraction = 0;
    std::vector<ProjectionRow> rows;
};

// For each direction x in E, the worst projection ratio over seeded random subsets Q of
// density delta^eps, compared against the projection bound with constant 1.
ProjectionReport projection_survey(const DiscreteSet2D& P, const DiscreteSet1D& E, double s1,
                                   double s2, double t, double eps, u64 seed, int n_subsets = 20);

// Lines y = m x + c for m in Q (slope grid indices), c in Gamma_m, as a tube family with
// certificates, shaded by the points of (A+A) x (A+A) they are incident to.
struct ElekesFamily {
    TubeFamily family;
    Shading shading;
    DiscreteSet2D points;  // (A+A) x (A+A), translated to [0,1]^2 grid indices
};
ElekesFamily elekes_family(const DiscreteSet1D& slopes_q,
                           const std::vector<DiscreteSet1D>& gamma_per_slope,
                           const DiscreteSet2D& sum_points, double t_expo, double d_expo);

// Sum over grid tubes (slope in D, every intercept) of n(n-1)(n-2), n = points of P in the
// tube: ordered collinear triples counted with tube multiplicity.
i128 collinear_triples(const DiscreteSet2D& P, const DiscreteSet1D& D);
namespace serial {
i128 collinear_triples(const DiscreteSet2D& P, const DiscreteSet1D& D);
}

struct GrowthReport {
    int m = 0;
    double s = 0;
    i64 NA = 0, NAA = 0, NAoverA = 0;
    double K = 0;
    double alt1_margin = 0, alt2_margin = 0;
    double content_t = 0;       // sup{v <= 43s/34 : H^v(Q0) >= 1}
    double growth_slope = 0;    // fitted exponent of N_rho(A+A) against 1/rho
    std::vector<std::pair<int, i64>> naa_ladder;  // (k, N_{2^-k}(A+A))
};

struct FewSumsReport {
    int m = 0;
    double s = 0;
    i64 NA = 0, NAA = 0, NAoverA = 0;
    double K = 0;     // doubling factor
    double C_A = 0;   // KT constant of A
    double L_S = 0;   // KT constant of the pigeonholed sum set S
    double C_ratio = 0;  // KT constant of the A/A representatives at sigma = min(2s, 2-2s)
    i64 r0 = 0;
    double mass_frac = 0;  // sum over the r0 bucket of fiber sizes, over #A^2
    double g_frac = 0;     // #G / #A^2
    i128 triples = 0;
    double lhs = 0, rhs = 0, ratio = 0;  // N(A+A)^6 N(A/A) vs C^-4 delta^{2s} #A^10
};

// The constructive few-sums chain: pigeonhole the sum fibers, extract the popular sum set S,
// form G, measure the doubling factor, and count collinear triples of (A u S)^2 along A/A.
FewSumsReport few_sums_pipeline(const DiscreteSet1D& a, double s, double eps, u64 seed);

struct DoublingRow {
    int k = 0;
    i64 NAA = 0, NA = 0;
    double ratio = 0;
};
std::vector<DoublingRow> doubling_across_scales(const DiscreteSet1D& a);

// Both growth alternatives with measured margins; never a pass/fail verdict on the
// unquantified constants.
GrowthReport growth_exponent_check(const DiscreteSet1D& a, double s, double eps, u64 seed);

}  // namespace frostlab
