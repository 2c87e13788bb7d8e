#pragma once

#include "frostlab/shading.hpp"

namespace frostlab {

struct BoundParameters {
    double s = 0.0, d = 0.0;
    double sigma = 0.0;  // min{s+d, 2-s-d}
    double alpha = 0.0;  // min{3, 2+d/s}
    double K1 = 1.0, K2 = 1.0, K3 = 1.0;

    static BoundParameters make(double s, double d, double K1, double K2, double K3);
};

struct IncidenceReport {
    int m = 0;
    double s = 0, d = 0, K1 = 1, K2 = 1, K3 = 1;
    double lhs = 0;   // sum over T of #Y(T)
    double rhs = 0;   // bound right side with constant 1
    double ratio = 0;
    std::vector<std::pair<i64, i64>> heavy_table;  // (r, #P_r) over dyadic r
};

// Number of family tubes incident to each square of [0,1]^2, dense (i << m) | j layout.
std::vector<std::uint32_t> incidence_counts(const TubeFamily& f);
namespace serial {
std::vector<std::uint32_t> incidence_counts(const TubeFamily& f);
}

// Squares met by ~r tubes, the bucket [r, 2r).
std::vector<i64> heavy_squares(const TubeFamily& f, i64 r);
std::vector<i64> heavy_squares_from_counts(const std::vector<std::uint32_t>& counts, i64 r);

// Same bucket counting shading membership instead of incidence.
std::vector<i64> heavy_squares_shaded(const Shading& y, i64 r);
std::vector<std::uint32_t> shading_counts(const Shading& y, int m);

// lhs, rhs and ratio of the quasi-product incidence bound
//   sum_T #Y(T)  vs  K3^{1/3} (K1 K2)^{1-1/alpha} (delta^{-s-d} #T)^{1/alpha} #Y(T_all)^{1-1/alpha}
IncidenceReport verify_incidence_bound(const TubeFamily& f, const Shading& y);

struct TwoEndsBoundReport {
    double lhs = 0, rhs = 0, ratio = 0;
    bool two_ends_ok = true;
};

// Sanity ratio for the general two-ends bound
//   N^{1/2} delta^{t/2} sum_T #Y(T)  vs  K1 K2^{1/2} #Y(T_all).
TwoEndsBoundReport verify_two_ends_bound(const TubeFamily& f, const Shading& y, double t, double K1, double K2,
                     double N, double eps1, double eps2);

struct RescaledGroup {
    i64 N = 1;  // pigeonholed directions-per-segment parameter
    TubeFamily family;
};

// delta x Delta segments inside the Delta-cell (qi, qj) lying in [M, 2M) tubes, grouped by
// the dyadic count of family directions in the segment's direction arc, each group rescaled
// to a family at scale delta/Delta and re-certified.
std::vector<RescaledGroup> segment_rescale(const TubeFamily& f, i64 qi, i64 qj, int k, i64 M);

}  // namespace frostlab
