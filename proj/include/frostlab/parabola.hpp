#pragma once

#include "frostlab/family.hpp"
#include "frostlab/sets.hpp"
#include "frostlab/validate.hpp"

namespace frostlab {

// Lifted set {(x, x^2) : x = idx*delta}; the lift is exact on grid rationals.
struct ParabolaSet {
    DiscreteSet1D base;
    double lift_x(i64 k) const { return base.value(k); }
    double lift_y(i64 k) const { return base.value(k) * base.value(k); }
};

// Circle attached to a lifted triple: center (2*sigma1, 0), radius^2 = 6*sigma2 - 2*sigma1^2,
// where (sigma1, sigma2) is the coordinate sum. Stored as integers: sigma1 = sum1*delta,
// sigma2 = sum2*delta^2.
struct CircleDatum {
    i64 sum1 = 0, sum2 = 0;
    int m = 1;
    i64 r2num() const { return 6 * sum2 - 2 * sum1 * sum1; }  // radius^2 * 2^{2m}
    double radius2() const { return std::ldexp((double)r2num(), -2 * m); }
    double center_x() const { return std::ldexp(2.0 * (double)sum1, -m); }
};

CircleDatum triple_to_circle(i64 i1, i64 i2, i64 i3, Scale sc);

// Chord endpoints on the unit circle for the mapped circle; xi = 2*sigma1 +- radius.
struct SegmentEndpoints {
    double x1, y1, x2, y2;
};
SegmentEndpoints circle_to_segment(double sigma1, double radius2);

struct EnergyResult {
    i128 count = 0;
    i64 c_tol = 2;
    enum class Method { binning_oracle, incidence_reformulation, exhaustive } method =
        Method::binning_oracle;
};

// Six-fold energy: ordered pairs of triples from S1 x S2 x S3 whose lifted coordinate sums
// differ by at most c_tol*delta in each coordinate (exact integer predicate).
EnergyResult energy3_oracle(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                            const DiscreteSet1D& s3, i64 c_tol);
EnergyResult energy3_exhaustive(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                const DiscreteSet1D& s3, i64 c_tol);
namespace serial {
EnergyResult energy3_oracle(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                            const DiscreteSet1D& s3, i64 c_tol);
}

// Tube-square incidence instance equivalent to the trilinear energy.
struct IncidenceInstance {
    Scale scale;
    DiscreteSet2D squares;                  // image squares carrying the incidence counts
    std::vector<CircleDatum> reps;          // one representative per identified circle class
    std::vector<i64> per_rep_count;         // squares incident to each class
    std::vector<std::vector<i64>> reps_per_square;  // dual lists Y'(p)
    i128 sum_count_sq = 0;                  // sum over classes of count^2
    i64 total_incidences = 0;
    double dual_sigma = 0.0, dual_C = 0.0;  // KT certificate of the sigma1-sets Y'(p)
    DiscreteSet2D mapped_P;                 // geometric model of the square set
    std::vector<Tube> mapped_tubes;         // snapped chords / lines, one per class
    double distort_min = 0.0, distort_max = 0.0;
};

// Circle framework: squares cover {(3(x1+x2), sqrt(3)(x1-x2))}, tubes are neighborhoods of
// the triple circles, identified when coordinate sums agree to O(delta); incidences are
// decided by the exact annulus predicate. The conformal disk model of squares and chords is
// attached for geometry consumers.
IncidenceInstance build_incidence_instance(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                           const DiscreteSet1D& s3, double sigma_cert);

// Parabola-to-line transform framework: squares are images of pair sums, tubes are images of
// translated parabolas indexed by triple sums; incidence is the exact vertical-distance
// predicate (pair sum minus triple sum lies in an O(delta)-neighborhood of the parabola).
IncidenceInstance psi_transform_instance(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                         const DiscreteSet1D& s3, double sigma_cert);

struct RectBoundReport {
    int m = 0;
    double s = 0;
    double lhs = 0, rhs = 0, ratio = 0;
    double rect_C = 0;   // rectangular KT certificate of P at 2s
    double dual_C = 0;   // worst sigma-KT constant of the dual shadings
};

// I(T,P) = sum_p #Y'(p)  vs  delta^{-2s/3} (#T)^{2/3} (#P)^{1/3}.
RectBoundReport verify_rect_bound(const IncidenceInstance& inst, double s,
                                      bool certify_rect = true);

struct TrilinearReport {
    int m = 0;
    double s = 0;
    i128 energy = 0;
    double rhs = 0, ratio = 0;
};

// E_{3,delta}(S1,S2,S3)  vs  delta^{-s} (#S1 #S2 #S3)^{5/6}.
TrilinearReport verify_trilinear_energy(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                        const DiscreteSet1D& s3, double s, i64 c_tol = 2);

}  // namespace frostlab
