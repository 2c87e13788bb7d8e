#pragma once

#include <complex>

#include "frostlab/fit.hpp"
#include "frostlab/sets.hpp"

namespace frostlab {

// Atomic measure on the parabola; atoms at (xi, xi^2) with positive masses.
struct DiscreteMeasure {
    Scale scale;
    std::vector<i64> atom_idx;    // xi = idx * delta, sorted
    std::vector<double> mass;
    double frostman_s = 0.0;
    double frostman_C = 0.0;  // max over windows of mu(B(y,r)) / r^s (abscissa windows)

    double total_mass() const;
};

// Unit masses delta^s per atom of a lifted set.
DiscreteMeasure frostman_measure_from_set(const DiscreteSet1D& a, double s);

std::complex<double> mu_hat(const DiscreteMeasure& mu, double x1, double x2);

struct L6Report {
    double R = 0, h = 0;
    double value = 0;       // midpoint Riemann sum of |mu_hat|^6 over the disk B_R
    double normalized = 0;  // value / (R^{2-5s/2} * ||mu||)
    double residual = 0;    // relative change under step doubling
    bool under_resolved = false;
};

L6Report l6_integral(const DiscreteMeasure& mu, double R, double h);
namespace serial {
double l6_disk_sum(const DiscreteMeasure& mu, double R, double h);
}
double l6_disk_sum(const DiscreteMeasure& mu, double R, double h);

// Trilinear variant |mu1|^2 |mu2|^2 |mu3|^2 over B_R.
double trilinear_l6(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                    const DiscreteMeasure& m3, double R, double h);

// Midpoint sum over the axis-aligned box [0,P1] x [0,P2]; with full dyadic periods this
// isolates the exact-equality sextuple count (Plancherel on the lattice of frequencies).
double l6_box_sum(const DiscreteMeasure& mu, double P1, double P2, double h);

// Least-squares slope of log2(integral) against log2(R) on a ladder of radii.
ExponentFit decay_exponent_fit(const DiscreteMeasure& mu, const std::vector<double>& radii,
                               double h, std::vector<L6Report>* reports = nullptr);

}  // namespace frostlab
