#include "frostlab/fourier.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace frostlab {

double DiscreteMeasure::total_mass() const {
    double t = 0;
    for (double w : mass) t += w;
    return t;
}

DiscreteMeasure frostman_measure_from_set(const DiscreteSet1D& a, double s) {
    DiscreteMeasure mu;
    mu.scale = a.scale;
    mu.atom_idx = a.idx;
    mu.mass.assign(a.idx.size(), std::pow(a.scale.delta(), s));
    mu.frostman_s = s;
    // certificate: windows [x-r, x+r) at dyadic r centered on atoms
    const int m = a.scale.m;
    double worst = 0.0;
    int tmax = 0;
    i64 span = a.idx.empty() ? 1 : std::max<i64>(1, a.idx.back() - a.idx.front() + 1);
    while ((i64(1) << tmax) < span) ++tmax;
    for (i64 x : a.idx)
        for (int t = 0; t <= tmax; ++t) {
            i64 h = i64(1) << t;
            double w = (double)a.count_in_window(x - h, x + h) * mu.mass.front();
            worst = std::max(worst, w / std::pow(std::ldexp(1.0, t - m), s));
        }
    mu.frostman_C = worst;
    return mu;
}

std::complex<double> mu_hat(const DiscreteMeasure& mu, double x1, double x2) {
    const double delta = mu.scale.delta();
    double re = 0, im = 0;
    for (size_t k = 0; k < mu.atom_idx.size(); ++k) {
        double xi = (double)mu.atom_idx[k] * delta;
        double phase = 2.0 * M_PI * (xi * x1 + xi * xi * x2);
        re += mu.mass[k] * std::cos(phase);
        im += mu.mass[k] * std::sin(phase);
    }
    return {re, im};
}

namespace {

// one row of the midpoint grid, Kahan-compensated; the row is summed left to right so the
// result is independent of how rows are assigned to threads
double disk_row_sum(const DiscreteMeasure& mu, double R, double h, i64 row, i64 ncol,
                    const std::vector<double>& xi, const std::vector<double>& xi2) {
    double y = (-R) + (row + 0.5) * h;
    double sum = 0, comp = 0;
    for (i64 col = 0; col < ncol; ++col) {
        double x = (-R) + (col + 0.5) * h;
        if (x * x + y * y > R * R) continue;
        double re = 0, im = 0;
        for (size_t k = 0; k < xi.size(); ++k) {
            double phase = 2.0 * M_PI * (xi[k] * x + xi2[k] * y);
            re += mu.mass[k] * std::cos(phase);
            im += mu.mass[k] * std::sin(phase);
        }
        double p2 = re * re + im * im;
        double term = p2 * p2 * p2;
        double t = sum + term;
        comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

std::pair<std::vector<double>, std::vector<double>> atom_coords(const DiscreteMeasure& mu) {
    std::vector<double> xi(mu.atom_idx.size()), xi2(mu.atom_idx.size());
    for (size_t k = 0; k < mu.atom_idx.size(); ++k) {
        xi[k] = (double)mu.atom_idx[k] * mu.scale.delta();
        xi2[k] = xi[k] * xi[k];
    }
    return {xi, xi2};
}

double disk_sum_impl(const DiscreteMeasure& mu, double R, double h, bool parallel) {
    auto [xi, xi2] = atom_coords(mu);
    i64 n = (i64)std::ceil(2.0 * R / h);
    std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (i64 row = 0; row < n; ++row) rows[row] = disk_row_sum(mu, R, h, row, n, xi, xi2);
    double total = 0;
    for (double v : rows) total += v;  // fixed order
    return total * h * h;
}

}  // namespace

double l6_disk_sum(const DiscreteMeasure& mu, double R, double h) {
    return disk_sum_impl(mu, R, h, true);
}

namespace serial {
double l6_disk_sum(const DiscreteMeasure& mu, double R, double h) {
    return disk_sum_impl(mu, R, h, false);
}
}  // namespace serial

L6Report l6_integral(const DiscreteMeasure& mu, double R, double h) {
    if (h > 0.25) throw std::invalid_argument("l6_integral: h <= 1/4 required");
    L6Report rep;
    rep.R = R;
    rep.h = h;
    rep.value = l6_disk_sum(mu, R, h);
    double coarse = l6_disk_sum(mu, R, 2.0 * h);
    rep.residual = (rep.value == 0.0) ? 0.0 : std::abs(rep.value - coarse) / rep.value;
    rep.under_resolved = rep.residual > 0.05;
    double norm = std::pow(R, 2.0 - 2.5 * mu.frostman_s) * mu.total_mass();
    rep.normalized = rep.value / norm;
    return rep;
}

double trilinear_l6(const DiscreteMeasure& m1, const DiscreteMeasure& m2,
                    const DiscreteMeasure& m3, double R, double h) {
    if (h > 0.25) throw std::invalid_argument("trilinear_l6: h <= 1/4 required");
    auto [xi1, q1] = atom_coords(m1);
    auto [xi2, q2] = atom_coords(m2);
    auto [xi3, q3] = atom_coords(m3);
    i64 n = (i64)std::ceil(2.0 * R / h);
    std::vector<double> rows(n, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (i64 row = 0; row < n; ++row) {
        double y = (-R) + (row + 0.5) * h;
        double sum = 0;
        for (i64 col = 0; col < n; ++col) {
            double x = (-R) + (col + 0.5) * h;
            if (x * x + y * y > R * R) continue;
            double prod = 1.0;
            const std::vector<double>* xs[3] = {&xi1, &xi2, &xi3};
            const std::vector<double>* qs[3] = {&q1, &q2, &q3};
            const DiscreteMeasure* ms[3] = {&m1, &m2, &m3};
            for (int t = 0; t < 3; ++t) {
                double re = 0, im = 0;
                for (size_t k = 0; k < xs[t]->size(); ++k) {
                    double phase = 2.0 * M_PI * ((*xs[t])[k] * x + (*qs[t])[k] * y);
                    re += ms[t]->mass[k] * std::cos(phase);
                    im += ms[t]->mass[k] * std::sin(phase);
                }
                prod *= re * re + im * im;
            }
            sum += prod;
        }
        rows[row] = sum;
    }
    double total = 0;
    for (double v : rows) total += v;
    return total * h * h;
}

double l6_box_sum(const DiscreteMeasure& mu, double P1, double P2, double h) {
    auto [xi, xi2] = atom_coords(mu);
    i64 n1 = (i64)std::llround(P1 / h), n2 = (i64)std::llround(P2 / h);
    std::vector<double> rows(n2, 0.0);
#pragma omp parallel for schedule(dynamic)
    for (i64 row = 0; row < n2; ++row) {
        double y = (row + 0.5) * h;
        double sum = 0, comp = 0;
        for (i64 col = 0; col < n1; ++col) {
            double x = (col + 0.5) * h;
            double re = 0, im = 0;
            for (size_t k = 0; k < xi.size(); ++k) {
                double phase = 2.0 * M_PI * (xi[k] * x + xi2[k] * y);
                re += mu.mass[k] * std::cos(phase);
                im += mu.mass[k] * std::sin(phase);
            }
            double p2 = re * re + im * im;
            double term = p2 * p2 * p2;
            double t = sum + term;
            comp += (std::abs(sum) >= std::abs(term)) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        }
        rows[row] = sum + comp;
    }
    double total = 0;
    for (double v : rows) total += v;
    return total * h * h;
}

ExponentFit decay_exponent_fit(const DiscreteMeasure& mu, const std::vector<double>& radii,
                               double h, std::vector<L6Report>* reports) {
    if (radii.size() < 4) throw std::invalid_argument("decay_exponent_fit: need >= 4 ladder points");
    std::vector<double> lx, ly;
    for (double R : radii) {
        L6Report rep = l6_integral(mu, R, h);
        if (reports) reports->push_back(rep);
        lx.push_back(std::log2(R));
        ly.push_back(std::log2(rep.value));
    }
    return fit_logpoints(lx, ly);
}

}  // namespace frostlab
