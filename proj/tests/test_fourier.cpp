#include <doctest.h>

#include <cmath>
#include <complex>

#include "frostlab/experiments.hpp"
#include "frostlab/fourier.hpp"
#include "frostlab/fractal.hpp"
#include "frostlab/parabola.hpp"

using namespace frostlab;

TEST_CASE("measure construction: mass, certificate, trivial cases") {
    Scale sc(8);
    DiscreteMeasure g = frostman_measure_from_set(full_grid(sc), 1.0);
    CHECK(g.total_mass() == doctest::Approx(1.0));
    CHECK(g.frostman_C <= 2.0);
    DiscreteMeasure one = frostman_measure_from_set(set_from_indices(sc, {100}), 0.5);
    CHECK(one.frostman_C == doctest::Approx(1.0));  // worst window is r = delta
    DiscreteMeasure c = frostman_measure_from_set(cantor_set(sc, 0.5, 0), 0.5);
    CHECK(c.frostman_C <= 8.0);
}

TEST_CASE("mu_hat: value at zero, modulus bound, conjugate symmetry") {
    Scale sc(8);
    DiscreteMeasure mu = frostman_measure_from_set(cantor_set(sc, 0.5, 5, CantorMode::random), 0.5);
    CHECK(std::abs(mu_hat(mu, 0.0, 0.0)) == doctest::Approx(mu.total_mass()));
    Rng rng(3);
    for (int k = 0; k < 100; ++k) {
        double x1 = rng.unit() * 200.0 - 100.0, x2 = rng.unit() * 200.0 - 100.0;
        auto v = mu_hat(mu, x1, x2);
        CHECK(std::abs(v) <= mu.total_mass() * (1.0 + 1e-12));
        auto w = mu_hat(mu, -x1, -x2);
        CHECK(v.real() == doctest::Approx(w.real()).epsilon(1e-10));
        CHECK(v.imag() == doctest::Approx(-w.imag()).epsilon(1e-10));
    }
}

TEST_CASE("mu_hat: single atom has constant modulus, two atoms follow the closed form") {
    Scale sc(6);
    DiscreteMeasure one = frostman_measure_from_set(set_from_indices(sc, {20}), 0.5);
    double mass = one.mass[0];
    Rng rng(4);
    for (int k = 0; k < 50; ++k)
        CHECK(std::abs(mu_hat(one, rng.unit() * 50, rng.unit() * 50)) == doctest::Approx(mass));
    DiscreteMeasure two = frostman_measure_from_set(set_from_indices(sc, {10, 30}), 0.5);
    double w = two.mass[0];
    for (int k = 0; k < 100; ++k) {
        double x1 = rng.unit() * 60 - 30, x2 = rng.unit() * 60 - 30;
        double xi1 = 10.0 / 64, xi2 = 30.0 / 64;
        double phase = 2.0 * M_PI * ((xi1 - xi2) * x1 + (xi1 * xi1 - xi2 * xi2) * x2);
        double expect = 2.0 * w * w * (1.0 + std::cos(phase));
        CHECK(std::norm(mu_hat(two, x1, x2)) == doctest::Approx(expect).epsilon(1e-9));
    }
}

TEST_CASE("l6 over a disk: single atom integrand is constant, area pi R^2") {
    Scale sc(8);
    DiscreteMeasure one = frostman_measure_from_set(set_from_indices(sc, {77}), 0.5);
    double mass6 = std::pow(one.mass[0], 6.0);
    for (double R : {16.0, 64.0}) {
        L6Report rep = l6_integral(one, R, 0.25);
        CHECK(rep.value == doctest::Approx(M_PI * R * R * mass6).epsilon(0.02));
        CHECK_FALSE(rep.under_resolved);
    }
}

TEST_CASE("l6 serial and parallel sums are bit-identical") {
    Scale sc(8);
    DiscreteMeasure mu = frostman_measure_from_set(cantor_set(sc, 0.5, 2, CantorMode::random), 0.5);
    double a = l6_disk_sum(mu, 32.0, 0.25);
    double b = serial::l6_disk_sum(mu, 32.0, 0.25);
    CHECK(a == b);
}

TEST_CASE("trilinear with equal measures equals the sextic integral") {
    Scale sc(7);
    DiscreteMeasure mu = frostman_measure_from_set(cantor_set(sc, 0.5, 6, CantorMode::random), 0.5);
    double tri = trilinear_l6(mu, mu, mu, 16.0, 0.25);
    double six = l6_disk_sum(mu, 16.0, 0.25);
    CHECK(tri == doctest::Approx(six).epsilon(1e-9));
    // single atoms: pi R^2 (m1 m2 m3)^2
    DiscreteMeasure a = frostman_measure_from_set(set_from_indices(sc, {11}), 0.5);
    DiscreteMeasure b = frostman_measure_from_set(set_from_indices(sc, {60}), 0.5);
    DiscreteMeasure c = frostman_measure_from_set(set_from_indices(sc, {100}), 0.5);
    double expect = M_PI * 256.0 * std::pow(a.mass[0] * b.mass[0] * c.mass[0], 2.0);
    CHECK(trilinear_l6(a, b, c, 16.0, 0.25) == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("box quadrature over full periods isolates the exact-equality energy") {
    // over [0, 1/delta] x [0, 1/delta^2] every off-diagonal frequency integrates to zero,
    // so the quadrature equals delta^-3 * mass^6 * #{sextuples with exactly equal sums}
    Scale sc(6);
    auto a = cantor_set(sc, 0.5, 8, CantorMode::random);
    double s = 0.5;
    DiscreteMeasure mu = frostman_measure_from_set(a, s);
    i128 e0 = energy3_oracle(a, a, a, 0).count;
    double inv = (double)sc.inv_delta();
    double quad = l6_box_sum(mu, inv, inv * inv, 0.25);
    double predicted =
        inv * inv * inv * std::pow(mu.mass[0], 6.0) * (double)(long double)e0;
    CHECK(quad == doctest::Approx(predicted).epsilon(0.2));
    CHECK(quad == doctest::Approx(predicted).epsilon(1e-6));  // in fact exact up to roundoff
}

TEST_CASE("decay fit: a single atom grows like the disk area, slope 2") {
    Scale sc(8);
    DiscreteMeasure one = frostman_measure_from_set(set_from_indices(sc, {123}), 0.5);
    ExponentFit fit = decay_exponent_fit(one, {8.0, 16.0, 32.0, 64.0}, 0.25);
    CHECK(std::abs(fit.slope - 2.0) <= 0.05);
}

TEST_CASE("l6 report carries the decay normalization") {
    Scale sc(8);
    DiscreteMeasure mu = frostman_measure_from_set(cantor_set(sc, 0.5, 0), 0.5);
    L6Report rep = l6_integral(mu, 32.0, 0.25);
    double norm = std::pow(32.0, 2.0 - 2.5 * 0.5) * mu.total_mass();
    CHECK(rep.normalized == doctest::Approx(rep.value / norm));
    CHECK_THROWS(l6_integral(mu, 32.0, 0.5));  // h cap
}

TEST_CASE("full-grid measure at s=1 decays within the flat envelope") {
    DiscreteMeasure g = frostman_measure_from_set(full_grid(Scale(8)), 1.0);
    ExponentFit fit = decay_exponent_fit(g, {8.0, 16.0, 32.0, 64.0}, 0.25);
    CHECK(fit.slope <= 1.0 - 1.0 + 0.3);
}

TEST_CASE("trilinear ladder on separated cantor measures stays under its normalization") {
    Scale sc(7);
    auto sets = trilinear_inputs(sc, 0.5, 2);
    DiscreteMeasure m1 = frostman_measure_from_set(sets[0], 0.5);
    DiscreteMeasure m2 = frostman_measure_from_set(sets[1], 0.5);
    DiscreteMeasure m3 = frostman_measure_from_set(sets[2], 0.5);
    double prev = 0.0;
    for (double R : {8.0, 16.0, 32.0}) {
        double v = trilinear_l6(m1, m2, m3, R, 0.25);
        CHECK(v > 0.0);
        CHECK(v >= prev);  // integrals over growing disks are monotone
        double norm = std::pow(R, 2.0 - 2.5 * 0.5) *
                      std::pow(m1.total_mass() * m2.total_mass() * m3.total_mass(), 5.0 / 6.0);
        CHECK(v / norm < 64.0);
        prev = v;
    }
}
