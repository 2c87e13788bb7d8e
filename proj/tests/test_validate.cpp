#include <doctest.h>

#include <cmath>

#include "frostlab/fractal.hpp"
#include "frostlab/validate.hpp"

using namespace frostlab;

TEST_CASE("kt validator: full grid at s=1 gives C <= 2") {
    Scale sc(7);
    auto cert = validate_kt(full_grid(sc), 1.0);
    CHECK(cert.C <= 2.0);
    CHECK(cert.C >= 1.0);
}

TEST_CASE("kt validator: single point gives C = 1 at any exponent") {
    Scale sc(6);
    DiscreteSet1D one = set_from_indices(sc, {9});
    CHECK(validate_kt(one, 0.3).C == doctest::Approx(1.0));
    CHECK(validate_kt(one, 1.0).C == doctest::Approx(1.0));
}

TEST_CASE("frostman validator: single point worst window is r = delta") {
    Scale sc(6);
    DiscreteSet1D one = set_from_indices(sc, {9});
    double s = 0.5;
    CHECK(validate_frostman(one, s).C ==
          doctest::Approx(std::pow(sc.delta(), -s)));
}

TEST_CASE("frostman validator: full grid at s=1 gives C <= 2, cantor within contract") {
    CHECK(validate_frostman(full_grid(Scale(7)), 1.0).C <= 2.0);
    for (u64 seed : {0ull, 1ull, 2ull}) {
        auto a = cantor_set(Scale(8), 0.5, seed,
                            seed ? CantorMode::random : CantorMode::deterministic);
        CHECK(validate_frostman(a, 0.5).C <= 8.0);
    }
}

TEST_CASE("kt and frostman certificates satisfy the exact duality") {
    // per-window ratios differ by the constant factor #A * delta^s, so the certificates do too
    Scale sc(8);
    for (u64 seed : {1ull, 7ull}) {
        auto a = cantor_set(sc, 0.5, seed, CantorMode::random);
        double ckt = validate_kt(a, 0.5).C;
        double cf = validate_frostman(a, 0.5).C;
        double factor = (double)a.size() * std::pow(sc.delta(), 0.5);
        CHECK(ckt == doctest::Approx(cf * factor).epsilon(1e-9));
        CHECK(ckt <= 4.0 * cf * factor);
        CHECK(cf <= 4.0 * ckt / factor);
    }
}

TEST_CASE("any subset certifies with a constant at most the superset's") {
    Scale sc(8);
    auto a = cantor_set(sc, 0.5, 5, CantorMode::random);
    double c_full = validate_kt(a, 0.5).C;
    Rng rng(42);
    for (int trial = 0; trial < 10; ++trial) {
        DiscreteSet1D sub;
        sub.scale = sc;
        for (i64 v : a.idx)
            if (rng.below(3) > 0) sub.idx.push_back(v);
        if (sub.empty()) continue;
        CHECK(validate_kt(sub, 0.5).C <= c_full + 1e-12);
    }
}

TEST_CASE("witness windows reproduce the certificate") {
    Scale sc(8);
    auto a = cantor_set(sc, 0.5, 9, CantorMode::random);
    auto kt = validate_kt(a, 0.5);
    CHECK(reevaluate_witness(a, kt) == doctest::Approx(kt.C));
    auto fr = validate_frostman(a, 0.5);
    CHECK(reevaluate_witness(a, fr) == doctest::Approx(fr.C));
    auto p = product_set(a, a);
    auto kt2 = validate_kt(p, 1.0);
    CHECK(reevaluate_witness(p, kt2) == doctest::Approx(kt2.C));
}

TEST_CASE("serial and parallel validator scans agree bit for bit") {
    Scale sc(9);
    auto a = cantor_set(sc, 0.5, 12, CantorMode::random);
    auto p1 = validate_kt(a, 0.5);
    auto p2 = serial::validate_kt(a, 0.5);
    CHECK(p1.C == p2.C);
    CHECK(p1.wit_i == p2.wit_i);
    CHECK(p1.wit_t == p2.wit_t);
    auto prod = product_set(a, a);
    CHECK(validate_kt(prod, 1.0).C == serial::validate_kt(prod, 1.0).C);
}

TEST_CASE("rect-kt validator: single point and full grid") {
    Scale sc(3);
    DiscreteSet2D one;
    one.scale = sc;
    one.pts = {Point2i{3, 4}};
    CHECK(validate_rect_kt(one, 1.0).C == doctest::Approx(1.0));
    DiscreteSet2D g;
    g.scale = sc;
    for (i64 i = 0; i < 8; ++i)
        for (i64 j = 0; j < 8; ++j) g.pts.push_back(Point2i{i, j});
    g.normalize();
    auto cert = validate_rect_kt(g, 2.0);
    CHECK(cert.C <= 4.0);
    CHECK(cert.C >= 1.0);
    CHECK(reevaluate_witness(g, cert) == doctest::Approx(cert.C));
}

TEST_CASE("rect-kt sees an axis-aligned strip that square windows miss") {
    Scale sc(5);
    DiscreteSet2D strip;
    strip.scale = sc;
    for (i64 i = 0; i < 32; ++i) strip.pts.push_back(Point2i{i, 7});
    strip.normalize();
    // a (delta, 32 delta) rectangle catches all 32 points: C >= 32 / (sqrt(32))^1
    auto cert = validate_rect_kt(strip, 1.0);
    CHECK(cert.C >= 32.0 / std::sqrt(32.0) - 1e-9);
}
