// Wall-clock comparison of the OpenMP kernels against their serial references.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "frostlab/experiments.hpp"
#include "frostlab/fourier.hpp"
#include "frostlab/fractal.hpp"
#include "frostlab/incidence.hpp"
#include "frostlab/parabola.hpp"
#include "frostlab/sumprod.hpp"

using namespace frostlab;
using clk = std::chrono::steady_clock;

namespace {

double seconds(clk::time_point a, clk::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& fn) {
    auto t0 = clk::now();
    fn();
    return seconds(t0, clk::now());
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-28s serial %8.3fs   omp %8.3fs   speedup %5.2fx\n", name, serial, parallel,
                serial / parallel);
}

}  // namespace

int main() {
    apply_thread_cap_from_env();
    std::printf("threads: %d\n", omp_get_max_threads());

    {
        TubeFamily f = layered_sharpness_family(0.5, 2, 4, Scale(10), 0);
        std::vector<std::uint32_t> a, b;
        double ts = timed([&] { a = serial::incidence_counts(f); });
        double tp = timed([&] { b = incidence_counts(f); });
        if (a != b) std::printf("MISMATCH incidence_counts\n");
        report("incidence counts m=10", ts, tp);
    }
    {
        auto sets = trilinear_inputs(Scale(10), 0.5, 1);
        i128 a = 0, b = 0;
        double ts = timed([&] { a = serial::energy3_oracle(sets[0], sets[1], sets[2], 2).count; });
        double tp = timed([&] { b = energy3_oracle(sets[0], sets[1], sets[2], 2).count; });
        if (a != b) std::printf("MISMATCH energy\n");
        report("trilinear energy m=10", ts, tp);
    }
    {
        DiscreteMeasure mu = frostman_measure_from_set(cantor_set(Scale(10), 0.5, 0), 0.5);
        double a = 0, b = 0;
        double ts = timed([&] { a = serial::l6_disk_sum(mu, 128.0, 0.25); });
        double tp = timed([&] { b = l6_disk_sum(mu, 128.0, 0.25); });
        if (a != b) std::printf("MISMATCH l6\n");
        report("l6 quadrature R=128", ts, tp);
    }
    {
        auto a_set = cantor_set(Scale(9), 0.5, 3, CantorMode::random);
        DiscreteSet1D half;
        half.scale = Scale(9);
        for (i64 v : a_set.idx) half.idx.push_back(256 + v / 2);
        half.normalize();
        DiscreteSet2D P = product_set(half, half);
        DiscreteSet1D D = ratioset_bins(half);
        i128 a = 0, b = 0;
        double ts = timed([&] { a = serial::collinear_triples(P, D); });
        double tp = timed([&] { b = collinear_triples(P, D); });
        if (a != b) std::printf("MISMATCH triples\n");
        report("collinear triples m=9", ts, tp);
    }
    {
        auto a_set = cantor_set(Scale(11), 0.5, 7, CantorMode::random);
        RegularityCertificate c1, c2;
        double ts = timed([&] { c1 = serial::validate_kt(a_set, 0.5); });
        double tp = timed([&] { c2 = validate_kt(a_set, 0.5); });
        if (c1.C != c2.C) std::printf("MISMATCH validator\n");
        report("kt validator m=11", ts, tp);
    }
    return 0;
}
