#include "frostlab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "frostlab/fractal.hpp"

namespace frostlab {

DiscreteSet1D make_set(const std::string& kind, Scale sc, double s, u64 seed,
                       const std::string& interval) {
    const i64 n = sc.inv_delta();
    bool half = interval == "half";
    auto place = [&](DiscreteSet1D base) {
        if (!half) return base;
        // pattern built one level up, shifted into [1/2, 1)
        for (i64& v : base.idx) v += n / 2;
        base.label += ":half";
        return base;
    };
    if (kind == "grid") {
        if (half) {
            std::vector<i64> v;
            for (i64 k = n / 2; k < n; ++k) v.push_back(k);
            return set_from_indices(sc, v, "grid:half");
        }
        return full_grid(sc);
    }
    if (kind == "cantor") {
        if (half) {
            DiscreteSet1D base = cantor_set(Scale(sc.m - 1), s, seed,
                                            seed ? CantorMode::random : CantorMode::deterministic);
            base.scale = sc;
            return place(base);
        }
        return cantor_set(sc, s, seed, seed ? CantorMode::random : CantorMode::deterministic);
    }
    if (kind == "ap") {
        // arithmetic progression; in [1/2, 1] keeps ~ n^s terms
        i64 terms = std::max<i64>(2, (i64)std::llround(std::pow((double)(half ? n / 2 : n), s)));
        i64 span = half ? n / 2 : n;
        i64 step = std::max<i64>(1, span / terms);
        std::vector<i64> v;
        for (i64 k = 0; k * step < span && (i64)v.size() < terms; ++k)
            v.push_back((half ? n / 2 : 0) + k * step);
        return set_from_indices(sc, v, "ap");
    }
    if (kind == "geometric") {
        i64 terms = std::max<i64>(2, (i64)std::llround(std::pow((double)n, s)));
        std::vector<i64> v;
        for (i64 k = 0; k < terms; ++k) {
            double val = 0.5 * std::pow(2.0, (double)k / (double)(terms - 1));
            v.push_back(std::min<i64>(n, (i64)std::llround(val * (double)n)));
        }
        return set_from_indices(sc, v, "geometric");
    }
    throw std::invalid_argument("make_set: unknown constructor " + kind);
}

std::array<DiscreteSet1D, 3> trilinear_inputs(Scale sc, double s, u64 seed) {
    // intervals [1/2, 3/4), [0, 1/4), [-3/4, -1/2): pairwise separated by >= 1/4
    std::array<DiscreteSet1D, 3> out;
    const i64 off[3] = {sc.inv_delta() / 2, 0, -3 * (sc.inv_delta() / 4)};
    for (int k = 0; k < 3; ++k) {
        DiscreteSet1D base = cantor_set(Scale(sc.m - 2), s, seed == 0 ? 0 : seed + (u64)k,
                                        seed ? CantorMode::random : CantorMode::deterministic);
        base.scale = sc;
        for (i64& v : base.idx) v += off[k];
        base.label += ":J" + std::to_string(k + 1);
        out[k] = base;
    }
    return out;
}

TubeFamily family_from_config(const ExperimentConfig& cfg, Scale sc, u64 seed) {
    std::string family = cfg.get("family", "bush");
    double s = cfg.get_double("s", 0.5);
    if (family == "bush")
        return bush_construction(s, sc, seed, cfg.get_int("anchors", -1),
                                 (int)cfg.get_int("sep", 0))
            .family;
    if (family == "layered")
        return layered_sharpness_family(s, cfg.get_int("K1", 2), cfg.get_int("K2", 4), sc, seed);
    if (family == "grid") return grid_family(sc);
    throw std::invalid_argument("unknown family: " + family);
}

namespace {

std::vector<int> ladder(const ExperimentConfig& cfg, const char* key, std::vector<int> dflt) {
    std::vector<int> v = cfg.get_int_list(key);
    if (v.empty() && cfg.has(key))
        throw std::invalid_argument(std::string("empty ladder: ") + key);
    if (v.empty()) v = dflt;
    for (size_t k = 1; k < v.size(); ++k)
        if (v[k] <= v[k - 1]) throw std::invalid_argument("ladder must be strictly increasing");
    return v;
}

RunResult run_incidence(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s = cfg.get_double("s", 0.5);
    CsvWriter csv({"m", "s", "d", "K1", "K2", "K3", "lhs", "rhs", "ratio"});
    for (int m : ladder(cfg, "m_list", {6, 7, 8})) {
        if (2 * m > 24) {
            res.flags.push_back("m=" + std::to_string(m) + " exceeds square budget, truncated");
            break;
        }
        TubeFamily f = family_from_config(cfg, Scale(m), seed);
        Shading y = full_shading(f);
        certify_shading(f, y, std::min(s + f.declared_d, 2.0 - s - f.declared_d));
        IncidenceReport rep = verify_incidence_bound(f, y);
        csv.row({std::to_string(rep.m), fmt_double(rep.s), fmt_double(rep.d), fmt_double(rep.K1),
                 fmt_double(rep.K2), fmt_double(rep.K3), fmt_double(rep.lhs), fmt_double(rep.rhs),
                 fmt_double(rep.ratio)});
    }
    res.outputs.push_back({"incidence.csv", csv.buf});
    return res;
}

RunResult run_heavy(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s = cfg.get_double("s", 0.5);
    CsvWriter csv({"m", "s", "r", "count"});
    for (int m : ladder(cfg, "m_list", {10})) {
        if (2 * m > 24) {
            res.flags.push_back("m=" + std::to_string(m) + " exceeds square budget, truncated");
            break;
        }
        TubeFamily f = family_from_config(cfg, Scale(m), seed);
        auto counts = incidence_counts(f);
        std::map<i64, i64> table;
        for (auto c : counts) {
            if (!c) continue;
            i64 r = 1;
            while (2 * r <= (i64)c) r *= 2;
            ++table[r];
        }
        for (auto [r, cnt] : table)
            csv.row({std::to_string(m), fmt_double(s), std::to_string(r), std::to_string(cnt)});
    }
    res.outputs.push_back({"heavy.csv", csv.buf});
    return res;
}

RunResult run_energy(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s = cfg.get_double("s", 0.5);
    i64 c_tol = cfg.get_int("ctol", 2);
    CsvWriter csv({"m", "s", "method", "c_tol", "count", "rhs", "ratio"});
    for (int m : ladder(cfg, "m_list", {6, 7})) {
        auto sets = trilinear_inputs(Scale(m), s, seed);
        if ((long double)sets[0].size() * sets[1].size() * sets[2].size() > (long double)(1 << 30)) {
            res.flags.push_back("m=" + std::to_string(m) + " exceeds triple budget, truncated");
            break;
        }
        TrilinearReport tri = verify_trilinear_energy(sets[0], sets[1], sets[2], s, c_tol);
        csv.row({std::to_string(m), fmt_double(s), "binning-oracle", std::to_string(c_tol),
                 i128_to_string(tri.energy), fmt_double(tri.rhs), fmt_double(tri.ratio)});
        double sigma = std::min(2.0 * s, 2.0 - 2.0 * s);
        IncidenceInstance inst = build_incidence_instance(sets[0], sets[1], sets[2], sigma);
        double iratio = (double)(long double)inst.sum_count_sq / (double)(long double)tri.energy;
        csv.row({std::to_string(m), fmt_double(s), "incidence-reformulation", std::to_string(c_tol),
                 i128_to_string(inst.sum_count_sq), fmt_double((double)(long double)tri.energy),
                 fmt_double(iratio)});
        IncidenceInstance psi = psi_transform_instance(sets[0], sets[1], sets[2], sigma);
        double pratio = (double)(long double)psi.sum_count_sq / (double)(long double)tri.energy;
        csv.row({std::to_string(m), fmt_double(s), "psi-reformulation", std::to_string(c_tol),
                 i128_to_string(psi.sum_count_sq), fmt_double((double)(long double)tri.energy),
                 fmt_double(pratio)});
    }
    res.outputs.push_back({"energy.csv", csv.buf});
    return res;
}

RunResult run_fourier(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s = cfg.get_double("s", 0.5);
    double h = cfg.get_double("h", 0.25);
    int m = (int)cfg.get_int("m", 10);
    std::string kind = cfg.get("sset", "cantor");
    DiscreteSet1D base;
    if (kind == "single") base = set_from_indices(Scale(m), {Scale(m).inv_delta() / 2}, "single");
    else base = make_set(kind, Scale(m), s, seed);
    DiscreteMeasure mu = frostman_measure_from_set(base, s);
    std::vector<int> rexp = ladder(cfg, "R_list", {6, 7, 8, 9});
    i64 skipR = cfg.get_int("skip_R", 0);
    CsvWriter csv({"R", "h", "value", "normalized", "slope_so_far"});
    std::vector<double> lx, ly;
    for (int re : rexp) {
        double R = std::ldexp(1.0, re);
        if (skipR > 0 && (i64)R >= skipR) {
            res.flags.push_back("R=" + fmt_double(R) + " skipped by flag");
            continue;
        }
        L6Report rep = l6_integral(mu, R, h);
        lx.push_back(std::log2(R));
        ly.push_back(std::log2(rep.value));
        std::string slope = lx.size() >= 2 ? fmt_double(fit_logpoints(lx, ly).slope) : "nan";
        csv.row({fmt_double(R), fmt_double(h), fmt_double(rep.value), fmt_double(rep.normalized),
                 slope});
    }
    res.outputs.push_back({"fourier.csv", csv.buf});
    return res;
}

RunResult run_sumprod(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s = cfg.get_double("s", 0.5);
    double eps = cfg.get_double("epsilon", 0.05);
    std::string kind = cfg.get("aset", "cantor");
    CsvWriter csv({"m", "s", "NA", "NAA", "NAoverA", "K", "alt1_margin", "alt2_margin"});
    for (int m : ladder(cfg, "m_list", {8})) {
        DiscreteSet1D a = make_set(kind, Scale(m), s, seed, "half");
        GrowthReport rep = growth_exponent_check(a, s, eps, seed);
        csv.row({std::to_string(rep.m), fmt_double(rep.s), std::to_string(rep.NA),
                 std::to_string(rep.NAA), std::to_string(rep.NAoverA), fmt_double(rep.K),
                 fmt_double(rep.alt1_margin), fmt_double(rep.alt2_margin)});
    }
    res.outputs.push_back({"sumprod.csv", csv.buf});
    return res;
}

RunResult run_projection(const ExperimentConfig& cfg) {
    RunResult res;
    u64 seed = (u64)cfg.get_int("seed", 1);
    double s1 = cfg.get_double("s1", 0.5), s2 = cfg.get_double("s2", 0.5);
    double eps = cfg.get_double("epsilon", 0.1);
    int m = (int)cfg.get_int("m", 7);
    DiscreteSet1D a = make_set(cfg.get("aset", "cantor"), Scale(m), s1, seed);
    DiscreteSet1D b = cfg.get("bset", "") == "" ? a : make_set(cfg.get("bset"), Scale(m), s2, seed + 1);
    DiscreteSet2D P = product_set(a, b);
    DiscreteSet1D E = make_set(cfg.get("eset", "cantor"), Scale(m), cfg.get_double("t", 0.5), seed + 2);
    ProjectionReport rep =
        projection_survey(P, E, s1, s2, cfg.get_double("t", 0.5), eps, seed);
    CsvWriter csv({"x_idx", "min_ratio", "rhs", "passes", "content"});
    for (const auto& row : rep.rows)
        csv.row({std::to_string(row.x_idx), fmt_double(row.min_ratio), fmt_double(row.rhs),
                 row.passes ? "1" : "0", fmt_double(row.content)});
    res.outputs.push_back({"projection.csv", csv.buf});
    return res;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    const std::string& e = cfg.experiment;
    if (e == "incidence") return run_incidence(cfg);
    if (e == "heavy") return run_heavy(cfg);
    if (e == "energy") return run_energy(cfg);
    if (e == "fourier") return run_fourier(cfg);
    if (e == "sumprod") return run_sumprod(cfg);
    if (e == "projection") return run_projection(cfg);
    throw std::invalid_argument("unknown experiment: " + e);
}

}  // namespace frostlab
