#include "frostlab/sumprod.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include <omp.h>

#include "frostlab/fit.hpp"
#include "frostlab/validate.hpp"

namespace frostlab {

DiscreteSet1D sumset(const DiscreteSet1D& a) {
    DiscreteSet1D out;
    out.scale = a.scale;
    out.label = a.label + "+";
    out.idx.reserve(a.idx.size() * a.idx.size());
    for (i64 x : a.idx)
        for (i64 y : a.idx) out.idx.push_back(x + y);
    out.normalize();
    return out;
}

i64 sumset_cover(const DiscreteSet1D& a, int k) { return covering_number(sumset(a), k); }

namespace {
void require_half_one(const DiscreteSet1D& a) {
    i64 n = a.scale.inv_delta();
    if (a.empty() || a.idx.front() < n / 2 || a.idx.back() > n)
        throw std::invalid_argument("ratio set: A must lie in [1/2, 1]");
}
}  // namespace

i64 ratioset_cover(const DiscreteSet1D& a, int k) {
    require_half_one(a);
    // bin floor((x/y) * 2^k) over all ordered pairs, exact integer division
    std::vector<i64> bins;
    bins.reserve(a.idx.size() * a.idx.size());
    for (i64 x : a.idx)
        for (i64 y : a.idx) bins.push_back(floor_div(x << k, y));
    std::sort(bins.begin(), bins.end());
    bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
    return (i64)bins.size();
}

DiscreteSet1D ratioset_bins(const DiscreteSet1D& a) {
    require_half_one(a);
    const int m = a.scale.m;
    DiscreteSet1D out;
    out.scale = a.scale;
    out.label = a.label + "/";
    out.idx.reserve(a.idx.size() * a.idx.size());
    for (i64 x : a.idx)
        for (i64 y : a.idx) out.idx.push_back(floor_div(x << m, y));
    out.normalize();
    return out;
}

DiscreteSet1D project(const DiscreteSet2D& p, i64 x_idx) {
    const int m = p.scale.m;
    DiscreteSet1D out;
    out.scale = p.scale;
    out.label = "proj";
    out.idx.reserve(p.pts.size());
    for (const auto& q : p.pts) out.idx.push_back(floor_div((q.i << m) + x_idx * q.j, i64(1) << m));
    out.normalize();
    return out;
}

ProjectionReport projection_survey(const DiscreteSet2D& P, const DiscreteSet1D& E, double s1,
                                   double s2, double t, double eps, u64 seed, int n_subsets) {
    ProjectionReport rep;
    rep.s1 = s1;
    rep.s2 = s2;
    rep.t = t;
    const double s = s1 + s2;
    const double sigma = std::min(s, 2.0 - s);
    // quasi-product certificates: abscissa KT at s1, worst fiber Frostman at s2
    {
        DiscreteSet1D absc;
        absc.scale = P.scale;
        for (const auto& q : P.pts) absc.idx.push_back(q.i);
        absc.normalize();
        rep.K1 = validate_kt(absc, s1).C;
        double worst = 0.0;
        for (size_t i = 0; i < P.pts.size();) {
            DiscreteSet1D fiber;
            fiber.scale = P.scale;
            i64 col = P.pts[i].i;
            while (i < P.pts.size() && P.pts[i].i == col) fiber.idx.push_back(P.pts[i++].j);
            worst = std::max(worst, validate_frostman(fiber, s2).C);
        }
        rep.K2 = worst;
    }
    rep.K3 = validate_kt(E, sigma).C;

    const i64 np = P.size();
    const i64 qsize = std::max<i64>(1, (i64)std::llround(std::pow(P.scale.delta(), eps) * (double)np));
    double rhs = std::pow(P.scale.delta(), s / 2.0) * std::sqrt((double)E.size()) /
                 (rep.K1 * rep.K2 * std::sqrt(rep.K3));
    i64 pass = 0;
    for (i64 xi : E.idx) {
        ProjectionRow row;
        row.x_idx = xi;
        row.rhs = rhs;
        double worst = 1e300;
        for (int rep_i = 0; rep_i < n_subsets; ++rep_i) {
            Rng rng(seed * 1000003 + (u64)rep_i * 97 + (u64)(xi & 0xffff));
            // sample qsize distinct points
            std::vector<i64> pick(np);
            for (i64 q = 0; q < np; ++q) pick[q] = q;
            for (i64 q = 0; q < qsize; ++q) std::swap(pick[q], pick[q + (i64)rng.below(np - q)]);
            DiscreteSet2D Q;
            Q.scale = P.scale;
            for (i64 q = 0; q < qsize; ++q) Q.pts.push_back(P.pts[pick[q]]);
            Q.normalize();
            i64 nproj = project(Q, xi).size();
            if ((double)nproj / (double)qsize < worst) row.min_N = nproj;
            worst = std::min(worst, (double)nproj / (double)qsize);
        }
        row.min_ratio = worst;
        row.passes = worst >= rhs;
        row.content = hausdorff_content(project(P, xi), (s + t) / 2.0);
        if (row.passes) ++pass;
        rep.rows.push_back(row);
    }
    rep.pass_fraction = E.empty() ? 0.0 : (double)pass / (double)E.size();
    return rep;
}

ElekesFamily elekes_family(const DiscreteSet1D& slopes_q,
                           const std::vector<DiscreteSet1D>& gamma_per_slope,
                           const DiscreteSet2D& sum_points, double t_expo, double d_expo) {
    if ((size_t)slopes_q.size() != gamma_per_slope.size())
        throw std::invalid_argument("elekes_family: one intercept set per slope");
    ElekesFamily out;
    out.points = sum_points;
    TubeFamily& f = out.family;
    f.scale = sum_points.scale;
    f.slopes = slopes_q.idx;
    f.offsets.resize(gamma_per_slope.size());
    for (size_t k = 0; k < gamma_per_slope.size(); ++k) f.offsets[k] = gamma_per_slope[k].idx;
    f.rebuild_tubes();
    // certificates on the abstract direction/offset sets (geometry-independent)
    f.declared_s = t_expo;
    f.declared_d = d_expo;
    f.K1 = validate_kt(slopes_q, t_expo).C;
    double worst = 0.0;
    for (const auto& g : gamma_per_slope) worst = std::max(worst, validate_kt(g, d_expo).C);
    f.K2 = worst;

    // shading: the sum points within each tube under the incidence predicate
    Shading& y = out.shading;
    y.scale = f.scale;
    y.per_tube.resize(f.tubes.size());
    const int m = f.scale.m;
    const i64 ntubes = (i64)f.tubes.size();
    for (const auto& p : sum_points.pts)
        if (p.i < 0 || p.i >= f.scale.inv_delta() || p.j < 0 || p.j >= f.scale.inv_delta())
            throw std::invalid_argument("elekes_family: points must be translated into [0,1]^2");
#pragma omp parallel for schedule(dynamic, 8)
    for (i64 k = 0; k < ntubes; ++k) {
        const Tube& t = f.tubes[k];
        for (const auto& p : sum_points.pts) {
            // slope-agnostic exact line distance predicate
            i128 u = (i128)t.slope * (2 * p.i + 1) + ((i128)t.intercept << (m + 1)) -
                     ((i128)(2 * p.j + 1) << m);
            i128 w = ((i128)1 << (2 * m)) + (i128)t.slope * t.slope;
            i128 lhs = u * u - 6 * w;
            bool hit = (lhs <= 0) || (lhs * lhs <= 32 * w * w);
            if (hit) y.per_tube[k].push_back(square_linear(p, m));
        }
        std::sort(y.per_tube[k].begin(), y.per_tube[k].end());
    }
    return out;
}

namespace {

// contiguous intercept range of grid tubes with slope index S containing the point,
// found around the distance-minimizing intercept and verified exactly
std::pair<i64, i64> intercept_range(i64 S, i64 i, i64 j, int m) {
    auto hit = [&](i64 C) {
        i128 u = (i128)S * (2 * i + 1) + ((i128)C << (m + 1)) - ((i128)(2 * j + 1) << m);
        i128 w = ((i128)1 << (2 * m)) + (i128)S * S;
        i128 lhs = u * u - 6 * w;
        return (lhs <= 0) || (lhs * lhs <= 32 * w * w);
    };
    // u = 0 at C0 = (2^m (2j+1) - S(2i+1)) / 2^{m+1}
    i64 C0 = round_div((i64(1) << m) * (2 * j + 1) - S * (2 * i + 1), i64(1) << (m + 1));
    if (!hit(C0)) {
        if (hit(C0 - 1)) --C0;
        else if (hit(C0 + 1)) ++C0;
        else return {1, 0};  // empty
    }
    i64 lo = C0, hi = C0;
    while (hit(lo - 1)) --lo;
    while (hit(hi + 1)) ++hi;
    return {lo, hi};
}

i128 collinear_impl(const DiscreteSet2D& P, const DiscreteSet1D& D, bool parallel) {
    const int m = P.scale.m;
    const i64 nd = D.size();
    i128 total = 0;
#pragma omp parallel if (parallel)
    {
        i128 local = 0;
#pragma omp for schedule(dynamic, 4) nowait
        for (i64 k = 0; k < nd; ++k) {
            i64 S = D.idx[k];
            std::unordered_map<i64, i64> per_intercept;
            per_intercept.reserve(P.pts.size() * 4);
            for (const auto& p : P.pts) {
                auto [lo, hi] = intercept_range(S, p.i, p.j, m);
                for (i64 C = lo; C <= hi; ++C) ++per_intercept[C];
            }
            for (const auto& [C, n] : per_intercept)
                if (n >= 3) local += (i128)n * (n - 1) * (n - 2);
        }
#pragma omp critical(frostlab_triples_merge)
        total += local;
    }
    return total;
}

}  // namespace

i128 collinear_triples(const DiscreteSet2D& P, const DiscreteSet1D& D) {
    return collinear_impl(P, D, true);
}
namespace serial {
i128 collinear_triples(const DiscreteSet2D& P, const DiscreteSet1D& D) {
    return collinear_impl(P, D, false);
}
}  // namespace serial

FewSumsReport few_sums_pipeline(const DiscreteSet1D& a, double s, double eps, u64 seed) {
    require_half_one(a);
    FewSumsReport rep;
    const int m = a.scale.m;
    rep.m = m;
    rep.s = s;
    rep.NA = a.size();
    rep.C_A = validate_kt(a, s).C;

    // fiber sizes of the sum map over A x A
    std::map<i64, i64> fiber;
    for (i64 x : a.idx)
        for (i64 y : a.idx) ++fiber[x + y];
    rep.NAA = (i64)fiber.size();
    rep.K = (double)rep.NAA / (double)rep.NA;
    rep.NAoverA = ratioset_cover(a, m);

    // dyadic pigeonhole of the fiber multiplicity
    std::map<i64, i64> bucket_mass;  // floor log2(count) -> total pairs
    for (auto& [v, c] : fiber) {
        i64 r = 1;
        int b = 0;
        while (2 * r <= c) { r *= 2; ++b; }
        bucket_mass[b] += c;
    }
    int best_b = 0;
    i64 best_mass = -1;
    for (auto& [b, w] : bucket_mass)
        if (w > best_mass) { best_mass = w; best_b = b; }
    rep.r0 = i64(1) << best_b;
    double total_pairs = (double)rep.NA * (double)rep.NA;
    rep.mass_frac = (double)best_mass / total_pairs;

    DiscreteSet1D s0;
    s0.scale = a.scale;
    s0.label = "few-sums-S0";
    for (auto& [v, c] : fiber)
        if (c >= rep.r0 && c < 2 * rep.r0) s0.idx.push_back(v);
    s0.normalize();
    DiscreteSet1D S = uniformize(s0, eps).set;
    rep.L_S = validate_kt(S, s).C;

    // G = pairs of A^2 whose sum lands in a cell of S
    i64 gcount = 0;
    for (i64 v : S.idx) {
        auto it = fiber.find(v);
        if (it != fiber.end()) gcount += it->second;
    }
    rep.g_frac = (double)gcount / total_pairs;

    // P = (A u S) x (A u S), D = delta-separated representatives of A/A
    DiscreteSet1D aus;
    aus.scale = a.scale;
    aus.idx = a.idx;
    aus.idx.insert(aus.idx.end(), S.idx.begin(), S.idx.end());
    aus.normalize();
    aus.label = "AuS";
    DiscreteSet2D P = product_set(aus, aus, "few-sums-P");
    DiscreteSet1D D = ratioset_bins(a);
    rep.C_ratio = validate_kt(D, std::min(2.0 * s, 2.0 - 2.0 * s)).C;  // reported, never fatal
    rep.triples = collinear_triples(P, D);

    double delta = a.scale.delta();
    rep.lhs = std::pow((double)rep.NAA, 6.0) * (double)rep.NAoverA;
    rep.rhs = std::pow(rep.C_A, -4.0) * std::pow(delta, 2.0 * s) * std::pow((double)rep.NA, 10.0);
    rep.ratio = rep.lhs / rep.rhs;
    (void)seed;
    return rep;
}

std::vector<DoublingRow> doubling_across_scales(const DiscreteSet1D& a) {
    DiscreteSet1D aa = sumset(a);
    std::vector<DoublingRow> rows;
    for (int k = a.scale.m; k >= 0; --k) {
        DoublingRow r;
        r.k = k;
        r.NAA = covering_number(aa, k);
        r.NA = covering_number(a, k);
        r.ratio = (double)r.NAA / (double)r.NA;
        rows.push_back(r);
    }
    return rows;
}

GrowthReport growth_exponent_check(const DiscreteSet1D& a, double s, double eps, u64 seed) {
    if (s > 136.0 / 265.0)
        throw std::invalid_argument("growth_exponent_check: requires s <= 136/265");
    require_half_one(a);
    GrowthReport rep;
    const int m = a.scale.m;
    rep.m = m;
    rep.s = s;
    rep.NA = a.size();
    DiscreteSet1D aa = sumset(a);
    rep.NAA = covering_number(aa, m);
    rep.NAoverA = ratioset_cover(a, m);
    rep.K = (double)rep.NAA / (double)rep.NA;

    const double expo = 43.0 * s / 34.0;
    double alt1 = 0.0;
    std::vector<double> lk, ln;
    for (int k = 1; k < m; ++k) {
        i64 cov = covering_number(aa, k);
        rep.naa_ladder.push_back({k, cov});
        double margin = (double)cov * std::pow(std::ldexp(1.0, -k), expo);
        alt1 = std::max(alt1, margin);
        lk.push_back((double)k);
        ln.push_back(std::log2((double)cov));
    }
    if (lk.size() >= 2) rep.growth_slope = fit_logpoints(lk, ln).slope;
    rep.alt1_margin = alt1;
    rep.alt2_margin = (double)rep.NAoverA * std::pow(a.scale.delta(), expo);

    // content threshold of the uniformized ratio-set representatives, by bisection
    DiscreteSet1D q0 = uniformize(ratioset_bins(a), eps).set;
    double lo = 0.0, hi = expo;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        if (hausdorff_content(q0, mid) >= 1.0) lo = mid;
        else hi = mid;
    }
    rep.content_t = lo;
    (void)seed;
    return rep;
}

}  // namespace frostlab
