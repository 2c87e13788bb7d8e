#include "frostlab/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <omp.h>

namespace frostlab {

BoundParameters BoundParameters::make(double s, double d, double K1, double K2, double K3) {
    BoundParameters p;
    p.s = s;
    p.d = d;
    p.sigma = std::min(s + d, 2.0 - s - d);
    p.alpha = std::min(3.0, 2.0 + d / s);
    p.K1 = K1;
    p.K2 = K2;
    p.K3 = K3;
    return p;
}

namespace {
// TODO: sort-based sparse counting to lift the dense cap toward the 2^28 square budget
constexpr int kMaxDenseScale = 12;

void check_dense(const Scale& sc) {
    if (sc.m > kMaxDenseScale)
        throw std::invalid_argument("incidence_counts: square budget exceeded (m > 12)");
}
}  // namespace

std::vector<std::uint32_t> incidence_counts(const TubeFamily& f) {
    check_dense(f.scale);
    const int m = f.scale.m;
    std::vector<std::uint32_t> counts(size_t(1) << (2 * m), 0);
    const i64 n = (i64)f.tubes.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 k = 0; k < n; ++k) {
        for (i64 sq : rasterize_linear(f.tubes[k])) {
#pragma omp atomic update
            ++counts[sq];
        }
    }
    return counts;
}

namespace serial {
std::vector<std::uint32_t> incidence_counts(const TubeFamily& f) {
    check_dense(f.scale);
    const int m = f.scale.m;
    std::vector<std::uint32_t> counts(size_t(1) << (2 * m), 0);
    for (const Tube& t : f.tubes)
        for (i64 sq : rasterize_linear(t)) ++counts[sq];
    return counts;
}
}  // namespace serial

std::vector<i64> heavy_squares_from_counts(const std::vector<std::uint32_t>& counts, i64 r) {
    if (r < 1) throw std::invalid_argument("heavy_squares: r >= 1 required");
    std::vector<i64> out;
    for (size_t v = 0; v < counts.size(); ++v)
        if (counts[v] >= (std::uint64_t)r && counts[v] < (std::uint64_t)(2 * r)) out.push_back((i64)v);
    return out;
}

std::vector<i64> heavy_squares(const TubeFamily& f, i64 r) {
    return heavy_squares_from_counts(incidence_counts(f), r);
}

std::vector<std::uint32_t> shading_counts(const Shading& y, int m) {
    if (m > kMaxDenseScale) throw std::invalid_argument("shading_counts: m > 12");
    std::vector<std::uint32_t> counts(size_t(1) << (2 * m), 0);
    const i64 n = (i64)y.per_tube.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 k = 0; k < n; ++k) {
        for (i64 sq : y.per_tube[k]) {
#pragma omp atomic update
            ++counts[sq];
        }
    }
    return counts;
}

std::vector<i64> heavy_squares_shaded(const Shading& y, i64 r) {
    return heavy_squares_from_counts(shading_counts(y, y.scale.m), r);
}

IncidenceReport verify_incidence_bound(const TubeFamily& f, const Shading& y) {
    if (y.sigma <= 0.0) throw std::invalid_argument("verify_incidence_bound: shading not certified");
    BoundParameters p = BoundParameters::make(f.declared_s, f.declared_d, f.K1, f.K2, y.K3);
    IncidenceReport rep;
    rep.m = f.scale.m;
    rep.s = p.s;
    rep.d = p.d;
    rep.K1 = p.K1;
    rep.K2 = p.K2;
    rep.K3 = p.K3;
    rep.lhs = (double)y.total();
    double inv_delta = (double)f.scale.inv_delta();
    double tubes_term = std::pow(inv_delta, p.s + p.d) * (double)f.size();
    double yall = (double)y.union_squares().size();
    rep.rhs = std::pow(std::max(p.K3, 1.0), 1.0 / 3.0) *
              std::pow(p.K1 * p.K2, 1.0 - 1.0 / p.alpha) * std::pow(tubes_term, 1.0 / p.alpha) *
              std::pow(yall, 1.0 - 1.0 / p.alpha);
    rep.ratio = rep.lhs / rep.rhs;
    if (f.scale.m <= kMaxDenseScale) {
        auto counts = shading_counts(y, f.scale.m);
        std::map<i64, i64> table;
        for (auto c : counts) {
            if (c == 0) continue;
            i64 r = 1;
            while (2 * r <= (i64)c) r *= 2;
            ++table[r];
        }
        rep.heavy_table.assign(table.begin(), table.end());
    }
    return rep;
}

TwoEndsBoundReport verify_two_ends_bound(const TubeFamily& f, const Shading& y, double t, double K1, double K2,
                     double N, double eps1, double eps2) {
    TwoEndsBoundReport rep;
    const i64 n = (i64)y.per_tube.size();
    bool all_te = true;
#pragma omp parallel for schedule(dynamic, 8) reduction(&& : all_te)
    for (i64 k = 0; k < n; ++k)
        all_te = all_te && two_ends_check(f.tubes[k], y.per_tube[k], eps1, eps2);
    rep.two_ends_ok = all_te;
    double delta = f.scale.delta();
    rep.lhs = std::sqrt(N) * std::pow(delta, t / 2.0) * (double)y.total();
    rep.rhs = K1 * std::sqrt(K2) * (double)y.union_squares().size();
    rep.ratio = rep.lhs / rep.rhs;
    return rep;
}

std::vector<RescaledGroup> segment_rescale(const TubeFamily& f, i64 qi, i64 qj, int k, i64 M) {
    const int m = f.scale.m;
    if (k < 0 || k >= m) throw std::invalid_argument("segment_rescale: need 0 <= k < m");
    if (M < 1) throw std::invalid_argument("segment_rescale: M >= 1");
    const i64 W = i64(1) << (m - k);  // Delta in delta units
    const i64 scale_fac = i64(1) << k;
    if (qi < 0 || qi >= (i64(1) << k) || qj < 0 || qj >= (i64(1) << k))
        throw std::invalid_argument("segment_rescale: cell outside [0,1]^2");

    // group tubes meeting the cell by their snapped delta/Delta-segment inside it
    std::map<std::pair<i64, i64>, std::vector<i64>> groups;
    for (i64 ti = 0; ti < (i64)f.tubes.size(); ++ti) {
        const Tube& t = f.tubes[ti];
        if (t.axis != Axis::X) continue;
        // axis y-range over the cell's x-range, delta units
        double x0 = (double)(qi * W), x1 = (double)((qi + 1) * W);
        double y0 = ((double)t.slope * x0) / std::ldexp(1.0, m) + (double)t.intercept;
        double y1 = ((double)t.slope * x1) / std::ldexp(1.0, m) + (double)t.intercept;
        double ylo = std::min(y0, y1), yhi = std::max(y0, y1);
        if (yhi < (double)(qj * W) - 2.0 || ylo > (double)((qj + 1) * W) + 2.0) continue;
        i64 Sseg = round_div(t.slope, scale_fac);
        i64 Cseg = round_div(t.slope * qi + scale_fac * (t.intercept - qj * W), scale_fac);
        groups[{Sseg, Cseg}].push_back(ti);
    }

    const auto& lambda = f.slopes;  // sorted
    std::map<i64, std::map<i64, std::vector<i64>>> by_bucket;  // N-bucket -> slope -> offsets
    for (const auto& [key, members] : groups) {
        if ((i64)members.size() < M || (i64)members.size() >= 2 * M) continue;
        // directions of the family inside this segment's arc
        i64 Sseg = key.first;
        auto lo = std::lower_bound(lambda.begin(), lambda.end(), (Sseg - 1) * scale_fac);
        i64 arc = 0;
        for (auto it = lo; it != lambda.end() && *it <= (Sseg + 1) * scale_fac; ++it)
            if (round_div(*it, scale_fac) == Sseg) ++arc;
        i64 bucket = 1;
        while (2 * bucket <= arc) bucket *= 2;
        by_bucket[bucket][key.first].push_back(key.second);
    }

    std::vector<RescaledGroup> out;
    for (auto& [bucket, slopes] : by_bucket) {
        RescaledGroup g;
        g.N = bucket;
        g.family.scale = Scale(m - k);
        for (auto& [S, offs] : slopes) {
            std::sort(offs.begin(), offs.end());
            offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
            g.family.slopes.push_back(S);
            g.family.offsets.push_back(offs);
        }
        g.family.rebuild_tubes();
        g.family.certify(f.declared_s, f.declared_d);
        out.push_back(std::move(g));
    }
    return out;
}

}  // namespace frostlab
