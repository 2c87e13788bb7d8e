#include "frostlab/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace frostlab {

DiscreteSet1D cantor_set(Scale sc, double s, u64 seed, CantorMode mode, int block) {
    if (s < 0.0 || s > 1.0) throw std::invalid_argument("cantor_set: s out of [0,1]");
    const int m = sc.m;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<i64> cells{0};
    int depth = 0;
    std::vector<int> picks;
    while (depth < m) {
        int T = std::min(block, m - depth);
        i64 fan = i64(1) << T;
        i64 keep = std::clamp<i64>((i64)std::llround(std::exp2(T * s)), 1, fan);
        std::vector<i64> next;
        next.reserve(cells.size() * keep);
        for (i64 c : cells) {
            if (mode == CantorMode::deterministic) {
                for (i64 k = 0; k < keep; ++k) next.push_back((c << T) | k);
            } else {
                // partial Fisher-Yates over the fan
                std::vector<i64> pool(fan);
                for (i64 k = 0; k < fan; ++k) pool[k] = k;
                for (i64 k = 0; k < keep; ++k) {
                    i64 r = k + (i64)rng.below(fan - k);
                    std::swap(pool[k], pool[r]);
                    next.push_back((c << T) | pool[k]);
                }
            }
        }
        cells = std::move(next);
        depth += T;
    }
    std::ostringstream label;
    label << "cantor:s=" << s << ":m=" << m << ":T=" << block
          << ":mode=" << (mode == CantorMode::deterministic ? "det" : "rand")
          << ":seed=" << seed << ":alg=" << Rng::algorithm();
    return set_from_indices(sc, std::move(cells), label.str());
}

DiscreteSet1D ad_regular_directions(Scale sc, double s, u64 seed, bool upper_half) {
    if (s <= 0.0 || s > 1.0) throw std::invalid_argument("ad_regular_directions: s out of (0,1]");
    const int m = sc.m;
    Rng rng(seed ^ 0xda3e39cb94b95bdbull);
    std::vector<i64> cells{upper_half ? i64(1) : i64(0)};
    int levels = upper_half ? m - 1 : m;
    // keep both children at level l exactly when floor(s*l) increments: every window of
    // levels then carries within +-1 of its share of doublings (balanced branching).
    for (int l = 1; l <= levels; ++l) {
        bool both = (i64)std::floor(s * l) - (i64)std::floor(s * (l - 1)) >= 1;
        std::vector<i64> next;
        next.reserve(cells.size() * 2);
        for (i64 c : cells) {
            if (both) {
                next.push_back(c << 1);
                next.push_back((c << 1) | 1);
            } else {
                i64 pick = (seed == 0) ? 0 : (i64)rng.below(2);
                next.push_back((c << 1) | pick);
            }
        }
        cells = std::move(next);
    }
    std::ostringstream label;
    label << "ad:s=" << s << ":m=" << m << (upper_half ? ":dom=[1/2,1)" : ":dom=[0,1)")
          << ":seed=" << seed << ":alg=" << Rng::algorithm();
    return set_from_indices(sc, std::move(cells), label.str());
}

double hausdorff_content(const DiscreteSet1D& a, double s) {
    if (a.empty()) return 0.0;
    const int m = a.scale.m;
    // integer shift so all indices are >= 0 (grid-aligned translation)
    i64 base = floor_div(a.idx.front(), a.scale.inv_delta()) * a.scale.inv_delta();
    std::vector<std::pair<i64, double>> level;
    level.reserve(a.idx.size());
    double leaf_cost = std::pow(a.scale.delta(), s);
    for (i64 v : a.idx) level.push_back({v - base, leaf_cost});
    int depth = m;
    while (depth > 0 || level.size() > 1) {
        double diam = std::ldexp(1.0, -(depth - 1));
        std::vector<std::pair<i64, double>> up;
        up.reserve(level.size() / 2 + 1);
        for (size_t i = 0; i < level.size();) {
            i64 cell = level[i].first >> 1;
            double sum = 0.0;
            while (i < level.size() && (level[i].first >> 1) == cell) sum += level[i++].second;
            up.push_back({cell, std::min(std::pow(diam, s), sum)});
        }
        level = std::move(up);
        --depth;
    }
    return level.front().second;
}

int uniformize_block_size(double eps, int m) {
    if (eps <= 0.0) throw std::invalid_argument("uniformize: eps must be positive");
    // fixed point of T = log2(2T)/eps
    double T = 4.0;
    for (int it = 0; it < 64; ++it) T = std::log2(2.0 * std::max(1.0, T)) / eps;
    // at desk scales T_eps usually exceeds m; cap to keep a nontrivial ladder
    int cap = std::max(1, m / 2);
    return std::clamp((int)std::llround(T), 1, cap);
}

UniformizeResult uniformize(const DiscreteSet1D& a, double eps) {
    const int m = a.scale.m;
    int T = uniformize_block_size(eps, m);
    int nlev = std::max(1, m / T);
    std::vector<int> depths(nlev + 1);
    for (int j = 0; j <= nlev; ++j) depths[j] = (int)std::llround((double)j * m / nlev);

    std::vector<i64> pts = a.idx;  // sorted
    BranchingProfile prof;
    prof.block = T;
    prof.depths = depths;
    prof.branching.assign(nlev, 0);
    // process gaps finest-first: once the deeper gaps are exact, trimming whole cells at a
    // coarser gap cannot disturb the per-cell counts below it
    for (int j = nlev; j >= 1; --j) {
        int dp = depths[j - 1], dc = depths[j];
        int up_parent = m - dp, up_child = m - dc;
        // branching counts per parent cell
        struct Cell {
            i64 parent;
            std::vector<i64> child_cells;          // distinct child cells
            std::vector<std::pair<i64, i64>> span;  // per child: [begin, end) in pts
        };
        std::vector<Cell> cells;
        for (size_t i = 0; i < pts.size();) {
            i64 par = pts[i] >> up_parent;
            Cell cell;
            cell.parent = par;
            while (i < pts.size() && (pts[i] >> up_parent) == par) {
                i64 ch = pts[i] >> up_child;
                size_t beg = i;
                while (i < pts.size() && (pts[i] >> up_child) == ch) ++i;
                cell.child_cells.push_back(ch);
                cell.span.push_back({(i64)beg, (i64)i});
            }
            cells.push_back(std::move(cell));
        }
        // dyadic buckets of branching count, weighted by surviving points
        std::map<int, i64> weight;
        for (const auto& c : cells) {
            int k = 0;
            while ((i64(1) << (k + 1)) <= (i64)c.child_cells.size()) ++k;
            i64 w = 0;
            for (auto [b, e] : c.span) w += e - b;
            weight[k] += w;
        }
        int bestk = 0;
        i64 bestw = -1;
        for (auto [k, w] : weight)
            if (w > bestw) { bestw = w; bestk = k; }  // map order breaks ties to smaller k
        i64 beta = i64(1) << bestk;
        // keep only cells in the winning bucket, trimmed to exactly beta children
        // (the most populated ones, ties to the leftmost); every surviving cell of this
        // level then branches identically, so per-cell point counts match exactly once
        // all deeper levels are processed.
        std::vector<i64> kept;
        kept.reserve(pts.size());
        for (const auto& c : cells) {
            i64 nb = (i64)c.child_cells.size();
            if (nb < beta || nb >= 2 * beta) continue;
            std::vector<i64> order(nb);
            for (i64 q = 0; q < nb; ++q) order[q] = q;
            std::stable_sort(order.begin(), order.end(), [&](i64 x, i64 y) {
                return (c.span[x].second - c.span[x].first) > (c.span[y].second - c.span[y].first);
            });
            order.resize(beta);
            std::sort(order.begin(), order.end());
            for (i64 q : order)
                for (i64 p = c.span[q].first; p < c.span[q].second; ++p) kept.push_back(pts[p]);
        }
        std::sort(kept.begin(), kept.end());
        pts = std::move(kept);
        prof.branching[j - 1] = beta;
        if (pts.empty()) break;
    }
    UniformizeResult out;
    out.set.scale = a.scale;
    out.set.idx = pts;
    out.set.label = a.label + "|unif";
    prof.top_cells = 0;
    {
        i64 prev = 0;
        bool first = true;
        for (i64 v : pts) {
            i64 cell = v >> (m - depths[0]);
            if (first || cell != prev) ++prof.top_cells;
            prev = cell;
            first = false;
        }
    }
    prof.retained = a.empty() ? 1.0 : (double)pts.size() / (double)a.size();
    out.profile = prof;
    return out;
}

int multiscale_split(const UniformizeResult& u, double t, double eps, i64* cell_floor) {
    const auto& prof = u.profile;
    const int L = (int)prof.branching.size();
    // gap i sits between depths[i-1] (coarse) and depths[i] (fine); scan fine to coarse
    int chosen = -1;
    for (int i = L; i >= 1; --i) {
        double width = prof.depths[i] - prof.depths[i - 1];
        double expo = std::log2((double)prof.branching[i - 1]) / width;
        if (expo <= t - 10.0 * eps) { chosen = i; break; }
    }
    int depth = (chosen == -1) ? 0 : prof.depths[chosen];
    if (cell_floor) {
        i64 f = 1;
        for (int q = (chosen == -1 ? 0 : chosen); q < L; ++q) f *= prof.branching[q];
        *cell_floor = f;
    }
    return depth;
}

DiscreteSet1D extract_frostman_subset(const DiscreteSet1D& a, double s) {
    const int m = a.scale.m;
    std::vector<i64> pts = a.idx;
    for (int d = m - 1; d >= 0; --d) {
        i64 limit = (i64)std::ceil(std::exp2((double)(m - d) * s));
        std::vector<i64> kept;
        kept.reserve(pts.size());
        for (size_t i = 0; i < pts.size();) {
            i64 cell = pts[i] >> (m - d);
            size_t beg = i;
            while (i < pts.size() && (pts[i] >> (m - d)) == cell) ++i;
            i64 cnt = (i64)(i - beg);
            if (cnt <= limit) {
                for (size_t q = beg; q < i; ++q) kept.push_back(pts[q]);
            } else {
                for (i64 q = 0; q < limit; ++q) kept.push_back(pts[beg + (size_t)((q * cnt) / limit)]);
            }
        }
        pts = std::move(kept);
    }
    DiscreteSet1D out;
    out.scale = a.scale;
    out.idx = std::move(pts);
    out.label = a.label + "|frostman-extract";
    return out;
}

}  // namespace frostlab
