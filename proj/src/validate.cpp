#include "frostlab/validate.hpp"

#include <algorithm>
#include <cmath>

#include <omp.h>

namespace frostlab {

namespace {

struct Best {
    double c = -1.0;
    i64 center = 0;
    int t = 0;
    i64 rp = 0, r = 0, slope = 0;
    Axis axis = Axis::X;
    i64 cj = 0;
};

// Larger C wins; ties resolve to smaller (center, t) so merges are order-independent.
void merge_best(Best& into, const Best& b) {
    if (b.c > into.c) { into = b; return; }
    if (b.c == into.c) {
        if (b.center < into.center || (b.center == into.center && b.t < into.t)) into = b;
    }
}

int window_levels(i64 lo, i64 hi) {
    i64 span = std::max<i64>(1, hi - lo + 1);
    int t = 0;
    while ((i64(1) << t) < span) ++t;
    return t;  // windows of half-width 2^0 .. 2^t
}

// denom(t) for the two 1D kinds
enum class Kind1D { frostman, kt };

RegularityCertificate scan_1d(const DiscreteSet1D& a, double s, Kind1D kind, bool parallel) {
    if (a.empty()) throw std::invalid_argument("validator: empty set");
    const int m = a.scale.m;
    const int tmax = window_levels(a.idx.front(), a.idx.back());
    const i64 n = a.size();
    std::vector<double> denom(tmax + 1);
    for (int t = 0; t <= tmax; ++t) {
        double r = std::ldexp(1.0, t - m);  // window half-width
        denom[t] = (kind == Kind1D::kt) ? std::pow(std::ldexp(1.0, t), s)
                                        : std::pow(r, s) * (double)n;
    }
    Best best;
#pragma omp parallel if (parallel)
    {
        Best local;
#pragma omp for schedule(static) nowait
        for (i64 ci = 0; ci < n; ++ci) {
            i64 x = a.idx[ci];
            for (int t = 0; t <= tmax; ++t) {
                i64 h = i64(1) << t;
                double ratio = (double)a.count_in_window(x - h, x + h) / denom[t];
                Best cand;
                cand.c = ratio;
                cand.center = ci;
                cand.t = t;
                merge_best(local, cand);
            }
        }
#pragma omp critical(frostlab_validate_merge)
        merge_best(best, local);
    }
    RegularityCertificate cert;
    cert.kind = (kind == Kind1D::kt) ? RegularityCertificate::Kind::kt
                                     : RegularityCertificate::Kind::frostman;
    cert.exponent = s;
    cert.C = best.c;
    cert.wit_i = a.idx[best.center];
    cert.wit_t = best.t;
    return cert;
}

struct Columns {
    std::vector<i64> xs;                    // distinct i values, sorted
    std::vector<std::vector<i64>> ys;       // per column, sorted j values
};

Columns build_columns(const DiscreteSet2D& p) {
    Columns c;
    for (const auto& q : p.pts) {
        if (c.xs.empty() || c.xs.back() != q.i) {
            c.xs.push_back(q.i);
            c.ys.emplace_back();
        }
        c.ys.back().push_back(q.j);
    }
    return c;
}

i64 count_box(const Columns& c, i64 ci, i64 cj, i64 h) {
    auto lo = std::lower_bound(c.xs.begin(), c.xs.end(), ci - h);
    auto hi = std::lower_bound(c.xs.begin(), c.xs.end(), ci + h);
    i64 total = 0;
    for (auto it = lo; it != hi; ++it) {
        const auto& col = c.ys[it - c.xs.begin()];
        total += std::lower_bound(col.begin(), col.end(), cj + h) -
                 std::lower_bound(col.begin(), col.end(), cj - h);
    }
    return total;
}

RegularityCertificate scan_2d(const DiscreteSet2D& p, double s, bool parallel) {
    if (p.empty()) throw std::invalid_argument("validator: empty set");
    i64 ilo = p.pts.front().i, ihi = p.pts.back().i;
    i64 jlo = p.pts.front().j, jhi = p.pts.front().j;
    for (const auto& q : p.pts) {
        jlo = std::min(jlo, q.j);
        jhi = std::max(jhi, q.j);
    }
    const int tmax = std::max(window_levels(ilo, ihi), window_levels(jlo, jhi));
    Columns cols = build_columns(p);
    const i64 n = p.size();
    std::vector<double> denom(tmax + 1);
    for (int t = 0; t <= tmax; ++t) denom[t] = std::pow(std::ldexp(1.0, t), s);
    Best best;
#pragma omp parallel if (parallel)
    {
        Best local;
#pragma omp for schedule(static) nowait
        for (i64 ci = 0; ci < n; ++ci) {
            const auto& q = p.pts[ci];
            for (int t = 0; t <= tmax; ++t) {
                i64 h = i64(1) << t;
                double ratio = (double)count_box(cols, q.i, q.j, h) / denom[t];
                Best cand;
                cand.c = ratio;
                cand.center = ci;
                cand.t = t;
                merge_best(local, cand);
            }
        }
#pragma omp critical(frostlab_validate2_merge)
        merge_best(best, local);
    }
    RegularityCertificate cert;
    cert.kind = RegularityCertificate::Kind::kt;
    cert.exponent = s;
    cert.C = best.c;
    cert.wit_i = p.pts[best.center].i;
    cert.wit_j = p.pts[best.center].j;
    cert.wit_t = best.t;
    return cert;
}

}  // namespace

RegularityCertificate validate_frostman(const DiscreteSet1D& a, double s) {
    return scan_1d(a, s, Kind1D::frostman, true);
}

RegularityCertificate validate_kt(const DiscreteSet1D& a, double s) {
    return scan_1d(a, s, Kind1D::kt, true);
}

RegularityCertificate validate_kt(const DiscreteSet2D& p, double s) { return scan_2d(p, s, true); }

namespace serial {
RegularityCertificate validate_kt(const DiscreteSet1D& a, double s) {
    return scan_1d(a, s, Kind1D::kt, false);
}
RegularityCertificate validate_kt(const DiscreteSet2D& p, double s) { return scan_2d(p, s, false); }
}  // namespace serial

RegularityCertificate validate_rect_kt(const DiscreteSet2D& p, double u) {
    if (p.empty()) {
        RegularityCertificate cert;
        cert.kind = RegularityCertificate::Kind::rect_kt;
        cert.exponent = u;
        cert.C = 0.0;
        return cert;
    }
    const i64 inv = p.scale.inv_delta();
    i64 span = 1;
    {
        i64 ilo = p.pts.front().i, ihi = p.pts.back().i, jlo = p.pts.front().j, jhi = p.pts.front().j;
        for (const auto& q : p.pts) {
            jlo = std::min(jlo, q.j);
            jhi = std::max(jhi, q.j);
        }
        span = std::max({i64(1), ihi - ilo + 1, jhi - jlo + 1});
    }
    int tspan = 0;
    while ((i64(1) << tspan) < 2 * span) ++tspan;
    const i64 n = p.size();

    Best best;
#pragma omp parallel
    {
        Best local;
#pragma omp for schedule(dynamic) nowait
        for (i64 ci = 0; ci < n; ++ci) {
            const auto& q = p.pts[ci];
            for (int tp = 0; tp <= tspan; ++tp) {
                for (int t = tp; t <= tspan; ++t) {
                    i64 rp = i64(1) << tp, r = i64(1) << t;
                    double den = std::pow(std::sqrt((double)rp * (double)r), u);
                    // direction net refined with the rectangle eccentricity; coarser
                    // rectangles need proportionally fewer directions
                    i64 step = std::max<i64>(1, (inv * rp) / (4 * r));
                    for (int ax = 0; ax < 2; ++ax) {
                        for (i64 S = -inv; S <= inv; S += step) {
                            OrientedRect R;
                            R.scale = p.scale;
                            R.axis = (Axis)ax;
                            R.cx2 = 2 * q.i + 1;
                            R.cy2 = 2 * q.j + 1;
                            R.slope = S;
                            R.rp = rp;
                            R.r = r;
                            double ratio = (double)count_in_rect(p, R) / den;
                            Best cand;
                            cand.c = ratio;
                            cand.center = ci;
                            cand.t = t;
                            cand.rp = rp;
                            cand.r = r;
                            cand.slope = S;
                            cand.axis = (Axis)ax;
                            merge_best(local, cand);
                        }
                    }
                }
            }
        }
#pragma omp critical(frostlab_rect_merge)
        merge_best(best, local);
    }
    RegularityCertificate cert;
    cert.kind = RegularityCertificate::Kind::rect_kt;
    cert.exponent = u;
    cert.C = best.c;
    cert.net_slack = 4.0;
    cert.wit_i = p.pts[best.center].i;
    cert.wit_j = p.pts[best.center].j;
    cert.wit_rp = best.rp;
    cert.wit_r = best.r;
    cert.wit_slope = best.slope;
    cert.wit_axis = best.axis;
    cert.wit_t = best.t;
    return cert;
}

double reevaluate_witness(const DiscreteSet1D& a, const RegularityCertificate& c) {
    i64 h = i64(1) << c.wit_t;
    i64 count = a.count_in_window(c.wit_i - h, c.wit_i + h);
    if (c.kind == RegularityCertificate::Kind::kt)
        return (double)count / std::pow(std::ldexp(1.0, c.wit_t), c.exponent);
    double r = std::ldexp(1.0, c.wit_t - a.scale.m);
    return (double)count / (std::pow(r, c.exponent) * (double)a.size());
}

double reevaluate_witness(const DiscreteSet2D& p, const RegularityCertificate& c) {
    if (c.kind == RegularityCertificate::Kind::rect_kt) {
        OrientedRect R;
        R.scale = p.scale;
        R.axis = c.wit_axis;
        R.cx2 = 2 * c.wit_i + 1;
        R.cy2 = 2 * c.wit_j + 1;
        R.slope = c.wit_slope;
        R.rp = c.wit_rp;
        R.r = c.wit_r;
        return (double)count_in_rect(p, R) /
               std::pow(std::sqrt((double)c.wit_rp * (double)c.wit_r), c.exponent);
    }
    Columns cols = build_columns(p);
    i64 h = i64(1) << c.wit_t;
    return (double)count_box(cols, c.wit_i, c.wit_j, h) /
           std::pow(std::ldexp(1.0, c.wit_t), c.exponent);
}

}  // namespace frostlab
