#include "frostlab/parabola.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <unordered_map>

#include <omp.h>

namespace frostlab {

CircleDatum triple_to_circle(i64 i1, i64 i2, i64 i3, Scale sc) {
    CircleDatum c;
    c.m = sc.m;
    c.sum1 = i1 + i2 + i3;
    c.sum2 = i1 * i1 + i2 * i2 + i3 * i3;
    // 6*sigma2 - 2*sigma1^2 = 2[(y1-y2)^2 + (y2-y3)^2 + (y3-y1)^2], exactly
    i64 d12 = i1 - i2, d23 = i2 - i3, d31 = i3 - i1;
    i64 rhs = 2 * (d12 * d12 + d23 * d23 + d31 * d31);
    if (c.r2num() != rhs) throw std::logic_error("triple_to_circle: radius identity failed");
    return c;
}

SegmentEndpoints circle_to_segment(double sigma1, double radius2) {
    if (radius2 <= 0.0) throw std::invalid_argument("circle_to_segment: degenerate radius");
    double r = std::sqrt(radius2);
    SegmentEndpoints e{};
    double xi[2] = {2.0 * sigma1 + r, 2.0 * sigma1 - r};
    double* out[4] = {&e.x1, &e.y1, &e.x2, &e.y2};
    for (int k = 0; k < 2; ++k) {
        double q = xi[k] * xi[k];
        *out[2 * k] = (q - 1.0) / (q + 1.0);
        *out[2 * k + 1] = -2.0 * xi[k] / (q + 1.0);
    }
    return e;
}

namespace {

struct Key {
    i64 a, b;
    bool operator<(const Key& o) const { return a < o.a || (a == o.a && b < o.b); }
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
};

// distinct triple-sum keys (a = sum of indices, b = sum of squared indices) with multiplicities
std::vector<std::pair<Key, i64>> triple_keys(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                             const DiscreteSet1D& s3, bool parallel) {
    const i64 n1 = s1.size();
    std::vector<std::vector<std::pair<Key, i64>>> partial(std::max<i64>(n1, 1));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (i64 k1 = 0; k1 < n1; ++k1) {
        std::vector<std::pair<Key, i64>> local;
        local.reserve(s2.size() * s3.size());
        i64 i1 = s1.idx[k1];
        for (i64 i2 : s2.idx)
            for (i64 i3 : s3.idx)
                local.push_back({Key{i1 + i2 + i3, i1 * i1 + i2 * i2 + i3 * i3}, 1});
        std::sort(local.begin(), local.end());
        // run-length collapse
        std::vector<std::pair<Key, i64>> packed;
        for (auto& kv : local) {
            if (!packed.empty() && packed.back().first == kv.first) packed.back().second++;
            else packed.push_back(kv);
        }
        partial[k1] = std::move(packed);
    }
    std::vector<std::pair<Key, i64>> all;
    for (auto& p : partial) all.insert(all.end(), p.begin(), p.end());
    std::sort(all.begin(), all.end());
    std::vector<std::pair<Key, i64>> keys;
    for (auto& kv : all) {
        if (!keys.empty() && keys.back().first == kv.first) keys.back().second += kv.second;
        else keys.push_back(kv);
    }
    return keys;
}

EnergyResult energy_from_keys(const std::vector<std::pair<Key, i64>>& keys, i64 c_tol, int m,
                              bool parallel) {
    // a-block index for binary search
    std::vector<i64> astart;
    std::vector<i64> avals;
    for (i64 k = 0; k < (i64)keys.size(); ++k)
        if (k == 0 || keys[k].first.a != keys[k - 1].first.a) {
            avals.push_back(keys[k].first.a);
            astart.push_back(k);
        }
    astart.push_back((i64)keys.size());
    const i64 btol = c_tol << m;
    i128 total = 0;
    const i64 nk = (i64)keys.size();
#pragma omp parallel if (parallel)
    {
        i128 local = 0;
#pragma omp for schedule(dynamic, 64) nowait
        for (i64 k = 0; k < nk; ++k) {
            const Key key = keys[k].first;
            const i64 mult = keys[k].second;
            auto alo = std::lower_bound(avals.begin(), avals.end(), key.a - c_tol);
            for (auto it = alo; it != avals.end() && *it <= key.a + c_tol; ++it) {
                i64 blk = it - avals.begin();
                auto cmp = [](const std::pair<Key, i64>& kv, i64 b) { return kv.first.b < b; };
                auto lo = std::lower_bound(keys.begin() + astart[blk], keys.begin() + astart[blk + 1],
                                           key.b - btol, cmp);
                auto hi = std::lower_bound(keys.begin() + astart[blk], keys.begin() + astart[blk + 1],
                                           key.b + btol + 1, cmp);
                for (auto q = lo; q != hi; ++q) local += (i128)mult * q->second;
            }
        }
#pragma omp critical(frostlab_energy_merge)
        total += local;
    }
    EnergyResult res;
    res.count = total;
    res.c_tol = c_tol;
    res.method = EnergyResult::Method::binning_oracle;
    return res;
}

void check_budget(const DiscreteSet1D& s1, const DiscreteSet1D& s2, const DiscreteSet1D& s3) {
    long double prod = (long double)s1.size() * s2.size() * s3.size();
    if (prod > (long double)(i64(1) << 30))
        throw std::invalid_argument("energy: triple-sum budget n^3 <= 2^30 exceeded");
}

}  // namespace

EnergyResult energy3_oracle(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                            const DiscreteSet1D& s3, i64 c_tol) {
    if (c_tol < 0) throw std::invalid_argument("energy3_oracle: c_tol >= 0");
    if (s1.scale != s2.scale || s2.scale != s3.scale)
        throw std::invalid_argument("energy3_oracle: scale mismatch");
    check_budget(s1, s2, s3);
    return energy_from_keys(triple_keys(s1, s2, s3, true), c_tol, s1.scale.m, true);
}

namespace serial {
EnergyResult energy3_oracle(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                            const DiscreteSet1D& s3, i64 c_tol) {
    check_budget(s1, s2, s3);
    return energy_from_keys(triple_keys(s1, s2, s3, false), c_tol, s1.scale.m, false);
}
}  // namespace serial

EnergyResult energy3_exhaustive(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                const DiscreteSet1D& s3, i64 c_tol) {
    const int m = s1.scale.m;
    const i64 btol = c_tol << m;
    i128 total = 0;
    for (i64 i1 : s1.idx)
        for (i64 i2 : s2.idx)
            for (i64 i3 : s3.idx)
                for (i64 j1 : s1.idx)
                    for (i64 j2 : s2.idx)
                        for (i64 j3 : s3.idx) {
                            i64 da = (i1 + i2 + i3) - (j1 + j2 + j3);
                            i64 db = (i1 * i1 + i2 * i2 + i3 * i3) -
                                     (j1 * j1 + j2 * j2 + j3 * j3);
                            if (std::llabs(da) <= c_tol && std::llabs(db) <= btol) ++total;
                        }
    EnergyResult res;
    res.count = total;
    res.c_tol = c_tol;
    res.method = EnergyResult::Method::exhaustive;
    return res;
}

namespace {

// calibrated widths: triple sums are identified in 2*delta cells and a square is incident to
// a circle class when its center is within 4*delta of the circle
constexpr i64 kCircleBin = 2;
constexpr i64 kIncWidth = 4;

// |sqrt(D2) - sqrt(R2)| <= sqrt(T2), exact in integers
bool annulus_hit(i128 D2, i128 R2, i128 T2) {
    i128 u = D2 + R2 - T2;
    if (u <= 0) return true;
    return u * u <= 4 * D2 * R2;
}

// Half plane to Klein disk: Cayley transform then w -> 2w/(1+|w|^2), which carries circles
// centered on the x-axis to the chords through their boundary intersections. The model is
// kept at a finer grid scale to absorb the map's contraction without collapsing squares.
struct GMap {
    double a0 = 0.0;  // recentering shift, keeps the configuration near the imaginary axis
    std::pair<double, double> operator()(double x, double y) const {
        std::complex<double> z(x - a0, y);
        std::complex<double> w = (z - std::complex<double>(0, 1)) / (z + std::complex<double>(0, 1));
        double n = 1.0 + std::norm(w);
        return {2.0 * w.real() / n, 2.0 * w.imag() / n};
    }
    std::pair<double, double> boundary(double xi) const {
        double q = (xi - a0) * (xi - a0);
        return {(q - 1.0) / (q + 1.0), (-2.0 * (xi - a0)) / (q + 1.0)};
    }
};

constexpr int kModelExtraBits = 3;  // model grid at delta/8

void check_separation(const DiscreteSet1D& s1, const DiscreteSet1D& s2, const DiscreteSet1D& s3) {
    const DiscreteSet1D* sets[3] = {&s1, &s2, &s3};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            if (sets[a]->empty() || sets[b]->empty())
                throw std::invalid_argument("instance: empty input set");
            i64 lo_a = sets[a]->idx.front(), hi_a = sets[a]->idx.back();
            i64 lo_b = sets[b]->idx.front(), hi_b = sets[b]->idx.back();
            if (std::max(lo_a, lo_b) <= std::min(hi_a, hi_b))
                throw std::invalid_argument("instance: base intervals must be separated");
        }
}

void certify_duals(IncidenceInstance& inst, double sigma_cert) {
    double worst = 0.0;
    for (const auto& lst : inst.reps_per_square) {
        if (lst.empty()) continue;
        DiscreteSet1D sig;
        sig.scale = inst.scale;
        for (i64 r : lst) sig.idx.push_back(inst.reps[r].sum1);
        sig.normalize();
        worst = std::max(worst, validate_kt(sig, sigma_cert).C);
    }
    inst.dual_sigma = sigma_cert;
    inst.dual_C = worst;
}

}  // namespace

IncidenceInstance build_incidence_instance(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                           const DiscreteSet1D& s3, double sigma_cert) {
    check_separation(s1, s2, s3);
    // order the first two sets so the image heights sqrt(3)(x1-x2) are positive
    const DiscreteSet1D& a = (s1.idx.front() > s2.idx.front()) ? s1 : s2;
    const DiscreteSet1D& b = (s1.idx.front() > s2.idx.front()) ? s2 : s1;
    const Scale sc = s1.scale;
    const int m = sc.m;

    IncidenceInstance inst;
    inst.scale = sc;
    inst.squares.scale = sc;
    inst.squares.label = "instance-squares";
    for (i64 i1 : a.idx)
        for (i64 i2 : b.idx)
            inst.squares.pts.push_back(Point2i{3 * (i1 + i2), floor_sqrt_mul(3, i1 - i2)});
    inst.squares.normalize();

    // identify triple circles in kCircleBin-delta cells of the coordinate sums
    std::map<std::pair<i64, i64>, std::pair<i64, i64>> bins;  // bin -> smallest (sum1, sum2)
    for (i64 i1 : a.idx)
        for (i64 i2 : b.idx)
            for (i64 i3 : s3.idx) {
                i64 u = i1 + i2 + i3, v = i1 * i1 + i2 * i2 + i3 * i3;
                std::pair<i64, i64> key{floor_div(u, kCircleBin), floor_div(v, kCircleBin << m)};
                auto it = bins.find(key);
                if (it == bins.end() || std::make_pair(u, v) < it->second)
                    bins[key] = {u, v};
            }
    for (auto& [key, rep] : bins) {
        CircleDatum c;
        c.m = m;
        c.sum1 = rep.first;
        c.sum2 = rep.second;
        inst.reps.push_back(c);
    }

    // exact annulus incidences
    const i64 nq = inst.squares.size();
    const i64 nc = (i64)inst.reps.size();
    inst.per_rep_count.assign(nc, 0);
    inst.reps_per_square.assign(nq, {});
    const i128 T2 = 4 * kIncWidth * kIncWidth;
#pragma omp parallel for schedule(dynamic, 8)
    for (i64 qi = 0; qi < nq; ++qi) {
        const auto& q = inst.squares.pts[qi];
        i64 Xq = 2 * q.i + 1, Yq = 2 * q.j + 1;
        for (i64 ci = 0; ci < nc; ++ci) {
            const CircleDatum& c = inst.reps[ci];
            i128 dx = Xq - 4 * c.sum1;
            i128 D2 = dx * dx + (i128)Yq * Yq;
            i128 R2 = 24 * (i128)c.sum2 - 8 * (i128)c.sum1 * c.sum1;
            if (R2 < 0) continue;
            if (annulus_hit(D2, R2, T2)) inst.reps_per_square[qi].push_back(ci);
        }
    }
    for (i64 qi = 0; qi < nq; ++qi)
        for (i64 ci : inst.reps_per_square[qi]) ++inst.per_rep_count[ci];
    for (i64 ci = 0; ci < nc; ++ci) {
        inst.sum_count_sq += (i128)inst.per_rep_count[ci] * inst.per_rep_count[ci];
        inst.total_incidences += inst.per_rep_count[ci];
    }
    certify_duals(inst, sigma_cert);

    // conformal disk model
    GMap g;
    {
        double xmin = 1e30, xmax = -1e30;
        for (const auto& q : inst.squares.pts) {
            double x = (q.i + 0.5) * sc.delta();
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        g.a0 = 0.5 * (xmin + xmax);
    }
    Scale model(sc.m + kModelExtraBits);
    inst.mapped_P.scale = model;
    inst.mapped_P.label = "instance-mapped";
    double dmin = 1e30, dmax = 0.0;
    std::pair<double, double> prev{0, 0};
    double prev_x = 0, prev_y = 0;
    bool have_prev = false;
    std::vector<std::pair<double, double>> exact_pts;
    for (i64 i1 : a.idx)
        for (i64 i2 : b.idx)
            exact_pts.push_back({3.0 * (double)(i1 + i2) * sc.delta(),
                                 std::sqrt(3.0) * (double)(i1 - i2) * sc.delta()});
    for (const auto& [x, y] : exact_pts) {
        auto [gx, gy] = g(x, y);
        inst.mapped_P.pts.push_back(
            Point2i{(i64)std::floor(gx * model.inv_delta()), (i64)std::floor(gy * model.inv_delta())});
        if (have_prev) {
            double num = std::hypot(gx - prev.first, gy - prev.second);
            double den = std::hypot(x - prev_x, y - prev_y);
            if (den > 0) {
                dmin = std::min(dmin, num / den);
                dmax = std::max(dmax, num / den);
            }
        }
        prev = {gx, gy};
        prev_x = x;
        prev_y = y;
        have_prev = true;
    }
    inst.mapped_P.normalize();
    inst.distort_min = dmin;
    inst.distort_max = dmax;

    for (const CircleDatum& c : inst.reps) {
        double r2 = c.radius2();
        if (r2 <= 0) continue;
        double r = std::sqrt(r2);
        auto e1 = g.boundary(c.center_x() + r);
        auto e2 = g.boundary(c.center_x() - r);
        if (std::abs(e2.first - e1.first) < 1e-12) continue;
        double slope = (e2.second - e1.second) / (e2.first - e1.first);
        double icpt = e1.second - slope * e1.first;
        inst.mapped_tubes.push_back(snap_tube(slope, icpt, model));
    }
    return inst;
}

IncidenceInstance psi_transform_instance(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                         const DiscreteSet1D& s3, double sigma_cert) {
    check_separation(s1, s2, s3);
    const Scale sc = s1.scale;
    const int m = sc.m;
    IncidenceInstance inst;
    inst.scale = sc;
    inst.squares.scale = sc;
    inst.squares.label = "psi-squares";
    // image of the pair sum under the parabola-to-line transform: (x, x^2 + y)
    for (i64 i1 : s1.idx)
        for (i64 i2 : s2.idx) {
            i64 a = i1 + i2;
            i64 bnum = 2 * (i1 * i1 + i2 * i2 + i1 * i2);  // (x^2+y) * 2^{2m}
            inst.squares.pts.push_back(Point2i{a, floor_div(bnum, sc.inv_delta())});
        }
    inst.squares.normalize();

    std::map<std::pair<i64, i64>, std::pair<i64, i64>> bins;
    for (i64 i1 : s1.idx)
        for (i64 i2 : s2.idx)
            for (i64 i3 : s3.idx) {
                i64 u = i1 + i2 + i3, v = i1 * i1 + i2 * i2 + i3 * i3;
                std::pair<i64, i64> key{floor_div(u, kCircleBin), floor_div(v, kCircleBin << m)};
                auto it = bins.find(key);
                if (it == bins.end() || std::make_pair(u, v) < it->second)
                    bins[key] = {u, v};
            }
    for (auto& [key, rep] : bins) {
        CircleDatum c;
        c.m = m;
        c.sum1 = rep.first;
        c.sum2 = rep.second;
        inst.reps.push_back(c);
    }

    const i64 nq = inst.squares.size();
    const i64 nc = (i64)inst.reps.size();
    inst.per_rep_count.assign(nc, 0);
    inst.reps_per_square.assign(nq, {});
    // vertical distance from the square center to the line image of the translated parabola:
    // |(2j+1)*2^m - 2*sum1*(2i+1) - 2*(sum2 - sum1^2)| <= c * 2^{m+1}
    const i64 tol = kIncWidth * (i64(1) << (m + 1));
#pragma omp parallel for schedule(dynamic, 8)
    for (i64 qi = 0; qi < nq; ++qi) {
        const auto& q = inst.squares.pts[qi];
        for (i64 ci = 0; ci < nc; ++ci) {
            const CircleDatum& c = inst.reps[ci];
            i128 e = ((i128)(2 * q.j + 1) << m) - (i128)2 * c.sum1 * (2 * q.i + 1) -
                     2 * ((i128)c.sum2 - (i128)c.sum1 * c.sum1);
            if (e < 0) e = -e;
            if (e <= tol) inst.reps_per_square[qi].push_back(ci);
        }
    }
    for (i64 qi = 0; qi < nq; ++qi)
        for (i64 ci : inst.reps_per_square[qi]) ++inst.per_rep_count[ci];
    for (i64 ci = 0; ci < nc; ++ci) {
        inst.sum_count_sq += (i128)inst.per_rep_count[ci] * inst.per_rep_count[ci];
        inst.total_incidences += inst.per_rep_count[ci];
    }
    certify_duals(inst, sigma_cert);

    inst.mapped_P = inst.squares;
    for (const CircleDatum& c : inst.reps) {
        // line y = 2*sigma1*x + (sigma2 - sigma1^2)
        inst.mapped_tubes.push_back(snap_tube(std::ldexp(2.0 * (double)c.sum1, -m),
                                              std::ldexp((double)(c.sum2 - c.sum1 * c.sum1), -2 * m),
                                              sc));
    }
    inst.distort_min = inst.distort_max = 1.0;
    return inst;
}

RectBoundReport verify_rect_bound(const IncidenceInstance& inst, double s, bool certify_rect) {
    RectBoundReport rep;
    rep.m = inst.scale.m;
    rep.s = s;
    rep.lhs = (double)inst.total_incidences;
    double nt = 0;
    for (i64 c : inst.per_rep_count)
        if (c > 0) nt += 1.0;
    double np = 0;
    for (const auto& lst : inst.reps_per_square)
        if (!lst.empty()) np += 1.0;
    rep.rhs = std::pow((double)inst.scale.inv_delta(), 2.0 * s / 3.0) * std::pow(nt, 2.0 / 3.0) *
              std::pow(np, 1.0 / 3.0);
    rep.ratio = rep.lhs / rep.rhs;
    rep.dual_C = inst.dual_C;
    if (certify_rect) rep.rect_C = validate_rect_kt(inst.mapped_P, 2.0 * s).C;
    return rep;
}

TrilinearReport verify_trilinear_energy(const DiscreteSet1D& s1, const DiscreteSet1D& s2,
                                        const DiscreteSet1D& s3, double s, i64 c_tol) {
    TrilinearReport rep;
    rep.m = s1.scale.m;
    rep.s = s;
    rep.energy = energy3_oracle(s1, s2, s3, c_tol).count;
    double prod = (double)s1.size() * (double)s2.size() * (double)s3.size();
    rep.rhs = std::pow((double)s1.scale.inv_delta(), s) * std::pow(prod, 5.0 / 6.0);
    rep.ratio = (double)(long double)rep.energy / rep.rhs;
    return rep;
}

}  // namespace frostlab
