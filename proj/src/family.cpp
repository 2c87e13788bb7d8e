#include "frostlab/family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "frostlab/fractal.hpp"

namespace frostlab {

DiscreteSet1D TubeFamily::direction_set() const {
    DiscreteSet1D d;
    d.scale = scale;
    d.idx = slopes;
    d.label = "directions";
    return d;
}

void TubeFamily::rebuild_tubes() {
    tubes.clear();
    for (size_t k = 0; k < slopes.size(); ++k)
        for (i64 c : offsets[k]) {
            Tube t;
            t.axis = Axis::X;
            t.scale = scale;
            t.slope = slopes[k];
            t.intercept = c;
            tubes.push_back(t);
        }
}

void TubeFamily::certify(double s, double d) {
    declared_s = s;
    declared_d = d;
    K1 = validate_kt(direction_set(), s).C;
    double worst = 0.0;
    for (size_t k = 0; k < slopes.size(); ++k) {
        DiscreteSet1D off;
        off.scale = scale;
        off.idx = offsets[k];
        worst = std::max(worst, validate_kt(off, d).C);
    }
    K2 = worst;
}

TubeFamily quasi_product_family(Scale sc, const DiscreteSet1D& directions,
                                const std::vector<DiscreteSet1D>& offsets, double s, double d) {
    if (directions.size() != (i64)offsets.size())
        throw std::invalid_argument("quasi_product_family: offsets per direction mismatch");
    TubeFamily f;
    f.scale = sc;
    f.slopes = directions.idx;
    f.offsets.resize(offsets.size());
    for (size_t k = 0; k < offsets.size(); ++k) f.offsets[k] = offsets[k].idx;
    f.rebuild_tubes();
    f.certify(s, d);
    return f;
}

TubeFamily grid_family(Scale sc) {
    TubeFamily f;
    f.scale = sc;
    const i64 n = sc.inv_delta();
    for (i64 S = 0; S < n; ++S) {
        f.slopes.push_back(S);
        std::vector<i64> offs;
        // line y = (S/n) x + C/n meets [0,1]^2 iff C in [-S, n)
        for (i64 C = -S; C < n; ++C) offs.push_back(C);
        f.offsets.push_back(std::move(offs));
    }
    f.rebuild_tubes();
    f.certify(1.0, 1.0);
    return f;
}

BushResult bush_construction(double s, Scale sc, u64 seed, i64 anchor_count, int sep_bits) {
    if (s <= 0.0 || s > 1.0) throw std::invalid_argument("bush_construction: s out of (0,1]");
    if (sep_bits < 0 || sep_bits >= sc.m - 1)
        throw std::invalid_argument("bush_construction: bad sep_bits");
    const i64 n = sc.inv_delta();
    BushResult out;
    DiscreteSet1D anchor_xs;
    bool single = (anchor_count == 1);
    if (single) {
        anchor_xs.scale = sc;
        anchor_xs.idx = {n / 2};
        anchor_xs.label = "anchor";
    } else {
        anchor_xs = cantor_set(sc, 1.0 - s, seed,
                               seed == 0 ? CantorMode::deterministic : CantorMode::random);
        if (anchor_count > 0 && anchor_count < anchor_xs.size())
            anchor_xs.idx.resize(anchor_count);
    }
    DiscreteSet1D dirs = ad_regular_directions(Scale(sc.m - sep_bits), s, seed,
                                               /*upper_half=*/!single);
    if (sep_bits > 0) {
        for (i64& v : dirs.idx) v <<= sep_bits;
        dirs.scale = sc;
        dirs.label += ":sep";
    }

    out.anchors.scale = sc;
    for (i64 x : anchor_xs.idx) out.anchors.pts.push_back(Point2i{x, 0});
    out.anchors.label = "bush-anchors";

    // tube through the anchor center with slope S/n: intercept = 1/2 - (S/n)(x + 1/2), snapped
    std::map<i64, std::vector<i64>> per_slope;
    for (i64 S : dirs.idx) {
        auto& offs = per_slope[S];
        for (i64 x : anchor_xs.idx) {
            i64 num = (i64)n - S * (2 * x + 1);  // intercept * 2n
            offs.push_back(round_div(num, 2 * n));
        }
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
    }
    TubeFamily f;
    f.scale = sc;
    for (auto& [S, offs] : per_slope) {
        f.slopes.push_back(S);
        f.offsets.push_back(std::move(offs));
    }
    f.rebuild_tubes();
    f.certify(s, 1.0 - s);
    out.family = f;
    return out;
}

TubeFamily layered_sharpness_family(double s, i64 K1, i64 K2, Scale sc, u64 seed) {
    const int m = sc.m;
    // rho = delta * K2^{1/s} must be dyadic
    double lg = std::log2((double)K2) / s;
    int shift = (int)std::llround(lg);
    if (std::abs(lg - shift) > 1e-9)
        throw std::invalid_argument("layered_sharpness_family: K2^{1/s} must be a power of two");
    double k1cap = std::pow((double)K2, (1.0 - s) / s);
    if ((double)K1 > k1cap + 1e-9)
        throw std::invalid_argument("layered_sharpness_family: requires K1 <= K2^{(1-s)/s}");
    if (shift == 0) return bush_construction(s, sc, seed).family;
    if (shift >= m) throw std::invalid_argument("layered_sharpness_family: rho >= 1");

    Scale coarse(m - shift);
    BushResult base = bush_construction(s, coarse, seed);
    i64 rho_over_delta = i64(1) << shift;
    i64 ndir = K1 * K2;  // directions selected per coarse tube

    // pack each coarse tube: ndir evenly spaced delta-slopes inside its slope cell,
    // all delta-offsets inside its offset cell for each selected slope
    std::map<i64, std::vector<i64>> per_slope;
    for (const Tube& t : base.family.tubes) {
        for (i64 q = 0; q < ndir; ++q) {
            i64 S = t.slope * rho_over_delta + (q * rho_over_delta) / ndir;
            auto& offs = per_slope[S];
            for (i64 c = 0; c < rho_over_delta; ++c)
                offs.push_back(t.intercept * rho_over_delta + c);
        }
    }
    TubeFamily f;
    f.scale = sc;
    for (auto& [S, offs] : per_slope) {
        std::sort(offs.begin(), offs.end());
        offs.erase(std::unique(offs.begin(), offs.end()), offs.end());
        f.slopes.push_back(S);
        f.offsets.push_back(std::move(offs));
    }
    f.rebuild_tubes();
    f.certify(s, 1.0 - s);
    return f;
}

RegularityCertificate tube_param_certificate(const TubeFamily& f, double t) {
    DiscreteSet2D params;
    params.scale = f.scale;
    for (const Tube& tb : f.tubes) params.pts.push_back(Point2i{tb.slope, tb.intercept});
    params.normalize();
    params.label = "tube-params";
    return validate_kt(params, t);
}

}  // namespace frostlab
