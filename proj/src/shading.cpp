#include "frostlab/shading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

#include <omp.h>

namespace frostlab {

i64 Shading::total() const {
    i64 n = 0;
    for (const auto& v : per_tube) n += (i64)v.size();
    return n;
}

std::vector<i64> Shading::union_squares() const {
    std::vector<i64> all;
    all.reserve(total());
    for (const auto& v : per_tube) all.insert(all.end(), v.begin(), v.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

Shading full_shading(const TubeFamily& f) {
    Shading y;
    y.scale = f.scale;
    y.per_tube.resize(f.tubes.size());
    const i64 n = (i64)f.tubes.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 k = 0; k < n; ++k) y.per_tube[k] = rasterize_linear(f.tubes[k]);
    return y;
}

Shading restrict_shading(const TubeFamily& f, const Shading& y, const std::vector<i64>& squares) {
    Shading out;
    out.scale = y.scale;
    out.per_tube.resize(y.per_tube.size());
    const i64 n = (i64)y.per_tube.size();
#pragma omp parallel for schedule(dynamic, 16)
    for (i64 k = 0; k < n; ++k) {
        std::set_intersection(y.per_tube[k].begin(), y.per_tube[k].end(), squares.begin(),
                              squares.end(), std::back_inserter(out.per_tube[k]));
    }
    if (y.sigma > 0.0) certify_shading(f, out, y.sigma);
    return out;
}

namespace {

// KT scan of one tube's squares at exponent sigma: max-norm windows [c-h, c+h) x [oc-h, oc+h)
// centered on an h/2-net of axis points, counted exactly.
double tube_kt_constant(const Tube& t, const std::vector<i64>& squares, double sigma) {
    if (squares.empty()) return 0.0;
    const int m = t.scale.m;
    const i64 mask = (i64(1) << m) - 1;
    const i64 nsq = (i64)squares.size();
    std::vector<std::pair<i64, i64>> pts;  // (dominant, other), sorted
    pts.reserve(nsq);
    for (i64 v : squares) {
        i64 i = v >> m, j = v & mask;
        pts.push_back(t.axis == Axis::X ? std::make_pair(i, j) : std::make_pair(j, i));
    }
    std::sort(pts.begin(), pts.end());
    double worst = 0.0;
    for (int tt = 0; tt <= m; ++tt) {
        i64 h = i64(1) << tt;
        i64 step = std::max<i64>(1, h / 2);
        for (i64 c = pts.front().first; c <= pts.back().first + step - 1; c += step) {
            double axis_oth =
                ((double)t.slope * (2 * c + 1)) / std::ldexp(2.0, m) + (double)t.intercept;
            i64 oc = (i64)std::llround(axis_oth);
            auto lo = std::lower_bound(pts.begin(), pts.end(),
                                       std::make_pair(c - h, std::numeric_limits<i64>::min()));
            i64 count = 0;
            for (auto it = lo; it != pts.end() && it->first < c + h; ++it)
                if (it->second >= oc - h && it->second < oc + h) ++count;
            worst = std::max(worst, (double)count / std::pow((double)h, sigma));
        }
    }
    return worst;
}

}  // namespace

double certify_shading(const TubeFamily& f, Shading& y, double sigma) {
    const i64 n = (i64)y.per_tube.size();
    double worst = 0.0;
#pragma omp parallel for schedule(dynamic, 8) reduction(max : worst)
    for (i64 k = 0; k < n; ++k)
        worst = std::max(worst, tube_kt_constant(f.tubes[k], y.per_tube[k], sigma));
    y.sigma = sigma;
    y.K3 = worst;
    return worst;
}

DualShading dual_shading(const TubeFamily& f, const DiscreteSet2D& P, double sigma) {
    DualShading out;
    out.sigma = sigma;
    out.tubes_per_square.resize(P.pts.size());
    std::vector<i64> plin(P.pts.size());
    for (size_t k = 0; k < P.pts.size(); ++k) plin[k] = square_linear(P.pts[k], P.scale.m);
    // plin is sorted because P.pts is lex-sorted
    for (i64 ti = 0; ti < (i64)f.tubes.size(); ++ti) {
        for (i64 sq : rasterize_linear(f.tubes[ti])) {
            auto it = std::lower_bound(plin.begin(), plin.end(), sq);
            if (it != plin.end() && *it == sq) out.tubes_per_square[it - plin.begin()].push_back(ti);
        }
    }
    double worst = 0.0;
    for (auto& lst : out.tubes_per_square) {
        if (lst.empty()) continue;
        DiscreteSet1D slopes;
        slopes.scale = f.scale;
        for (i64 ti : lst) slopes.idx.push_back(f.tubes[ti].slope);
        slopes.normalize();
        worst = std::max(worst, validate_kt(slopes, sigma).C);
    }
    out.worst_C = worst;
    return out;
}

bool two_ends_check(const Tube& t, const std::vector<i64>& squares, double eps1, double eps2) {
    if (!(0.0 < eps2 && eps2 < eps1)) throw std::invalid_argument("two_ends_check: need 0<eps2<eps1");
    if (squares.empty()) return true;
    const int m = t.scale.m;
    const i64 mask = (i64(1) << m) - 1;
    const double delta = t.scale.delta();
    const double r = std::pow(delta, eps1);
    const double cap = std::pow(delta, eps2) * (double)squares.size();
    std::vector<std::pair<double, double>> centers;  // square centers (dominant, other)
    centers.reserve(squares.size());
    for (i64 v : squares) {
        i64 i = v >> m, j = v & mask;
        double x = (i + 0.5) * delta, yv = (j + 0.5) * delta;
        if (t.axis == Axis::X) centers.push_back({x, yv});
        else centers.push_back({yv, x});
    }
    std::sort(centers.begin(), centers.end());
    const double a = (double)t.slope * delta, b = (double)t.intercept * delta;
    for (double u = 0.0; u <= 1.0; u += r / 2.0) {
        double px = u, py = a * u + b;
        auto lo = std::lower_bound(centers.begin(), centers.end(), std::make_pair(px - r, -1e30));
        i64 count = 0;
        for (auto it = lo; it != centers.end() && it->first <= px + r; ++it) {
            double dx = it->first - px, dy = it->second - py;
            if (dx * dx + dy * dy <= r * r) ++count;
        }
        if ((double)count > cap) return false;
    }
    return true;
}

TwoEndsRefinement two_ends_refine(const Tube& t, const std::vector<i64>& squares, double s,
                                  double eps) {
    (void)s;  // the KT exponent enters through the caller's postcondition checks
    if (!(0.0 < eps && eps < 0.5)) throw std::invalid_argument("two_ends_refine: need 0<eps<1/2");
    if (squares.empty()) throw std::invalid_argument("two_ends_refine: empty shading");
    const int m = t.scale.m;
    const double delta = t.scale.delta();
    std::vector<i64> pos;  // dominant coordinates, delta units
    pos.reserve(squares.size());
    for (i64 v : squares) pos.push_back(t.axis == Axis::X ? (v >> m) : (v & ((i64(1) << m) - 1)));
    std::sort(pos.begin(), pos.end());

    TwoEndsRefinement ref;
    ref.L = 1.0;
    ref.N = (i64)pos.size();
    ref.lo = 0;
    ref.hi = (i64)1 << m;
    const int max_iter = (int)(m / std::log2(1.0 / (1.0 - eps))) + 2;
    size_t beg = 0, end = pos.size();
    while (ref.iterations < max_iter) {
        double Lnext = ref.L * std::pow(delta / ref.L, eps);
        if (Lnext < delta) Lnext = delta;
        double threshold = std::pow(delta / ref.L, std::pow(eps, 3)) * (double)ref.N;
        i64 W = std::max<i64>(1, (i64)std::floor(Lnext / delta));
        // best window of dominant width W (leftmost maximum)
        i64 bestc = 0;
        size_t besti = beg;
        size_t hi_ptr = beg;
        for (size_t i = beg; i < end; ++i) {
            if (hi_ptr < i) hi_ptr = i;
            while (hi_ptr < end && pos[hi_ptr] <= pos[i] + W - 1) ++hi_ptr;
            i64 c = (i64)(hi_ptr - i);
            if (c > bestc) { bestc = c; besti = i; }
        }
        ++ref.iterations;
        if ((double)bestc > threshold && ref.L > delta) {
            // descend into the heaviest sub-segment
            ref.L = Lnext;
            ref.N = bestc;
            ref.lo = pos[besti];
            ref.hi = pos[besti] + W;
            beg = besti;
            end = besti;
            while (end < pos.size() && pos[end] <= ref.lo + W - 1) ++end;
        } else {
            break;
        }
    }
    return ref;
}

void write_shading(std::ostream& os, const Shading& y) {
    for (size_t k = 0; k < y.per_tube.size(); ++k) {
        os << k << ":";
        for (size_t q = 0; q < y.per_tube[k].size(); ++q) {
            os << (q ? "," : " ") << y.per_tube[k][q];
        }
        os << "\n";
    }
}

Shading read_shading(std::istream& is, Scale sc) {
    Shading y;
    y.scale = sc;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::runtime_error("shading: missing tube index");
        size_t idx = std::stoull(line.substr(0, colon));
        if (idx >= y.per_tube.size()) y.per_tube.resize(idx + 1);
        std::stringstream ss(line.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) y.per_tube[idx].push_back(std::stoll(tok));
        std::sort(y.per_tube[idx].begin(), y.per_tube[idx].end());
    }
    return y;
}

}  // namespace frostlab
