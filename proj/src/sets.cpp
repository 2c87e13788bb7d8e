#include "frostlab/sets.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace frostlab {

std::string i128_to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 u = neg ? (u128)(-v) : (u128)v;
    char buf[48];
    int p = 48;
    while (u > 0) {
        buf[--p] = char('0' + (int)(u % 10));
        u /= 10;
    }
    std::string s(buf + p, 48 - p);
    return neg ? "-" + s : s;
}

void DiscreteSet1D::normalize() {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
}

i64 DiscreteSet1D::count_in_window(i64 lo, i64 hi) const {
    if (hi <= lo) return 0;
    auto a = std::lower_bound(idx.begin(), idx.end(), lo);
    auto b = std::lower_bound(idx.begin(), idx.end(), hi);
    return b - a;
}

void DiscreteSet2D::normalize() {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

i64 covering_number(const DiscreteSet1D& a, int k) {
    if (k > a.scale.m) throw std::invalid_argument("covering_number: rho below set scale");
    i64 shift = a.scale.m - k;
    i64 count = 0;
    i64 prev = 0;
    bool first = true;
    for (i64 v : a.idx) {
        i64 cell = v >> shift;
        if (first || cell != prev) ++count;
        prev = cell;
        first = false;
    }
    return count;
}

i64 covering_number(const DiscreteSet2D& p, int k) {
    if (k > p.scale.m) throw std::invalid_argument("covering_number: rho below set scale");
    i64 shift = p.scale.m - k;
    std::vector<Point2i> cells;
    cells.reserve(p.pts.size());
    for (const auto& q : p.pts) cells.push_back(Point2i{q.i >> shift, q.j >> shift});
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return (i64)cells.size();
}

DiscreteSet1D full_grid(Scale sc) {
    DiscreteSet1D a;
    a.scale = sc;
    a.idx.resize(sc.inv_delta());
    for (i64 i = 0; i < sc.inv_delta(); ++i) a.idx[i] = i;
    a.label = "grid";
    return a;
}

DiscreteSet1D set_from_indices(Scale sc, std::vector<i64> v, std::string label) {
    DiscreteSet1D a;
    a.scale = sc;
    a.idx = std::move(v);
    a.label = std::move(label);
    a.normalize();
    return a;
}

DiscreteSet2D product_set(const DiscreteSet1D& a, const DiscreteSet1D& b, std::string label) {
    if (a.scale != b.scale) throw std::invalid_argument("product_set: scale mismatch");
    DiscreteSet2D p;
    p.scale = a.scale;
    p.label = label.empty() ? a.label + "x" + b.label : std::move(label);
    p.pts.reserve(a.idx.size() * b.idx.size());
    for (i64 i : a.idx)
        for (i64 j : b.idx) p.pts.push_back(Point2i{i, j});
    p.normalize();
    return p;
}

DiscreteSet1D restrict_rescale(const DiscreteSet1D& a, i64 cell, int k) {
    if (k < 0 || k > a.scale.m - 1) throw std::invalid_argument("restrict_rescale: bad cell scale");
    i64 w = i64(1) << (a.scale.m - k);  // cell width in delta units
    i64 lo = cell * w;
    DiscreteSet1D out;
    out.scale = Scale(a.scale.m - k);
    out.label = a.label + "|cell";
    for (i64 v : a.idx)
        if (v >= lo && v < lo + w) out.idx.push_back(v - lo);
    return out;
}

void write_set(std::ostream& os, const DiscreteSet1D& a) {
    os << "scale=" << a.scale.m << " label=" << (a.label.empty() ? "-" : a.label) << " kind=1d\n";
    for (i64 v : a.idx) os << v << "\n";
}

void write_set(std::ostream& os, const DiscreteSet2D& p) {
    os << "scale=" << p.scale.m << " label=" << (p.label.empty() ? "-" : p.label) << " kind=2d\n";
    for (const auto& q : p.pts) os << q.i << " " << q.j << "\n";
}

namespace {
void parse_header(std::istream& is, int& m, std::string& label, std::string& kind) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("set file: missing header");
    std::istringstream hs(line);
    std::string tok;
    m = -1;
    while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::runtime_error("set file: bad header token " + tok);
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "scale") m = std::stoi(val);
        else if (key == "label") label = val;
        else if (key == "kind") kind = val;
    }
    if (m < 1) throw std::runtime_error("set file: missing scale");
}
}  // namespace

DiscreteSet1D read_set1d(std::istream& is) {
    int m;
    std::string label, kind;
    parse_header(is, m, label, kind);
    if (kind != "1d") throw std::runtime_error("set file: expected kind=1d");
    DiscreteSet1D a;
    a.scale = Scale(m);
    a.label = label == "-" ? "" : label;
    i64 v;
    while (is >> v) a.idx.push_back(v);
    a.normalize();
    return a;
}

DiscreteSet2D read_set2d(std::istream& is) {
    int m;
    std::string label, kind;
    parse_header(is, m, label, kind);
    if (kind != "2d") throw std::runtime_error("set file: expected kind=2d");
    DiscreteSet2D p;
    p.scale = Scale(m);
    p.label = label == "-" ? "" : label;
    i64 a, b;
    while (is >> a >> b) p.pts.push_back(Point2i{a, b});
    p.normalize();
    return p;
}

}  // namespace frostlab
