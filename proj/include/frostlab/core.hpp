#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace frostlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Dyadic scale delta = 2^-m.
struct Scale {
    int m = 1;

    Scale() = default;
    explicit Scale(int m_) : m(m_) {
        if (m < 1 || m > 30) throw std::invalid_argument("Scale: m out of range");
    }
    double delta() const { return std::ldexp(1.0, -m); }
    i64 inv_delta() const { return i64(1) << m; }
    bool operator==(const Scale& o) const { return m == o.m; }
    bool operator!=(const Scale& o) const { return m != o.m; }
};

inline i64 floor_div(i64 a, i64 b) {
    assert(b > 0);
    i64 q = a / b, r = a % b;
    return (r != 0 && a < 0) ? q - 1 : q;
}

// round(a/b) with ties away from zero, b > 0
inline i64 round_div(i64 a, i64 b) {
    assert(b > 0);
    return a >= 0 ? (a + b / 2) / b : -((-a + b / 2) / b);
}

inline i64 isqrt_i64(i128 v) {
    assert(v >= 0);
    if (v == 0) return 0;
    i64 r = (i64)std::sqrt((double)v);
    while ((i128)r * r > v) --r;
    while ((i128)(r + 1) * (r + 1) <= v) ++r;
    return r;
}

// floor(sqrt(c) * k) for integer k (any sign), integer c >= 0
inline i64 floor_sqrt_mul(i64 c, i64 k) {
    if (k >= 0) return isqrt_i64((i128)c * k * k);
    i128 v = (i128)c * k * k;
    i64 s = isqrt_i64(v);
    // ceil(sqrt(v)) negated
    return ((i128)s * s == v) ? -s : -(s + 1);
}

std::string i128_to_string(i128 v);

// Seeded PRNG with a pinned algorithm so (seed, params) reproduce across runs.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(u64 seed) : gen(seed) {}
    static const char* algorithm() { return "mt19937_64"; }
    u64 next() { return gen(); }
    // uniform in [0, n)
    u64 below(u64 n) {
        u64 lim = ~u64(0) - (~u64(0) % n);
        u64 v;
        do { v = gen(); } while (v >= lim);
        return v % n;
    }
    double unit() { return (gen() >> 11) * 0x1.0p-53; }
};

}  // namespace frostlab
