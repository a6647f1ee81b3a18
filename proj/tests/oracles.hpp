#pragma once

// Test-only brute-force oracles. Nothing here calls into the library's
// canonicalization, cone lifting, orbit search or field arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::array<std::int64_t, 3>;
using Mat = std::array<std::array<std::int64_t, 3>, 3>;

inline std::int64_t md(std::int64_t x, std::int64_t m) { return ((x % m) + m) % m; }

inline std::vector<std::int64_t> units(std::int64_t ell, std::int64_t mod) {
    std::vector<std::int64_t> u;
    for (std::int64_t x = 1; x < mod; ++x)
        if (x % ell != 0) u.push_back(x);
    return u;
}

/// The full unit-scaling class of v, sorted.
inline std::vector<Vec> scaling_class(const Vec& v, std::int64_t ell, std::int64_t mod) {
    std::vector<Vec> cls;
    for (auto u : units(ell, mod)) cls.push_back({md(u * v[0], mod), md(u * v[1], mod), md(u * v[2], mod)});
    std::sort(cls.begin(), cls.end());
    cls.erase(std::unique(cls.begin(), cls.end()), cls.end());
    return cls;
}

/// Smallest vector of the class: a normal form independent of the library's.
inline Vec class_min(const Vec& v, std::int64_t ell, std::int64_t mod) { return scaling_class(v, ell, mod).front(); }

inline bool primitive(const Vec& v, std::int64_t ell) { return v[0] % ell != 0 || v[1] % ell != 0 || v[2] % ell != 0; }

/// All classes of primitive vectors, each named by its class_min.
inline std::set<Vec> projective_classes(std::int64_t ell, std::int64_t mod) {
    std::set<Vec> out;
    for (std::int64_t a = 0; a < mod; ++a)
        for (std::int64_t b = 0; b < mod; ++b)
            for (std::int64_t c = 0; c < mod; ++c) {
                const Vec v{a, b, c};
                if (primitive(v, ell)) out.insert(class_min(v, ell, mod));
            }
    return out;
}

inline std::set<Vec> cone_classes(std::int64_t ell, std::int64_t mod) {
    std::set<Vec> out;
    for (const auto& v : projective_classes(ell, mod))
        if (md(2 * (2 * v[1] * v[1] - v[0] * v[2]), mod) == 0) out.insert(v);
    return out;
}

inline Vec apply(const Mat& m, const Vec& v, std::int64_t mod) {
    Vec r{};
    for (int i = 0; i < 3; ++i) r[i] = md(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2], mod);
    return r;
}

/// Cycle lengths of v -> M v on a set of classes, by following each cycle.
inline std::multiset<std::size_t> cycle_lengths(const Mat& m, const std::set<Vec>& classes, std::int64_t ell,
                                                std::int64_t mod) {
    std::multiset<std::size_t> out;
    std::set<Vec> seen;
    for (const auto& start : classes) {
        if (seen.count(start)) continue;
        std::size_t len = 0;
        Vec cur = start;
        do {
            seen.insert(cur);
            cur = class_min(apply(m, cur, mod), ell, mod);
            ++len;
        } while (cur != start && len <= classes.size());
        out.insert(len);
    }
    return out;
}

/// Real substitution action: coordinates of f(h (x,y)) in the basis x^2, 2 sqrt2 xy, y^2,
/// where h = T g T^-1 with T = diag(2^(-1/4), 2^(1/4)) or its inverse, optionally transposed.
inline std::array<std::array<double, 3>, 3> real_twisted_image(const std::array<std::array<double, 2>, 2>& g,
                                                                bool right, bool inverse_twist) {
    const double r = std::pow(2.0, 0.25);
    const double t0 = inverse_twist ? r : 1.0 / r;
    const double t1 = inverse_twist ? 1.0 / r : r;
    std::array<std::array<double, 2>, 2> h{{{g[0][0], g[0][1] * t0 / t1}, {g[1][0] * t1 / t0, g[1][1]}}};
    if (right) std::swap(h[0][1], h[1][0]);
    const double s2 = std::sqrt(2.0);
    auto eval = [&](const std::array<double, 3>& f, double x, double y) {
        const double X = h[0][0] * x + h[0][1] * y, Y = h[1][0] * x + h[1][1] * y;
        return f[0] * X * X + 2 * s2 * f[1] * X * Y + f[2] * Y * Y;
    };
    std::array<std::array<double, 3>, 3> out{};
    for (int col = 0; col < 3; ++col) {
        std::array<double, 3> f{};
        f[col] = 1.0;
        const double a = eval(f, 1, 0), c = eval(f, 0, 1), s = eval(f, 1, 1);
        out[0][col] = a;
        out[1][col] = (s - a - c) / (2 * s2);
        out[2][col] = c;
    }
    return out;
}

/// F_(p^2) = F_p[t]/(t^2 - r) with r a non-square; elements (a, b) = a + b t.
struct QuadraticField {
    std::int64_t p;
    std::int64_t r;

    explicit QuadraticField(std::int64_t prime) : p(prime), r(0) {
        for (std::int64_t c = 1; c < p && r == 0; ++c) {
            bool square = false;
            for (std::int64_t x = 0; x < p; ++x)
                if (md(x * x, p) == c) square = true;
            if (!square) r = c;
        }
    }

    using Elem = std::array<std::int64_t, 2>;
    Elem mul(const Elem& x, const Elem& y) const {
        return {md(x[0] * y[0] + r * x[1] * y[1], p), md(x[0] * y[1] + x[1] * y[0], p)};
    }
    Elem add(const Elem& x, const Elem& y) const { return {md(x[0] + y[0], p), md(x[1] + y[1], p)}; }
};

/// Projective points of x0^4 + x1^4 + x2^4 + x3^4 = 0 over F_(p^2) by a literal 4-fold loop.
inline std::int64_t fermat_quartic_count(std::int64_t p) {
    const QuadraticField f(p);
    std::vector<QuadraticField::Elem> elems, fourth;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) elems.push_back({a, b});
    for (const auto& e : elems) {
        const auto sq = f.mul(e, e);
        fourth.push_back(f.mul(sq, sq));
    }
    std::int64_t zeros = 0;
    for (const auto& a : fourth)
        for (const auto& b : fourth)
            for (const auto& c : fourth)
                for (const auto& d : fourth) {
                    const auto s = f.add(f.add(a, b), f.add(c, d));
                    if (s[0] == 0 && s[1] == 0) ++zeros;
                }
    const std::int64_t q = p * p;
    return (zeros - 1) / (q - 1);
}

}  // namespace oracle
