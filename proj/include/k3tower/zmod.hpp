#pragma once

/**
 * @file zmod.hpp
 * @brief Exact arithmetic in Z/l^n for an odd prime l.
 *
 * Residues are kept in machine words. A Level refuses moduli l^n >= 2^31 so
 * that every product of two residues fits in an int64_t before reduction.
 * Rank-3 vectors and 3x3 matrices over Z/l^n are provided because every
 * module in this library is free of rank 3.
 */

#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>

#include "error.hpp"

namespace k3tower {

using IntVector = std::array<std::int64_t, 3>;
using IntMatrix = std::array<std::array<std::int64_t, 3>, 3>;

constexpr bool is_prime(std::int64_t x) {
    if (x < 2) return false;
    for (std::int64_t d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

/// x mod m in [0, m).
constexpr std::int64_t mod_floor(std::int64_t x, std::int64_t m) {
    const std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

/// l^e as an int64, no overflow checking.
constexpr std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

/// The ring Z/l^n: an odd prime l, an exponent n >= 1 and the cached modulus.
class Level {
public:
    static constexpr std::int64_t kModulusLimit = std::int64_t{1} << 31;

    Level(std::int64_t ell, int n) : ell_(ell), n_(n) {
        if (ell == 2)
            throw error(ErrorCode::InvalidEll, "ell = 2 is not supported; the quadratic form is degenerate mod 2");
        if (!is_prime(ell))
            throw error(ErrorCode::InvalidEll, "ell = " + std::to_string(ell) + " is not an odd prime");
        if (n < 1) throw error(ErrorCode::InvalidLevel, "n must be >= 1, got " + std::to_string(n));
        modulus_ = 1;
        for (int i = 0; i < n; ++i) {
            modulus_ *= ell;
            if (modulus_ >= kModulusLimit)
                throw error(ErrorCode::TooLarge,
                            std::to_string(ell) + "^" + std::to_string(n) + " exceeds 2^31");
        }
    }

    std::int64_t ell() const noexcept { return ell_; }
    int n() const noexcept { return n_; }
    std::int64_t modulus() const noexcept { return modulus_; }

    /// Same prime, exponent m.
    Level with_exponent(int m) const { return Level(ell_, m); }

    bool operator==(const Level&) const = default;

private:
    std::int64_t ell_;
    int n_;
    std::int64_t modulus_;
};

inline void require_same_level(const Level& a, const Level& b) {
    if (!(a == b))
        throw error(ErrorCode::LevelMismatch, "operands live in Z/" + std::to_string(a.modulus()) + " and Z/" +
                                                  std::to_string(b.modulus()));
}

class ResidueInt {
public:
    ResidueInt(std::int64_t value, const Level& level) : level_(level), value_(mod_floor(value, level.modulus())) {}

    const Level& level() const noexcept { return level_; }
    std::int64_t value() const noexcept { return value_; }

    friend ResidueInt operator+(const ResidueInt& a, const ResidueInt& b) {
        require_same_level(a.level_, b.level_);
        return {a.value_ + b.value_, a.level_};
    }
    friend ResidueInt operator-(const ResidueInt& a, const ResidueInt& b) {
        require_same_level(a.level_, b.level_);
        return {a.value_ - b.value_, a.level_};
    }
    friend ResidueInt operator*(const ResidueInt& a, const ResidueInt& b) {
        require_same_level(a.level_, b.level_);
        return {a.value_ * b.value_, a.level_};
    }
    ResidueInt operator-() const { return {-value_, level_}; }

    bool operator==(const ResidueInt&) const = default;

private:
    Level level_;
    std::int64_t value_;
};

inline ResidueInt residue(std::int64_t value, const Level& level) { return ResidueInt(value, level); }

/// Largest v <= n with l^v dividing the representative; valuation(0) = n.
inline int valuation(std::int64_t value, const Level& level) {
    std::int64_t v = mod_floor(value, level.modulus());
    if (v == 0) return level.n();
    int k = 0;
    while (v % level.ell() == 0) {
        v /= level.ell();
        ++k;
    }
    return k;
}

inline int valuation(const ResidueInt& x) { return valuation(x.value(), x.level()); }

inline bool is_unit(std::int64_t value, const Level& level) { return mod_floor(value, level.ell()) != 0; }

/// Inverse modulo l^n by the extended Euclidean algorithm.
inline std::int64_t invert_mod(std::int64_t value, const Level& level) {
    const std::int64_t m = level.modulus();
    std::int64_t a = mod_floor(value, m);
    if (!is_unit(a, level))
        throw error(ErrorCode::NotAUnit, std::to_string(a) + " is not invertible mod " + std::to_string(m));
    std::int64_t old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    return mod_floor(old_s, m);
}

inline ResidueInt invert(const ResidueInt& x) { return {invert_mod(x.value(), x.level()), x.level()}; }

/// An element of the free module (Z/l^n)^3.
class ResidueVector {
public:
    ResidueVector(const IntVector& coords, const Level& level) : level_(level) {
        for (std::size_t i = 0; i < 3; ++i) coords_[i] = mod_floor(coords[i], level.modulus());
    }

    const Level& level() const noexcept { return level_; }
    const IntVector& coords() const noexcept { return coords_; }
    ResidueInt operator[](std::size_t i) const { return {coords_[i], level_}; }

    bool is_zero() const { return coords_[0] == 0 && coords_[1] == 0 && coords_[2] == 0; }

    friend ResidueVector operator+(const ResidueVector& a, const ResidueVector& b) {
        require_same_level(a.level_, b.level_);
        return {{a.coords_[0] + b.coords_[0], a.coords_[1] + b.coords_[1], a.coords_[2] + b.coords_[2]}, a.level_};
    }
    friend ResidueVector operator*(const ResidueInt& s, const ResidueVector& v) {
        require_same_level(s.level(), v.level_);
        const std::int64_t k = s.value();
        return {{k * v.coords_[0], k * v.coords_[1], k * v.coords_[2]}, v.level_};
    }

    bool operator==(const ResidueVector&) const = default;

private:
    Level level_;
    IntVector coords_{};
};

/// A 3x3 matrix over Z/l^n.
class ResidueMatrix {
public:
    ResidueMatrix(const IntMatrix& entries, const Level& level) : level_(level) {
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) entries_[i][j] = mod_floor(entries[i][j], level.modulus());
    }

    static ResidueMatrix identity(const Level& level) { return {{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, level}; }

    const Level& level() const noexcept { return level_; }
    const IntMatrix& entries() const noexcept { return entries_; }

    bool operator==(const ResidueMatrix&) const = default;

private:
    Level level_;
    IntMatrix entries_{};
};

/// M * v over plain integers, reduced mod m.
inline IntVector mat_vec_mod(const IntMatrix& m, const IntVector& v, std::int64_t modulus) {
    IntVector out{};
    for (std::size_t i = 0; i < 3; ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = 0; j < 3; ++j) acc = mod_floor(acc + mod_floor(m[i][j], modulus) * v[j], modulus);
        out[i] = acc;
    }
    return out;
}

inline ResidueVector apply(const ResidueMatrix& m, const ResidueVector& v) {
    require_same_level(m.level(), v.level());
    return {mat_vec_mod(m.entries(), v.coords(), v.level().modulus()), v.level()};
}

// Integer 3x3 helpers (exact over Z; callers keep entries small).

inline IntMatrix mat_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline IntMatrix mat_sub(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) c[i][j] = a[i][j] - b[i][j];
    return c;
}

inline IntMatrix mat_scale(const IntMatrix& a, std::int64_t s) {
    IntMatrix c = a;
    for (auto& row : c)
        for (auto& x : row) x *= s;
    return c;
}

inline bool mat_is_zero(const IntMatrix& a) {
    for (const auto& row : a)
        for (auto x : row)
            if (x != 0) return false;
    return true;
}

inline IntVector mat_vec(const IntMatrix& m, const IntVector& v) {
    IntVector out{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline std::int64_t mat_det(const IntMatrix& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline IntMatrix mat_adjugate(const IntMatrix& m) {
    IntMatrix adj{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            // cofactor C_ji goes to adj[i][j]
            const std::size_t r0 = (j + 1) % 3, r1 = (j + 2) % 3;
            const std::size_t c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            adj[i][j] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    }
    return adj;
}

/// Inverse over Z/l^n; NotInvertible when det is divisible by l.
inline ResidueMatrix inverse(const ResidueMatrix& m) {
    const Level& level = m.level();
    const std::int64_t det = mod_floor(mat_det(m.entries()), level.modulus());
    if (!is_unit(det, level))
        throw error(ErrorCode::NotInvertible,
                    "matrix determinant " + std::to_string(det) + " is not a unit mod " + std::to_string(level.modulus()));
    const std::int64_t det_inv = invert_mod(det, level);
    IntMatrix adj = mat_adjugate(m.entries());
    for (auto& row : adj)
        for (auto& x : row) x = mod_floor(mod_floor(x, level.modulus()) * det_inv, level.modulus());
    return {adj, level};
}

inline ResidueMatrix operator*(const ResidueMatrix& a, const ResidueMatrix& b) {
    require_same_level(a.level(), b.level());
    const std::int64_t m = a.level().modulus();
    IntMatrix c{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            std::int64_t acc = 0;
            for (std::size_t k = 0; k < 3; ++k) acc = mod_floor(acc + a.entries()[i][k] * b.entries()[k][j], m);
            c[i][j] = acc;
        }
    return {c, a.level()};
}

}  // namespace k3tower
