#pragma once

/**
 * @file projective.hpp
 * @brief The projectivization P_n(V) of V = (Z/l^n)^3.
 *
 * A vector v is primitive when l^(n-1) v != 0, i.e. when some coordinate is
 * a unit. P_n(V) is the set of primitive vectors modulo the unit group of
 * Z/l^n. Each class is represented by the unique vector whose lowest-index
 * unit coordinate equals 1.
 *
 * A homomorphism phi: (Z/l^n)^3 -> (Z/l^m)^3 with l * ker(phi) = 0 induces a
 * map P_n -> P_m; ModuleHom, kernel_condition() and induced_map() implement
 * that construction, with coordinatewise reduction (reduce()) as the case
 * used by the tower.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "zmod.hpp"

namespace k3tower {

/// Upper bound on l^(3n) for exhaustive sweeps of (Z/l^n)^3.
inline constexpr std::int64_t kMaxSweep = std::int64_t{1} << 24;

class ProjPoint {
public:
    const Level& level() const noexcept { return level_; }
    const IntVector& coords() const noexcept { return coords_; }
    std::int64_t operator[](std::size_t i) const { return coords_[i]; }

    /// Index of the lowest unit coordinate (the one equal to 1).
    std::size_t pivot() const {
        for (std::size_t i = 0; i < 3; ++i)
            if (is_unit(coords_[i], level_)) return i;
        return 3;  // unreachable for a valid point
    }

    ResidueVector vector() const { return {coords_, level_}; }

    bool operator==(const ProjPoint& o) const { return level_ == o.level_ && coords_ == o.coords_; }
    /// Lexicographic on coordinates; only meaningful within one level.
    auto operator<=>(const ProjPoint& o) const { return coords_ <=> o.coords_; }

    std::string to_string() const {
        return "(" + std::to_string(coords_[0]) + "," + std::to_string(coords_[1]) + "," +
               std::to_string(coords_[2]) + ")";
    }

private:
    friend ProjPoint canonicalize(const ResidueVector& v);
    friend ProjPoint make_canonical_unchecked(const IntVector& coords, const Level& level);
    ProjPoint(const IntVector& coords, const Level& level) : level_(level), coords_(coords) {}

    Level level_;
    IntVector coords_;
};

/// For callers that already hold canonical coordinates (enumeration, lifting).
inline ProjPoint make_canonical_unchecked(const IntVector& coords, const Level& level) { return {coords, level}; }

inline bool is_primitive(const IntVector& coords, const Level& level) {
    return is_unit(coords[0], level) || is_unit(coords[1], level) || is_unit(coords[2], level);
}

inline ProjPoint canonicalize(const ResidueVector& v) {
    const Level& level = v.level();
    const IntVector& c = v.coords();
    for (std::size_t i = 0; i < 3; ++i) {
        if (!is_unit(c[i], level)) continue;
        const std::int64_t s = invert_mod(c[i], level);
        const std::int64_t m = level.modulus();
        return ProjPoint({mod_floor(c[0] * s, m), mod_floor(c[1] * s, m), mod_floor(c[2] * s, m)}, level);
    }
    throw error(ErrorCode::NotPrimitive, "vector (" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," +
                                             std::to_string(c[2]) + ") has no unit coordinate mod " +
                                             std::to_string(level.modulus()));
}

inline ProjPoint canonicalize(const IntVector& coords, const Level& level) {
    return canonicalize(ResidueVector(coords, level));
}

inline std::int64_t projective_size(const Level& level) {
    const std::int64_t l = level.ell();
    return ipow(l, 2 * (level.n() - 1)) * (l * l + l + 1);
}

inline void guard_sweep(const Level& level) {
    const std::int64_t m = level.modulus();
    if (m > kMaxSweep || m * m > kMaxSweep || m * m * m > kMaxSweep)
        throw error(ErrorCode::TooLarge, "sweep of (Z/" + std::to_string(m) + ")^3 exceeds the size guard of " +
                                             std::to_string(kMaxSweep) + " vectors");
}

/// Every point of P_n((Z/l^n)^3), each once, in lexicographic order.
inline std::vector<ProjPoint> enumerate_points(const Level& level) {
    guard_sweep(level);
    const std::int64_t m = level.modulus();
    const std::int64_t l = level.ell();
    std::vector<ProjPoint> out;
    out.reserve(static_cast<std::size_t>(projective_size(level)));
    // pivot 0: (1, *, *)
    for (std::int64_t b = 0; b < m; ++b)
        for (std::int64_t c = 0; c < m; ++c) out.push_back(make_canonical_unchecked({1, b, c}, level));
    // pivot 1: (l*, 1, *)
    for (std::int64_t a = 0; a < m; a += l)
        for (std::int64_t c = 0; c < m; ++c) out.push_back(make_canonical_unchecked({a, 1, c}, level));
    // pivot 2: (l*, l*, 1)
    for (std::int64_t a = 0; a < m; a += l)
        for (std::int64_t b = 0; b < m; b += l) out.push_back(make_canonical_unchecked({a, b, 1}, level));
    std::sort(out.begin(), out.end());
    return out;
}

/// Image of p under the projective action of a matrix invertible mod l.
inline ProjPoint act(const ResidueMatrix& m, const ProjPoint& p) {
    require_same_level(m.level(), p.level());
    return canonicalize(apply(m, p.vector()));
}

/// Coordinatewise reduction P_n -> P_(n-1).
inline ProjPoint reduce(const ProjPoint& p) {
    const Level& level = p.level();
    if (level.n() == 1) throw error(ErrorCode::BottomLevel, "cannot reduce a point of level n = 1");
    return canonicalize(p.coords(), level.with_exponent(level.n() - 1));
}

/// A homomorphism (Z/l^n)^3 -> (Z/l^m)^3, m <= n, given by an integer matrix.
class ModuleHom {
public:
    ModuleHom(const Level& source, const Level& target, const IntMatrix& matrix)
        : source_(source), target_(target), matrix_(ResidueMatrix(matrix, target).entries()) {
        if (source.ell() != target.ell())
            throw error(ErrorCode::LevelMismatch, "source and target primes differ");
        if (target.n() > source.n())
            throw error(ErrorCode::LevelMismatch, "target exponent exceeds source exponent");
    }

    /// Reduction (Z/l^n)^3 -> (Z/l^(n-1))^3.
    static ModuleHom reduction(const Level& source) {
        if (source.n() == 1) throw error(ErrorCode::BottomLevel, "no reduction below n = 1");
        return {source, source.with_exponent(source.n() - 1), mat_identity()};
    }

    const Level& source() const noexcept { return source_; }
    const Level& target() const noexcept { return target_; }
    const IntMatrix& matrix() const noexcept { return matrix_; }

    IntVector operator()(const IntVector& v) const { return mat_vec_mod(matrix_, v, target_.modulus()); }

private:
    Level source_;
    Level target_;
    IntMatrix matrix_;
};

/// First v in the source with phi(v) = 0 but l v != 0, if any.
inline std::optional<IntVector> kernel_violation(const ModuleHom& phi) {
    const Level& src = phi.source();
    guard_sweep(src);
    const std::int64_t m = src.modulus();
    const std::int64_t l = src.ell();
    for (std::int64_t a = 0; a < m; ++a)
        for (std::int64_t b = 0; b < m; ++b)
            for (std::int64_t c = 0; c < m; ++c) {
                const IntVector v{a, b, c};
                const IntVector image = phi(v);
                if (image[0] != 0 || image[1] != 0 || image[2] != 0) continue;
                if ((l * a) % m != 0 || (l * b) % m != 0 || (l * c) % m != 0) return v;
            }
    return std::nullopt;
}

/// True iff l * ker(phi) = 0, by exhaustive sweep of the source module.
inline bool kernel_condition(const ModuleHom& phi) { return !kernel_violation(phi).has_value(); }

namespace detail {

inline ProjPoint induced_image(const ModuleHom& phi, const ProjPoint& p) {
    require_same_level(phi.source(), p.level());
    return canonicalize(phi(p.coords()), phi.target());
}

inline void require_kernel_condition(const ModuleHom& phi) {
    if (auto v = kernel_violation(phi))
        throw error(ErrorCode::KernelTooLarge, "phi kills (" + std::to_string((*v)[0]) + "," +
                                                   std::to_string((*v)[1]) + "," + std::to_string((*v)[2]) +
                                                   ") which is not l-torsion");
}

}  // namespace detail

/// The map P_n -> P_m induced by phi. Checks l * ker(phi) = 0 first.
inline ProjPoint induced_map(const ModuleHom& phi, const ProjPoint& p) {
    detail::require_kernel_condition(phi);
    return detail::induced_image(phi, p);
}

/// Batch form: the kernel sweep runs once for all points.
inline std::vector<ProjPoint> induced_map(const ModuleHom& phi, std::span<const ProjPoint> points) {
    detail::require_kernel_condition(phi);
    std::vector<ProjPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(detail::induced_image(phi, p));
    return out;
}

}  // namespace k3tower
