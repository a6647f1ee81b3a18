#pragma once

/**
 * @file fricke.hpp
 * @brief The lattice of binary forms a x^2 + 2 sqrt2 b xy + c y^2 and the
 *        action of the level-2 Fricke group on it.
 *
 * Coordinates (alpha, beta, gamma) refer to the basis x^2, 2 sqrt2 xy, y^2.
 * The quadratic form is Q = 2(2 beta^2 - alpha gamma); its zero locus is the
 * set of degenerate binary forms.
 *
 * A group element g in PGL(2, R) acts through the twist D g D^-1 (or
 * D^-1 g D) with D = diag(2^(-1/4), 2^(1/4)) followed by substitution into
 * the form. The twisted matrix has entries in Z[sqrt2, 1/2], so everything
 * below is exact. Which side the substitution happens on and which way the
 * twist goes are not fixed a priori; default_generators() tries all four
 * combinations and keeps the first one whose generator images are integral
 * isometries with the expected unipotent/involution shape.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "projective.hpp"
#include "sqrt2.hpp"
#include "zmod.hpp"

namespace k3tower {

struct QuadForm {
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    std::int64_t gamma = 0;

    IntVector coords() const { return {alpha, beta, gamma}; }
    bool operator==(const QuadForm&) const = default;
};

constexpr std::int64_t q_value(std::int64_t alpha, std::int64_t beta, std::int64_t gamma) {
    return 2 * (2 * beta * beta - alpha * gamma);
}
constexpr std::int64_t q_value(const QuadForm& f) { return q_value(f.alpha, f.beta, f.gamma); }
constexpr std::int64_t q_value(const IntVector& v) { return q_value(v[0], v[1], v[2]); }

/// Q(v) mod l^n for a point; well defined up to the square of a unit.
inline std::int64_t q_value_mod(const ProjPoint& p) {
    const std::int64_t m = p.level().modulus();
    const std::int64_t a = p[0], b = p[1], c = p[2];
    return mod_floor(2 * mod_floor(2 * mod_floor(b * b, m) - mod_floor(a * c, m), m), m);
}

/// An integer 3x3 matrix M with Q(Mv) = c Q(v) for all v.
class SimilitudeMatrix {
public:
    explicit SimilitudeMatrix(const IntMatrix& m) : matrix_(m) {
        // Q(e2) = 4, so c is read off there and then checked on a spanning set.
        const std::int64_t q2 = q_value(mat_vec(m, {0, 1, 0}));
        if (q2 % 4 != 0 || q2 == 0)
            throw error(ErrorCode::NotSimilitude, "Q(M e2) = " + std::to_string(q2) + " is not a nonzero multiple of Q(e2) = 4");
        factor_ = q2 / 4;
        static constexpr std::array<IntVector, 6> probes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}}};
        for (const auto& v : probes) {
            if (q_value(mat_vec(m, v)) != factor_ * q_value(v))
                throw error(ErrorCode::NotSimilitude, "Q(Mv) != c Q(v) at v = (" + std::to_string(v[0]) + "," +
                                                          std::to_string(v[1]) + "," + std::to_string(v[2]) + ")");
        }
    }

    const IntMatrix& matrix() const noexcept { return matrix_; }
    std::int64_t factor() const noexcept { return factor_; }

    IntVector operator()(const IntVector& v) const { return mat_vec(matrix_, v); }

    SimilitudeMatrix operator-() const { return SimilitudeMatrix(mat_scale(matrix_, -1)); }
    friend SimilitudeMatrix operator*(const SimilitudeMatrix& a, const SimilitudeMatrix& b) {
        return SimilitudeMatrix(mat_mul(a.matrix_, b.matrix_));
    }

    ResidueMatrix reduced(const Level& level) const { return {matrix_, level}; }

    bool is_identity() const { return matrix_ == mat_identity(); }

    /// Equal up to a global sign.
    bool projectively_equal(const SimilitudeMatrix& o) const {
        return matrix_ == o.matrix_ || matrix_ == mat_scale(o.matrix_, -1);
    }

    bool operator==(const SimilitudeMatrix&) const = default;

private:
    IntMatrix matrix_;
    std::int64_t factor_ = 1;
};

/// (M - I)^3 = 0 and (M - I)^2 != 0 over Z.
inline bool is_maximally_unipotent(const IntMatrix& m) {
    const IntMatrix n = mat_sub(m, mat_identity());
    const IntMatrix n2 = mat_mul(n, n);
    return !mat_is_zero(n2) && mat_is_zero(mat_mul(n2, n));
}

inline bool is_involution(const IntMatrix& m) { return mat_mul(m, m) == mat_identity(); }

/// M^2 is a scalar matrix (an involution in PGL).
inline bool is_projective_involution(const IntMatrix& m) {
    const IntMatrix sq = mat_mul(m, m);
    return sq[0][0] != 0 && sq == mat_scale(mat_identity(), sq[0][0]);
}

// ---------------------------------------------------------------------------
// Group elements and the twisted action

using Sqrt2Matrix2 = std::array<std::array<Sqrt2Scalar, 2>, 2>;
using Sqrt2Matrix3 = std::array<std::array<Sqrt2Scalar, 3>, 3>;

enum class Coset { even, odd };

class FrickeElement {
public:
    FrickeElement(const Sqrt2Matrix2& m, Coset coset) : m_(m), coset_(coset) {
        if ((m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero())
            throw error(ErrorCode::ConfigError, "singular matrix is not a group element");
    }

    /// Element of Gamma_0(2): integer entries, ad - bc = 1, c even.
    static FrickeElement gamma0(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
        if (a * d - b * c != 1) throw error(ErrorCode::ConfigError, "Gamma_0(2) element must have determinant 1");
        if (c % 2 != 0) throw error(ErrorCode::ConfigError, "Gamma_0(2) element must have even lower-left entry");
        return {{{{Sqrt2Scalar(a), Sqrt2Scalar(b)}, {Sqrt2Scalar(c), Sqrt2Scalar(d)}}}, Coset::even};
    }

    /// [[0, -1/sqrt2], [sqrt2, 0]], i.e. z -> -1/(2z).
    static FrickeElement fricke_involution() {
        return {{{{Sqrt2Scalar(0), -Sqrt2Scalar::inv_sqrt2()}, {Sqrt2Scalar::sqrt2(), Sqrt2Scalar(0)}}}, Coset::odd};
    }

    static FrickeElement identity() { return gamma0(1, 0, 0, 1); }

    const Sqrt2Matrix2& entries() const noexcept { return m_; }
    Coset coset() const noexcept { return coset_; }

private:
    Sqrt2Matrix2 m_;
    Coset coset_;
};

enum class Substitution { left, right };
enum class Twist { D, D_inverse };

struct Convention {
    Substitution side = Substitution::left;
    Twist twist = Twist::D;

    bool operator==(const Convention&) const = default;

    std::string to_string() const {
        return std::string(side == Substitution::left ? "left-sub" : "right-sub") + "," +
               (twist == Twist::D ? "D" : "D-inverse");
    }
};

inline constexpr std::array<Convention, 4> kAllConventions{{
    {Substitution::left, Twist::D},
    {Substitution::left, Twist::D_inverse},
    {Substitution::right, Twist::D},
    {Substitution::right, Twist::D_inverse},
}};

/**
 * Matrix of f -> f o h on (alpha, beta, gamma), where h is the twisted group
 * element (transposed for right substitution) and f o h means
 * x -> a x + b y, y -> c x + d y.
 */
inline Sqrt2Matrix3 twisted_image(const FrickeElement& g, Convention conv) {
    const auto& e = g.entries();
    // D g D^-1 scales the off-diagonal entries by 2^(-1/2) (upper) and 2^(1/2) (lower).
    Sqrt2Scalar a = e[0][0], b = e[0][1], c = e[1][0], d = e[1][1];
    if (conv.twist == Twist::D) {
        b = b.div_sqrt2();
        c = c.times_sqrt2();
    } else {
        b = b.times_sqrt2();
        c = c.div_sqrt2();
    }
    if (conv.side == Substitution::right) std::swap(b, c);

    const Sqrt2Scalar two(2);
    Sqrt2Matrix3 out;
    out[0] = {a * a, (two * a * c).times_sqrt2(), c * c};
    out[1] = {(a * b).div_sqrt2(), a * d + b * c, (c * d).div_sqrt2()};
    out[2] = {b * b, (two * b * d).times_sqrt2(), d * d};
    return out;
}

struct IntegralScaling {
    int root2_exponent = 0;  // grid was multiplied by 2^(j/2)
    IntMatrix matrix{};
};

/// Smallest |j| (j in [-8, 8], non-negative first) making 2^(j/2) M integral.
inline std::optional<IntegralScaling> integralize(const Sqrt2Matrix3& grid) {
    for (int mag = 0; mag <= 8; ++mag) {
        for (int j : {mag, -mag}) {
            IntMatrix out{};
            bool ok = true;
            for (std::size_t r = 0; r < 3 && ok; ++r)
                for (std::size_t s = 0; s < 3 && ok; ++s) {
                    const Sqrt2Scalar v = grid[r][s].scaled_by_root2_power(j);
                    if (!v.is_integer()) ok = false;
                    else out[r][s] = v.rational_part();
                }
            if (ok) return IntegralScaling{j, out};
            if (mag == 0) break;
        }
    }
    return std::nullopt;
}

/// Rescale by a power of sqrt2 to an integral similitude.
inline SimilitudeMatrix normalize_integral(const Sqrt2Matrix3& grid) {
    auto scaled = integralize(grid);
    if (!scaled) throw error(ErrorCode::NotIntegralizable, "no power of sqrt2 makes every entry an integer");
    return SimilitudeMatrix(scaled->matrix);
}

// ---------------------------------------------------------------------------
// Default generators

struct DefaultGenerators {
    Convention convention;
    SimilitudeMatrix t;  // image of [[1,1],[0,1]]
    SimilitudeMatrix u;  // image of [[1,0],[2,1]]
    SimilitudeMatrix w;  // image of the Fricke involution

    std::vector<SimilitudeMatrix> all() const { return {t, u, w}; }
};

namespace detail {

inline std::optional<SimilitudeMatrix> integral_isometry(const FrickeElement& g, Convention conv) {
    auto scaled = integralize(twisted_image(g, conv));
    if (!scaled) return std::nullopt;
    try {
        SimilitudeMatrix m(scaled->matrix);
        if (m.factor() != 1) return std::nullopt;
        return m;
    } catch (const error&) {
        return std::nullopt;
    }
}

inline std::optional<SimilitudeMatrix> unipotent_sign(const SimilitudeMatrix& m) {
    if (is_maximally_unipotent(m.matrix())) return m;
    if (is_maximally_unipotent(mat_scale(m.matrix(), -1))) return -m;
    return std::nullopt;
}

}  // namespace detail

/// Generator images under one convention, or nullopt if any postcondition fails.
inline std::optional<DefaultGenerators> evaluate_convention(Convention conv) {
    auto t = detail::integral_isometry(FrickeElement::gamma0(1, 1, 0, 1), conv);
    auto u = detail::integral_isometry(FrickeElement::gamma0(1, 0, 2, 1), conv);
    auto w = detail::integral_isometry(FrickeElement::fricke_involution(), conv);
    if (!t || !u || !w) return std::nullopt;
    t = detail::unipotent_sign(*t);
    u = detail::unipotent_sign(*u);
    if (!t || !u || !is_involution(w->matrix())) return std::nullopt;
    return DefaultGenerators{conv, *t, *u, *w};
}

/// First convention (in kAllConventions order) passing every postcondition.
inline const DefaultGenerators& default_generators() {
    static const DefaultGenerators gens = [] {
        for (const auto& conv : kAllConventions)
            if (auto g = evaluate_convention(conv)) return *g;
        throw error(ErrorCode::ConventionSearchFailed, "no twist/substitution convention yields integral generators");
    }();
    return gens;
}

// ---------------------------------------------------------------------------
// The degenerate cone D_n

enum class ConeMethod { brute, hensel };

namespace detail {

inline std::vector<ProjPoint> cone_brute(const Level& level) {
    std::vector<ProjPoint> out;
    for (const auto& p : enumerate_points(level))
        if (q_value_mod(p) == 0) out.push_back(p);
    return out;
}

/// Lifts of a cone point from level n-1 to level n.
inline void lift_cone_point(const ProjPoint& p, const Level& level, std::vector<ProjPoint>& out) {
    const std::int64_t l = level.ell();
    const std::int64_t step = p.level().modulus();
    const std::size_t pivot = p.pivot();
    // gradient of Q is 2(-gamma, 4 beta, -alpha); it must not vanish mod l
    if (mod_floor(p[2], l) == 0 && mod_floor(4 * p[1], l) == 0 && mod_floor(p[0], l) == 0)
        throw error(ErrorCode::InternalInconsistency, "singular cone point " + p.to_string());
    std::size_t found = 0;
    for (std::int64_t d0 = 0; d0 < l; ++d0)
        for (std::int64_t d1 = 0; d1 < l; ++d1) {
            IntVector c = p.coords();
            std::size_t slot = 0;
            for (std::size_t i = 0; i < 3; ++i) {
                if (i == pivot) continue;
                c[i] += step * (slot++ == 0 ? d0 : d1);
            }
            const ProjPoint lifted = make_canonical_unchecked(c, level);
            if (q_value_mod(lifted) == 0) {
                out.push_back(lifted);
                ++found;
            }
        }
    if (found != static_cast<std::size_t>(l))
        throw error(ErrorCode::InternalInconsistency,
                    "cone point " + p.to_string() + " has " + std::to_string(found) + " lifts, expected " + std::to_string(l));
}

inline std::vector<ProjPoint> cone_hensel(const Level& level) {
    std::vector<ProjPoint> current = cone_brute(level.with_exponent(1));
    for (int k = 2; k <= level.n(); ++k) {
        const Level next = level.with_exponent(k);
        std::vector<ProjPoint> lifted;
        lifted.reserve(current.size() * static_cast<std::size_t>(level.ell()));
        for (const auto& p : current) lift_cone_point(p, next, lifted);
        current = std::move(lifted);
    }
    std::sort(current.begin(), current.end());
    return current;
}

}  // namespace detail

/// Points of P_n with Q = 0 mod l^n, sorted lexicographically.
inline std::vector<ProjPoint> degenerate_cone(const Level& level, ConeMethod method = ConeMethod::hensel) {
    return method == ConeMethod::brute ? detail::cone_brute(level) : detail::cone_hensel(level);
}

/// |D_n| = (l+1) l^(n-1).
inline std::int64_t cone_size(const Level& level) { return (level.ell() + 1) * ipow(level.ell(), level.n() - 1); }

}  // namespace k3tower
