#pragma once

/**
 * @file tower.hpp
 * @brief Degrees, ramification and genera of the tower of covers of the
 *        lambda-line cut out by the degenerate cone D_n.
 *
 * The cover C_n -> C_0 = P^1 has degree |D_n| = (l+1) l^(n-1). Over each
 * singular fiber the points of C_n correspond to orbits of the local
 * monodromy on D_n and the ramification index of a point is the size of its
 * orbit, so Riemann-Hurwitz over a genus-0 base gives
 *
 *     2 g_n - 2 = -2 deg + sum over branch points of (deg - #orbits).
 *
 * The default branch data is one maximally unipotent point (lambda = inf)
 * and four involution points (lambda^4 = 1).
 */

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "fermat.hpp"
#include "fricke.hpp"
#include "orbits.hpp"
#include "zmod.hpp"

namespace k3tower {

using Rational = boost::rational<std::int64_t>;

enum class BranchKind { MUM, involution, custom };

constexpr std::string_view to_string(BranchKind k) {
    switch (k) {
        case BranchKind::MUM: return "MUM";
        case BranchKind::involution: return "involution";
        case BranchKind::custom: return "custom";
    }
    return "custom";
}

inline BranchKind parse_branch_kind(std::string_view s) {
    if (s == "MUM") return BranchKind::MUM;
    if (s == "involution") return BranchKind::involution;
    if (s == "custom") return BranchKind::custom;
    throw error(ErrorCode::ConfigError, "unknown branch kind '" + std::string(s) + "'");
}

class BranchSpec {
public:
    /// Without a matrix, MUM defaults to sigma(t) and involution to sigma(w).
    BranchSpec(std::string label, BranchKind kind, std::optional<SimilitudeMatrix> matrix = std::nullopt)
        : label_(std::move(label)), kind_(kind), matrix_(resolve(kind, std::move(matrix))) {
        if (kind_ == BranchKind::MUM && !is_maximally_unipotent(matrix_.matrix()) &&
            !is_maximally_unipotent(mat_scale(matrix_.matrix(), -1)))
            throw error(ErrorCode::InvalidBranch, label_ + ": MUM matrix must satisfy (M-I)^3 = 0 != (M-I)^2");
        if (kind_ == BranchKind::involution && !is_projective_involution(matrix_.matrix()))
            throw error(ErrorCode::InvalidBranch, label_ + ": involution matrix must square to a scalar");
    }

    const std::string& label() const noexcept { return label_; }
    BranchKind kind() const noexcept { return kind_; }
    const SimilitudeMatrix& matrix() const noexcept { return matrix_; }

private:
    static SimilitudeMatrix resolve(BranchKind kind, std::optional<SimilitudeMatrix> m) {
        if (m) return *m;
        switch (kind) {
            case BranchKind::MUM: return default_generators().t;
            case BranchKind::involution: return default_generators().w;
            case BranchKind::custom: break;
        }
        throw error(ErrorCode::InvalidBranch, "custom branch points need an explicit matrix");
    }

    std::string label_;
    BranchKind kind_;
    SimilitudeMatrix matrix_;
};

inline std::vector<BranchSpec> default_branches() {
    return {
        BranchSpec("lambda=inf", BranchKind::MUM),
        BranchSpec("lambda=1", BranchKind::involution),
        BranchSpec("lambda=-1", BranchKind::involution),
        BranchSpec("lambda=i", BranchKind::involution),
        BranchSpec("lambda=-i", BranchKind::involution),
    };
}

inline std::int64_t covering_degree(std::int64_t ell, int n) { return cone_size(Level(ell, n)); }

struct Ramification {
    CycleProfile profile;
    std::int64_t sum = 0;  // degree - number of orbits
};

inline Ramification ramification_at(const BranchSpec& b, std::span<const ProjPoint> cone) {
    Ramification r{cyclic_profile(b.matrix(), cone), 0};
    r.sum = static_cast<std::int64_t>(r.profile.ramification_sum());
    return r;
}

inline Ramification ramification_at(const BranchSpec& b, const Level& level) {
    const auto cone = degenerate_cone(level);
    return ramification_at(b, cone);
}

/// g = 1 - degree + (sum of ramification)/2 over a genus-0 base.
inline std::int64_t hurwitz_genus(std::int64_t degree, std::span<const std::int64_t> sums) {
    std::int64_t total = -2 * degree;
    for (auto s : sums) total += s;
    if (total % 2 != 0)
        throw error(ErrorCode::InconsistentRamification, "2g - 2 = " + std::to_string(total) + " is odd");
    if (total < -2)
        throw error(ErrorCode::InconsistentRamification, "2g - 2 = " + std::to_string(total) + " gives negative genus");
    return total / 2 + 1;
}

inline std::int64_t hurwitz_genus(std::int64_t degree, std::initializer_list<std::int64_t> sums) {
    return hurwitz_genus(degree, std::span<const std::int64_t>(sums.begin(), sums.size()));
}

struct GenusBounds {
    Rational paper_bound;     // (l+1) l^(n-1) / 2
    std::int64_t safe_bound;  // floor of that, plus one
};

/**
 * The stated bound is D/2. The inequalities R0 <= D and R <= 2D only give
 * 2g - 2 <= D, i.e. g <= D/2 + 1; both are returned.
 */
inline GenusBounds genus_bounds(std::int64_t ell, int n) {
    const std::int64_t d = covering_degree(ell, n);
    return {Rational(d, 2), d / 2 + 1};
}

/// A ratio that may be infinite (positive over zero) or undefined (zero over zero).
struct Ratio {
    enum class Kind { finite, infinite, undefined };
    Kind kind = Kind::finite;
    Rational value{0};

    static Ratio of(std::int64_t num, std::int64_t den) {
        if (den != 0) return {Kind::finite, Rational(num, den)};
        return {num == 0 ? Kind::undefined : Kind::infinite, Rational(0)};
    }
};

struct BranchRamification {
    std::string label;
    BranchKind kind;
    Ramification ramification;
};

struct LevelReport {
    int n = 0;
    std::int64_t degree = 0;
    bool connected = false;
    std::vector<BranchRamification> ramification;
    std::int64_t R0 = 0;  // MUM points
    std::int64_t R = 0;   // everything else
    std::int64_t genus_exact = 0;
    Rational genus_paper_bound{0};
    std::int64_t genus_safe_bound = 0;
    bool exceeds_paper_bound = false;
    bool exceeds_safe_bound = false;
    std::int64_t n_points_lower = 0;
    Ratio ratio_lower;
};

enum class Classification { optimal, good, unknown };

constexpr std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::optimal: return "optimal";
        case Classification::good: return "good";
        case Classification::unknown: return "unknown";
    }
    return "unknown";
}

struct TowerConfig {
    std::int64_t ell = 3;
    std::int64_t p = 3;
    int n_max = 2;
    std::vector<BranchSpec> branches = default_branches();
    /// Monodromy generators for the connectedness check; defaults to sigma(t), sigma(u), sigma(w).
    std::optional<std::vector<SimilitudeMatrix>> generators;
};

struct TowerReport {
    std::int64_t ell = 0;
    std::int64_t p = 0;
    std::vector<LevelReport> levels;
    std::int64_t dv_bound = 0;  // sqrt(p^2) - 1
    Rational asymptotic_ratio_lower{0};
    Classification classification = Classification::unknown;
    SupersingularCertificate certificate;
    std::optional<std::string> missing_certificate;
    std::vector<std::string> warnings;
    std::vector<int> paper_bound_violations;
};

/// lim D / (D/2 + 1) as D grows: the ratio of leading coefficients.
inline Rational split_fiber_ratio_limit() { return Rational(1) / Rational(1, 2); }

inline LevelReport level_report(const Level& level, std::span<const BranchSpec> branches,
                                 std::span<const SimilitudeMatrix> generators, bool certified) {
    LevelReport r;
    r.n = level.n();
    r.degree = cone_size(level);
    const auto cone = degenerate_cone(level);
    if (static_cast<std::int64_t>(cone.size()) != r.degree)
        throw error(ErrorCode::InternalInconsistency, "|D_n| = " + std::to_string(cone.size()) + " but the covering degree is " +
                                                          std::to_string(r.degree));
    r.connected = is_transitive(ActionSpec(level, {generators.begin(), generators.end()}, cone)).transitive;

    std::vector<std::int64_t> sums;
    for (const auto& b : branches) {
        Ramification ram = ramification_at(b, cone);
        (b.kind() == BranchKind::MUM ? r.R0 : r.R) += ram.sum;
        sums.push_back(ram.sum);
        r.ramification.push_back({b.label(), b.kind(), std::move(ram)});
    }
    r.genus_exact = hurwitz_genus(r.degree, sums);
    const GenusBounds bounds = genus_bounds(level.ell(), level.n());
    r.genus_paper_bound = bounds.paper_bound;
    r.genus_safe_bound = bounds.safe_bound;
    r.exceeds_paper_bound = Rational(r.genus_exact) > bounds.paper_bound;
    r.exceeds_safe_bound = r.genus_exact > bounds.safe_bound;
    // a split fiber over F_(p^2) contributes deg rational points
    r.n_points_lower = certified ? r.degree : 0;
    r.ratio_lower = Ratio::of(r.n_points_lower, r.genus_exact);
    return r;
}

/// Full tower report. The certificate is computed by the caller (it is the expensive part).
inline TowerReport tower_report(const TowerConfig& config, SupersingularCertificate certificate) {
    require_odd_prime(config.p, "p");
    const Level base(config.ell, 1);
    if (config.n_max < 1) throw error(ErrorCode::ConfigError, "n_max must be >= 1");
    if (certificate.p != config.p) throw error(ErrorCode::ConfigError, "certificate was computed for a different p");

    TowerReport report;
    report.ell = config.ell;
    report.p = config.p;
    report.dv_bound = config.p - 1;
    if (config.ell == config.p)
        report.warnings.push_back("ell equals p; the l-adic local system needs ell != p, the combinatorial data is unaffected");

    bool certified = certificate.holds && certificate.p_is_3_mod_4 && certificate.good_fiber;
    if (!certified) {
        std::string why;
        if (!certificate.p_is_3_mod_4) why = "p is not 3 mod 4";
        if (!certificate.holds) why += std::string(why.empty() ? "" : "; ") + "Fermat quartic count does not match 1 + 22 eps q + q^2";
        if (!certificate.good_fiber) why += std::string(why.empty() ? "" : "; ") + "lambda = 0 is a bad fiber";
        report.missing_certificate = std::string(to_string(ErrorCode::MissingCertificate)) + ": " + why;
    }
    report.certificate = std::move(certificate);

    const std::vector<SimilitudeMatrix> gens = config.generators.value_or(default_generators().all());
    for (int n = 1; n <= config.n_max; ++n) {
        LevelReport lr = level_report(base.with_exponent(n), config.branches, gens, certified);
        if (lr.exceeds_paper_bound) report.paper_bound_violations.push_back(n);
        if (lr.exceeds_safe_bound)
            report.warnings.push_back("genus exceeds D/2 + 1 at n = " + std::to_string(n) +
                                      "; the branch data is not of the default shape");
        report.levels.push_back(std::move(lr));
    }

    report.asymptotic_ratio_lower = certified ? split_fiber_ratio_limit() : Rational(0);
    if (!certified) report.classification = Classification::unknown;
    else if (report.asymptotic_ratio_lower == Rational(report.dv_bound)) report.classification = Classification::optimal;
    else if (report.asymptotic_ratio_lower > 0) report.classification = Classification::good;
    return report;
}

inline TowerReport tower_report(const TowerConfig& config, int m_max = 1) {
    require_odd_prime(config.p, "p");
    return tower_report(config, supersingular_certificate(config.p, m_max));
}

}  // namespace k3tower
