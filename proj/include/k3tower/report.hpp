#pragma once

/**
 * @file report.hpp
 * @brief JSON/CSV rendering of results and parsing of generator / branch
 *        configuration files.
 *
 * All objects use ordered_json so key order is fixed by construction and
 * identical inputs serialize to identical bytes.
 */

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "error.hpp"
#include "fermat.hpp"
#include "fricke.hpp"
#include "orbits.hpp"
#include "projective.hpp"
#include "tower.hpp"

namespace k3tower {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "k3tower";
inline constexpr const char* kToolVersion = "0.1.0";

/// Integers beyond 2^53 - 1 are written as decimal strings.
inline json json_int(std::int64_t v) {
    constexpr std::int64_t kMaxSafe = (std::int64_t{1} << 53) - 1;
    if (v > kMaxSafe || v < -kMaxSafe) return std::to_string(v);
    return v;
}

/// Whole rationals become integers, the rest "num/den" strings.
inline json json_rational(const Rational& r) {
    if (r.denominator() == 1) return json_int(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline json json_ratio(const Ratio& r) {
    json j;
    switch (r.kind) {
        case Ratio::Kind::finite:
            j["status"] = "finite";
            j["value"] = json_rational(r.value);
            break;
        case Ratio::Kind::infinite: j["status"] = "infinite"; break;
        case Ratio::Kind::undefined: j["status"] = "undefined"; break;
    }
    return j;
}

inline json json_point(const ProjPoint& p) { return json::array({p[0], p[1], p[2]}); }

inline json json_matrix(const IntMatrix& m) {
    json rows = json::array();
    for (const auto& row : m) rows.push_back(json::array({json_int(row[0]), json_int(row[1]), json_int(row[2])}));
    return rows;
}

inline json json_error(const error& e) {
    return json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}, {"exit_code", exit_status(e.code())}};
}

// ---------------------------------------------------------------------------
// Results

inline json cone_json(const Level& level, const std::vector<ProjPoint>& cone) {
    json points = json::array();
    for (const auto& p : cone) points.push_back(json_point(p));
    const std::int64_t expected = cone_size(level);
    return json{{"ell", level.ell()},
                {"n", level.n()},
                {"size", json_int(static_cast<std::int64_t>(cone.size()))},
                {"expected_size", json_int(expected)},
                {"size_check", static_cast<std::int64_t>(cone.size()) == expected},
                {"points", std::move(points)}};
}

inline json orbits_json(const ActionSpec& spec, const OrbitDecomposition<ProjPoint>& dec) {
    json orbits = json::array();
    json sizes = json::array();
    for (const auto& orbit : dec.orbits()) {
        json pts = json::array();
        for (const auto& p : orbit) pts.push_back(json_point(p));
        orbits.push_back(std::move(pts));
        sizes.push_back(json_int(static_cast<std::int64_t>(orbit.size())));
    }
    json gens = json::array();
    for (const auto& g : spec.generators()) gens.push_back(json_matrix(g.matrix()));
    json out{{"ell", spec.level().ell()},
             {"n", spec.level().n()},
             {"points", json_int(static_cast<std::int64_t>(spec.points().size()))},
             {"generators", std::move(gens)},
             {"orbit_count", json_int(static_cast<std::int64_t>(dec.size()))},
             {"orbit_sizes", std::move(sizes)},
             {"transitive", dec.size() <= 1}};
    if (dec.size() > 1)
        out["witness"] = json::array({json_point(dec.orbits()[0].front()), json_point(dec.orbits()[1].front())});
    else
        out["witness"] = nullptr;
    out["orbits"] = std::move(orbits);
    return out;
}

inline json surface_count_json(const SurfaceCount& c) {
    json eps = c.epsilon ? json(*c.epsilon) : json(nullptr);
    return json{{"q", json_int(c.q)},
                {"count", json_int(c.count)},
                {"affine_nonzero", json_int(c.affine_nonzero)},
                {"k3_identity_plus", json_int(1 + 22 * c.q + c.q * c.q)},
                {"epsilon", std::move(eps)}};
}

inline json certificate_json(const SupersingularCertificate& c) {
    json per_m = json::array();
    int m = 0;
    for (const auto& s : c.per_m) {
        json entry{{"m", ++m}};
        entry.update(surface_count_json(s));
        per_m.push_back(std::move(entry));
    }
    return json{{"p", c.p},
                {"m_max", c.m_max},
                {"holds", c.holds},
                {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
                {"p_is_3_mod_4", c.p_is_3_mod_4},
                {"good_fiber", c.good_fiber},
                {"per_m", std::move(per_m)}};
}

inline json level_json(const LevelReport& l) {
    json ram = json::array();
    for (const auto& b : l.ramification) {
        json profile = json::array();
        for (auto s : b.ramification.profile.sizes) profile.push_back(json_int(static_cast<std::int64_t>(s)));
        ram.push_back(json{{"label", b.label},
                           {"kind", std::string(to_string(b.kind))},
                           {"profile", std::move(profile)},
                           {"sum", json_int(b.ramification.sum)}});
    }
    return json{{"n", l.n},
                {"degree", json_int(l.degree)},
                {"R0", json_int(l.R0)},
                {"R", json_int(l.R)},
                {"genus_exact", json_int(l.genus_exact)},
                {"genus_paper_bound", json_rational(l.genus_paper_bound)},
                {"genus_safe_bound", json_int(l.genus_safe_bound)},
                {"n_points_lower", json_int(l.n_points_lower)},
                {"ratio_lower", json_ratio(l.ratio_lower)},
                {"exceeds_paper_bound", l.exceeds_paper_bound},
                {"exceeds_safe_bound", l.exceeds_safe_bound},
                {"connected", l.connected},
                {"ramification", std::move(ram)}};
}

inline json tower_json(const TowerReport& r) {
    json levels = json::array();
    for (const auto& l : r.levels) levels.push_back(level_json(l));
    json out{{"ell", r.ell},
             {"p", r.p},
             {"dv_bound", json_int(r.dv_bound)},
             {"asymptotic_ratio_lower", json_rational(r.asymptotic_ratio_lower)},
             {"classification", std::string(to_string(r.classification))},
             {"missing_certificate", r.missing_certificate ? json(*r.missing_certificate) : json(nullptr)},
             {"certificate", certificate_json(r.certificate)},
             {"paper_bound_violations", r.paper_bound_violations},
             {"warnings", r.warnings},
             {"levels", std::move(levels)}};
    return out;
}

// ---------------------------------------------------------------------------
// CSV projections

inline std::string csv_rational(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string tower_csv(const TowerReport& r) {
    std::ostringstream os;
    os << "n,degree,R0,R,genus_exact,genus_paper_bound,genus_safe_bound,n_points_lower,ratio_lower\n";
    for (const auto& l : r.levels) {
        std::string ratio = l.ratio_lower.kind == Ratio::Kind::finite ? csv_rational(l.ratio_lower.value)
                            : l.ratio_lower.kind == Ratio::Kind::infinite ? "inf"
                                                                           : "undefined";
        os << l.n << ',' << l.degree << ',' << l.R0 << ',' << l.R << ',' << l.genus_exact << ','
           << csv_rational(l.genus_paper_bound) << ',' << l.genus_safe_bound << ',' << l.n_points_lower << ',' << ratio
           << '\n';
    }
    return os.str();
}

inline std::string cone_csv(const std::vector<ProjPoint>& cone) {
    std::ostringstream os;
    os << "alpha,beta,gamma\n";
    for (const auto& p : cone) os << p[0] << ',' << p[1] << ',' << p[2] << '\n';
    return os.str();
}

inline std::string orbits_csv(const OrbitDecomposition<ProjPoint>& dec) {
    std::ostringstream os;
    os << "orbit,alpha,beta,gamma\n";
    for (std::size_t i = 0; i < dec.size(); ++i)
        for (const auto& p : dec.orbits()[i]) os << i << ',' << p[0] << ',' << p[1] << ',' << p[2] << '\n';
    return os.str();
}

inline std::string certificate_csv(const SupersingularCertificate& c) {
    std::ostringstream os;
    os << "m,q,count,epsilon\n";
    int m = 0;
    for (const auto& s : c.per_m)
        os << ++m << ',' << s.q << ',' << s.count << ',' << (s.epsilon ? std::to_string(*s.epsilon) : "") << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// Configuration files

inline IntMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3) throw error(ErrorCode::ConfigError, where + ": expected a 3x3 integer matrix");
    IntMatrix m{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            throw error(ErrorCode::ConfigError, where + ": row " + std::to_string(i) + " must have 3 entries");
        for (std::size_t k = 0; k < 3; ++k) {
            if (!j[i][k].is_number_integer())
                throw error(ErrorCode::ConfigError, where + ": entry (" + std::to_string(i) + "," + std::to_string(k) +
                                                        ") is not an integer");
            m[i][k] = j[i][k].get<std::int64_t>();
        }
    }
    return m;
}

inline SimilitudeMatrix parse_similitude(const json& j, const std::string& where) {
    try {
        return SimilitudeMatrix(parse_matrix(j, where));
    } catch (const error& e) {
        if (e.code() == ErrorCode::NotSimilitude) throw error(ErrorCode::ConfigError, where + ": " + e.what());
        throw;
    }
}

struct GeneratorConfig {
    std::optional<std::int64_t> ell;
    std::optional<int> n;
    std::vector<SimilitudeMatrix> generators;
};

/// {"ell": .., "n": .., "generators": [3x3, ...]}; every matrix must be a similitude of Q.
inline GeneratorConfig parse_generator_config(const json& j) {
    if (!j.is_object()) throw error(ErrorCode::ConfigError, "generator file must be a JSON object");
    GeneratorConfig cfg;
    if (j.contains("ell")) {
        if (!j["ell"].is_number_integer()) throw error(ErrorCode::ConfigError, "'ell' must be an integer");
        cfg.ell = j["ell"].get<std::int64_t>();
    }
    if (j.contains("n")) {
        if (!j["n"].is_number_integer()) throw error(ErrorCode::ConfigError, "'n' must be an integer");
        cfg.n = j["n"].get<int>();
    }
    if (!j.contains("generators") || !j["generators"].is_array() || j["generators"].empty())
        throw error(ErrorCode::ConfigError, "'generators' must be a non-empty list of 3x3 matrices");
    std::size_t i = 0;
    for (const auto& m : j["generators"]) cfg.generators.push_back(parse_similitude(m, "generators[" + std::to_string(i++) + "]"));
    return cfg;
}

/// Similitude factors must be units mod l for the action on P_n to be defined.
inline void check_generators_for(const std::vector<SimilitudeMatrix>& gens, std::int64_t ell) {
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (mod_floor(gens[i].factor(), ell) == 0 || mod_floor(mat_det(gens[i].matrix()), ell) == 0)
            throw error(ErrorCode::ConfigError, "generators[" + std::to_string(i) + "] is not invertible mod " + std::to_string(ell));
}

/// [{"label": .., "kind": "MUM"|"involution"|"custom", "matrix": [[..]]}, ...]
inline std::vector<BranchSpec> parse_branch_config(const json& j) {
    if (!j.is_array() || j.empty()) throw error(ErrorCode::ConfigError, "branch file must be a non-empty JSON list");
    std::vector<BranchSpec> out;
    std::size_t i = 0;
    for (const auto& entry : j) {
        const std::string where = "branches[" + std::to_string(i++) + "]";
        if (!entry.is_object() || !entry.contains("kind") || !entry["kind"].is_string())
            throw error(ErrorCode::ConfigError, where + ": needs a string 'kind'");
        std::string label = entry.value("label", where);
        const BranchKind kind = parse_branch_kind(entry["kind"].get<std::string>());
        std::optional<SimilitudeMatrix> m;
        if (entry.contains("matrix")) m = parse_similitude(entry["matrix"], where + ".matrix");
        try {
            out.emplace_back(std::move(label), kind, std::move(m));
        } catch (const error& e) {
            throw error(ErrorCode::ConfigError, where + ": " + e.what());
        }
    }
    return out;
}

}  // namespace k3tower
