#pragma once

/**
 * @file orbits.hpp
 * @brief Orbits of a finitely generated group acting on a finite point set.
 *
 * decompose_orbits() is generic over the point type: points need a strict
 * total order, moves are callables Point -> Point. Orbits come out sorted,
 * each orbit internally sorted and the orbit list ordered by smallest
 * element, so results are reproducible.
 *
 * For the monodromy action on P_n, ActionSpec closes a list of integer
 * similitudes under inverses mod l^n and checks that each generator maps
 * the point set to itself.
 */

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "error.hpp"
#include "fricke.hpp"
#include "projective.hpp"

namespace k3tower {

template <typename Point>
class OrbitDecomposition {
public:
    OrbitDecomposition(std::vector<Point> points, std::vector<std::size_t> orbit_ids,
                       std::vector<std::vector<Point>> orbits)
        : points_(std::move(points)), orbit_ids_(std::move(orbit_ids)), orbits_(std::move(orbits)) {}

    const std::vector<std::vector<Point>>& orbits() const noexcept { return orbits_; }
    std::size_t size() const noexcept { return orbits_.size(); }

    /// Orbit id of p, or nullopt if p is not in the point set.
    std::optional<std::size_t> orbit_of(const Point& p) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), p);
        if (it == points_.end() || !(*it == p)) return std::nullopt;
        return orbit_ids_[static_cast<std::size_t>(it - points_.begin())];
    }

    std::vector<std::size_t> orbit_sizes() const {
        std::vector<std::size_t> sizes;
        sizes.reserve(orbits_.size());
        for (const auto& o : orbits_) sizes.push_back(o.size());
        return sizes;
    }

private:
    std::vector<Point> points_;  // sorted
    std::vector<std::size_t> orbit_ids_;
    std::vector<std::vector<Point>> orbits_;
};

/**
 * Breadth-first closure of every point under the given moves. Moves should
 * already include inverses if the action is not known to be a permutation.
 * Throws NotClosed if a move leaves the point set.
 */
template <typename Point, typename Move>
OrbitDecomposition<Point> decompose_orbits(std::vector<Point> points, std::span<const Move> moves) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> ids(points.size(), unvisited);
    std::vector<std::vector<Point>> orbits;

    auto index_of = [&](const Point& p) -> std::size_t {
        auto it = std::lower_bound(points.begin(), points.end(), p);
        if (it == points.end() || !(*it == p))
            throw error(ErrorCode::NotClosed, "a generator maps a point outside the point set");
        return static_cast<std::size_t>(it - points.begin());
    };

    std::deque<std::size_t> queue;
    for (std::size_t seed = 0; seed < points.size(); ++seed) {
        if (ids[seed] != unvisited) continue;
        const std::size_t id = orbits.size();
        std::vector<std::size_t> members{seed};
        ids[seed] = id;
        queue.push_back(seed);
        while (!queue.empty()) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            for (const auto& move : moves) {
                const std::size_t next = index_of(std::invoke(move, points[cur]));
                if (ids[next] != unvisited) continue;
                ids[next] = id;
                members.push_back(next);
                queue.push_back(next);
            }
        }
        std::sort(members.begin(), members.end());
        std::vector<Point> orbit;
        orbit.reserve(members.size());
        for (auto i : members) orbit.push_back(points[i]);
        orbits.push_back(std::move(orbit));
    }
    return {std::move(points), std::move(ids), std::move(orbits)};
}

// ---------------------------------------------------------------------------
// Monodromy action on projective points

class ActionSpec {
public:
    ActionSpec(const Level& level, std::vector<SimilitudeMatrix> generators, std::vector<ProjPoint> points)
        : level_(level), generators_(std::move(generators)), points_(std::move(points)) {
        if (generators_.empty()) throw error(ErrorCode::ConfigError, "an action needs at least one generator");
        for (const auto& p : points_) require_same_level(level_, p.level());
        std::sort(points_.begin(), points_.end());
        for (const auto& g : generators_) {
            ResidueMatrix m = g.reduced(level_);
            ResidueMatrix inv = inverse(m);
            for (const auto& p : points_)
                if (!std::binary_search(points_.begin(), points_.end(), act(m, p)))
                    throw error(ErrorCode::NotClosed, "generator moves " + p.to_string() + " outside the point set");
            moves_.push_back(std::move(m));
            moves_.push_back(std::move(inv));
        }
    }

    const Level& level() const noexcept { return level_; }
    const std::vector<SimilitudeMatrix>& generators() const noexcept { return generators_; }
    const std::vector<ProjPoint>& points() const noexcept { return points_; }
    /// Reduced generators interleaved with their inverses.
    const std::vector<ResidueMatrix>& moves() const noexcept { return moves_; }

private:
    Level level_;
    std::vector<SimilitudeMatrix> generators_;
    std::vector<ProjPoint> points_;
    std::vector<ResidueMatrix> moves_;
};

namespace detail {

struct ProjectiveMove {
    ResidueMatrix matrix;
    ProjPoint operator()(const ProjPoint& p) const { return act(matrix, p); }
};

inline std::vector<ProjectiveMove> as_moves(std::span<const ResidueMatrix> matrices) {
    std::vector<ProjectiveMove> moves;
    moves.reserve(matrices.size());
    for (const auto& m : matrices) moves.push_back({m});
    return moves;
}

}  // namespace detail

inline OrbitDecomposition<ProjPoint> orbit_decomposition(const ActionSpec& a) {
    const auto moves = detail::as_moves(a.moves());
    return decompose_orbits<ProjPoint, detail::ProjectiveMove>(a.points(), moves);
}

struct Transitivity {
    bool transitive = true;
    std::optional<std::pair<ProjPoint, ProjPoint>> witness;  // two points in distinct orbits
};

inline Transitivity is_transitive(const ActionSpec& a) {
    const auto dec = orbit_decomposition(a);
    if (dec.size() <= 1) return {};
    return {false, std::make_pair(dec.orbits()[0].front(), dec.orbits()[1].front())};
}

/// Orbit sizes of the cyclic group generated by one matrix, largest first.
struct CycleProfile {
    std::vector<std::size_t> sizes;

    std::size_t total() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }
    std::size_t fixed_points() const { return static_cast<std::size_t>(std::count(sizes.begin(), sizes.end(), 1u)); }
    /// Sum of (e - 1) over the orbits.
    std::size_t ramification_sum() const { return total() - sizes.size(); }

    bool operator==(const CycleProfile&) const = default;
};

inline CycleProfile cyclic_profile(const SimilitudeMatrix& m, std::span<const ProjPoint> points) {
    if (points.empty()) return {};
    const ActionSpec spec(points.front().level(), {m}, {points.begin(), points.end()});
    CycleProfile profile{orbit_decomposition(spec).orbit_sizes()};
    std::sort(profile.sizes.begin(), profile.sizes.end(), std::greater<>());
    return profile;
}

inline std::size_t fixed_point_count(const SimilitudeMatrix& m, std::span<const ProjPoint> points) {
    if (points.empty()) return 0;
    std::vector<ProjPoint> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    const ResidueMatrix r = m.reduced(sorted.front().level());
    std::size_t count = 0;
    for (const auto& p : sorted) {
        const ProjPoint image = act(r, p);
        if (!std::binary_search(sorted.begin(), sorted.end(), image))
            throw error(ErrorCode::NotClosed, "matrix moves " + p.to_string() + " outside the point set");
        if (image == p) ++count;
    }
    return count;
}

}  // namespace k3tower
