#pragma once

/**
 * @file fermat.hpp
 * @brief Finite fields F_(p^k) and point counts of the Fermat quartic
 *        x0^4 + x1^4 + x2^4 + x3^4 = 0 over F_(p^(2m)).
 *
 * A K3 surface over F_q on which Frobenius acts on H^2 as the scalar
 * eps * q has exactly 1 + 22 eps q + q^2 points. supersingular_certificate()
 * checks that identity at finite depth; it is a necessary condition, not a
 * proof of supersingularity.
 */

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "error.hpp"
#include "zmod.hpp"

namespace k3tower {

/// Field elements are limited to p^k <= 2^20 so that they index into tables.
inline constexpr std::int64_t kMaxFieldSize = std::int64_t{1} << 20;
/// Upper bound on the q^4 affine tuples swept by count_quartic().
inline constexpr std::int64_t kMaxAffineTuples = 300'000'000;

inline void require_odd_prime(std::int64_t p, const char* what) {
    if (p == 2) throw error(ErrorCode::NotOdd, std::string(what) + " = 2 is not an odd prime");
    if (!is_prime(p)) throw error(ErrorCode::NotPrime, std::string(what) + " = " + std::to_string(p) + " is not prime");
}

/// Coefficients c_0 .. c_(k-1) over F_p.
struct ExtFieldElement {
    std::vector<std::int64_t> coeffs;
    bool operator==(const ExtFieldElement&) const = default;
};

namespace detail {

// Polynomials over F_p as coefficient vectors, lowest degree first.
using Poly = std::vector<std::int64_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

/// Remainder of a modulo monic b.
inline Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::int64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) a[shift + i] = mod_floor(a[shift + i] - lead * b[i], p);
        trim(a);
    }
    return a;
}

/// Monic polynomial of the given degree whose lower coefficients are the base-p digits of idx
/// (c_(deg-1) most significant).
inline Poly monic_from_index(std::int64_t idx, std::size_t degree, std::int64_t p) {
    Poly f(degree + 1, 0);
    f[degree] = 1;
    for (std::size_t i = 0; i < degree; ++i) {
        f[i] = idx % p;
        idx /= p;
    }
    return f;
}

inline std::int64_t count_monic(std::size_t degree, std::int64_t p) { return ipow(p, static_cast<int>(degree)); }

inline bool is_irreducible(const Poly& f, std::int64_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d)
        for (std::int64_t idx = 0; idx < count_monic(d, p); ++idx)
            if (poly_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
    return true;
}

}  // namespace detail

class ExtField {
public:
    std::int64_t characteristic() const noexcept { return p_; }
    int degree() const noexcept { return k_; }
    std::int64_t size() const noexcept { return size_; }
    /// Monic modulus, lowest degree first (length k + 1).
    const std::vector<std::int64_t>& modulus() const noexcept { return modulus_; }

    ExtFieldElement element(std::int64_t index) const {
        ExtFieldElement e{std::vector<std::int64_t>(static_cast<std::size_t>(k_), 0)};
        for (auto& c : e.coeffs) {
            c = index % p_;
            index /= p_;
        }
        return e;
    }

    std::int64_t index(const ExtFieldElement& e) const {
        std::int64_t idx = 0;
        for (std::size_t i = e.coeffs.size(); i-- > 0;) idx = idx * p_ + mod_floor(e.coeffs[i], p_);
        return idx;
    }

    ExtFieldElement add(const ExtFieldElement& a, const ExtFieldElement& b) const {
        ExtFieldElement r = a;
        for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] = mod_floor(a.coeffs[i] + b.coeffs[i], p_);
        return r;
    }

    ExtFieldElement neg(const ExtFieldElement& a) const {
        ExtFieldElement r = a;
        for (auto& c : r.coeffs) c = mod_floor(-c, p_);
        return r;
    }

    ExtFieldElement mul(const ExtFieldElement& a, const ExtFieldElement& b) const {
        detail::Poly prod(2 * static_cast<std::size_t>(k_), 0);
        for (std::size_t i = 0; i < a.coeffs.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs.size(); ++j)
                prod[i + j] = mod_floor(prod[i + j] + a.coeffs[i] * b.coeffs[j], p_);
        detail::Poly r = detail::poly_mod(std::move(prod), modulus_, p_);
        r.resize(static_cast<std::size_t>(k_), 0);
        return {r};
    }

    std::string modulus_string() const {
        std::string s;
        for (std::size_t i = modulus_.size(); i-- > 0;) {
            const std::int64_t c = modulus_[i];
            if (c == 0) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || c != 1) s += std::to_string(c);
            if (i >= 1) s += "t";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    friend ExtField build_extension(std::int64_t p, int k);
    ExtField(std::int64_t p, int k, std::vector<std::int64_t> modulus)
        : p_(p), k_(k), size_(ipow(p, k)), modulus_(std::move(modulus)) {}

    std::int64_t p_;
    int k_;
    std::int64_t size_;
    std::vector<std::int64_t> modulus_;
};

/**
 * F_(p^k) = F_p[t]/(f) with f the first monic irreducible of degree k when
 * candidates are ordered by their coefficient list (c_(k-1), ..., c_0).
 */
inline ExtField build_extension(std::int64_t p, int k) {
    require_odd_prime(p, "p");
    if (k < 1) throw error(ErrorCode::ConfigError, "extension degree must be >= 1");
    std::int64_t size = 1;
    for (int i = 0; i < k; ++i) {
        size *= p;
        if (size > kMaxFieldSize)
            throw error(ErrorCode::TooLarge, std::to_string(p) + "^" + std::to_string(k) + " exceeds the field size guard");
    }
    const auto degree = static_cast<std::size_t>(k);
    const std::int64_t candidates = detail::count_monic(degree, p);
    for (std::int64_t rank = 0; rank < candidates; ++rank) {
        detail::Poly f = detail::monic_from_index(rank, degree, p);
        if (detail::is_irreducible(f, p)) return ExtField(p, k, std::move(f));
    }
    throw error(ErrorCode::InternalInconsistency, "no irreducible polynomial found");
}

struct SurfaceCount {
    std::int64_t q = 0;
    std::int64_t count = 0;
    std::int64_t affine_nonzero = 0;  // nonzero solutions in F_q^4; equals count * (q - 1)
    std::optional<int> epsilon;  // sign with count = 1 + 22 eps q + q^2, if either matches
};

/// Number of worker threads: K3TOWER_THREADS if set and positive, else hardware concurrency.
inline unsigned worker_threads() {
    if (const char* env = std::getenv("K3TOWER_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

inline std::optional<int> k3_sign(std::int64_t q, std::int64_t count) {
    if (count == 1 + 22 * q + q * q) return 1;
    if (count == 1 - 22 * q + q * q) return -1;
    return std::nullopt;
}

/// Projective points of the Fermat quartic surface over F_(p^(2m)).
inline SurfaceCount count_quartic(std::int64_t p, int m) {
    require_odd_prime(p, "p");
    if (m < 1) throw error(ErrorCode::ConfigError, "m must be >= 1");
    std::int64_t q = 1;
    for (int i = 0; i < 2 * m && q <= kMaxAffineTuples; ++i) q *= p;
    if (q > 1000 || q * q * q * q > kMaxAffineTuples)
        throw error(ErrorCode::TooLarge, "q = " + std::to_string(q) + " needs more than " +
                                             std::to_string(kMaxAffineTuples) + " affine tuples");
    const ExtField field = build_extension(p, 2 * m);
    const auto n = static_cast<std::size_t>(q);

    std::vector<std::int64_t> fourth(n), negation(n);
    std::vector<std::int64_t> add_table(n * n);
    std::vector<ExtFieldElement> elems;
    elems.reserve(n);
    for (std::int64_t i = 0; i < q; ++i) elems.push_back(field.element(i));
    for (std::size_t i = 0; i < n; ++i) {
        const ExtFieldElement sq = field.mul(elems[i], elems[i]);
        fourth[i] = field.index(field.mul(sq, sq));
        negation[i] = field.index(field.neg(elems[i]));
        for (std::size_t j = 0; j < n; ++j) add_table[i * n + j] = field.index(field.add(elems[i], elems[j]));
    }
    // how many x3 have x3^4 = v
    std::vector<std::int64_t> fiber(n, 0);
    for (auto v : fourth) ++fiber[static_cast<std::size_t>(v)];

    // partition the affine space by x0
    const unsigned threads = std::min<unsigned>(worker_threads(), static_cast<unsigned>(n));
    std::vector<std::int64_t> partial(threads, 0);
    auto work = [&](unsigned t) {
        std::int64_t acc = 0;
        for (std::size_t x0 = t; x0 < n; x0 += threads) {
            const auto f0 = static_cast<std::size_t>(fourth[x0]);
            for (std::size_t x1 = 0; x1 < n; ++x1) {
                const auto s01 = static_cast<std::size_t>(add_table[f0 * n + static_cast<std::size_t>(fourth[x1])]);
                for (std::size_t x2 = 0; x2 < n; ++x2) {
                    const auto s = static_cast<std::size_t>(add_table[s01 * n + static_cast<std::size_t>(fourth[x2])]);
                    acc += fiber[static_cast<std::size_t>(negation[s])];
                }
            }
        }
        partial[t] = acc;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    std::int64_t affine = 0;
    for (auto v : partial) affine += v;
    const std::int64_t nonzero = affine - 1;
    if (nonzero % (q - 1) != 0)
        throw error(ErrorCode::InternalInconsistency, "nonzero affine solution count is not divisible by q - 1");
    const std::int64_t count = nonzero / (q - 1);
    return {q, count, nonzero, k3_sign(q, count)};
}

struct SupersingularCertificate {
    std::int64_t p = 0;
    int m_max = 1;
    bool holds = false;
    std::optional<int> epsilon;
    std::vector<SurfaceCount> per_m;
    bool p_is_3_mod_4 = false;
    /// 2(lambda^4 - 1) at lambda = 0 is invertible mod p
    bool good_fiber = false;
};

/**
 * holds iff some eps in {+1, -1} gives count(m) = 1 + 22 eps^m q^m + q^(2m)
 * for every m <= m_max, with q = p^2.
 */
inline SupersingularCertificate supersingular_certificate(std::int64_t p, int m_max = 1) {
    require_odd_prime(p, "p");
    if (m_max < 1) throw error(ErrorCode::ConfigError, "m_max must be >= 1");
    SupersingularCertificate cert;
    cert.p = p;
    cert.m_max = m_max;
    cert.p_is_3_mod_4 = p % 4 == 3;
    cert.good_fiber = mod_floor(-2, p) != 0;
    for (int m = 1; m <= m_max; ++m) cert.per_m.push_back(count_quartic(p, m));
    for (int eps : {1, -1}) {
        const bool all = std::all_of(cert.per_m.begin(), cert.per_m.end(), [&, m = 0](const SurfaceCount& c) mutable {
            ++m;
            const int sign = (m % 2 == 0) ? 1 : eps;
            return c.count == 1 + 22 * sign * c.q + c.q * c.q;
        });
        if (all) {
            cert.holds = true;
            cert.epsilon = eps;
            break;
        }
    }
    return cert;
}

}  // namespace k3tower
