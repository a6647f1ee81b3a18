#include <gtest/gtest.h>

#include <map>
#include <set>

#include "k3tower/fricke.hpp"
#include "oracles.hpp"

using namespace k3tower;

namespace {

IntMatrix to_int(const Sqrt2Matrix3& g) {
    IntMatrix m{};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_TRUE(g[i][j].is_integer()) << g[i][j].to_string();
            m[i][j] = g[i][j].rational_part();
        }
    return m;
}

Sqrt2Matrix3 from_int(const IntMatrix& m) {
    Sqrt2Matrix3 g;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) g[i][j] = Sqrt2Scalar(m[i][j]);
    return g;
}

const IntMatrix kSigmaT{{{1, 0, 0}, {1, 1, 0}, {2, 4, 1}}};
const IntMatrix kSigmaU{{{1, 4, 2}, {0, 1, 1}, {0, 0, 1}}};
const IntMatrix kSigmaW{{{0, 0, 1}, {0, -1, 0}, {1, 0, 0}}};

}  // namespace

TEST(QValue, Examples) {
    EXPECT_EQ(q_value(QuadForm{1, 0, 0}), 0);
    EXPECT_EQ(q_value(QuadForm{0, 1, 0}), 4);
    EXPECT_EQ(q_value(QuadForm{1, 1, 2}), 0);
}

TEST(Sqrt2Scalar, Arithmetic) {
    const auto r2 = Sqrt2Scalar::sqrt2();
    EXPECT_EQ(r2 * r2, Sqrt2Scalar(2));
    EXPECT_EQ(Sqrt2Scalar::inv_sqrt2() * r2, Sqrt2Scalar(1));
    EXPECT_EQ(Sqrt2Scalar(3).div_sqrt2().times_sqrt2(), Sqrt2Scalar(3));
    EXPECT_EQ(Sqrt2Scalar(4, 2, 2), Sqrt2Scalar(2, 1, 1));
    EXPECT_EQ(Sqrt2Scalar(1, 0, 2).scaled_by_root2_power(4), Sqrt2Scalar(1));
    EXPECT_NEAR((Sqrt2Scalar(1, 1, 1) - Sqrt2Scalar(0, 1, 0)).to_double(), (1 - std::sqrt(2.0)) / 2, 1e-15);
}

TEST(TwistedImage, IdentityUnderEveryConvention) {
    for (const auto& conv : kAllConventions) EXPECT_EQ(to_int(twisted_image(FrickeElement::identity(), conv)), mat_identity());
}

TEST(TwistedImage, MatchesRealSubstitutionOracle) {
    const std::vector<std::pair<FrickeElement, std::array<std::array<double, 2>, 2>>> cases{
        {FrickeElement::gamma0(1, 1, 0, 1), {{{1, 1}, {0, 1}}}},
        {FrickeElement::gamma0(1, 0, 2, 1), {{{1, 0}, {2, 1}}}},
        {FrickeElement::gamma0(3, 1, 2, 1), {{{3, 1}, {2, 1}}}},
        {FrickeElement::fricke_involution(), {{{0, -1 / std::sqrt(2.0)}, {std::sqrt(2.0), 0}}}},
    };
    for (const auto& [g, real] : cases)
        for (const auto& conv : kAllConventions) {
            const auto exact = twisted_image(g, conv);
            const auto approx = oracle::real_twisted_image(real, conv.side == Substitution::right, conv.twist == Twist::D_inverse);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    EXPECT_NEAR(exact[i][j].to_double(), approx[i][j], 1e-12) << conv.to_string() << " entry " << i << j;
        }
}

TEST(TwistedImage, GeneratorExamples) {
    const Convention conv{Substitution::left, Twist::D_inverse};
    EXPECT_EQ(to_int(twisted_image(FrickeElement::gamma0(1, 1, 0, 1), conv)), kSigmaT);
    const SimilitudeMatrix w = normalize_integral(twisted_image(FrickeElement::fricke_involution(), conv));
    EXPECT_TRUE(w.projectively_equal(SimilitudeMatrix(kSigmaW)));
}

TEST(NormalizeIntegral, IntegerGridUnchanged) {
    const SimilitudeMatrix m = normalize_integral(from_int(kSigmaU));
    EXPECT_EQ(m.matrix(), kSigmaU);
    EXPECT_EQ(m.factor(), 1);
    const SimilitudeMatrix scaled = normalize_integral(from_int(mat_scale(kSigmaT, 3)));
    EXPECT_EQ(scaled.factor(), 9);
}

TEST(NormalizeIntegral, QuarterGridNeedsFourHalfSteps) {
    // (alpha, beta, gamma) -> (4 gamma, -beta, alpha/4)
    Sqrt2Matrix3 g;
    g[0][2] = Sqrt2Scalar(4);
    g[1][1] = Sqrt2Scalar(-1);
    g[2][0] = Sqrt2Scalar(1, 0, 2);
    const auto scaling = integralize(g);
    ASSERT_TRUE(scaling.has_value());
    EXPECT_EQ(scaling->root2_exponent, 4);
    const SimilitudeMatrix m = normalize_integral(g);
    EXPECT_EQ(m.matrix(), (IntMatrix{{{0, 0, 16}, {0, -4, 0}, {1, 0, 0}}}));
    EXPECT_EQ(m.factor(), 16);  // Q(16g, -4b, a) = 16 Q(a, b, g)
}

TEST(NormalizeIntegral, MixedRadicalsFail) {
    Sqrt2Matrix3 g = from_int(mat_identity());
    g[0][1] = Sqrt2Scalar::sqrt2();  // 1 and sqrt2 can never both become integers
    try {
        normalize_integral(g);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotIntegralizable);
    }
    Sqrt2Matrix3 tiny = from_int(mat_identity());
    tiny[2][2] = Sqrt2Scalar(1, 0, 9);  // 1/512 is out of the search range next to 1
    EXPECT_THROW(normalize_integral(tiny), error);
}

TEST(Similitude, RejectsNonSimilitudes) {
    try {
        SimilitudeMatrix(IntMatrix{{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSimilitude);
    }
    EXPECT_THROW(SimilitudeMatrix(IntMatrix{}), error);
}

TEST(DefaultGenerators, ConventionAndImages) {
    const auto& g = default_generators();
    EXPECT_EQ(g.convention, (Convention{Substitution::left, Twist::D_inverse}));
    EXPECT_EQ(g.t.matrix(), kSigmaT);
    EXPECT_EQ(g.u.matrix(), kSigmaU);
    EXPECT_EQ(g.w.matrix(), kSigmaW);
    EXPECT_EQ(g.t({1, 0, 0}), (IntVector{1, 1, 2}));
    EXPECT_EQ(q_value(g.t({1, 0, 0})), 0);
    EXPECT_EQ(g.w({1, 0, 0}), (IntVector{0, 0, 1}));
}

TEST(DefaultGenerators, Postconditions) {
    const auto& g = default_generators();
    for (const auto& m : g.all()) EXPECT_EQ(m.factor(), 1);
    EXPECT_TRUE(is_maximally_unipotent(g.t.matrix()));
    EXPECT_TRUE(is_maximally_unipotent(g.u.matrix()));
    EXPECT_TRUE(is_involution(g.w.matrix()));
    const IntMatrix n = mat_sub(g.t.matrix(), mat_identity());
    EXPECT_FALSE(mat_is_zero(mat_mul(n, n)));
    EXPECT_TRUE(mat_is_zero(mat_mul(mat_mul(n, n), n)));
}

// Q(sigma(u) v) = Q(v) as a polynomial identity: check on a box large enough to
// pin a quadratic polynomial in three variables.
TEST(DefaultGenerators, IsometryOnABox) {
    for (const auto& m : default_generators().all())
        for (std::int64_t a = -3; a <= 3; ++a)
            for (std::int64_t b = -3; b <= 3; ++b)
                for (std::int64_t c = -3; c <= 3; ++c) EXPECT_EQ(q_value(m({a, b, c})), q_value(IntVector{a, b, c}));
}

TEST(DefaultGenerators, OtherConventions) {
    EXPECT_FALSE(evaluate_convention({Substitution::left, Twist::D}).has_value());
    EXPECT_FALSE(evaluate_convention({Substitution::right, Twist::D}).has_value());
    // transposed substitution with the inverse twist just swaps the two parabolic images
    const auto swapped = evaluate_convention({Substitution::right, Twist::D_inverse});
    ASSERT_TRUE(swapped.has_value());
    EXPECT_EQ(swapped->t.matrix(), kSigmaU);
    EXPECT_EQ(swapped->u.matrix(), kSigmaT);
}

TEST(Cone, LevelOneExamples) {
    const auto d1 = degenerate_cone(Level(3, 1), ConeMethod::brute);
    std::vector<IntVector> coords;
    for (const auto& p : d1) coords.push_back(p.coords());
    EXPECT_EQ(coords, (std::vector<IntVector>{{0, 0, 1}, {1, 0, 0}, {1, 1, 2}, {1, 2, 2}}));
    EXPECT_EQ(degenerate_cone(Level(5, 1)).size(), 6u);
    EXPECT_EQ(degenerate_cone(Level(3, 2)).size(), 12u);
}

TEST(Cone, MatchesOracleClasses) {
    for (auto [ell, n] : {std::pair{3, 1}, {3, 2}, {5, 1}, {5, 2}, {7, 1}, {3, 3}}) {
        const Level l(ell, n);
        std::set<oracle::Vec> ours;
        for (const auto& p : degenerate_cone(l)) ours.insert(oracle::class_min(p.coords(), ell, l.modulus()));
        EXPECT_EQ(ours, oracle::cone_classes(ell, l.modulus())) << "ell=" << ell << " n=" << n;
    }
}

TEST(Cone, BruteAndHenselAgree) {
    for (auto [ell, n] : {std::pair{3, 1}, {3, 2}, {3, 3}, {3, 4}, {5, 2}, {7, 2}, {11, 1}, {13, 1}}) {
        const Level l(ell, n);
        const auto brute = degenerate_cone(l, ConeMethod::brute);
        EXPECT_EQ(brute, degenerate_cone(l, ConeMethod::hensel));
        EXPECT_EQ(static_cast<std::int64_t>(brute.size()), cone_size(l));
    }
}

TEST(Cone, StableUnderGenerators) {
    for (auto ell : {3, 5, 7})
        for (int n = 1; n <= 3; ++n) {
            const Level l(ell, n);
            const auto cone = degenerate_cone(l);
            for (const auto& g : default_generators().all()) {
                const ResidueMatrix m = g.reduced(l);
                for (const auto& p : cone) EXPECT_TRUE(std::binary_search(cone.begin(), cone.end(), act(m, p)));
            }
        }
}

TEST(Cone, ReductionFibersHaveSizeEll) {
    for (auto ell : {3, 5, 7})
        for (int n = 2; n <= 3; ++n) {
            const Level l(ell, n);
            const auto below = degenerate_cone(l.with_exponent(n - 1));
            std::map<IntVector, int> fiber;
            for (const auto& p : degenerate_cone(l)) ++fiber[reduce(p).coords()];
            EXPECT_EQ(fiber.size(), below.size());
            for (const auto& p : below) EXPECT_EQ(fiber[p.coords()], ell);
        }
}
