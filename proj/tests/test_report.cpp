#include <gtest/gtest.h>

#include "k3tower/report.hpp"

using namespace k3tower;

TEST(Json, LargeIntegersBecomeStrings) {
    EXPECT_TRUE(json_int(42).is_number_integer());
    EXPECT_TRUE(json_int((std::int64_t{1} << 53) - 1).is_number_integer());
    EXPECT_EQ(json_int(std::int64_t{1} << 53), json("9007199254740992"));
}

TEST(Json, Rationals) {
    EXPECT_EQ(json_rational(Rational(6)), json(6));
    EXPECT_EQ(json_rational(Rational(18, 7)), json("18/7"));
    EXPECT_EQ(json_ratio(Ratio::of(4, 0))["status"], "infinite");
    EXPECT_EQ(json_ratio(Ratio::of(0, 0))["status"], "undefined");
    EXPECT_EQ(json_ratio(Ratio::of(12, 3))["value"], 4);
}

TEST(Json, TowerSchemaFieldNames) {
    TowerConfig cfg;
    cfg.ell = 3;
    cfg.p = 3;
    cfg.n_max = 2;
    const json j = tower_json(tower_report(cfg));
    for (const char* key : {"ell", "p", "dv_bound", "classification", "certificate", "levels"}) EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["classification"], "optimal");
    ASSERT_EQ(j["levels"].size(), 2u);
    for (const char* key : {"n", "degree", "R0", "R", "genus_exact", "genus_paper_bound", "genus_safe_bound",
                            "n_points_lower", "ratio_lower"})
        EXPECT_TRUE(j["levels"][0].contains(key)) << key;
    EXPECT_EQ(j["levels"][1]["degree"], 12);
}

TEST(Json, DeterministicDump) {
    TowerConfig cfg;
    cfg.ell = 5;
    cfg.p = 7;
    cfg.n_max = 2;
    EXPECT_EQ(tower_json(tower_report(cfg)).dump(), tower_json(tower_report(cfg)).dump());
}

TEST(Csv, TowerProjection) {
    TowerConfig cfg;
    cfg.ell = 3;
    cfg.p = 3;
    cfg.n_max = 2;
    const std::string csv = tower_csv(tower_report(cfg));
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "n,degree,R0,R,genus_exact,genus_paper_bound,genus_safe_bound,n_points_lower,ratio_lower");
    EXPECT_NE(csv.find("\n1,4,2,4,0,2,3,4,inf\n"), std::string::npos);
}

TEST(GeneratorConfig, ParsesAndValidates) {
    const auto cfg = parse_generator_config(json::parse(R"({"ell":3,"n":1,"generators":[[[1,0,0],[1,1,0],[2,4,1]]]})"));
    EXPECT_EQ(cfg.ell, 3);
    EXPECT_EQ(cfg.n, 1);
    ASSERT_EQ(cfg.generators.size(), 1u);
    EXPECT_EQ(cfg.generators[0].matrix(), default_generators().t.matrix());
}

TEST(GeneratorConfig, Rejections) {
    const char* bad[] = {
        R"([1,2,3])",
        R"({"generators":[]})",
        R"({"generators":[[[1,0],[1,1,0],[2,4,1]]]})",
        R"({"generators":[[[1,0,0],[0,1,0],[0,0,"x"]]]})",
        R"({"generators":[[[1,1,0],[0,1,0],[0,0,1]]]})",  // not a similitude
        R"({"ell":"three","generators":[[[1,0,0],[0,1,0],[0,0,1]]]})",
    };
    for (const char* text : bad) {
        try {
            parse_generator_config(json::parse(text));
            FAIL() << text;
        } catch (const error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ConfigError) << text;
        }
    }
}

TEST(GeneratorConfig, UnitFactorRequired) {
    const std::vector<SimilitudeMatrix> scaled{SimilitudeMatrix(mat_scale(default_generators().w.matrix(), 3))};
    EXPECT_NO_THROW(check_generators_for(scaled, 5));
    EXPECT_THROW(check_generators_for(scaled, 3), error);
}

TEST(BranchConfig, ParsesWithDefaults) {
    const auto branches = parse_branch_config(json::parse(R"([
        {"label": "inf", "kind": "MUM"},
        {"label": "one", "kind": "involution", "matrix": [[0,0,-1],[0,1,0],[-1,0,0]]},
        {"kind": "custom", "matrix": [[1,0,0],[0,1,0],[0,0,1]]}
    ])"));
    ASSERT_EQ(branches.size(), 3u);
    EXPECT_EQ(branches[0].matrix(), default_generators().t);
    EXPECT_EQ(branches[1].kind(), BranchKind::involution);
    EXPECT_EQ(branches[2].label(), "branches[2]");
}

TEST(BranchConfig, Rejections) {
    const char* bad[] = {
        R"({})",
        R"([])",
        R"([{"label":"x"}])",
        R"([{"kind":"parabolic"}])",
        R"([{"kind":"custom"}])",
        R"([{"kind":"MUM","matrix":[[0,0,1],[0,-1,0],[1,0,0]]}])",
    };
    for (const char* text : bad) {
        try {
            parse_branch_config(json::parse(text));
            FAIL() << text;
        } catch (const error& e) {
            EXPECT_EQ(e.code(), ErrorCode::ConfigError) << text;
        }
    }
}

TEST(ErrorCodes, ExitStatus) {
    EXPECT_EQ(exit_status(ErrorCode::InvalidEll), 2);
    EXPECT_EQ(exit_status(ErrorCode::ConfigError), 2);
    EXPECT_EQ(exit_status(ErrorCode::TooLarge), 3);
    EXPECT_EQ(exit_status(ErrorCode::InconsistentRamification), 4);
    const json j = json_error(error(ErrorCode::NotOdd, "p = 2"));
    EXPECT_EQ(j["error"], "NotOdd");
    EXPECT_EQ(j["exit_code"], 2);
}
