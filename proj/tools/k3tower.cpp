// k3tower: command-line front end.
//
//   k3tower cone   --ell L --n N [--method brute|hensel]
//   k3tower orbits --ell L --n N [--generators FILE] [--points cone|all]
//   k3tower tower  --ell L --p P [--n-max N] [--m-max M] [--generators FILE] [--branches FILE]
//   k3tower fermat --p P [--m-max M]
//
// Common flags: --format json|csv, --output PATH, --no-timing.
// Exit codes: 0 ok, 2 config error, 3 size guard, 4 internal inconsistency.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "k3tower/k3tower.hpp"

namespace {

using namespace k3tower;

struct CommonOptions {
    std::string format = "json";
    std::string output;
    bool no_timing = false;
};

struct Options {
    CommonOptions common;
    std::optional<std::int64_t> ell;
    std::optional<int> n;
    std::optional<std::int64_t> p;
    int n_max = 2;
    int m_max = 1;
    std::string method = "hensel";
    std::string points = "cone";
    std::string generators_file;
    std::string branches_file;
};

void add_common(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--output,-o", c.output, "Write the report to this file instead of stdout");
    cmd->add_flag("--no-timing", c.no_timing, "Omit wall-clock timing so identical runs give identical bytes");
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(ErrorCode::ConfigError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw error(ErrorCode::ConfigError, "'" + path + "' is not valid JSON: " + e.what());
    }
}

/// Merge level flags with the level declared in a generator file.
Level resolve_level(const Options& o, const std::optional<GeneratorConfig>& gens) {
    std::optional<std::int64_t> ell = o.ell;
    std::optional<int> n = o.n;
    if (gens) {
        if (gens->ell && ell && *gens->ell != *ell)
            throw error(ErrorCode::ConfigError, "--ell disagrees with 'ell' in the generator file");
        if (gens->n && n && *gens->n != *n)
            throw error(ErrorCode::ConfigError, "--n disagrees with 'n' in the generator file");
        if (!ell) ell = gens->ell;
        if (!n) n = gens->n;
    }
    if (!ell) throw error(ErrorCode::ConfigError, "--ell is required");
    if (!n) throw error(ErrorCode::ConfigError, "--n is required");
    return Level(*ell, *n);
}

std::optional<GeneratorConfig> load_generators(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return parse_generator_config(read_json_file(path));
}

struct Rendered {
    json result;
    std::string csv;
};

json envelope(const std::string& command, const json& config) {
    return json{{"tool", kToolName}, {"version", kToolVersion}, {"command", command}, {"config", config}};
}

Rendered run_cone(const Options& o) {
    const Level level = resolve_level(o, std::nullopt);
    const auto method = o.method == "brute" ? ConeMethod::brute : ConeMethod::hensel;
    const auto cone = degenerate_cone(level, method);
    json config{{"ell", level.ell()}, {"n", level.n()}, {"method", o.method}};
    json out = envelope("cone", config);
    out.update(cone_json(level, cone));
    return {std::move(out), cone_csv(cone)};
}

Rendered run_orbits(const Options& o) {
    const auto gens_cfg = load_generators(o.generators_file);
    const Level level = resolve_level(o, gens_cfg);
    std::vector<SimilitudeMatrix> gens = gens_cfg ? gens_cfg->generators : default_generators().all();
    check_generators_for(gens, level.ell());
    std::vector<ProjPoint> points = o.points == "all" ? enumerate_points(level) : degenerate_cone(level);
    const ActionSpec spec(level, std::move(gens), std::move(points));
    const auto dec = orbit_decomposition(spec);
    json config{{"ell", level.ell()},
                {"n", level.n()},
                {"points", o.points},
                {"generators", o.generators_file.empty() ? json("default") : json(o.generators_file)}};
    json out = envelope("orbits", config);
    out.update(orbits_json(spec, dec));
    return {std::move(out), orbits_csv(dec)};
}

Rendered run_tower(const Options& o) {
    const auto gens_cfg = load_generators(o.generators_file);
    if (!o.ell) throw error(ErrorCode::ConfigError, "--ell is required");
    if (!o.p) throw error(ErrorCode::ConfigError, "--p is required");
    TowerConfig cfg;
    cfg.ell = *o.ell;
    cfg.p = *o.p;
    cfg.n_max = o.n_max;
    Level(cfg.ell, 1);  // validates ell before any heavy work
    require_odd_prime(cfg.p, "p");
    if (gens_cfg) {
        if (gens_cfg->ell && *gens_cfg->ell != cfg.ell)
            throw error(ErrorCode::ConfigError, "--ell disagrees with 'ell' in the generator file");
        check_generators_for(gens_cfg->generators, cfg.ell);
        cfg.generators = gens_cfg->generators;
    }
    if (!o.branches_file.empty()) cfg.branches = parse_branch_config(read_json_file(o.branches_file));
    const TowerReport report = tower_report(cfg, o.m_max);

    json branches = json::array();
    for (const auto& b : cfg.branches)
        branches.push_back(json{{"label", b.label()}, {"kind", std::string(to_string(b.kind()))}, {"matrix", json_matrix(b.matrix().matrix())}});
    json config{{"ell", cfg.ell},
                {"p", cfg.p},
                {"n_max", cfg.n_max},
                {"m_max", o.m_max},
                {"generators", o.generators_file.empty() ? json("default") : json(o.generators_file)},
                {"branches", std::move(branches)}};
    json out = envelope("tower", config);
    out.update(tower_json(report));
    return {std::move(out), tower_csv(report)};
}

Rendered run_fermat(const Options& o) {
    if (!o.p) throw error(ErrorCode::ConfigError, "--p is required");
    const auto cert = supersingular_certificate(*o.p, o.m_max);
    const ExtField field = build_extension(*o.p, 2);
    json config{{"p", *o.p}, {"m_max", o.m_max}};
    json out = envelope("fermat", config);
    out["modulus"] = field.modulus_string();
    out["count"] = json_int(cert.per_m.front().count);
    out["epsilon"] = cert.per_m.front().epsilon ? json(*cert.per_m.front().epsilon) : json(nullptr);
    out["certificate"] = certificate_json(cert);
    return {std::move(out), certificate_csv(cert)};
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw error(ErrorCode::ConfigError, "cannot write '" + path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degenerate-cone towers: cones, monodromy orbits, genera and Fermat quartic point counts"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    Options o;
    auto* cone = app.add_subcommand("cone", "List the degenerate cone D_n");
    cone->add_option("--ell", o.ell, "Odd prime l");
    cone->add_option("--n", o.n, "Level n >= 1");
    cone->add_option("--method", o.method, "Enumeration method")->check(CLI::IsMember({"brute", "hensel"}));

    auto* orbits = app.add_subcommand("orbits", "Orbits of the monodromy generators on D_n");
    orbits->add_option("--ell", o.ell, "Odd prime l");
    orbits->add_option("--n", o.n, "Level n >= 1");
    orbits->add_option("--generators", o.generators_file, "JSON file with 3x3 generator matrices");
    orbits->add_option("--points", o.points, "Point set: the cone D_n or all of P_n")->check(CLI::IsMember({"cone", "all"}));

    auto* tower = app.add_subcommand("tower", "Degrees, genera and classification of the tower");
    tower->add_option("--ell", o.ell, "Odd prime l");
    tower->add_option("--p", o.p, "Odd prime p, base field F_(p^2)");
    tower->add_option("--n-max", o.n_max, "Highest level")->check(CLI::PositiveNumber);
    tower->add_option("--m-max", o.m_max, "Depth of the Fermat quartic certificate")->check(CLI::PositiveNumber);
    tower->add_option("--generators", o.generators_file, "JSON file with 3x3 generator matrices");
    tower->add_option("--branches", o.branches_file, "JSON file with branch point data");

    auto* fermat = app.add_subcommand("fermat", "Point counts of the Fermat quartic over F_(p^(2m))");
    fermat->add_option("--p", o.p, "Odd prime p");
    fermat->add_option("--m-max", o.m_max, "Count over F_(p^(2m)) for m = 1..m_max")->check(CLI::PositiveNumber);

    for (auto* cmd : {cone, orbits, tower, fermat}) add_common(cmd, o.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << json_error(error(ErrorCode::ConfigError, e.what())).dump(2) << '\n';
        return exit_status(ErrorCode::ConfigError);
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        Rendered r;
        std::string command;
        if (*cone) r = run_cone(o), command = "cone";
        else if (*orbits) r = run_orbits(o), command = "orbits";
        else if (*tower) r = run_tower(o), command = "tower";
        else r = run_fermat(o), command = "fermat";

        if (o.common.format == "csv") {
            emit(r.csv, o.common.output);
        } else {
            if (!o.common.no_timing) {
                const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
                r.result["timing"] = json{{"wall_seconds", elapsed.count()}, {"threads", worker_threads()}};
            }
            emit(r.result.dump(2) + "\n", o.common.output);
        }
        return 0;
    } catch (const error& e) {
        std::cout << json_error(e).dump(2) << '\n';
        return exit_status(e.code());
    } catch (const std::exception& e) {
        const error wrapped(ErrorCode::InternalInconsistency, e.what());
        std::cout << json_error(wrapped).dump(2) << '\n';
        return exit_status(wrapped.code());
    }
}
