#include "hsdim/json_io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace hsdim;

// Exit codes: 0 ok, 1 verification failure, 2 config/schema violation, 3 engine error.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitEngine = 3;

int env_int(const char* name, int fallback) {
    const char* v = std::getenv(name);
    if (!v) return fallback;
    try {
        return std::stoi(v);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(name) + ": not an integer");
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

SetModelPtr load_model(const std::string& set_path, const std::string& inline_json) {
    if (set_path.empty() == inline_json.empty())
        throw std::invalid_argument("exactly one of --set and --inline is required");
    if (!set_path.empty()) return model_from_json(load_json_file(set_path));
    try {
        return model_from_json(nlohmann::json::parse(inline_json));
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad inline JSON: ") + e.what());
    }
}

std::vector<int> parse_level_range(const std::string& spec) {
    auto dots = spec.find("..");
    int lo, hi;
    try {
        if (dots == std::string::npos) {
            lo = hi = std::stoi(spec);
        } else {
            lo = std::stoi(spec.substr(0, dots));
            hi = std::stoi(spec.substr(dots + 2));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("bad level range '" + spec + "' (expected k or a..b)");
    }
    if (lo < 0 || hi < lo || hi - lo > 256) throw std::invalid_argument("bad level range '" + spec + "'");
    std::vector<int> levels;
    for (int k = lo; k <= hi; ++k) levels.push_back(k);
    return levels;
}

std::vector<Rational> parse_rational_list(const std::string& spec) {
    std::vector<Rational> out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_rational(item));
    }
    if (out.empty()) throw std::invalid_argument("empty rational list '" + spec + "'");
    return out;
}

std::string json_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct ScaleFlags {
    std::string kind = "cube";
    int base = 2;
    std::string levels;
    std::string radii;
    std::string harmonic_deltas;
    int budget = 4096;
    bool greedy = false;
};

PremeasureProfile build_profile(const SetModel& model, const ScaleFlags& flags,
                                const std::vector<Rational>& t_grid, int exact_cap) {
    if (flags.kind == "cube") {
        if (flags.levels.empty()) throw std::invalid_argument("cube profiles need --levels");
        return cube_premeasure_profile(model, flags.base, parse_level_range(flags.levels), t_grid);
    }
    if (flags.kind != "ball") throw std::invalid_argument("--kind must be cube or ball");
    std::vector<Rational> radii;
    if (!flags.radii.empty()) {
        radii = parse_rational_list(flags.radii);
    } else if (!flags.harmonic_deltas.empty()) {
        for (int n : parse_level_range(flags.harmonic_deltas)) {
            if (n < 1) throw std::invalid_argument("--harmonic-deltas indices must be >= 1");
            radii.push_back(harmonic_delta(n));
        }
    } else {
        throw std::invalid_argument("ball profiles need --radii or --harmonic-deltas");
    }
    return ball_premeasure_profile(model, flags.budget, std::move(radii), t_grid,
                                   flags.greedy ? CoverMode::Greedy : CoverMode::Exact, exact_cap);
}

int cmd_generate(const std::string& preset, int depth, int n_max, int j_max, std::uint64_t seed,
                 int count, int dim, const std::string& out) {
    nlohmann::json j;
    std::mt19937_64 rng(seed);
    if (preset == "cantor") {
        j = to_json(*make_uniform_digit_set(3, depth, 0b101));
    } else if (preset == "harmonic") {
        j = to_json(*make_harmonic(n_max));
    } else if (preset == "schedule") {
        j = to_json(minimal_schedule(j_max));
    } else if (preset == "schedule-a" || preset == "schedule-b" || preset == "schedule-product") {
        auto sched = minimal_schedule(j_max);
        int d = depth > 0 ? depth : static_cast<int>(sched.m.back());
        auto [a, b] = schedule_to_digit_sets(sched, d);
        if (preset == "schedule-a") j = to_json(*a);
        else if (preset == "schedule-b") j = to_json(*b);
        else j = to_json(*make_product(a, b));
    } else if (preset == "random-digit") {
        j = to_json(*random_digit_set(rng, 2, 5, depth));
    } else if (preset == "random-finite") {
        j = to_json(*make_finite(dim, random_points(rng, count, dim)));
    } else {
        throw std::invalid_argument("unknown preset '" + preset + "'");
    }
    write_output(out, json_dump(j));
    return kExitOk;
}

int cmd_count(const SetModelPtr& model, int base, const std::string& levels_spec, bool as_json,
              std::int64_t cells_cap, const std::string& out) {
    auto levels = parse_level_range(levels_spec);
    if (as_json) {
        CubeCountOptions opts;
        opts.want_cells = true;
        opts.cells_cap = cells_cap;
        auto arr = nlohmann::json::array();
        for (int level : levels) {
            auto res = cube_count(*model, base, level, opts);
            nlohmann::json row = {{"base", res.base},
                                  {"level", res.level},
                                  {"scale", format_rational(pow_rat(Rational{1, base}, level))},
                                  {"count", bigint_to_json(res.count)}};
            if (res.cells) {
                auto cells = nlohmann::json::array();
                for (const auto& c : *res.cells) cells.push_back(c);
                row["cells"] = cells;
            }
            arr.push_back(std::move(row));
        }
        write_output(out, json_dump(arr));
    } else {
        auto profile = cube_premeasure_profile(*model, base, levels, {});
        write_output(out, counts_csv(profile));
    }
    return kExitOk;
}

int cmd_profile(const SetModel& model, const ScaleFlags& flags, const std::string& t_spec, int exact_cap,
                const std::string& out) {
    auto t_grid = parse_rational_list(t_spec);
    for (const auto& t : t_grid)
        if (t < 0) throw std::invalid_argument("--t entries must be >= 0");
    auto profile = build_profile(model, flags, t_grid, exact_cap);
    if (out.empty()) {
        std::cout << counts_csv(profile) << "\n" << values_csv(profile);
    } else {
        write_output(out + ".counts.csv", counts_csv(profile));
        write_output(out + ".values.csv", values_csv(profile));
    }
    return kExitOk;
}

int cmd_estimate(const SetModel& model, const ScaleFlags& flags, const std::string& mode, int exact_cap,
                 const std::string& out) {
    auto profile = build_profile(model, flags, {}, exact_cap);
    FitMode fit;
    if (mode == "all") fit = FitMode::AllScales;
    else if (mode == "liminf") fit = FitMode::LiminfSubsequence;
    else throw std::invalid_argument("--mode must be all or liminf");
    auto est = estimate_dimension(profile, fit);
    write_output(out, json_dump(to_json(est)));
    return kExitOk;
}

int cmd_verify(const std::string& suite, const SuiteConfig& cfg, const std::string& out) {
    auto reports = run_verification_suite(suite, cfg);
    auto arr = nlohmann::json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    if (!out.empty()) write_output(out, json_dump(arr));

    std::size_t width = 0;
    for (const auto& r : reports) width = std::max(width, r.id.size());
    int failures = 0;
    for (const auto& r : reports) {
        if (r.fail()) ++failures;
        std::cout << r.id << std::string(width + 2 - r.id.size(), ' ') << to_string(r.verdict);
        if (!r.notes.empty()) std::cout << "  - " << r.notes;
        std::cout << "\n";
    }
    std::cout << reports.size() << " checks, " << failures << " failed\n";
    return failures == 0 ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covering counts, premeasure profiles and dimension estimates for explicit subsets of [0,1]^n"};
    app.require_subcommand(1);

    int default_exact_cap = 64;
    std::int64_t default_cells_cap = 4096;

    // generate
    auto* gen = app.add_subcommand("generate", "emit a set-description or schedule JSON");
    std::string gen_preset, gen_out;
    int gen_depth = 8, gen_nmax = 16, gen_jmax = 3, gen_count = 8, gen_dim = 1;
    std::uint64_t gen_seed = 1;
    gen->add_option("--preset", gen_preset,
                    "cantor | harmonic | schedule | schedule-a | schedule-b | schedule-product | "
                    "random-digit | random-finite")
        ->required();
    gen->add_option("--depth", gen_depth, "digit depth (0 = schedule coverage)");
    gen->add_option("--n-max", gen_nmax);
    gen->add_option("--j-max", gen_jmax)->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--count", gen_count)->check(CLI::PositiveNumber);
    gen->add_option("--dim", gen_dim)->check(CLI::Range(1, 2));
    gen->add_option("-o,--output", gen_out);

    // count
    auto* cnt = app.add_subcommand("count", "exact grid-cell counts over a level range");
    std::string cnt_set, cnt_inline, cnt_levels, cnt_out;
    int cnt_base = 2;
    bool cnt_json = false;
    cnt->add_option("--set", cnt_set, "set-description JSON file");
    cnt->add_option("--inline", cnt_inline, "set-description JSON literal");
    cnt->add_option("--base", cnt_base)->check(CLI::Range(2, 64));
    cnt->add_option("--levels", cnt_levels, "k or a..b")->required();
    cnt->add_flag("--json", cnt_json, "emit JSON (with cells when small) instead of CSV");
    cnt->add_option("--cells-cap", default_cells_cap)->check(CLI::PositiveNumber);
    cnt->add_option("-o,--output", cnt_out);

    // profile
    auto* prof = app.add_subcommand("profile", "premeasure profile (counts + values CSV)");
    std::string prof_set, prof_inline, prof_t = "0,1/2,1", prof_out;
    ScaleFlags prof_flags;
    prof->add_option("--set", prof_set);
    prof->add_option("--inline", prof_inline);
    prof->add_option("--kind", prof_flags.kind, "cube | ball");
    prof->add_option("--base", prof_flags.base)->check(CLI::Range(2, 64));
    prof->add_option("--levels", prof_flags.levels, "cube levels, k or a..b");
    prof->add_option("--radii", prof_flags.radii, "comma-separated rational radii");
    prof->add_option("--harmonic-deltas", prof_flags.harmonic_deltas,
                     "n or a..b: radii 1/(n+n^2)");
    prof->add_option("--budget", prof_flags.budget, "sample budget for ball profiles")
        ->check(CLI::PositiveNumber);
    prof->add_flag("--greedy", prof_flags.greedy, "greedy certificates only");
    prof->add_option("--t", prof_t, "comma-separated exponents");
    prof->add_option("--exact-cap", default_exact_cap)->check(CLI::PositiveNumber);
    prof->add_option("-o,--output", prof_out, "prefix for .counts.csv / .values.csv");

    // estimate
    auto* est = app.add_subcommand("estimate", "log-log dimension estimate");
    std::string est_set, est_inline, est_mode = "all", est_out;
    ScaleFlags est_flags;
    est->add_option("--set", est_set);
    est->add_option("--inline", est_inline);
    est->add_option("--kind", est_flags.kind, "cube | ball");
    est->add_option("--base", est_flags.base)->check(CLI::Range(2, 64));
    est->add_option("--levels", est_flags.levels);
    est->add_option("--radii", est_flags.radii);
    est->add_option("--harmonic-deltas", est_flags.harmonic_deltas);
    est->add_option("--budget", est_flags.budget)->check(CLI::PositiveNumber);
    est->add_flag("--greedy", est_flags.greedy);
    est->add_option("--mode", est_mode, "all | liminf");
    est->add_option("--exact-cap", default_exact_cap)->check(CLI::PositiveNumber);
    est->add_option("-o,--output", est_out);

    // verify
    auto* ver = app.add_subcommand("verify", "run claim checks and report pass/fail");
    std::string ver_suite = "all", ver_schedule, ver_out;
    SuiteConfig ver_cfg;
    ver->add_option("--suite", ver_suite, "all | comparison | product | schedule | projection | harmonic");
    ver->add_option("--seed", ver_cfg.seed);
    ver->add_option("--sets", ver_cfg.random_sets, "random instances per family")->check(CLI::PositiveNumber);
    ver->add_option("--n-max", ver_cfg.harmonic_n_max)->check(CLI::PositiveNumber);
    ver->add_option("--j-max", ver_cfg.schedule_j_max)->check(CLI::PositiveNumber);
    ver->add_option("--exact-cap", ver_cfg.exact_cap)->check(CLI::PositiveNumber);
    ver->add_option("--schedule", ver_schedule, "schedule JSON file (overrides the minimal default)");
    ver->add_option("-o,--output", ver_out, "write the JSON report array here");

    try {
        default_exact_cap = env_int("HSDIM_EXACT_CAP", default_exact_cap);
        default_cells_cap = env_int("HSDIM_CELLS_CAP", static_cast<int>(default_cells_cap));
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (gen->parsed())
            return cmd_generate(gen_preset, gen_depth, gen_nmax, gen_jmax, gen_seed, gen_count, gen_dim,
                                gen_out);
        if (cnt->parsed())
            return cmd_count(load_model(cnt_set, cnt_inline), cnt_base, cnt_levels, cnt_json,
                             default_cells_cap, cnt_out);
        if (prof->parsed())
            return cmd_profile(*load_model(prof_set, prof_inline), prof_flags, prof_t, default_exact_cap,
                               prof_out);
        if (est->parsed())
            return cmd_estimate(*load_model(est_set, est_inline), est_flags, est_mode, default_exact_cap,
                                est_out);
        if (ver->parsed()) {
            if (!ver_schedule.empty()) ver_cfg.schedule = schedule_from_json(load_json_file(ver_schedule));
            return cmd_verify(ver_suite, ver_cfg, ver_out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const EngineError& e) {
        std::cerr << "engine error: " << e.what() << "\n";
        return kExitEngine;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEngine;
    }
    return kExitOk;
}
