// Command-line front end: compute convergence rates, reproduce the reference
// tables and figure data, simulate surplus/dual paths, and run the Monte
// Carlo verification suites.
//
// Exit codes: 0 success, 1 malformed configuration, 2 net benefit condition
// fails (rate), 3 verification suite failure (verify).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "levyruin/estimators.hpp"
#include "levyruin/model_json.hpp"
#include "levyruin/rate_solver.hpp"
#include "levyruin/report_io.hpp"
#include "levyruin/simulate.hpp"
#include "levyruin/tables.hpp"

namespace fs = std::filesystem;
using namespace levyruin;

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << content;
}

int cmd_rate(const std::string& model_path) {
    const RiskModel model = load_model_file(model_path);
    try {
        const RateResult r = solve_rate(model);
        std::cout << rate_result_to_json(r).dump(2) << '\n';
    } catch (const NoPositiveRate&) {
        std::cerr << "net benefit condition fails: p(0) <= m(mu)\n";
        return 2;
    }
    return 0;
}

int cmd_tables(const std::string& out_dir) {
    fs::create_directories(out_dir);
    const std::pair<const char*, void (*)(std::ostream&)> files[] = {
        {"table1.csv", tables::write_table1},   {"table2.csv", tables::write_table2},
        {"table3.csv", tables::write_table3},   {"figure1.csv", tables::write_figure1},
        {"figure2.csv", tables::write_figure2}, {"figure3.csv", tables::write_figure3},
    };
    for (const auto& [name, writer] : files) {
        std::ostringstream os;
        writer(os);
        write_file(fs::path(out_dir) / name, os.str());
        std::cout << (fs::path(out_dir) / name).string() << '\n';
    }
    return 0;
}

int cmd_simulate(const std::string& model_path, const SimConfig& cfg, double u, bool dual,
                 bool dump_paths, const std::string& out_dir) {
    const RiskModel model = load_model_file(model_path);
    if (dump_paths) fs::create_directories(out_dir);

    double sum_final = 0.0;
    double sum_reflection = 0.0;
    std::int64_t ruined = 0;
    for (std::int64_t i = 0; i < cfg.n_paths; ++i) {
        RandomStream rng(cfg.seed, static_cast<std::uint64_t>(i));
        const PathSample path = dual ? simulate_dual(model, u, cfg, rng)
                                     : simulate_surplus(model, u, cfg, rng);
        sum_final += path.values.back();
        if (dual) sum_reflection += path.reflection.back();
        if (path.ruin_time) ++ruined;
        if (dump_paths) {
            char name[32];
            std::snprintf(name, sizeof(name), "path_%05lld.csv",
                          static_cast<long long>(i));
            std::ostringstream os;
            os << "time,value,reflected,ruined\n";
            for (std::size_t j = 0; j < path.times.size(); ++j) {
                const double r = dual ? path.reflection[j] : 0.0;
                const bool is_ruined =
                    path.ruin_time && path.times[j] >= *path.ruin_time;
                os << fmt17(path.times[j]) << ',' << fmt17(path.values[j]) << ','
                   << fmt17(r) << ',' << (is_ruined ? 1 : 0) << '\n';
            }
            write_file(fs::path(out_dir) / name, os.str());
        }
    }
    nlohmann::json summary{
        {"process", dual ? "dual" : "surplus"},
        {"n_paths", cfg.n_paths},
        {"horizon", cfg.horizon},
        {"step", cfg.step},
        {"eps", cfg.eps},
        {"seed", cfg.seed},
        {"start", u},
        {"final_mean", sum_final / static_cast<double>(cfg.n_paths)},
        {"ruin_fraction", static_cast<double>(ruined) / static_cast<double>(cfg.n_paths)},
    };
    if (dual) {
        summary["reflection_mean"] =
            sum_reflection / static_cast<double>(cfg.n_paths);
    }
    std::cout << summary.dump(2) << '\n';
    return 0;
}

int cmd_verify(const std::string& model_path, const SimConfig& cfg, const std::string& out_dir) {
    const RiskModel model = load_model_file(model_path);
    fs::create_directories(out_dir);

    const double levels[] = {1.0, 3.0, 5.0};
    const double duality_T[] = {1.0, 5.0};
    const DualityReport duality = duality_check(model, levels, duality_T, cfg);

    const double bound_T[] = {1.0, 2.0, 5.0, 10.0, 20.0};
    const BoundReport bound = verify_bound(model, 5.0, bound_T, cfg);

    {
        std::ostringstream os;
        duality_report_to_csv(duality, os);
        write_file(fs::path(out_dir) / "duality.csv", os.str());
    }
    {
        std::ostringstream os;
        bound_report_to_csv(bound, os);
        write_file(fs::path(out_dir) / "bound.csv", os.str());
    }
    nlohmann::json summary{{"duality", duality_report_to_json(duality)},
                           {"bound", bound_report_to_json(bound)},
                           {"seed", cfg.seed},
                           {"n_paths", cfg.n_paths},
                           {"step", cfg.step},
                           {"eps", cfg.eps}};
    write_file(fs::path(out_dir) / "summary.json", summary.dump(2) + "\n");
    std::cout << summary.dump(2) << '\n';
    if (!duality.all_pass || !bound.all_pass) {
        std::cerr << "verification suite failed beyond 3-sigma slack\n";
        return 3;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convergence rates of ruin probabilities for Levy-driven risk processes"};
    app.require_subcommand(1);

    std::string model_path;
    std::string out_dir = ".";
    SimConfig cfg;
    cfg.seed = 0;
    double u = 5.0;
    bool dual = false;
    bool dump_paths = false;

    auto add_sim_flags = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--paths", cfg.n_paths, "number of Monte Carlo paths");
        sub->add_option("--step", cfg.step, "Euler grid step h");
        sub->add_option("--horizon", cfg.horizon, "time horizon T");
        sub->add_option("--eps", cfg.eps, "truncation level for infinite-activity jumps");
    };

    auto* rate = app.add_subcommand("rate", "compute lambda*, k and diagnostics");
    rate->add_option("--model", model_path, "model JSON document")->required();

    auto* tables_cmd = app.add_subcommand("tables", "emit reference table and figure CSVs");
    tables_cmd->add_option("--out", out_dir, "output directory");

    auto* simulate = app.add_subcommand("simulate", "simulate surplus or dual paths");
    simulate->add_option("--model", model_path, "model JSON document")->required();
    simulate->add_option("--u", u, "initial level");
    simulate->add_flag("--dual", dual, "simulate the reflected dual instead of the surplus");
    simulate->add_flag("--dump-paths", dump_paths, "write one CSV per path");
    simulate->add_option("--out", out_dir, "output directory for path dumps");
    add_sim_flags(simulate);

    std::int64_t verify_paths = 200000;
    auto* verify = app.add_subcommand("verify", "run the duality and bound suites");
    verify->add_option("--model", model_path, "model JSON document")->required();
    verify->add_option("--out", out_dir, "output directory for reports");
    verify->add_option("--seed", cfg.seed, "RNG seed");
    verify->add_option("--paths", verify_paths, "number of Monte Carlo paths per side");
    verify->add_option("--step", cfg.step, "Euler grid step h");
    verify->add_option("--eps", cfg.eps, "truncation level for infinite-activity jumps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (rate->parsed()) return cmd_rate(model_path);
        if (tables_cmd->parsed()) return cmd_tables(out_dir);
        if (simulate->parsed()) return cmd_simulate(model_path, cfg, u, dual, dump_paths, out_dir);
        if (verify->parsed()) {
            cfg.n_paths = verify_paths;
            return cmd_verify(model_path, cfg, out_dir);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const NoPositiveRate& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
