// iontrap-sim: command-line front end for the ion-trap simulation library.
//
// Exit codes: 0 success, 1 compare tolerance exceeded, 2 configuration error,
// 3 domain/physics error, 4 I/O error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "iontrap/errors.hpp"
#include "iontrap/scenarios.hpp"

namespace {

int cmd_run(const std::string& config, const std::string& scenario, const std::string& out,
            std::uint64_t seed) {
    const auto rec = iontrap::cli::run_scenario(config, scenario, out, seed);
    std::printf("scenario %s: %zu file(s) written to %s in %.3f s (seed %llu)\n",
                rec.scenario.c_str(), rec.csv_paths.size(), rec.out_dir.c_str(),
                rec.wall_time_s, static_cast<unsigned long long>(rec.seed));
    for (const auto& w : rec.warnings)
        std::printf("warning: %s\n", w.c_str());
    return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b, double tol) {
    const auto report = iontrap::cli::compare_runs(dir_a, dir_b, tol);
    const iontrap::cli::ColumnDiff* worst = nullptr;
    for (const auto& d : report.columns)
        if (!worst || d.max_rel > worst->max_rel) worst = &d;
    std::printf("compared %zu column(s); max relative difference %.3e (tolerance %.3e)\n",
                report.columns.size(), report.max_rel, report.rel_tolerance);
    if (worst && worst->max_rel > 0.0) {
        if (worst->text_mismatches > 0)
            std::printf("worst: %s:%s, %lld text cell(s) differ\n", worst->file.c_str(),
                        worst->column.c_str(), worst->text_mismatches);
        else
            std::printf("worst: %s:%s row %lld (%.17g vs %.17g)\n", worst->file.c_str(),
                        worst->column.c_str(), worst->worst_row, worst->value_a,
                        worst->value_b);
    }
    if (!report.within_tolerance) {
        std::printf("result: DIFFER\n");
        return 1;
    }
    std::printf("result: MATCH\n");
    return 0;
}

int cmd_list() {
    for (const auto& s : iontrap::cli::list_scenarios())
        std::printf("%-22s %s\n", s.name.c_str(), s.description.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trapped-ion chain, cooling, dynamics and readout simulator"};
    app.require_subcommand(1);

    std::string config_path, scenario, out_dir;
    std::uint64_t seed = 12345;
    auto* run = app.add_subcommand("run", "execute one scenario and write CSV outputs");
    run->add_option("--config", config_path, "config file (INI-style key = value)")->required();
    run->add_option("--scenario", scenario, "scenario name (see list-scenarios)")->required();
    run->add_option("--out", out_dir, "output directory (created if absent)")->required();
    run->add_option("--seed", seed, "random seed for stochastic scenarios");

    std::string dir_a, dir_b;
    double tol = 0.0;
    auto* cmp = app.add_subcommand("compare", "diff the CSV outputs of two run directories");
    cmp->add_option("dir_a", dir_a, "first run directory")->required();
    cmp->add_option("dir_b", dir_b, "second run directory")->required();
    cmp->add_option("--tol", tol, "maximum allowed relative difference")->required();

    auto* lst = app.add_subcommand("list-scenarios", "print available scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // bad command line is a configuration error
    }

    try {
        if (run->parsed()) return cmd_run(config_path, scenario, out_dir, seed);
        if (cmp->parsed()) return cmd_compare(dir_a, dir_b, tol);
        if (lst->parsed()) return cmd_list();
    } catch (const iontrap::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const iontrap::DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const iontrap::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 0;
}
