#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "infcycle/checks.hpp"
#include "infcycle/complexes.hpp"
#include "infcycle/runner.hpp"

using namespace infcycle;

namespace {

int run_command(const std::string& file, const std::string& json_out, const RunSettings& settings)
{
    RunOutcome out = run_file(file, settings);
    if (json_out != "-")
        std::cout << out.text;
    if (!json_out.empty()) {
        if (json_out == "-") {
            std::cout << out.json;
        } else {
            std::ofstream f(json_out, std::ios::binary);
            if (!f) {
                std::cerr << "infcycle: cannot write '" << json_out << "'\n";
                return exit_input;
            }
            f << out.json;
        }
    }
    if (out.exit_code == exit_not_a_cycle)
        std::cerr << "infcycle: verdict 'not a cycle' (--strict)\n";
    return out.exit_code;
}

int selftest(bool full, bool inject_fault, unsigned seed)
{
    if (inject_fault)
        set_koszul_sign_fault(true);
    CheckOptions opt;
    opt.full = full;
    opt.seed = seed;
    auto t0 = std::chrono::steady_clock::now();
    bool all = true;
    for (int id = 1; id <= static_cast<int>(check_names().size()); ++id) {
        CheckResult r = run_check(id, opt);
        std::cout << format_check(r) << std::endl;
        all = all && r.ok();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double limit = full ? 900 : 60;
    std::cout << (all ? "selftest passed" : "selftest FAILED") << " (" << (full ? "full" : "quick") << ", "
              << secs << " s, limit " << limit << " s)" << std::endl;
    return all && secs <= limit ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"infcycle: exact homological algebra for infinitesimal deformations of cycles"};
    app.require_subcommand(1);

    RunSettings settings;
    std::string file, json_out;
    int degree_bound = 8;
    std::size_t bar_depth = 4;
    auto* run = app.add_subcommand("run", "Run the commands of a problem file");
    run->add_option("file", file, "Problem file")->required();
    run->add_option("--json", json_out, "Write the JSON report to this file ('-' for stdout)");
    run->add_option("--degree-bound", degree_bound, "Internal degree bound for graded slices")
        ->default_val(8)
        ->check(CLI::Range(0, 1000));
    run->add_option("--bar-depth", bar_depth, "Bar complex truncation n_max")->default_val(4)->check(CLI::Range(1, 12));
    run->add_option("--bar-budget", settings.bar_budget, "Largest admissible bar complex dimension")
        ->default_val(default_bar_budget);
    run->add_flag("--strict", settings.strict, "Exit with status 1 when an obstruction verdict is 'not a cycle'");

    bool full = false, inject = false;
    unsigned seed = CheckOptions{}.seed;
    auto* st = app.add_subcommand("selftest", "Run the acceptance suites");
    st->add_flag("--full", full, "Run the full battery");
    st->add_flag("--inject-sign-fault", inject, "Flip the Koszul sign convention (fault injection)");
    st->add_option("--seed", seed, "Random seed for the randomized suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }
    if (*run) {
        settings.degree_bound = degree_bound;
        settings.bar_depth = bar_depth;
        return run_command(file, json_out, settings);
    }
    return selftest(full, inject, seed);
}
