#pragma once

#include <string>

#include "infcycle/errors.hpp"
#include "infcycle/hochcyc.hpp"
#include "infcycle/problem.hpp"

namespace infcycle {

struct RunSettings {
    int degree_bound = 8;
    std::size_t bar_depth = 4;
    std::size_t bar_budget = default_bar_budget;
    bool strict = false;
};

enum ExitCode { exit_ok = 0, exit_not_a_cycle = 1, exit_input = 2, exit_budget = 3 };

struct RunOutcome {
    std::string json;  ///< schema 1 report, deterministic for identical input and settings
    std::string text;  ///< human-readable tables
    int exit_code = exit_ok;
    bool not_a_cycle = false;
};

RunOutcome run_problem(const Problem& problem, const RunSettings& settings, const std::string& input_name);
/// Parses and runs a problem text; parse errors become error reports.
RunOutcome run_text(const std::string& text, const RunSettings& settings, const std::string& input_name);
RunOutcome run_file(const std::string& path, const RunSettings& settings);

int exit_code_for(const Error& e);

}  // namespace infcycle
