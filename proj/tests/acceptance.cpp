// Acceptance suites: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <iostream>

#include "infcycle/checks.hpp"

int main(int argc, char** argv)
{
    infcycle::CheckOptions opt;
    opt.full = true;
    opt.fixtures_dir = argc > 1 ? argv[1] : INFCYCLE_FIXTURE_DIR;
    int failed = 0;
    for (int id = 1; id <= static_cast<int>(infcycle::check_names().size()); ++id) {
        infcycle::CheckResult r = infcycle::run_check(id, opt);
        std::cout << infcycle::format_check(r) << std::endl;
        failed += !r.ok();
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
