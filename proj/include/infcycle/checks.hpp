#pragma once

/**
 * The acceptance suites.  Each check is deterministic (fixed seeds) and
 * returns a pass/fail verdict together with its wall time and budget.
 */

#include <random>
#include <string>
#include <vector>

#include "infcycle/cycles.hpp"

namespace infcycle {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;     ///< property verdict
    double seconds = 0;
    double limit_seconds = 0;
    std::string detail;

    bool ok() const { return passed && seconds < limit_seconds; }
};

struct CheckOptions {
    bool full = true;
    unsigned seed = 20240917;
    /// Directory of problem files for the determinism check; empty uses the built-in samples.
    std::string fixtures_dir;
};

/// Q, Q[eps]/(eps^2), Q[x]/(x^3), Q[x,y]/(x^2,xy,y^2), Q[x]/(x^2) (x) Q[eps]/(eps^2).
std::vector<ArtinAlgebra> algebra_catalog();
/// Graded algebras whose variable names avoid x, y, z (for deformations over Q[x,y,z]).
std::vector<ArtinAlgebra> coefficient_catalog();
ArtinAlgebra make_algebra(const std::vector<std::string>& vars, const std::vector<std::string>& relations,
                          const std::string& name);

Polynomial random_polynomial(std::mt19937& rng, std::size_t nvars, int max_degree, int terms);
/// Random polynomial deformation of the germ over `a`: f_i + sum over m-basis elements of random polynomials.
Deformation random_deformation(std::mt19937& rng, const SubvarietyGerm& germ, const ArtinAlgebra& a);

/// Titles of the suites, indexed by id - 1.
const std::vector<std::string>& check_names();
CheckResult run_check(int id, const CheckOptions& options);
std::vector<CheckResult> run_checks(const CheckOptions& options, const std::vector<int>& ids = {});
std::string format_check(const CheckResult& r);

/// Problem texts used by the determinism check when no fixture directory is given.
const std::vector<std::string>& builtin_samples();

}  // namespace infcycle
