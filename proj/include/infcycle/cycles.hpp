#pragma once

/**
 * Deformed regular sequences over a finite local algebra A and the classes
 * attached to them: the Koszul complex alpha, local fundamental classes, the
 * Newton class numerator dF_1^..^dF_p - df_1^..^df_p over the base sequence,
 * and the Cousin boundary test at codimension p + 1.
 */

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "infcycle/complexes.hpp"
#include "infcycle/forms.hpp"
#include "infcycle/parse.hpp"

namespace infcycle {

struct SubvarietyGerm {
    PolyContext ctx;
    std::vector<Polynomial> sequence;
    RegularityReport regularity;
    std::size_t codim() const { return sequence.size(); }
};

/// Throws InputError unless the sequence is regular on a polynomial ring without relations.
SubvarietyGerm make_germ(const PolyContext& ctx, std::vector<Polynomial> sequence);

struct Deformation {
    SubvarietyGerm base;
    std::shared_ptr<const FormContext> forms;
    /// F_i = numerators[i] / denominator^{powers[i]}, numerators in forms->combined().
    std::vector<Polynomial> numerators;
    std::vector<unsigned> powers;
    std::optional<Polynomial> denominator;
    RegularityReport regularity;

    const ArtinAlgebra& algebra() const { return forms->algebra(); }
    bool has_denominator() const;
};

/**
 * Checks the reduction F_i = f_i modulo the maximal ideal of A, the nonmembership of the
 * denominator in (f), and regularity of the numerators on R (x) A with the denominator inverted.
 */
Deformation make_deformation(const SubvarietyGerm& base, const ArtinAlgebra& a, std::vector<Polynomial> numerators,
                             std::vector<unsigned> powers = {}, std::optional<Polynomial> denominator = std::nullopt);
/// Parses entries written as rational functions in the ring and algebra variables; every
/// denominator must be a constant times a power of `denominator`.
Deformation parse_deformation(const SubvarietyGerm& base, const ArtinAlgebra& a, const std::vector<std::string>& entries,
                              const std::optional<std::string>& denominator);

ChainComplex alpha(const Deformation& def);

struct FormMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<PolyForm> entries;
    const PolyForm& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

/// (1/p!) dM_j dM_{j+1} .. dM_{j+p-1} for a chain complex over fc.combined().
FormMatrix local_fundamental_class(const ChainComplex& c, const FormContext& fc, std::size_t j, std::size_t p);
/// The sign s_p with (1/p!) dM_1 .. dM_p = s_p df_1 ^ .. ^ df_p for Koszul complexes.
int koszul_class_sign(std::size_t p);

struct ExtClass {
    KoszulData koszul;
    PolyForm numerator;
    std::optional<Polynomial> denominator;
    unsigned denominator_power = 0;
};

ExtClass newton_class(const Deformation& def);
ExtVerdict class_is_zero(const ExtClass& cls);

struct BoundaryResult {
    Polynomial element;
    std::string mode;  ///< "cleared", "denominator" or "unit-denominator"
    KoszulData extended;
    PolyForm numerator;
    std::optional<Polynomial> inverted;
    ExtVerdict verdict;
    bool zero() const { return verdict.zero; }
};

BoundaryResult cousin_boundary(const ExtClass& cls, const Polynomial& h);

struct CycleReport {
    ExtClass newton;
    ExtVerdict newton_verdict;
    std::vector<BoundaryResult> boundaries;
    bool cycle = true;
};

/// Variables v with (f, v) regular, plus the denominator when it extends the sequence.
std::vector<Polynomial> default_extensions(const Deformation& def);
CycleReport is_milnor_cycle(const Deformation& def, std::vector<Polynomial> extensions = {});

/// Pushes the deformation along phi: C -> A (phi.source must be def.algebra()).
Deformation push_deformation(const Deformation& def, const ArtinAlgebra& target, const AlgebraMap& phi);

struct NaturalityReport {
    ExtClass pushed_class;  ///< phi applied to the Newton class over C
    ExtClass target_class;  ///< Newton class of the pushed deformation
    ExtVerdict difference;
    bool commutes = false;
    std::optional<bool> source_cycle;
    std::optional<bool> target_cycle;
};

NaturalityReport naturality_check(const AlgebraMap& phi, const Deformation& def_c,
                                  const std::vector<Polynomial>& extensions = {}, bool run_obstruction = false);

/// First-order deformation f_i + eps g_i over Q[eps]/(eps^2) and its Newton class.
ExtClass dual_numbers_tangent(const SubvarietyGerm& base, const std::vector<Polynomial>& normal_data,
                              Deformation* out_def = nullptr);

/**
 * Conjugates the Koszul complexes of the deformed and base sequences by invertible constant
 * matrices (one per degree), recomputes the local fundamental classes, undoes the change on
 * the end terms and tests that the resulting relative class equals the Newton class.
 */
ExtVerdict basis_change_difference(const Deformation& def, const std::vector<RatMatrix>& change);

}  // namespace infcycle
