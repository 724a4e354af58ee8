#pragma once

/**
 * Chain complexes of free modules over a polynomial context, Koszul complexes,
 * graded-slice homology, the Hom-complex into a free form module, and the
 * generalized-fraction zero test for Koszul Ext classes.
 *
 * Koszul sign convention: the basis of F_i is e_J for i-subsets J in ascending
 * bit-mask order and
 *   d(e_{j1} ^ ... ^ e_{ji}) = sum_t (-1)^(t+1) f_{jt}^{a_jt} e_{j1} ^ ..^e_{jt}^.. ^ e_{ji}.
 */

#include <optional>
#include <string>
#include <vector>

#include "infcycle/forms.hpp"
#include "infcycle/poly.hpp"

namespace infcycle {

struct PolyMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Polynomial> entries;  ///< row-major

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c, std::size_t nvars) : rows(r), cols(c), entries(r * c, Polynomial(nvars)) {}
    Polynomial& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Polynomial& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
    PolyMatrix transpose() const;
};

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);

/**
 * Free modules F_0 .. F_len with maps.  For a chain complex maps[i-1] is
 * d_i: F_i -> F_{i-1}; for a cochain complex maps[i] is d^i: F^i -> F^{i+1}.
 * shifts[i][g] is the internal degree of generator g of F_i, so that graded
 * slices can be taken when all entries are homogeneous.
 */
struct ChainComplex {
    PolyContext ctx;
    std::vector<std::size_t> ranks;
    std::vector<PolyMatrix> maps;
    std::vector<std::vector<int>> shifts;
    bool cochain = false;

    std::size_t length() const { return ranks.empty() ? 0 : ranks.size() - 1; }
    /// Composites of consecutive maps reduce to zero modulo the context relations.
    bool verify_square_zero() const;
};

struct KoszulData {
    PolyContext ctx;
    std::vector<Polynomial> sequence;
    std::vector<unsigned> exponents;  ///< empty means all ones

    std::vector<unsigned> levels() const;
    /// The powers f_i^{a_i}.
    std::vector<Polynomial> powers() const;
};

/// Test hook: flips the Koszul sign convention to (-1)^t.  Used only by the fault-injection selftest.
void set_koszul_sign_fault(bool on);
bool koszul_sign_fault();

ChainComplex koszul(const KoszulData& k);

/// Dimension of H_i (or H^i) in each internal degree lo..hi, from exact linear algebra
/// on graded slices.  Requires homogeneous entries and relations for the context weights.
std::vector<std::size_t> homology_slices(const ChainComplex& c, std::size_t i, int lo, int hi);
/// Koszul H_i in internal degrees 0..deg_bound.
std::vector<std::size_t> koszul_homology(const KoszulData& k, std::size_t i, int deg_bound);

/// Hom(F_., target) for a free target of the given rank; top cohomology is target/(f^a) target.
ChainComplex hom_into(const KoszulData& k, std::size_t target_rank);
ChainComplex hom_into(const KoszulData& k, const FormModule& target);

/// Dimension of the degree-d slice of ctx modulo extra generators (all homogeneous).
std::size_t quotient_slice_dim(const PolyContext& ctx, const std::vector<Polynomial>& extra, int d);

struct KeyCertificate {
    FormKey key;
    Polynomial coefficient;
    bool member = false;
    unsigned saturation_power = 0;       ///< g^k * coefficient is the tested element
    std::vector<Polynomial> cofactors;   ///< against the powers f_i^{a_i}
    Polynomial normal_form;              ///< when not a member
};

struct ExtVerdict {
    bool zero = false;
    std::vector<KeyCertificate> certificates;
    std::string membership_ideal;
};

/**
 * Decides whether numerator / (f_1^{a_1} .. f_p^{a_p}) is the zero class: every coefficient
 * of the numerator must lie in (f^a), or in its saturation by `inverted` when given.
 */
ExtVerdict ext_class_is_zero(const KoszulData& k, const PolyForm& numerator,
                             const std::optional<Polynomial>& inverted = std::nullopt);

/// Numerator at level b of the class given at level a: multiply by prod f_i^{b_i - a_i}.
PolyForm transition(const KoszulData& k, const PolyForm& numerator, const std::vector<unsigned>& to_levels);

/// Re-expands certificates: coefficient * g^k == sum cofactors_i * f_i^{a_i}.
bool verify_certificates(const KoszulData& k, const ExtVerdict& v, const std::optional<Polynomial>& inverted);

}  // namespace infcycle
