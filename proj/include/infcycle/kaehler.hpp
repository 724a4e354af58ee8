#pragma once

/**
 * Kaehler differentials over Q.
 *
 * For a finite algebra A = Q[x_1..x_n]/J the space of j-forms is the quotient
 * of A (x) Lambda^j(dx_1..dx_n) by the A-span of dg ^ dx_L for g in J.  The
 * cover basis is ordered subset-major, coefficient-minor, and the quotient
 * basis consists of the cover vectors that are not trailing pivots of the
 * relation span, so low coefficients survive as representatives.
 */

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "infcycle/artin.hpp"
#include "infcycle/exactla.hpp"

namespace infcycle {

using WedgeMask = std::uint32_t;

/// Subsets of {0..n-1} with j elements, ascending as bit masks.
std::vector<WedgeMask> wedge_subsets(std::size_t n, std::size_t j);
/// Sign of dx_K ^ dx_L against the sorted wedge; 0 when K and L meet.
int wedge_sign(WedgeMask k, WedgeMask l);
std::string wedge_label(WedgeMask k, const std::vector<std::string>& vars);

class FormAlgebra {
public:
    explicit FormAlgebra(const ArtinAlgebra& a);

    const ArtinAlgebra& algebra() const { return a_; }
    std::size_t nvars() const { return a_.nvars(); }
    std::size_t dim(std::size_t j) const { return j < deg_.size() ? deg_[j].basis_cols.size() : 0; }
    std::size_t cover_dim(std::size_t j) const { return j < deg_.size() ? deg_[j].masks.size() * a_.dim() : 0; }

    /// Coordinates of a cover vector (subset-major, coefficient-minor) in the quotient basis.
    SparseVec reduce_cover(std::size_t j, const SparseVec& cover) const;
    SparseVec lift(std::size_t j, const SparseVec& coords) const;
    /// Cover index of coefficient basis element b times dx_K.
    std::size_t cover_index(std::size_t j, WedgeMask k, std::size_t b) const;
    /// Coefficient basis index and mask of basis element k of the j-forms.
    std::pair<std::size_t, WedgeMask> basis_element(std::size_t j, std::size_t k) const;

    SparseVec d(std::size_t j, const SparseVec& coords) const;
    SparseVec differential(const SparseVec& a) const { return d(0, a); }
    SparseVec wedge(std::size_t i, const SparseVec& u, std::size_t j, const SparseVec& v) const;
    SparseVec scale(const SparseVec& a, std::size_t j, const SparseVec& u) const { return wedge(0, a, j, u); }
    RatMatrix d_matrix(std::size_t j) const;

    std::string label(std::size_t j, std::size_t k) const;
    std::string format(std::size_t j, const SparseVec& coords) const;

    /// Matrix of the map on j-forms induced by phi: this algebra -> target.algebra().
    RatMatrix induced(const FormAlgebra& target, const AlgebraMap& phi, std::size_t j) const;

private:
    struct Degree {
        std::vector<WedgeMask> masks;
        std::map<WedgeMask, std::size_t> mask_pos;
        Echelon relations{0};
        std::vector<std::size_t> basis_cols;
        std::map<std::size_t, std::size_t> col_to_basis;
    };

    SparseVec cover_wedge(std::size_t i, const SparseVec& x, std::size_t j, const SparseVec& y) const;
    SparseVec cover_d(std::size_t j, const SparseVec& x) const;

    ArtinAlgebra a_;
    std::vector<Degree> deg_;
    std::vector<SparseVec> coeff_derivative_;  ///< cover vector in degree 1 of d(b) for each basis b
};

/// Dimension of the 1-forms from the structure constants alone: generators d(b_k), relations
/// d(b_i b_j) = b_i d(b_j) + b_j d(b_i) and d(1) = 0.  Independent of the presentation.
std::size_t omega1_dim_by_structure_constants(const ArtinAlgebra& a);

/// Presentation of the p-forms of a polynomial quotient ring as a module.
struct FormModule {
    std::size_t degree = 0;
    std::vector<WedgeMask> generators;
    /// Each relation is a coefficient list over the generators.
    std::vector<std::vector<Polynomial>> relations;
    std::vector<std::string> generator_labels;
    bool free() const { return relations.empty(); }
};
FormModule omega(const PolyContext& ctx, std::size_t p);

struct RelativeFormGroup {
    std::size_t degree = 0;
    std::size_t absolute_dim = 0;          ///< dim of the p-forms of S
    std::size_t base_dim = 0;              ///< dim of the p-forms of R
    std::vector<SparseVec> relative_basis; ///< coordinates in the p-forms of S
    std::vector<std::string> relative_labels;
    // degree 1 only
    std::vector<SparseVec> exact_part;     ///< d of a basis of I
    Subquotient quotient;
    std::vector<std::string> quotient_labels;
};

RelativeFormGroup relative_forms(const RelativePair& pair, std::size_t p);
/// Omega^1_{S,I} / dI.
RelativeFormGroup bloch_group(const RelativePair& pair);

}  // namespace infcycle
