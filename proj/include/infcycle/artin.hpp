#pragma once

/**
 * Finite-dimensional local Q-algebras with a monomial basis.
 *
 * Every algebra carries a presentation Q[x_1..x_n]/J with all x_i nilpotent.
 * The basis is the set of standard monomials of J, ascending, so basis
 * element 0 is the unit and every other basis element lies in the maximal
 * ideal; the augmentation is evaluation at the origin.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infcycle/exactla.hpp"
#include "infcycle/poly.hpp"

namespace infcycle {

class ArtinAlgebra {
public:
    ArtinAlgebra() = default;

    std::size_t dim() const { return monomials_.size(); }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    const PolyContext& presentation() const { return ctx_; }
    std::size_t nvars() const { return ctx_.nvars(); }
    const Exponents& monomial(std::size_t k) const { return monomials_.at(k); }
    std::string label(std::size_t k) const { return monomial_string(monomials_.at(k), ctx_.variables()); }
    std::optional<std::size_t> index_of(const Exponents& e) const;

    /// Structure constants: basis_i * basis_j.
    const SparseVec& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
    SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
    SparseVec unit() const { return SparseVec::unit(0); }
    Rational augmentation(const SparseVec& a) const { return a.at(0); }
    /// Drops the unit coordinate: the projection onto the maximal ideal.
    static SparseVec augmentation_kernel_part(const SparseVec& a);

    /// Coordinates of a polynomial in the presentation variables.
    SparseVec element_of(const Polynomial& p) const;
    SparseVec generator(std::size_t i) const { return element_of(ctx_.var(i)); }
    std::string format(const SparseVec& a) const;

    bool graded() const { return graded_; }
    /// Weight of basis element k (total weighted degree of its monomial).
    int weight(std::size_t k) const;

    /// Associativity and commutativity on all basis triples, unit law, nilpotent maximal ideal.
    bool verify_axioms() const;
    /// Smallest N with m^N = 0.
    std::size_t nilpotency_index() const;

    friend ArtinAlgebra quotient_algebra(const PolyContext& ctx, bool graded_requested);

private:
    std::string name_;
    PolyContext ctx_;
    std::vector<Exponents> monomials_;
    std::map<Exponents, std::size_t> index_;
    std::vector<SparseVec> table_;
    bool graded_ = false;
};

/// Finite quotient of a polynomial ring; throws "not artinian" when infinite-dimensional
/// and rejects quotients that are not local at the origin.  The grading is attached when
/// requested or, by default, whenever all relations are homogeneous for positive weights.
ArtinAlgebra quotient_algebra(const PolyContext& ctx, bool graded_requested = true);
ArtinAlgebra rational_field();

/// A Q-algebra map given by the images of the source generators.
struct AlgebraMap {
    const ArtinAlgebra* source = nullptr;
    const ArtinAlgebra* target = nullptr;
    std::vector<SparseVec> generator_images;
    RatMatrix matrix;  ///< target.dim() x source.dim()
    bool graded = false;

    SparseVec apply(const SparseVec& a) const { return matrix.apply(a); }
};

/// Builds and checks the map: relations must map to zero and generators into the maximal
/// ideal (augmentation compatibility).  Throws InputError otherwise.
AlgebraMap make_algebra_map(const ArtinAlgebra& source, const ArtinAlgebra& target, std::vector<SparseVec> images);
AlgebraMap identity_map(const ArtinAlgebra& a);

/// S = R (x) A with projection id (x) aug, section r -> r (x) 1 and I = R (x) m_A.
struct RelativePair {
    ArtinAlgebra S;
    ArtinAlgebra R;
    ArtinAlgebra A;
    RatMatrix projection;  ///< R.dim() x S.dim()
    RatMatrix section;     ///< S.dim() x R.dim()
    std::vector<SparseVec> ideal_basis;
    /// S variables: the R variables first, then the A variables.
    std::size_t r_vars = 0;

    AlgebraMap projection_map() const;
};

RelativePair tensor_pair(const ArtinAlgebra& R, const ArtinAlgebra& A);

}  // namespace infcycle
