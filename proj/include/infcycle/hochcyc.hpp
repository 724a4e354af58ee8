#pragma once

/**
 * Hochschild and cyclic homology of finite commutative Q-algebras.
 *
 * The normalized bar complex C_n = A (x) Abar^{(x)n} (Abar = A / Q.1, spanned by
 * the non-unit basis elements) carries b and the normalized Connes operator
 *   B(a0 (x) .. (x) an) = sum_i (-1)^{ni} 1 (x) a_i (x) .. (x) a_n (x) a_0 (x) .. (x) a_{i-1}.
 * Cyclic homology is the homology of Tot_n = C_n + C_{n-2} + ... with D = b + B.
 * The raw complex A^{(x)(n+1)} with B = (1 - t) s N is kept for identity checks.
 *
 * Eulerian idempotents act on the last n tensor factors; they commute with b and
 * shift weight by one under B, which splits both theories into Hodge pieces.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "infcycle/artin.hpp"
#include "infcycle/exactla.hpp"

namespace infcycle {

constexpr std::size_t default_bar_budget = 20000;

class BarComplex {
public:
    BarComplex(const ArtinAlgebra& a, std::size_t n_max, bool normalized = true,
               std::size_t budget = default_bar_budget);

    const ArtinAlgebra& algebra() const { return a_; }
    std::size_t n_max() const { return n_max_; }
    bool normalized() const { return normalized_; }
    std::size_t dim(std::size_t n) const { return dims_.at(n); }

    /// b_n: C_n -> C_{n-1} for 1 <= n <= n_max.
    const RatMatrix& b(std::size_t n) const { return b_.at(n); }
    /// B_n: C_n -> C_{n+1} for n < n_max.
    const RatMatrix& B(std::size_t n) const { return B_.at(n); }

    std::vector<std::size_t> decode(std::size_t n, std::size_t index) const;
    std::size_t encode(const std::vector<std::size_t>& tuple) const;
    std::string format(std::size_t n, const SparseVec& v) const;

    /// b^2 = 0, B^2 = 0 and bB + Bb = 0 through n_max.
    bool verify_identities() const;

private:
    SparseVec b_of(const std::vector<std::size_t>& t) const;
    SparseVec B_of(const std::vector<std::size_t>& t) const;

    ArtinAlgebra a_;
    std::size_t n_max_;
    bool normalized_;
    std::vector<std::size_t> dims_;
    std::vector<RatMatrix> b_;
    std::vector<RatMatrix> B_;
};

/// Group-algebra element: permutation (image of each position) -> coefficient, sign included.
using GroupElement = std::map<std::vector<std::size_t>, Rational>;
/// e_n^{(0)}, ..., e_n^{(n)}; n <= 6.
std::vector<GroupElement> eulerian_idempotents(std::size_t n);
/// Matrix of e_n^{(i)} on C_n, acting on the last n factors.
RatMatrix eulerian_matrix(const BarComplex& bar, std::size_t n, std::size_t i);

enum class Flavor { HH, HC };
std::string flavor_name(Flavor f);

struct HomologyGroup {
    std::size_t degree = 0;
    std::size_t dim = 0;
    std::vector<SparseVec> basis;  ///< representatives in C_n (HH) or Tot_n (HC)
    std::vector<std::string> labels;
};

struct HodgeDecomposition {
    std::size_t degree = 0;
    Flavor flavor = Flavor::HH;
    std::size_t total = 0;
    std::map<std::size_t, std::size_t> pieces;  ///< weight -> dimension
};

/// Options shared by the homology entry points.
struct BarSettings {
    std::size_t n_max = 4;
    std::size_t budget = default_bar_budget;
};

HomologyGroup hh(const ArtinAlgebra& a, std::size_t n, const BarSettings& s = {});
HomologyGroup hc(const ArtinAlgebra& a, std::size_t n, const BarSettings& s = {});
HodgeDecomposition hodge(const ArtinAlgebra& a, std::size_t n, Flavor flavor, const BarSettings& s = {});

struct RelativeHomology {
    std::size_t degree = 0;
    Flavor flavor = Flavor::HH;
    std::size_t dim = 0;
    std::size_t absolute_dim = 0;  ///< dimension for S
    std::size_t base_dim = 0;      ///< dimension for R
    std::vector<std::string> labels;
    std::map<std::size_t, std::size_t> pieces;  ///< relative Hodge pieces
};

RelativeHomology relative(const RelativePair& pair, std::size_t n, Flavor flavor, const BarSettings& s = {});

struct GoodwillieReport {
    std::size_t n = 0;
    std::size_t dim = 0;  ///< dim K_n(S,I)_Q = dim HC_{n-1}(S,I)
    std::optional<std::size_t> bloch_dim;
};
/// Throws MathError("Bloch/Goodwillie disagreement ...") when n = 2 and the two pipelines differ.
GoodwillieReport goodwillie_k(const RelativePair& pair, std::size_t n, const BarSettings& s = {});

struct SbiReport {
    std::size_t weight = 0;
    std::size_t left = 0;    ///< relative HC^{(l-1)}_{l-1}
    std::size_t middle = 0;  ///< relative HH^{(l)}_l
    std::size_t right = 0;   ///< relative HC^{(l)}_l
    bool b_injective = false;
    bool i_surjective = false;
    bool composite_zero = false;
    bool additive = false;
    bool exact() const { return b_injective && i_surjective && composite_zero && additive; }
};
/// Exactness of 0 -> HC^{(l-1)}_{l-1} -B-> HH^{(l)}_l -I-> HC^{(l)}_l -> 0 on relative groups.
/// Throws InputError("requires graded artinian algebra") unless A is graded (when require_graded).
SbiReport sbi_split_check(const RelativePair& pair, std::size_t l, const BarSettings& s = {},
                          bool require_graded = true);

}  // namespace infcycle
