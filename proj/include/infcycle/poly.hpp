#pragma once

/**
 * Multivariate polynomials over Q, monomial orders, Groebner bases and the
 * ideal operations (membership with cofactors, colon, saturation) that the
 * regularity and Ext computations are built on.
 */

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infcycle/exactla.hpp"

namespace infcycle {

using Exponents = std::vector<unsigned>;

enum class OrderKind {
    DegRevLex,
    Lex,
    Elimination  ///< first `block` variables by degree then lex, above degrevlex on the rest
};

struct MonomialOrder {
    OrderKind kind = OrderKind::DegRevLex;
    std::size_t block = 0;

    /// True when a is strictly greater than b.
    bool greater(const Exponents& a, const Exponents& b) const;
    std::string name() const;
};

MonomialOrder parse_order(const std::string& name);

bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
unsigned degree(const Exponents& e);

class Polynomial {
public:
    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(std::size_t nvars, const Rational& c);
    static Polynomial variable(std::size_t nvars, std::size_t i);
    static Polynomial monomial(Exponents e, const Rational& c = 1);

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Exponents& e) const;
    void add_term(const Exponents& e, const Rational& c);

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;
    Polynomial times_monomial(const Exponents& e, const Rational& c) const;
    Polynomial pow(unsigned k) const;
    Polynomial derivative(std::size_t var) const;

    int total_degree() const;
    int weighted_degree(const std::vector<int>& weights) const;
    bool is_homogeneous(const std::vector<int>& weights) const;

    /// Leading monomial and coefficient; throws on the zero polynomial.
    std::pair<Exponents, Rational> leading_term(const MonomialOrder& order) const;
    Exponents leading_monomial(const MonomialOrder& order) const { return leading_term(order).first; }

    /// Re-embeds into a ring with `new_nvars` variables, variable i going to i + offset.
    Polynomial embed(std::size_t new_nvars, std::size_t offset) const;
    /// Drops the variables [offset, offset + count); they must not occur.
    Polynomial restrict(std::size_t offset, std::size_t count) const;
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    std::string to_string(const std::vector<std::string>& names) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

private:
    std::size_t nvars_;
    std::map<Exponents, Rational> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(const Rational& c, const Polynomial& p);

std::string monomial_string(const Exponents& e, const std::vector<std::string>& names);

struct Division {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

/// Multivariate division: p = sum quotients[i] * divisors[i] + remainder, no term of the
/// remainder divisible by a leading monomial.
Division divide(const Polynomial& p, const std::vector<Polynomial>& divisors, const MonomialOrder& order);
/// Exact quotient p / q, or nullopt when q does not divide p.
std::optional<Polynomial> exact_quotient(const Polynomial& p, const Polynomial& q);

struct GroebnerBasis {
    std::vector<Polynomial> basis;  ///< reduced, monic, ascending leading monomials
    /// basis[i] = sum_j cofactors[i][j] * generators[j]; empty unless tracked
    std::vector<std::vector<Polynomial>> cofactors;
    bool tracked = false;
};

GroebnerBasis groebner_basis(const std::vector<Polynomial>& generators, const MonomialOrder& order, bool track);

class PolyContext {
public:
    PolyContext() = default;
    PolyContext(std::vector<std::string> variables, MonomialOrder order = {}, std::vector<Polynomial> relations = {},
                std::vector<int> weights = {});

    std::size_t nvars() const { return variables_.size(); }
    const std::vector<std::string>& variables() const { return variables_; }
    std::optional<std::size_t> var_index(const std::string& name) const;
    const MonomialOrder& order() const { return order_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    const std::vector<int>& weights() const { return weights_; }

    /// Reduced Groebner basis of the relation ideal with cofactors on the relations.
    const GroebnerBasis& groebner() const { return gb_; }
    Polynomial normal_form(const Polynomial& p) const;
    bool relations_homogeneous() const;
    bool is_unit_ideal() const;

    Polynomial zero() const { return Polynomial(nvars()); }
    Polynomial one() const { return Polynomial::constant(nvars(), 1); }
    Polynomial var(std::size_t i) const { return Polynomial::variable(nvars(), i); }
    Polynomial parse(const std::string& text) const;
    std::string format(const Polynomial& p) const { return p.to_string(variables_); }

    /// Same variables, order and weights with a different relation list.
    PolyContext with_relations(std::vector<Polynomial> relations) const;
    void check_member(const Polynomial& p) const;

private:
    std::vector<std::string> variables_;
    MonomialOrder order_;
    std::vector<Polynomial> relations_;
    std::vector<int> weights_;
    GroebnerBasis gb_;
};

struct Membership {
    bool member = false;
    std::vector<Polynomial> cofactors;  ///< p = sum cofactors[i] * relations[i] when member
    Polynomial normal_form;
};

/// Decides p in (relations of ctx); cofactors refer to ctx.relations().
Membership ideal_member(const Polynomial& p, const PolyContext& ctx);

/// Generators of the ideal quotient (gens) : f, computed through an intersection.
std::vector<Polynomial> ideal_quotient(const std::vector<Polynomial>& gens, const Polynomial& f,
                                       const MonomialOrder& order);
/// Generators of (gens) : g^infinity.
std::vector<Polynomial> saturation(const std::vector<Polynomial>& gens, const Polynomial& g, const MonomialOrder& order);
std::vector<Polynomial> intersection(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                                     const MonomialOrder& order);
/// Every generator of `inner` reduces to zero modulo the ideal of `outer`.
bool ideal_contains(const std::vector<Polynomial>& outer, const std::vector<Polynomial>& inner,
                    const MonomialOrder& order);

struct RegularityReport {
    bool regular = false;
    std::string method;
    std::optional<std::size_t> failing_index;  ///< first element that is a zero divisor
    std::string reason;
};

/**
 * Decides whether seq is a regular sequence on ctx (polynomial ring modulo the
 * context relations), optionally after inverting `inverted`.  Exact: element i is
 * tested as a nonzerodivisor through (J_i : f_i) == J_i with J_i the ideal of the
 * relations and the earlier elements, and the final quotient must be nonzero.
 */
RegularityReport regularity_report(const PolyContext& ctx, const std::vector<Polynomial>& seq,
                                   const std::optional<Polynomial>& inverted = std::nullopt);
bool is_regular_sequence(const PolyContext& ctx, const std::vector<Polynomial>& seq);

/// Numerator N(t) of the Hilbert series N(t) / prod(1 - t^{w_i}) of the quotient by a
/// monomial ideal; keys are weighted degrees.
std::map<int, mpz_class> hilbert_numerator(const std::vector<Exponents>& generators, const std::vector<int>& weights);
/// Independent decision for homogeneous input: the sequence is regular iff the Hilbert series
/// of the quotient equals that of the context times prod(1 - t^{deg f_i}).  nullopt when the
/// input is not homogeneous for the context weights.
std::optional<bool> regular_by_hilbert_series(const PolyContext& ctx, const std::vector<Polynomial>& seq);

}  // namespace infcycle
