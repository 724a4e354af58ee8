#pragma once

/**
 * Differential forms on X_A = Spec(R (x) A) for a polynomial ring R and a
 * finite local algebra A.  A p-form is a finite sum P * dx_K (x) w with P in R,
 * K a set of R-variables and w a basis element of the (p - |K|)-forms of A.
 * The coefficient module is free over R on these keys, which is what the
 * membership tests of the Ext classes work with.
 */

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "infcycle/artin.hpp"
#include "infcycle/kaehler.hpp"
#include "infcycle/poly.hpp"

namespace infcycle {

struct FormKey {
    WedgeMask mask = 0;      ///< R-variables
    std::size_t a_degree = 0;
    std::size_t a_index = 0; ///< basis index in the a_degree-forms of A

    friend bool operator<(const FormKey& x, const FormKey& y)
    {
        return std::tie(x.a_degree, x.mask, x.a_index) < std::tie(y.a_degree, y.mask, y.a_index);
    }
    friend bool operator==(const FormKey& x, const FormKey& y)
    {
        return x.mask == y.mask && x.a_degree == y.a_degree && x.a_index == y.a_index;
    }
};

class PolyForm {
public:
    PolyForm() = default;
    PolyForm(std::size_t degree, std::size_t nvars) : degree_(degree), nvars_(nvars) {}

    std::size_t degree() const { return degree_; }
    std::size_t nvars() const { return nvars_; }
    const std::map<FormKey, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Polynomial coefficient(const FormKey& k) const;
    void add(const FormKey& k, const Polynomial& p);

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    PolyForm scaled(const Rational& c) const;
    PolyForm times(const Polynomial& p) const;
    /// Divides every coefficient by q; nullopt unless all divisions are exact.
    std::optional<PolyForm> divided(const Polynomial& q) const;

    friend bool operator==(const PolyForm& a, const PolyForm& b)
    {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    std::size_t degree_ = 0;
    std::size_t nvars_ = 0;
    std::map<FormKey, Polynomial> terms_;
};

PolyForm operator+(PolyForm a, const PolyForm& b);
PolyForm operator-(PolyForm a, const PolyForm& b);

class FormContext {
public:
    FormContext(PolyContext base, ArtinAlgebra a);

    const PolyContext& base() const { return base_; }
    const ArtinAlgebra& algebra() const { return a_; }
    const FormAlgebra& algebra_forms() const { return forms_; }
    /// Polynomial ring on the R-variables followed by the A-variables, modulo the A-relations.
    const PolyContext& combined() const { return combined_; }
    std::size_t nvars() const { return base_.nvars(); }

    PolyForm zero(std::size_t degree) const { return PolyForm(degree, nvars()); }
    PolyForm function(const Polynomial& base_poly) const;  ///< p (x) 1
    PolyForm from_combined(const Polynomial& p) const;     ///< element of R (x) A as a 0-form
    Polynomial to_combined(const PolyForm& f) const;
    PolyForm algebra_element(const SparseVec& a) const;  ///< 1 (x) a

    PolyForm d(const PolyForm& f) const;
    PolyForm wedge(const PolyForm& a, const PolyForm& b) const;
    /// Image in the forms of X = Spec(R) under the augmentation; zero exactly on the relative forms.
    PolyForm augment(const PolyForm& f) const;
    bool is_relative(const PolyForm& f) const { return augment(f).is_zero(); }

    /// Keys spanning the relative p-forms as a free R-module.
    std::vector<FormKey> relative_keys(std::size_t p) const;
    std::string key_label(const FormKey& k) const;
    std::string format(const PolyForm& f) const;

private:
    PolyContext base_;
    ArtinAlgebra a_;
    FormAlgebra forms_;
    PolyContext combined_;
};

/// Forms pushed along phi: A -> B, acting on the A-factor only.
PolyForm push_forward(const FormContext& source, const FormContext& target, const AlgebraMap& phi,
                      const PolyForm& f);

}  // namespace infcycle
