#include "infcycle/forms.hpp"

#include <bit>

#include "infcycle/errors.hpp"

namespace infcycle {

Polynomial PolyForm::coefficient(const FormKey& k) const
{
    auto it = terms_.find(k);
    return it == terms_.end() ? Polynomial(nvars_) : it->second;
}

void PolyForm::add(const FormKey& k, const Polynomial& p)
{
    if (p.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(k, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

PolyForm& PolyForm::operator+=(const PolyForm& o)
{
    if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
        throw MathError("adding forms of different degrees");
    if (is_zero())
        degree_ = o.degree_;
    for (const auto& [k, p] : o.terms_)
        add(k, p);
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o)
{
    return *this += o.scaled(-1);
}

PolyForm PolyForm::scaled(const Rational& c) const
{
    PolyForm r(degree_, nvars_);
    if (c == 0)
        return r;
    for (const auto& [k, p] : terms_)
        r.terms_.emplace(k, p.scaled(c));
    return r;
}

PolyForm PolyForm::times(const Polynomial& q) const
{
    PolyForm r(degree_, nvars_);
    for (const auto& [k, p] : terms_)
        r.add(k, p * q);
    return r;
}

std::optional<PolyForm> PolyForm::divided(const Polynomial& q) const
{
    PolyForm r(degree_, nvars_);
    for (const auto& [k, p] : terms_) {
        auto d = exact_quotient(p, q);
        if (!d)
            return std::nullopt;
        r.add(k, *d);
    }
    return r;
}

PolyForm operator+(PolyForm a, const PolyForm& b)
{
    a += b;
    return a;
}

PolyForm operator-(PolyForm a, const PolyForm& b)
{
    a -= b;
    return a;
}

namespace {

PolyContext make_combined(const PolyContext& base, const ArtinAlgebra& a)
{
    const std::size_t nr = base.nvars();
    const std::size_t nv = nr + a.nvars();
    std::vector<std::string> vars = base.variables();
    for (const auto& v : a.presentation().variables()) {
        if (base.var_index(v))
            throw InputError("variable '" + v + "' occurs in both the ring and the algebra");
        vars.push_back(v);
    }
    std::vector<Polynomial> rels;
    for (const auto& g : a.presentation().relations())
        rels.push_back(g.embed(nv, nr));
    std::vector<int> weights = base.weights();
    weights.insert(weights.end(), a.presentation().weights().begin(), a.presentation().weights().end());
    return PolyContext(vars, base.order(), rels, weights);
}

}  // namespace

FormContext::FormContext(PolyContext base, ArtinAlgebra a)
    : base_(std::move(base)), a_(std::move(a)), forms_(a_), combined_(make_combined(base_, a_))
{
    if (!base_.relations().empty())
        throw InputError("forms on X_A need a polynomial ring (smooth patch) without relations");
}

PolyForm FormContext::function(const Polynomial& p) const
{
    PolyForm f = zero(0);
    f.add(FormKey{0, 0, 0}, p);
    return f;
}

PolyForm FormContext::algebra_element(const SparseVec& a) const
{
    PolyForm f = zero(0);
    for (const auto& [i, c] : a)
        f.add(FormKey{0, 0, i}, Polynomial::constant(nvars(), c));
    return f;
}

PolyForm FormContext::from_combined(const Polynomial& p) const
{
    const std::size_t nr = nvars();
    combined_.check_member(p);
    Polynomial nf = combined_.normal_form(p);
    PolyForm f = zero(0);
    for (const auto& [e, c] : nf.terms()) {
        Exponents er(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nr));
        Exponents ea(e.begin() + static_cast<std::ptrdiff_t>(nr), e.end());
        auto k = a_.index_of(ea);
        if (!k)
            throw MathError("from_combined: non-standard algebra monomial");
        f.add(FormKey{0, 0, *k}, Polynomial::monomial(er, c));
    }
    return f;
}

Polynomial FormContext::to_combined(const PolyForm& f) const
{
    if (f.degree() != 0)
        throw MathError("to_combined: not a function");
    const std::size_t nr = nvars();
    const std::size_t nv = combined_.nvars();
    Polynomial out(nv);
    for (const auto& [k, p] : f.terms()) {
        Polynomial mono = Polynomial::monomial(a_.monomial(k.a_index)).embed(nv, nr);
        out += p.embed(nv, 0) * mono;
    }
    return out;
}

PolyForm FormContext::d(const PolyForm& f) const
{
    PolyForm out = zero(f.degree() + 1);
    for (const auto& [k, p] : f.terms()) {
        for (std::size_t i = 0; i < nvars(); ++i) {
            WedgeMask bit = WedgeMask(1) << i;
            int s = wedge_sign(bit, k.mask);
            if (s == 0)
                continue;
            Polynomial dp = p.derivative(i);
            if (!dp.is_zero())
                out.add(FormKey{k.mask | bit, k.a_degree, k.a_index}, dp.scaled(s));
        }
        SparseVec dw = forms_.d(k.a_degree, SparseVec::unit(k.a_index));
        int s = std::popcount(k.mask) % 2 ? -1 : 1;
        for (const auto& [idx, c] : dw)
            out.add(FormKey{k.mask, k.a_degree + 1, idx}, p.scaled(s * c));
    }
    return out;
}

PolyForm FormContext::wedge(const PolyForm& a, const PolyForm& b) const
{
    PolyForm out = zero(a.degree() + b.degree());
    for (const auto& [ka, pa] : a.terms())
        for (const auto& [kb, pb] : b.terms()) {
            int s = wedge_sign(ka.mask, kb.mask);
            if (s == 0)
                continue;
            if (ka.a_degree % 2 == 1 && std::popcount(kb.mask) % 2 == 1)
                s = -s;
            SparseVec w = forms_.wedge(ka.a_degree, SparseVec::unit(ka.a_index), kb.a_degree,
                                       SparseVec::unit(kb.a_index));
            if (w.empty())
                continue;
            Polynomial prod = pa * pb;
            for (const auto& [idx, c] : w)
                out.add(FormKey{ka.mask | kb.mask, ka.a_degree + kb.a_degree, idx}, prod.scaled(s * c));
        }
    return out;
}

PolyForm FormContext::augment(const PolyForm& f) const
{
    PolyForm out = zero(f.degree());
    for (const auto& [k, p] : f.terms())
        if (k.a_degree == 0 && k.a_index == 0)
            out.add(k, p);
    return out;
}

std::vector<FormKey> FormContext::relative_keys(std::size_t p) const
{
    std::vector<FormKey> keys;
    for (std::size_t j = 0; j <= p; ++j) {
        if (p - j > nvars())
            continue;
        for (WedgeMask m : wedge_subsets(nvars(), p - j))
            for (std::size_t w = 0; w < forms_.dim(j); ++w)
                if (j > 0 || w > 0)
                    keys.push_back(FormKey{m, j, w});
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::string FormContext::key_label(const FormKey& k) const
{
    auto [b, amask] = forms_.basis_element(k.a_degree, k.a_index);
    std::vector<std::string> parts;
    if (b != 0)
        parts.push_back(a_.label(b));
    std::string w = wedge_label(k.mask, base_.variables());
    std::string wa = wedge_label(amask, a_.presentation().variables());
    if (!w.empty() && !wa.empty())
        w += "∧" + wa;
    else if (w.empty())
        w = wa;
    if (!w.empty())
        parts.push_back(w);
    std::string s;
    for (const auto& p : parts)
        s += (s.empty() ? "" : "*") + p;
    return s.empty() ? "1" : s;
}

std::string FormContext::format(const PolyForm& f) const
{
    if (f.is_zero())
        return "0";
    std::string s;
    for (const auto& [k, p] : f.terms()) {
        std::string label = key_label(k);
        std::string coef = base_.format(p);
        std::string term;
        bool single = p.terms().size() == 1;
        if (label == "1")
            term = single ? coef : "(" + coef + ")";
        else if (coef == "1")
            term = label;
        else if (coef == "-1")
            term = "-" + label;
        else
            term = (single ? coef : "(" + coef + ")") + "*" + label;
        if (s.empty())
            s = term;
        else if (term[0] == '-')
            s += " - " + term.substr(1);
        else
            s += " + " + term;
    }
    return s;
}

PolyForm push_forward(const FormContext& source, const FormContext& target, const AlgebraMap& phi,
                      const PolyForm& f)
{
    if (source.nvars() != target.nvars())
        throw InputError("push_forward: the rings differ");
    std::map<std::size_t, RatMatrix> induced;
    PolyForm out = target.zero(f.degree());
    for (const auto& [k, p] : f.terms()) {
        auto it = induced.find(k.a_degree);
        if (it == induced.end())
            it = induced.emplace(k.a_degree, source.algebra_forms().induced(target.algebra_forms(), phi, k.a_degree))
                     .first;
        SparseVec img = it->second.apply(SparseVec::unit(k.a_index));
        for (const auto& [idx, c] : img)
            out.add(FormKey{k.mask, k.a_degree, idx}, p.scaled(c));
    }
    return out;
}

}  // namespace infcycle
