#include "infcycle/artin.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "infcycle/errors.hpp"

namespace infcycle {

std::optional<std::size_t> ArtinAlgebra::index_of(const Exponents& e) const
{
    auto it = index_.find(e);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

SparseVec ArtinAlgebra::multiply(const SparseVec& a, const SparseVec& b) const
{
    SparseVec r;
    for (const auto& [i, x] : a)
        for (const auto& [j, y] : b)
            r.axpy(x * y, product(i, j));
    return r;
}

SparseVec ArtinAlgebra::augmentation_kernel_part(const SparseVec& a)
{
    SparseVec r;
    for (const auto& [i, x] : a)
        if (i != 0)
            r.push_back(i, x);
    return r;
}

SparseVec ArtinAlgebra::element_of(const Polynomial& p) const
{
    Polynomial nf = ctx_.normal_form(p);
    SparseVec v;
    for (const auto& [e, c] : nf.terms()) {
        auto k = index_of(e);
        if (!k)
            throw MathError("ArtinAlgebra: normal form has a non-standard monomial");
        v.add(*k, c);
    }
    return v;
}

std::string ArtinAlgebra::format(const SparseVec& a) const
{
    Polynomial p(nvars());
    for (const auto& [i, c] : a)
        p.add_term(monomials_[i], c);
    return ctx_.format(p);
}

int ArtinAlgebra::weight(std::size_t k) const
{
    const auto& e = monomials_.at(k);
    int w = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        w += ctx_.weights()[i] * static_cast<int>(e[i]);
    return w;
}

bool ArtinAlgebra::verify_axioms() const
{
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(product(0, i) == SparseVec::unit(i)))
            return false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!(product(i, j) == product(j, i)))
                return false;
            for (std::size_t k = 0; k < n; ++k) {
                SparseVec left = multiply(product(i, j), SparseVec::unit(k));
                SparseVec right = multiply(SparseVec::unit(i), product(j, k));
                if (!(left == right))
                    return false;
            }
        }
    }
    return nilpotency_index() <= std::max<std::size_t>(n, 1);
}

std::size_t ArtinAlgebra::nilpotency_index() const
{
    // powers of m as spans of products of basis elements
    std::vector<SparseVec> m;
    for (std::size_t i = 1; i < dim(); ++i)
        m.push_back(SparseVec::unit(i));
    std::vector<SparseVec> power = m;
    std::size_t n = 1;
    while (rank_of(dim(), power) > 0) {
        if (n > dim())
            return n;
        std::vector<SparseVec> next;
        for (const auto& a : power)
            for (const auto& b : m) {
                SparseVec c = multiply(a, b);
                if (!c.empty())
                    next.push_back(std::move(c));
            }
        Subspace s = Subspace::span(dim(), next);
        power = s.basis();
        ++n;
    }
    return n;
}

ArtinAlgebra quotient_algebra(const PolyContext& ctx, bool graded_requested)
{
    const std::size_t nv = ctx.nvars();
    if (ctx.is_unit_ideal())
        throw InputError("the relations generate the unit ideal; the quotient is zero");
    const auto& gb = ctx.groebner().basis;
    std::vector<Exponents> leads;
    for (const auto& g : gb)
        leads.push_back(g.leading_monomial(ctx.order()));
    for (std::size_t i = 0; i < nv; ++i) {
        bool bounded = std::any_of(leads.begin(), leads.end(), [&](const Exponents& e) {
            for (std::size_t j = 0; j < nv; ++j)
                if ((j == i) != (e[j] != 0))
                    return false;
            return true;
        });
        if (!bounded)
            throw InputError("not artinian: the quotient is infinite-dimensional (no relation bounds the powers of " +
                             ctx.variables()[i] + ")");
    }
    auto standard = [&](const Exponents& e) {
        return std::none_of(leads.begin(), leads.end(), [&](const Exponents& l) { return divides(l, e); });
    };
    std::set<Exponents> seen;
    std::deque<Exponents> queue{Exponents(nv, 0)};
    seen.insert(queue.front());
    while (!queue.empty()) {
        Exponents e = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < nv; ++i) {
            Exponents f = e;
            ++f[i];
            if (standard(f) && seen.insert(f).second)
                queue.push_back(f);
        }
    }
    ArtinAlgebra a;
    a.ctx_ = ctx;
    a.monomials_.assign(seen.begin(), seen.end());
    const MonomialOrder& order = ctx.order();
    std::sort(a.monomials_.begin(), a.monomials_.end(),
              [&](const Exponents& x, const Exponents& y) { return order.greater(y, x); });
    if (a.monomials_.empty() || degree(a.monomials_.front()) != 0)
        throw MathError("quotient_algebra: unit is not a standard monomial");
    for (std::size_t k = 0; k < a.monomials_.size(); ++k)
        a.index_[a.monomials_[k]] = k;

    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < nv; ++i) {
        Polynomial p = ctx.var(i).pow(static_cast<unsigned>(n));
        if (!ctx.normal_form(p).is_zero())
            throw InputError("the quotient is not local at the origin (" + ctx.variables()[i] +
                             " is not nilpotent)");
    }
    a.table_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Exponents e = a.monomials_[i];
            for (std::size_t t = 0; t < nv; ++t)
                e[t] += a.monomials_[j][t];
            a.table_[i * n + j] = a.element_of(Polynomial::monomial(e));
            a.table_[j * n + i] = a.table_[i * n + j];
        }
    bool positive = std::all_of(ctx.weights().begin(), ctx.weights().end(), [](int w) { return w > 0; });
    a.graded_ = graded_requested && positive && ctx.relations_homogeneous();
    return a;
}

ArtinAlgebra rational_field()
{
    ArtinAlgebra q = quotient_algebra(PolyContext(std::vector<std::string>{}), true);
    q.set_name("Q");
    return q;
}

AlgebraMap make_algebra_map(const ArtinAlgebra& source, const ArtinAlgebra& target, std::vector<SparseVec> images)
{
    if (images.size() != source.nvars())
        throw InputError("algebra map needs one image per generator of the source (" +
                         std::to_string(source.nvars()) + ")");
    for (std::size_t i = 0; i < images.size(); ++i)
        if (target.augmentation(images[i]) != 0)
            throw InputError("algebra map is not compatible with augmentations: generator " +
                             source.presentation().variables()[i] + " must map into the maximal ideal");
    // value of a monomial under the map
    auto evaluate = [&](const Exponents& e) {
        SparseVec v = target.unit();
        for (std::size_t i = 0; i < e.size(); ++i)
            for (unsigned k = 0; k < e[i]; ++k)
                v = target.multiply(v, images[i]);
        return v;
    };
    for (const auto& rel : source.presentation().relations()) {
        SparseVec v;
        for (const auto& [e, c] : rel.terms())
            v.axpy(c, evaluate(e));
        if (!v.empty())
            throw InputError("algebra map is not well defined: relation " + source.presentation().format(rel) +
                             " does not map to zero");
    }
    AlgebraMap m;
    m.source = &source;
    m.target = &target;
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < source.dim(); ++k)
        cols.push_back(evaluate(source.monomial(k)));
    m.matrix = RatMatrix::from_columns(target.dim(), cols);
    m.graded = source.graded() && target.graded();
    for (std::size_t i = 0; i < images.size() && m.graded; ++i) {
        int w = source.presentation().weights()[i];
        for (const auto& [k, c] : images[i])
            if (target.weight(k) != w)
                m.graded = false;
    }
    m.generator_images = std::move(images);
    return m;
}

AlgebraMap identity_map(const ArtinAlgebra& a)
{
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < a.nvars(); ++i)
        images.push_back(a.generator(i));
    return make_algebra_map(a, a, std::move(images));
}

AlgebraMap RelativePair::projection_map() const
{
    std::vector<SparseVec> images;
    for (std::size_t i = 0; i < S.nvars(); ++i)
        images.push_back(i < r_vars ? R.generator(i) : SparseVec());
    return make_algebra_map(S, R, std::move(images));
}

RelativePair tensor_pair(const ArtinAlgebra& R, const ArtinAlgebra& A)
{
    const auto& rv = R.presentation().variables();
    const auto& av = A.presentation().variables();
    for (const auto& v : av)
        if (std::find(rv.begin(), rv.end(), v) != rv.end())
            throw InputError("tensor product: variable '" + v + "' occurs in both algebras");
    const std::size_t nr = rv.size(), na = av.size(), nv = nr + na;
    std::vector<std::string> vars = rv;
    vars.insert(vars.end(), av.begin(), av.end());
    std::vector<Polynomial> rels;
    for (const auto& g : R.presentation().relations())
        rels.push_back(g.embed(nv, 0));
    for (const auto& g : A.presentation().relations())
        rels.push_back(g.embed(nv, nr));
    std::vector<int> weights = R.presentation().weights();
    weights.insert(weights.end(), A.presentation().weights().begin(), A.presentation().weights().end());

    RelativePair pair;
    pair.R = R;
    pair.A = A;
    pair.r_vars = nr;
    pair.S = quotient_algebra(PolyContext(vars, R.presentation().order(), rels, weights),
                              (R.graded() || R.dim() == 1) && A.graded());
    pair.S.set_name(R.name() + "(x)" + A.name());

    const ArtinAlgebra& S = pair.S;
    pair.projection = RatMatrix(R.dim(), S.dim());
    pair.section = RatMatrix(S.dim(), R.dim());
    for (std::size_t k = 0; k < S.dim(); ++k) {
        const Exponents& e = S.monomial(k);
        Exponents er(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(nr));
        bool pure = std::all_of(e.begin() + static_cast<std::ptrdiff_t>(nr), e.end(), [](unsigned x) { return x == 0; });
        if (pure) {
            auto r = R.index_of(er);
            if (!r)
                throw MathError("tensor_pair: inconsistent monomial bases");
            pair.projection.set(*r, k, 1);
            pair.section.set(k, *r, 1);
        }
        else {
            pair.ideal_basis.push_back(SparseVec::unit(k));
        }
    }
    if (S.dim() != R.dim() * A.dim())
        throw MathError("tensor_pair: dimension is not multiplicative");
    return pair;
}

}  // namespace infcycle
