#include "infcycle/kaehler.hpp"

#include <bit>

#include "infcycle/errors.hpp"

namespace infcycle {

std::vector<WedgeMask> wedge_subsets(std::size_t n, std::size_t j)
{
    std::vector<WedgeMask> out;
    if (n > 31)
        throw InputError("too many variables for differential forms (at most 31)");
    for (WedgeMask m = 0; m < (WedgeMask(1) << n); ++m)
        if (static_cast<std::size_t>(std::popcount(m)) == j)
            out.push_back(m);
    return out;
}

int wedge_sign(WedgeMask k, WedgeMask l)
{
    if (k & l)
        return 0;
    int count = 0;
    for (unsigned i = 0; i < 32; ++i) {
        if (!(l >> i & 1u))
            continue;
        WedgeMask above = i == 31 ? 0 : ~((WedgeMask(1) << (i + 1)) - 1);
        count += std::popcount(k & above);
    }
    return count % 2 ? -1 : 1;
}

std::string wedge_label(WedgeMask k, const std::vector<std::string>& vars)
{
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!(k >> i & 1u))
            continue;
        if (!s.empty())
            s += "∧";
        s += "d" + vars[i];
    }
    return s;
}

// ---------------------------------------------------------------- FormAlgebra

FormAlgebra::FormAlgebra(const ArtinAlgebra& a) : a_(a)
{
    const std::size_t n = a_.nvars();
    const std::size_t da = a_.dim();
    const PolyContext& ctx = a_.presentation();
    deg_.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        Degree& D = deg_[j];
        D.masks = wedge_subsets(n, j);
        for (std::size_t t = 0; t < D.masks.size(); ++t)
            D.mask_pos[D.masks[t]] = t;
        D.relations = Echelon(D.masks.size() * da, PivotRule::Trailing);
    }

    auto one_form = [&](const Polynomial& g) {
        SparseVec v;
        for (std::size_t i = 0; i < n; ++i) {
            SparseVec c = a_.element_of(g.derivative(i));
            for (const auto& [b, x] : c)
                v.add(cover_index(1, WedgeMask(1) << i, b), x);
        }
        return v;
    };
    for (std::size_t b = 0; b < da; ++b)
        coeff_derivative_.push_back(one_form(Polynomial::monomial(a_.monomial(b))));

    for (std::size_t j = 1; j <= n; ++j) {
        for (const auto& g : ctx.relations()) {
            SparseVec dg = one_form(g);
            for (std::size_t b = 0; b < da; ++b) {
                SparseVec bdg = cover_wedge(0, SparseVec::unit(b), 1, dg);
                for (WedgeMask l : deg_[j - 1].masks) {
                    SparseVec r = cover_wedge(1, bdg, j - 1, SparseVec::unit(cover_index(j - 1, l, 0)));
                    if (!r.empty())
                        deg_[j].relations.insert(r);
                }
            }
        }
    }
    for (std::size_t j = 0; j <= n; ++j) {
        Degree& D = deg_[j];
        D.relations.make_reduced();
        D.basis_cols = D.relations.free_columns();
        for (std::size_t t = 0; t < D.basis_cols.size(); ++t)
            D.col_to_basis[D.basis_cols[t]] = t;
    }
}

std::size_t FormAlgebra::cover_index(std::size_t j, WedgeMask k, std::size_t b) const
{
    return deg_.at(j).mask_pos.at(k) * a_.dim() + b;
}

std::pair<std::size_t, WedgeMask> FormAlgebra::basis_element(std::size_t j, std::size_t k) const
{
    std::size_t col = deg_.at(j).basis_cols.at(k);
    return {col % a_.dim(), deg_[j].masks[col / a_.dim()]};
}

SparseVec FormAlgebra::reduce_cover(std::size_t j, const SparseVec& cover) const
{
    if (j >= deg_.size())
        return {};
    const Degree& D = deg_[j];
    SparseVec r = D.relations.reduce(cover);
    SparseVec out;
    for (const auto& [c, x] : r)
        out.add(D.col_to_basis.at(c), x);
    return out;
}

SparseVec FormAlgebra::lift(std::size_t j, const SparseVec& coords) const
{
    SparseVec out;
    for (const auto& [k, x] : coords)
        out.add(deg_.at(j).basis_cols.at(k), x);
    return out;
}

SparseVec FormAlgebra::cover_wedge(std::size_t i, const SparseVec& x, std::size_t j, const SparseVec& y) const
{
    SparseVec out;
    if (i + j >= deg_.size())
        return out;
    const std::size_t da = a_.dim();
    for (const auto& [ix, cx] : x) {
        WedgeMask k = deg_[i].masks[ix / da];
        std::size_t b1 = ix % da;
        for (const auto& [iy, cy] : y) {
            WedgeMask l = deg_[j].masks[iy / da];
            int s = wedge_sign(k, l);
            if (s == 0)
                continue;
            for (const auto& [b, c] : a_.product(b1, iy % da))
                out.add(cover_index(i + j, k | l, b), s * cx * cy * c);
        }
    }
    return out;
}

SparseVec FormAlgebra::cover_d(std::size_t j, const SparseVec& x) const
{
    SparseVec out;
    if (j + 1 >= deg_.size())
        return out;
    const std::size_t da = a_.dim();
    for (const auto& [ix, cx] : x) {
        WedgeMask k = deg_[j].masks[ix / da];
        for (const auto& [iy, cy] : coeff_derivative_[ix % da]) {
            WedgeMask l = deg_[1].masks[iy / da];
            int s = wedge_sign(l, k);
            if (s == 0)
                continue;
            out.add(cover_index(j + 1, k | l, iy % da), s * cx * cy);
        }
    }
    return out;
}

SparseVec FormAlgebra::d(std::size_t j, const SparseVec& coords) const
{
    return reduce_cover(j + 1, cover_d(j, lift(j, coords)));
}

SparseVec FormAlgebra::wedge(std::size_t i, const SparseVec& u, std::size_t j, const SparseVec& v) const
{
    return reduce_cover(i + j, cover_wedge(i, lift(i, u), j, lift(j, v)));
}

RatMatrix FormAlgebra::d_matrix(std::size_t j) const
{
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < dim(j); ++k)
        cols.push_back(d(j, SparseVec::unit(k)));
    return RatMatrix::from_columns(dim(j + 1), cols);
}

std::string FormAlgebra::label(std::size_t j, std::size_t k) const
{
    auto [b, mask] = basis_element(j, k);
    if (j == 0)
        return a_.label(b);
    std::string w = wedge_label(mask, a_.presentation().variables());
    return b == 0 ? w : a_.label(b) + "*" + w;
}

std::string FormAlgebra::format(std::size_t j, const SparseVec& coords) const
{
    if (coords.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : coords) {
        Rational a = abs(c);
        s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1)
            s += a.get_str() + "*";
        s += label(j, k);
    }
    return s;
}

RatMatrix FormAlgebra::induced(const FormAlgebra& target, const AlgebraMap& phi, std::size_t j) const
{
    std::vector<SparseVec> dimages;
    for (const auto& img : phi.generator_images)
        dimages.push_back(target.differential(img));
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < dim(j); ++k) {
        auto [b, mask] = basis_element(j, k);
        SparseVec v = phi.apply(SparseVec::unit(b));
        std::size_t deg = 0;
        for (std::size_t i = 0; i < nvars(); ++i) {
            if (!(mask >> i & 1u))
                continue;
            v = target.wedge(deg, v, 1, dimages[i]);
            ++deg;
        }
        cols.push_back(std::move(v));
    }
    return RatMatrix::from_columns(target.dim(j), cols);
}

std::size_t omega1_dim_by_structure_constants(const ArtinAlgebra& a)
{
    const std::size_t d = a.dim();
    auto idx = [d](std::size_t coeff, std::size_t k) { return k * d + coeff; };
    Echelon e(d * d);
    for (std::size_t c = 0; c < d; ++c) {
        e.insert(SparseVec::unit(idx(c, 0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i; j < d; ++j) {
                SparseVec r;
                for (const auto& [k, m] : a.product(i, j))
                    r.add(idx(c, k), m);
                for (const auto& [t, x] : a.product(c, i))
                    r.add(idx(t, j), -x);
                for (const auto& [t, x] : a.product(c, j))
                    r.add(idx(t, i), -x);
                if (!r.empty())
                    e.insert(r);
            }
    }
    return d * d - e.rank();
}

FormModule omega(const PolyContext& ctx, std::size_t p)
{
    const std::size_t n = ctx.nvars();
    FormModule m;
    m.degree = p;
    if (p > n)
        return m;
    m.generators = wedge_subsets(n, p);
    std::map<WedgeMask, std::size_t> pos;
    for (std::size_t t = 0; t < m.generators.size(); ++t) {
        pos[m.generators[t]] = t;
        m.generator_labels.push_back(p == 0 ? "1" : wedge_label(m.generators[t], ctx.variables()));
    }
    for (const auto& g : ctx.relations()) {
        for (std::size_t t = 0; t < m.generators.size(); ++t) {
            std::vector<Polynomial> rel(m.generators.size(), ctx.zero());
            rel[t] = g;
            m.relations.push_back(std::move(rel));
        }
        if (p == 0)
            continue;
        for (WedgeMask l : wedge_subsets(n, p - 1)) {
            std::vector<Polynomial> rel(m.generators.size(), ctx.zero());
            bool any = false;
            for (std::size_t i = 0; i < n; ++i) {
                WedgeMask bit = WedgeMask(1) << i;
                int s = wedge_sign(bit, l);
                if (s == 0)
                    continue;
                Polynomial c = g.derivative(i);
                if (c.is_zero())
                    continue;
                rel[pos.at(bit | l)] += c.scaled(s);
                any = true;
            }
            if (any)
                m.relations.push_back(std::move(rel));
        }
    }
    return m;
}

// ---------------------------------------------------------------- relative forms

RelativeFormGroup relative_forms(const RelativePair& pair, std::size_t p)
{
    FormAlgebra fs(pair.S);
    FormAlgebra fr(pair.R);
    AlgebraMap proj = pair.projection_map();
    RatMatrix m = fs.induced(fr, proj, p);
    RelativeFormGroup g;
    g.degree = p;
    g.absolute_dim = fs.dim(p);
    g.base_dim = fr.dim(p);
    if (rank(m) != g.base_dim)
        throw MathError("relative_forms: the projection does not induce a surjection on forms");
    g.relative_basis = kernel_basis(m).basis();
    for (const auto& v : g.relative_basis)
        g.relative_labels.push_back(fs.format(p, v));
    if (p == 1) {
        for (const auto& x : pair.ideal_basis)
            g.exact_part.push_back(fs.differential(x));
        Subspace rel = Subspace::span(g.absolute_dim, g.relative_basis);
        for (const auto& v : g.exact_part)
            if (!rel.contains(v))
                throw MathError("relative_forms: d(I) is not relative");
        g.quotient = subquotient(g.absolute_dim, g.relative_basis, g.exact_part);
        for (const auto& v : g.quotient.representatives)
            g.quotient_labels.push_back(fs.format(1, v));
    }
    return g;
}

RelativeFormGroup bloch_group(const RelativePair& pair)
{
    return relative_forms(pair, 1);
}

}  // namespace infcycle
