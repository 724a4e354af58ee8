#include "infcycle/hochcyc.hpp"

#include <algorithm>
#include <numeric>

#include "infcycle/errors.hpp"
#include "infcycle/kaehler.hpp"

namespace infcycle {

// ---------------------------------------------------------------- bar complex

BarComplex::BarComplex(const ArtinAlgebra& a, std::size_t n_max, bool normalized, std::size_t budget)
    : a_(a), n_max_(n_max), normalized_(normalized)
{
    const std::size_t d = a_.dim();
    mpz_class need = 1;
    for (std::size_t k = 0; k <= n_max; ++k)
        need *= d;
    if (need > budget)
        throw BudgetError("bar complex of an algebra of dimension " + std::to_string(d) + " through degree " +
                          std::to_string(n_max) + " needs budget " + need.get_str() + " (configured " +
                          std::to_string(budget) + ")");
    const std::size_t tail = normalized ? d - 1 : d;
    std::size_t dim = d;
    for (std::size_t n = 0; n <= n_max; ++n) {
        dims_.push_back(dim);
        dim *= tail;
    }
    b_.resize(n_max + 1);
    B_.resize(n_max + 1);
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<SparseVec> cols;
        for (std::size_t idx = 0; idx < dims_[n]; ++idx)
            cols.push_back(b_of(decode(n, idx)));
        b_[n] = RatMatrix::from_columns(dims_[n - 1], cols);
    }
    for (std::size_t n = 0; n < n_max; ++n) {
        std::vector<SparseVec> cols;
        for (std::size_t idx = 0; idx < dims_[n]; ++idx)
            cols.push_back(B_of(decode(n, idx)));
        B_[n] = RatMatrix::from_columns(dims_[n + 1], cols);
    }
}

std::vector<std::size_t> BarComplex::decode(std::size_t n, std::size_t index) const
{
    const std::size_t d = a_.dim();
    const std::size_t tail = normalized_ ? d - 1 : d;
    std::vector<std::size_t> t(n + 1);
    t[0] = index % d;
    index /= d;
    for (std::size_t i = 1; i <= n; ++i) {
        t[i] = index % tail + (normalized_ ? 1 : 0);
        index /= tail;
    }
    return t;
}

std::size_t BarComplex::encode(const std::vector<std::size_t>& t) const
{
    const std::size_t d = a_.dim();
    const std::size_t tail = normalized_ ? d - 1 : d;
    std::size_t index = 0;
    for (std::size_t i = t.size(); i-- > 1;)
        index = index * tail + (t[i] - (normalized_ ? 1 : 0));
    return index * d + t[0];
}

SparseVec BarComplex::b_of(const std::vector<std::size_t>& t) const
{
    const std::size_t n = t.size() - 1;
    SparseVec out;
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [k, c] : a_.product(t[i], t[i + 1])) {
            if (normalized_ && i >= 1 && k == 0)
                continue;
            std::vector<std::size_t> u;
            u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
            u.push_back(k);
            u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i + 2), t.end());
            out.add(encode(u), (i % 2 ? -1 : 1) * c);
        }
    }
    for (const auto& [k, c] : a_.product(t[n], t[0])) {
        std::vector<std::size_t> u{k};
        u.insert(u.end(), t.begin() + 1, t.begin() + static_cast<std::ptrdiff_t>(n));
        out.add(encode(u), (n % 2 ? -1 : 1) * c);
    }
    return out;
}

SparseVec BarComplex::B_of(const std::vector<std::size_t>& t) const
{
    const std::size_t n = t.size() - 1;
    SparseVec out;
    if (normalized_) {
        if (t[0] == 0)
            return out;
        for (std::size_t i = 0; i <= n; ++i) {
            std::vector<std::size_t> u{0};
            u.insert(u.end(), t.begin() + static_cast<std::ptrdiff_t>(i), t.end());
            u.insert(u.end(), t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
            out.add(encode(u), (n * i) % 2 ? -1 : 1);
        }
        return out;
    }
    // (1 - t) s N with t(a0..an) = (-1)^n (an, a0, .., a_{n-1})
    for (std::size_t j = 0; j <= n; ++j) {
        // t^j rotates right by j positions with sign (-1)^{nj}
        std::vector<std::size_t> r(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            r[(k + j) % (n + 1)] = t[k];
        int sign = (n * j) % 2 ? -1 : 1;
        std::vector<std::size_t> s{0};
        s.insert(s.end(), r.begin(), r.end());
        out.add(encode(s), sign);
        // minus t_{n+1} applied to s: (-1)^{n+1} (last, 1, r0, .., r_{n-1})
        std::vector<std::size_t> ts{s.back()};
        ts.insert(ts.end(), s.begin(), s.end() - 1);
        out.add(encode(ts), -sign * ((n + 1) % 2 ? -1 : 1));
    }
    return out;
}

bool BarComplex::verify_identities() const
{
    for (std::size_t n = 2; n <= n_max_; ++n)
        if (!(b_[n - 1] * b_[n]).is_zero())
            return false;
    for (std::size_t n = 0; n + 1 < n_max_; ++n)
        if (!(B_[n + 1] * B_[n]).is_zero())
            return false;
    for (std::size_t n = 0; n < n_max_; ++n) {
        RatMatrix lhs = b_[n + 1] * B_[n];
        if (n >= 1)
            lhs = lhs + B_[n - 1] * b_[n];
        if (!lhs.is_zero())
            return false;
    }
    return true;
}

std::string BarComplex::format(std::size_t n, const SparseVec& v) const
{
    if (v.empty())
        return "0";
    std::string s;
    bool first = true;
    for (const auto& [idx, c] : v) {
        Rational a = abs(c);
        s += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
        first = false;
        if (a != 1)
            s += a.get_str() + "*";
        auto t = decode(n, idx);
        for (std::size_t i = 0; i < t.size(); ++i)
            s += (i ? "⊗" : "") + a_.label(t[i]);
    }
    return s;
}

// ---------------------------------------------------------------- Eulerian idempotents

namespace {

std::size_t descents(const std::vector<std::size_t>& s)
{
    std::size_t d = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] > s[i + 1])
            ++d;
    return d;
}

int permutation_sign(const std::vector<std::size_t>& s)
{
    int sign = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (s[i] > s[j])
                sign = -sign;
    return sign;
}

}  // namespace

std::vector<GroupElement> eulerian_idempotents(std::size_t n)
{
    if (n > 6)
        throw BudgetError("Eulerian idempotents are limited to n <= 6 (factorial growth)");
    std::vector<GroupElement> e(n + 1);
    mpz_class fact = 1;
    for (std::size_t k = 2; k <= n; ++k)
        fact *= static_cast<unsigned long>(k);
    std::vector<std::size_t> s(n);
    std::iota(s.begin(), s.end(), 0);
    do {
        // binom(x - d + n - 1, n) as a polynomial in x
        long shift = static_cast<long>(n) - 1 - static_cast<long>(descents(s));
        std::vector<Rational> poly{1};
        for (std::size_t k = 0; k < n; ++k) {
            Rational c = shift - static_cast<long>(k);
            std::vector<Rational> next(poly.size() + 1);
            for (std::size_t t = 0; t < poly.size(); ++t) {
                next[t + 1] += poly[t];
                next[t] += poly[t] * c;
            }
            poly = std::move(next);
        }
        int sign = permutation_sign(s);
        for (std::size_t i = 0; i < poly.size() && i <= n; ++i) {
            Rational c = poly[i] * sign / Rational(fact);
            if (c != 0)
                e[i][s] = c;
        }
    } while (std::next_permutation(s.begin(), s.end()));
    return e;
}

namespace {

/// Columns of e_n^{(i)} on selected basis vectors of C_n.
std::vector<SparseVec> eulerian_columns(const BarComplex& bar, std::size_t n, const GroupElement& e,
                                        const std::vector<std::size_t>& units)
{
    std::vector<SparseVec> cols;
    for (std::size_t u : units) {
        auto t = bar.decode(n, u);
        SparseVec v;
        for (const auto& [perm, c] : e) {
            std::vector<std::size_t> w(t.size());
            w[0] = t[0];
            for (std::size_t k = 0; k < n; ++k)
                w[perm[k] + 1] = t[k + 1];
            v.add(bar.encode(w), c);
        }
        cols.push_back(std::move(v));
    }
    return cols;
}

}  // namespace

RatMatrix eulerian_matrix(const BarComplex& bar, std::size_t n, std::size_t i)
{
    auto e = eulerian_idempotents(n);
    std::vector<std::size_t> all(bar.dim(n));
    std::iota(all.begin(), all.end(), 0);
    if (i > n)
        return RatMatrix(bar.dim(n), bar.dim(n));
    return RatMatrix::from_columns(bar.dim(n), eulerian_columns(bar, n, e[i], all));
}

std::string flavor_name(Flavor f)
{
    return f == Flavor::HH ? "HH" : "HC";
}

// ---------------------------------------------------------------- homology engine

namespace {

class Engine {
public:
    Engine(const ArtinAlgebra& a, std::size_t n_max, std::size_t budget, std::vector<bool> ideal = {})
        : bar_(a, n_max, true, budget), ideal_(std::move(ideal))
    {
    }

    const BarComplex& bar() const { return bar_; }

    // ---- ambient spaces
    std::size_t ambient_dim(Flavor f, std::size_t n) const
    {
        if (f == Flavor::HH)
            return bar_.dim(n);
        std::size_t s = 0;
        for (std::size_t k = 0; 2 * k <= n; ++k)
            s += bar_.dim(n - 2 * k);
        return s;
    }

    std::size_t offset(std::size_t n, std::size_t k) const
    {
        std::size_t s = 0;
        for (std::size_t t = 0; t < k; ++t)
            s += bar_.dim(n - 2 * t);
        return s;
    }

    /// D on the ambient space in degree n (n >= 1).
    SparseVec boundary(Flavor f, std::size_t n, const SparseVec& x) const
    {
        if (f == Flavor::HH)
            return bar_.b(n).apply(x);
        SparseVec out;
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            std::size_t m = n - 2 * k;
            std::size_t off = offset(n, k);
            SparseVec part;
            for (const auto& [i, c] : x)
                if (i >= off && i < off + bar_.dim(m))
                    part.push_back(i - off, c);
            if (part.empty())
                continue;
            if (m >= 1) {
                SparseVec bx = bar_.b(m).apply(part);
                std::size_t o = offset(n - 1, k);
                for (const auto& [i, c] : bx)
                    out.add(o + i, c);
            }
            if (k >= 1) {
                SparseVec Bx = bar_.B(m).apply(part);
                std::size_t o = offset(n - 1, k - 1);
                for (const auto& [i, c] : Bx)
                    out.add(o + i, c);
            }
        }
        return out;
    }

    // ---- spanning sets of subcomplexes
    std::vector<std::size_t> units(std::size_t m, bool relative) const
    {
        std::vector<std::size_t> out;
        for (std::size_t u = 0; u < bar_.dim(m); ++u) {
            if (relative) {
                auto t = bar_.decode(m, u);
                if (std::none_of(t.begin(), t.end(), [&](std::size_t x) { return ideal_[x]; }))
                    continue;
            }
            out.push_back(u);
        }
        return out;
    }

    const std::vector<GroupElement>& idempotents(std::size_t m)
    {
        auto it = idem_.find(m);
        if (it == idem_.end())
            it = idem_.emplace(m, eulerian_idempotents(m)).first;
        return it->second;
    }

    /// Spanning vectors of C_m^{(w)} (all of C_m when w is empty), optionally relative.
    std::vector<SparseVec> bar_span(std::size_t m, std::optional<std::size_t> w, bool relative)
    {
        std::vector<std::size_t> us = units(m, relative);
        if (!w) {
            std::vector<SparseVec> out;
            for (std::size_t u : us)
                out.push_back(SparseVec::unit(u));
            return out;
        }
        if (*w > m)
            return {};
        auto cols = eulerian_columns(bar_, m, idempotents(m)[*w], us);
        return Subspace::span(bar_.dim(m), cols).basis();
    }

    std::vector<SparseVec> span(Flavor f, std::size_t n, std::optional<std::size_t> w, bool relative)
    {
        if (f == Flavor::HH)
            return bar_span(n, w, relative);
        std::vector<SparseVec> out;
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            std::optional<std::size_t> wk;
            if (w) {
                if (*w < k)
                    continue;
                wk = *w - k;
            }
            std::size_t off = offset(n, k);
            for (const auto& v : bar_span(n - 2 * k, wk, relative)) {
                SparseVec s;
                for (const auto& [i, c] : v)
                    s.push_back(off + i, c);
                out.push_back(std::move(s));
            }
        }
        return out;
    }

    void check_degree(Flavor f, std::size_t n) const
    {
        std::size_t need = f == Flavor::HH ? n + 1 : n + 1;
        if (f == Flavor::HH && n > bar_.n_max())
            throw BudgetError("HH in degree " + std::to_string(n) + " needs bar depth >= " + std::to_string(n));
        if (f == Flavor::HC && need > bar_.n_max())
            throw BudgetError("HC in degree " + std::to_string(n) + " needs bar depth >= " + std::to_string(need) +
                              " (truncation)");
    }

    std::vector<SparseVec> boundaries(Flavor f, std::size_t n, std::optional<std::size_t> w, bool relative)
    {
        std::vector<SparseVec> out;
        if (n + 1 > bar_.n_max() && f == Flavor::HH)
            return out;  // caller guarantees n + 1 <= n_max whenever b_{n+1} matters
        for (const auto& v : span(f, n + 1, w, relative)) {
            SparseVec d = boundary(f, n + 1, v);
            if (!d.empty())
                out.push_back(std::move(d));
        }
        return out;
    }

    std::size_t dim(Flavor f, std::size_t n, std::optional<std::size_t> w, bool relative)
    {
        check_degree(f, n);
        auto chains = span(f, n, w, relative);
        std::size_t r = rank_of(ambient_dim(f, n), chains);
        std::size_t rd = 0;
        if (n >= 1) {
            std::vector<SparseVec> images;
            for (const auto& v : chains)
                images.push_back(boundary(f, n, v));
            rd = rank_of(ambient_dim(f, n - 1), images);
        }
        std::size_t rb = 0;
        if (n + 1 <= bar_.n_max())
            rb = rank_of(ambient_dim(f, n), boundaries(f, n, w, relative));
        else if (f == Flavor::HH)
            throw BudgetError("HH in degree " + std::to_string(n) + " needs bar depth >= " + std::to_string(n + 1));
        return r - rd - rb;
    }

    Subquotient group(Flavor f, std::size_t n, std::optional<std::size_t> w, bool relative)
    {
        check_degree(f, n);
        if (n + 1 > bar_.n_max())
            throw BudgetError(flavor_name(f) + " in degree " + std::to_string(n) + " needs bar depth >= " +
                              std::to_string(n + 1));
        Subspace chains = Subspace::span(ambient_dim(f, n), span(f, n, w, relative));
        std::vector<SparseVec> cycles;
        if (n == 0) {
            cycles = chains.basis();
        }
        else {
            std::vector<SparseVec> images;
            for (const auto& v : chains.basis())
                images.push_back(boundary(f, n, v));
            RatMatrix m = RatMatrix::from_columns(ambient_dim(f, n - 1), images);
            Subspace kernel = kernel_basis(m);
            for (const auto& k : kernel.basis()) {
                SparseVec z;
                for (const auto& [i, c] : k)
                    z.axpy(c, chains.basis()[i]);
                cycles.push_back(std::move(z));
            }
        }
        return subquotient(ambient_dim(f, n), cycles, boundaries(f, n, w, relative));
    }

    std::string format(Flavor f, std::size_t n, const SparseVec& v) const
    {
        if (f == Flavor::HH)
            return bar_.format(n, v);
        std::string s;
        for (std::size_t k = 0; 2 * k <= n; ++k) {
            std::size_t off = offset(n, k);
            SparseVec part;
            for (const auto& [i, c] : v)
                if (i >= off && i < off + bar_.dim(n - 2 * k))
                    part.push_back(i - off, c);
            if (part.empty())
                continue;
            std::string t = bar_.format(n - 2 * k, part);
            if (k > 0)
                t = "(" + t + ")*u^" + std::to_string(k);
            s += (s.empty() ? "" : " + ") + t;
        }
        return s.empty() ? "0" : s;
    }

private:
    BarComplex bar_;
    std::vector<bool> ideal_;
    std::map<std::size_t, std::vector<GroupElement>> idem_;
};

std::size_t depth_for(Flavor f, std::size_t n)
{
    return f == Flavor::HH ? n + 1 : n + 1;
}

void require_depth(const BarSettings& s, Flavor f, std::size_t n)
{
    std::size_t need = depth_for(f, n);
    if (s.n_max < need)
        throw BudgetError(flavor_name(f) + "_" + std::to_string(n) + " needs bar depth >= " + std::to_string(need) +
                          " (got " + std::to_string(s.n_max) + ")");
}

std::vector<bool> ideal_flags(const RelativePair& pair)
{
    std::vector<bool> flags(pair.S.dim(), false);
    for (const auto& v : pair.ideal_basis)
        flags[v.leading()] = true;
    return flags;
}

HomologyGroup make_group(Engine& e, Flavor f, std::size_t n)
{
    Subquotient q = e.group(f, n, std::nullopt, false);
    HomologyGroup g;
    g.degree = n;
    g.dim = q.dim;
    g.basis = q.representatives;
    for (const auto& v : g.basis)
        g.labels.push_back(e.format(f, n, v));
    return g;
}

}  // namespace

HomologyGroup hh(const ArtinAlgebra& a, std::size_t n, const BarSettings& s)
{
    require_depth(s, Flavor::HH, n);
    Engine e(a, n + 1, s.budget);
    return make_group(e, Flavor::HH, n);
}

HomologyGroup hc(const ArtinAlgebra& a, std::size_t n, const BarSettings& s)
{
    require_depth(s, Flavor::HC, n);
    Engine e(a, n + 1, s.budget);
    return make_group(e, Flavor::HC, n);
}

HodgeDecomposition hodge(const ArtinAlgebra& a, std::size_t n, Flavor flavor, const BarSettings& s)
{
    require_depth(s, flavor, n);
    if (n + 1 > 6)
        throw BudgetError("Hodge decomposition needs idempotents in degree n + 1 <= 6");
    Engine e(a, n + 1, s.budget);
    HodgeDecomposition h;
    h.degree = n;
    h.flavor = flavor;
    h.total = e.dim(flavor, n, std::nullopt, false);
    for (std::size_t i = 0; i <= n; ++i) {
        std::size_t d = e.dim(flavor, n, i, false);
        if (d > 0 || i >= 1)
            h.pieces[i] = d;
    }
    return h;
}

RelativeHomology relative(const RelativePair& pair, std::size_t n, Flavor flavor, const BarSettings& s)
{
    require_depth(s, flavor, n);
    Engine es(pair.S, n + 1, s.budget, ideal_flags(pair));
    Engine er(pair.R, n + 1, s.budget);
    RelativeHomology r;
    r.degree = n;
    r.flavor = flavor;
    Subquotient q = es.group(flavor, n, std::nullopt, true);
    r.dim = q.dim;
    for (const auto& v : q.representatives)
        r.labels.push_back(es.format(flavor, n, v));
    r.absolute_dim = es.dim(flavor, n, std::nullopt, false);
    r.base_dim = er.dim(flavor, n, std::nullopt, false);
    if (n + 1 <= 6)
        for (std::size_t i = 0; i <= n; ++i) {
            std::size_t d = es.dim(flavor, n, i, true);
            if (d > 0 || i >= 1)
                r.pieces[i] = d;
        }
    return r;
}

GoodwillieReport goodwillie_k(const RelativePair& pair, std::size_t n, const BarSettings& s)
{
    if (n < 1)
        throw InputError("goodwillie-k needs n >= 1");
    GoodwillieReport g;
    g.n = n;
    require_depth(s, Flavor::HC, n - 1);
    Engine es(pair.S, n, s.budget, ideal_flags(pair));
    g.dim = es.dim(Flavor::HC, n - 1, std::nullopt, true);
    if (n == 2) {
        g.bloch_dim = bloch_group(pair).quotient.dim;
        if (*g.bloch_dim != g.dim)
            throw MathError("Bloch/Goodwillie disagreement: dim HC_1(S,I) = " + std::to_string(g.dim) +
                            " but dim Omega^1_{S,I}/dI = " + std::to_string(*g.bloch_dim));
    }
    return g;
}

SbiReport sbi_split_check(const RelativePair& pair, std::size_t l, const BarSettings& s, bool require_graded)
{
    if (require_graded && !(pair.A.graded() && (pair.R.graded() || pair.R.dim() == 1)))
        throw InputError("sbi-check requires graded artinian algebra");
    if (l < 1)
        throw InputError("sbi-check needs weight l >= 1");
    require_depth(s, Flavor::HC, l);
    if (l + 1 > 6)
        throw BudgetError("sbi-check needs idempotents in degree l + 1 <= 6");
    Engine e(pair.S, l + 1, s.budget, ideal_flags(pair));
    SbiReport r;
    r.weight = l;
    Subquotient left = e.group(Flavor::HC, l - 1, l - 1, true);
    Subquotient mid = e.group(Flavor::HH, l, l, true);
    Subquotient right = e.group(Flavor::HC, l, l, true);
    r.left = left.dim;
    r.middle = mid.dim;
    r.right = right.dim;

    const BarComplex& bar = e.bar();
    auto mid_bd = e.boundaries(Flavor::HH, l, l, true);
    auto right_bd = e.boundaries(Flavor::HC, l, l, true);
    const std::size_t dl = bar.dim(l);
    const std::size_t tot = e.ambient_dim(Flavor::HC, l);

    // B: the C_{l-1} slot of a cycle of Tot_{l-1} goes to B x0 in C_l
    std::vector<SparseVec> bimages;
    for (const auto& z : left.representatives) {
        SparseVec x0;
        for (const auto& [i, c] : z)
            if (i < bar.dim(l - 1))
                x0.push_back(i, c);
        bimages.push_back(bar.B(l - 1).apply(x0));
    }
    std::size_t base_mid = rank_of(dl, mid_bd);
    std::vector<SparseVec> with_b = mid_bd;
    with_b.insert(with_b.end(), bimages.begin(), bimages.end());
    r.b_injective = rank_of(dl, with_b) - base_mid == left.dim;

    // I: C_l into the first slot of Tot_l
    std::size_t base_right = rank_of(tot, right_bd);
    std::vector<SparseVec> with_i = right_bd;
    with_i.insert(with_i.end(), mid.representatives.begin(), mid.representatives.end());
    r.i_surjective = rank_of(tot, with_i) - base_right == right.dim;

    Subspace right_span = Subspace::span(tot, right_bd);
    r.composite_zero = std::all_of(bimages.begin(), bimages.end(), [&](const SparseVec& v) { return right_span.contains(v); });
    r.additive = r.middle == r.left + r.right;
    return r;
}

}  // namespace infcycle
