#include "infcycle/complexes.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>

#include "infcycle/errors.hpp"

namespace infcycle {

PolyMatrix PolyMatrix::transpose() const
{
    std::size_t nv = entries.empty() ? 0 : entries.front().nvars();
    PolyMatrix t(cols, rows, nv);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            t.at(c, r) = at(r, c);
    return t;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.cols != b.rows)
        throw MathError("PolyMatrix: shape mismatch");
    std::size_t nv = a.entries.empty() ? (b.entries.empty() ? 0 : b.entries.front().nvars()) : a.entries.front().nvars();
    PolyMatrix p(a.rows, b.cols, nv);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.at(r, k).is_zero())
                continue;
            for (std::size_t c = 0; c < b.cols; ++c)
                if (!b.at(k, c).is_zero())
                    p.at(r, c) += a.at(r, k) * b.at(k, c);
        }
    return p;
}

bool ChainComplex::verify_square_zero() const
{
    for (std::size_t i = 0; i + 1 < maps.size(); ++i) {
        PolyMatrix p = cochain ? maps[i + 1] * maps[i] : maps[i] * maps[i + 1];
        for (const auto& e : p.entries)
            if (!ctx.normal_form(e).is_zero())
                return false;
    }
    return true;
}

std::vector<unsigned> KoszulData::levels() const
{
    if (exponents.empty())
        return std::vector<unsigned>(sequence.size(), 1);
    if (exponents.size() != sequence.size())
        throw InputError("Koszul data: one exponent per sequence element is required");
    for (unsigned a : exponents)
        if (a == 0)
            throw InputError("Koszul data: exponents must be positive");
    return exponents;
}

std::vector<Polynomial> KoszulData::powers() const
{
    std::vector<unsigned> a = levels();
    std::vector<Polynomial> out;
    for (std::size_t i = 0; i < sequence.size(); ++i)
        out.push_back(sequence[i].pow(a[i]));
    return out;
}

namespace {
std::atomic<bool> g_sign_fault{false};
}

void set_koszul_sign_fault(bool on)
{
    g_sign_fault = on;
}

bool koszul_sign_fault()
{
    return g_sign_fault;
}

ChainComplex koszul(const KoszulData& k)
{
    const std::size_t p = k.sequence.size();
    if (p == 0)
        throw InputError("Koszul complex of an empty sequence");
    if (p > 20)
        throw InputError("Koszul complex: sequence too long");
    for (const auto& f : k.sequence)
        k.ctx.check_member(f);
    std::vector<Polynomial> pw = k.powers();
    const std::size_t nv = k.ctx.nvars();
    const bool fault = g_sign_fault;

    ChainComplex c;
    c.ctx = k.ctx;
    std::vector<std::vector<WedgeMask>> subsets(p + 1);
    std::vector<int> pdeg;
    bool homogeneous = k.ctx.relations_homogeneous();
    for (const auto& f : pw) {
        homogeneous = homogeneous && f.is_homogeneous(k.ctx.weights());
        pdeg.push_back(f.is_zero() ? 0 : f.weighted_degree(k.ctx.weights()));
    }
    for (std::size_t i = 0; i <= p; ++i) {
        subsets[i] = wedge_subsets(p, i);
        c.ranks.push_back(subsets[i].size());
        std::vector<int> sh;
        for (WedgeMask m : subsets[i]) {
            int s = 0;
            for (std::size_t j = 0; j < p; ++j)
                if (m >> j & 1u)
                    s += pdeg[j];
            sh.push_back(homogeneous ? s : 0);
        }
        c.shifts.push_back(std::move(sh));
    }
    for (std::size_t i = 1; i <= p; ++i) {
        PolyMatrix m(subsets[i - 1].size(), subsets[i].size(), nv);
        std::map<WedgeMask, std::size_t> row;
        for (std::size_t r = 0; r < subsets[i - 1].size(); ++r)
            row[subsets[i - 1][r]] = r;
        for (std::size_t col = 0; col < subsets[i].size(); ++col) {
            WedgeMask mask = subsets[i][col];
            int t = 0;
            for (std::size_t j = 0; j < p; ++j) {
                if (!(mask >> j & 1u))
                    continue;
                ++t;
                int sign = ((t + (fault ? 0 : 1)) % 2 == 0) ? 1 : -1;
                m.at(row.at(mask & ~(WedgeMask(1) << j)), col) = pw[j].scaled(sign);
            }
        }
        c.maps.push_back(std::move(m));
    }
    return c;
}

// ---------------------------------------------------------------- graded slices

namespace {

void enumerate_weighted(const std::vector<int>& w, int target, std::size_t i, Exponents& cur,
                        const std::function<void(const Exponents&)>& emit)
{
    if (i == w.size()) {
        if (target == 0)
            emit(cur);
        return;
    }
    for (int e = 0; e * w[i] <= target; ++e) {
        cur[i] = static_cast<unsigned>(e);
        enumerate_weighted(w, target - e * w[i], i + 1, cur, emit);
    }
    cur[i] = 0;
}

struct SliceBasis {
    std::vector<std::pair<std::size_t, Exponents>> elems;  // (generator, monomial)
    std::map<std::pair<std::size_t, Exponents>, std::size_t> index;
};

class Slicer {
public:
    explicit Slicer(const PolyContext& ctx) : ctx_(ctx)
    {
        for (int w : ctx.weights())
            if (w <= 0)
                throw InputError("graded slices need positive variable weights");
        if (!ctx.relations_homogeneous())
            throw InputError("graded slices need homogeneous relations");
        for (const auto& g : ctx.groebner().basis)
            leads_.push_back(g.leading_monomial(ctx.order()));
    }

    const std::vector<Exponents>& standard(int d)
    {
        auto it = cache_.find(d);
        if (it != cache_.end())
            return it->second;
        std::vector<Exponents> out;
        if (d >= 0) {
            Exponents cur(ctx_.nvars(), 0);
            enumerate_weighted(ctx_.weights(), d, 0, cur, [&](const Exponents& e) {
                for (const auto& l : leads_)
                    if (divides(l, e))
                        return;
                out.push_back(e);
            });
        }
        return cache_.emplace(d, std::move(out)).first->second;
    }

    SliceBasis basis(const std::vector<int>& shifts, int d)
    {
        SliceBasis b;
        for (std::size_t g = 0; g < shifts.size(); ++g)
            for (const auto& m : standard(d - shifts[g])) {
                b.index[{g, m}] = b.elems.size();
                b.elems.emplace_back(g, m);
            }
        return b;
    }

    /// Matrix of the map (entry (r, g) = m.at(r, g)) between slices.
    RatMatrix slice_map(const PolyMatrix& m, const SliceBasis& src, const SliceBasis& dst)
    {
        std::vector<SparseVec> cols;
        for (const auto& [g, mono] : src.elems) {
            SparseVec v;
            for (std::size_t r = 0; r < m.rows; ++r) {
                const Polynomial& e = m.at(r, g);
                if (e.is_zero())
                    continue;
                Polynomial img = ctx_.normal_form(e.times_monomial(mono, 1));
                for (const auto& [ex, c] : img.terms()) {
                    auto it = dst.index.find({r, ex});
                    if (it == dst.index.end())
                        throw InputError("graded slices: map is not homogeneous for the declared weights");
                    v.add(it->second, c);
                }
            }
            cols.push_back(std::move(v));
        }
        return RatMatrix::from_columns(dst.elems.size(), cols);
    }

private:
    const PolyContext& ctx_;
    std::vector<Exponents> leads_;
    std::map<int, std::vector<Exponents>> cache_;
};

}  // namespace

std::vector<std::size_t> homology_slices(const ChainComplex& c, std::size_t i, int lo, int hi)
{
    if (i > c.length())
        throw InputError("homology degree out of range");
    Slicer s(c.ctx);
    std::vector<std::size_t> dims;
    for (int d = lo; d <= hi; ++d) {
        SliceBasis here = s.basis(c.shifts[i], d);
        std::size_t kernel = here.elems.size();
        // outgoing map
        std::optional<std::size_t> out_target;
        const PolyMatrix* out = nullptr;
        const PolyMatrix* in = nullptr;
        std::optional<std::size_t> in_source;
        if (c.cochain) {
            if (i < c.length()) {
                out = &c.maps[i];
                out_target = i + 1;
            }
            if (i > 0) {
                in = &c.maps[i - 1];
                in_source = i - 1;
            }
        }
        else {
            if (i > 0) {
                out = &c.maps[i - 1];
                out_target = i - 1;
            }
            if (i < c.length()) {
                in = &c.maps[i];
                in_source = i + 1;
            }
        }
        if (out) {
            SliceBasis tgt = s.basis(c.shifts[*out_target], d);
            kernel -= rank(s.slice_map(*out, here, tgt));
        }
        std::size_t image = 0;
        if (in) {
            SliceBasis src = s.basis(c.shifts[*in_source], d);
            image = rank(s.slice_map(*in, src, here));
        }
        dims.push_back(kernel - image);
    }
    return dims;
}

std::vector<std::size_t> koszul_homology(const KoszulData& k, std::size_t i, int deg_bound)
{
    ChainComplex c = koszul(k);
    for (const auto& f : k.powers())
        if (!f.is_homogeneous(k.ctx.weights()))
            throw InputError("koszul_homology on graded slices needs a homogeneous sequence");
    return homology_slices(c, i, 0, deg_bound);
}

std::size_t quotient_slice_dim(const PolyContext& ctx, const std::vector<Polynomial>& extra, int d)
{
    std::vector<Polynomial> rels = ctx.relations();
    rels.insert(rels.end(), extra.begin(), extra.end());
    PolyContext q = ctx.with_relations(rels);
    if (q.is_unit_ideal())
        return 0;
    Slicer s(q);
    return s.standard(d).size();
}

ChainComplex hom_into(const KoszulData& k, std::size_t target_rank)
{
    ChainComplex kz = koszul(k);
    ChainComplex c;
    c.ctx = k.ctx;
    c.cochain = true;
    const std::size_t nv = k.ctx.nvars();
    for (std::size_t i = 0; i < kz.ranks.size(); ++i) {
        c.ranks.push_back(kz.ranks[i] * target_rank);
        std::vector<int> sh;
        for (int s : kz.shifts[i])
            for (std::size_t t = 0; t < target_rank; ++t)
                sh.push_back(-s);
        c.shifts.push_back(std::move(sh));
    }
    // d^i = transpose(M_{i+1}) (x) id
    for (const auto& m : kz.maps) {
        PolyMatrix t = m.transpose();
        PolyMatrix big(t.rows * target_rank, t.cols * target_rank, nv);
        for (std::size_t r = 0; r < t.rows; ++r)
            for (std::size_t col = 0; col < t.cols; ++col)
                for (std::size_t s = 0; s < target_rank; ++s)
                    big.at(r * target_rank + s, col * target_rank + s) = t.at(r, col);
        c.maps.push_back(std::move(big));
    }
    return c;
}

ChainComplex hom_into(const KoszulData& k, const FormModule& target)
{
    if (!target.free())
        throw InputError("hom_into: only free form modules are supported as targets");
    return hom_into(k, target.generators.size());
}

// ---------------------------------------------------------------- Ext classes

ExtVerdict ext_class_is_zero(const KoszulData& k, const PolyForm& numerator, const std::optional<Polynomial>& inverted)
{
    const PolyContext& ctx = k.ctx;
    std::vector<Polynomial> gens = k.powers();
    for (const auto& r : ctx.relations())
        gens.push_back(r);
    PolyContext fctx = ctx.with_relations(gens);
    std::optional<PolyContext> sctx;
    if (inverted) {
        ctx.check_member(*inverted);
        sctx = ctx.with_relations(saturation(gens, *inverted, ctx.order()));
    }
    ExtVerdict v;
    v.zero = true;
    {
        std::string s;
        for (const auto& g : k.powers())
            s += (s.empty() ? "" : ", ") + ctx.format(g);
        v.membership_ideal = "(" + s + ")" + (inverted ? " saturated by " + ctx.format(*inverted) : "");
    }
    for (const auto& [key, coef] : numerator.terms()) {
        KeyCertificate cert;
        cert.key = key;
        cert.coefficient = coef;
        const PolyContext& decide = sctx ? *sctx : fctx;
        Membership m = ideal_member(coef, decide);
        if (!m.member) {
            cert.member = false;
            cert.normal_form = m.normal_form;
            v.zero = false;
            v.certificates.push_back(std::move(cert));
            continue;
        }
        cert.member = true;
        if (!sctx) {
            cert.cofactors = std::move(m.cofactors);
        }
        else {
            Polynomial p = coef;
            bool found = false;
            for (unsigned e = 0; e <= 64 && !found; ++e) {
                Membership mm = ideal_member(p, fctx);
                if (mm.member) {
                    cert.saturation_power = e;
                    cert.cofactors = std::move(mm.cofactors);
                    found = true;
                }
                else {
                    p = p * *inverted;
                }
            }
            if (!found)
                throw MathError("ext_class_is_zero: saturation exponent above 64");
        }
        v.certificates.push_back(std::move(cert));
    }
    return v;
}

PolyForm transition(const KoszulData& k, const PolyForm& numerator, const std::vector<unsigned>& to_levels)
{
    std::vector<unsigned> from = k.levels();
    if (to_levels.size() != from.size())
        throw InputError("transition: level vector has the wrong length");
    Polynomial factor = k.ctx.one();
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (to_levels[i] < from[i])
            throw InputError("transition maps only go to higher levels");
        factor = factor * k.sequence[i].pow(to_levels[i] - from[i]);
    }
    return numerator.times(factor);
}

bool verify_certificates(const KoszulData& k, const ExtVerdict& v, const std::optional<Polynomial>& inverted)
{
    std::vector<Polynomial> gens = k.powers();
    for (const auto& r : k.ctx.relations())
        gens.push_back(r);
    PolyContext decide = k.ctx.with_relations(inverted ? saturation(gens, *inverted, k.ctx.order()) : gens);
    for (const auto& c : v.certificates) {
        if (c.member) {
            if (c.cofactors.size() != gens.size())
                return false;
            Polynomial lhs = c.coefficient;
            if (c.saturation_power > 0)
                lhs = lhs * inverted->pow(c.saturation_power);
            Polynomial rhs = k.ctx.zero();
            for (std::size_t i = 0; i < gens.size(); ++i)
                rhs += c.cofactors[i] * gens[i];
            if (lhs != rhs)
                return false;
        }
        else {
            if (c.normal_form.is_zero() || decide.normal_form(c.coefficient) != c.normal_form)
                return false;
        }
    }
    return true;
}

}  // namespace infcycle
