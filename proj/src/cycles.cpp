#include "infcycle/cycles.hpp"

#include <algorithm>
#include <future>

#include "infcycle/errors.hpp"

namespace infcycle {

namespace {

Polynomial augment_combined(const FormContext& fc, const Polynomial& p)
{
    const std::size_t nr = fc.nvars();
    const std::size_t na = fc.combined().nvars() - nr;
    Polynomial nf = fc.combined().normal_form(p);
    Polynomial out(fc.combined().nvars());
    for (const auto& [e, c] : nf.terms()) {
        bool pure = true;
        for (std::size_t i = nr; i < nr + na; ++i)
            pure = pure && e[i] == 0;
        if (pure)
            out.add_term(e, c);
    }
    return out.restrict(nr, na);
}

bool in_ideal(const PolyContext& ctx, const std::vector<Polynomial>& gens, const Polynomial& p)
{
    return ideal_member(p, ctx.with_relations(gens)).member;
}

std::string join_formatted(const PolyContext& ctx, const std::vector<Polynomial>& ps)
{
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i)
        s += (i ? ", " : "") + ctx.format(ps[i]);
    return s;
}

PolyForm lift_entry(const FormContext& fc, const PolyContext& ctx, const Polynomial& p)
{
    if (ctx.nvars() == fc.nvars())
        return fc.function(p);
    return fc.from_combined(p);
}

PolyForm wedge_all(const FormContext& fc, const std::vector<PolyForm>& forms)
{
    PolyForm w = fc.function(fc.base().one());
    for (const auto& f : forms)
        w = fc.wedge(w, f);
    return w;
}

Rational factorial(std::size_t p)
{
    Rational r = 1;
    for (std::size_t i = 2; i <= p; ++i)
        r *= static_cast<long>(i);
    return r;
}

enum class BoundaryMode { Cleared, Denominator, UnitDenominator, Unsupported };

struct Classified {
    BoundaryMode mode = BoundaryMode::Unsupported;
    Rational scale = 1;  ///< h = scale * g in the denominator mode
};

Classified classify(const ExtClass& cls, const Polynomial& h)
{
    Classified out;
    if (cls.denominator_power == 0 || !cls.denominator) {
        out.mode = BoundaryMode::Cleared;
        return out;
    }
    const Polynomial& g = *cls.denominator;
    if (auto q = exact_quotient(h, g); q && q->is_constant() && !q->is_zero()) {
        out.mode = BoundaryMode::Denominator;
        out.scale = q->constant_term();
        return out;
    }
    const PolyContext& ctx = cls.koszul.ctx;
    std::vector<Polynomial> fh = cls.koszul.sequence;
    fh.push_back(h);
    std::vector<Polynomial> fhg = fh;
    fhg.push_back(g);
    if (ctx.with_relations(fhg).is_unit_ideal()) {
        out.mode = BoundaryMode::UnitDenominator;
        return out;
    }
    std::vector<Polynomial> fg = cls.koszul.sequence;
    fg.push_back(g);
    if (ideal_contains(fh, fg, ctx.order()) && ideal_contains(fg, fh, ctx.order())) {
        out.mode = BoundaryMode::Denominator;
        out.scale = 0;
    }
    return out;
}

PolyMatrix constant_matrix(const RatMatrix& m, std::size_t nvars)
{
    PolyMatrix out(m.rows(), m.cols(), nvars);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r))
            out.at(r, c) = Polynomial::constant(nvars, v);
    return out;
}

ChainComplex conjugate(const ChainComplex& c, const std::vector<RatMatrix>& p, const std::vector<RatMatrix>& p_inv)
{
    ChainComplex out = c;
    const std::size_t nv = c.ctx.nvars();
    for (std::size_t i = 1; i <= c.length(); ++i)
        out.maps[i - 1] = constant_matrix(p[i - 1], nv) * c.maps[i - 1] * constant_matrix(p_inv[i], nv);
    return out;
}

}  // namespace

SubvarietyGerm make_germ(const PolyContext& ctx, std::vector<Polynomial> sequence)
{
    if (!ctx.relations().empty())
        throw InputError("germ ring must be a polynomial ring without relations");
    if (sequence.empty())
        throw InputError("germ sequence is empty");
    if (sequence.size() > ctx.nvars())
        throw InputError("germ sequence is longer than the number of variables");
    for (auto& f : sequence) {
        if (f.nvars() != ctx.nvars())
            throw InputError("germ sequence element lives in a different ring");
        if (f.is_zero())
            throw InputError("germ sequence contains zero");
    }
    RegularityReport rep = regularity_report(ctx, sequence);
    if (!rep.regular)
        throw InputError("sequence (" + join_formatted(ctx, sequence) + ") is not regular: " + rep.reason);
    return SubvarietyGerm{ctx, std::move(sequence), std::move(rep)};
}

bool Deformation::has_denominator() const
{
    if (!denominator)
        return false;
    for (unsigned e : powers)
        if (e > 0)
            return true;
    return false;
}

Deformation make_deformation(const SubvarietyGerm& base, const ArtinAlgebra& a, std::vector<Polynomial> numerators,
                             std::vector<unsigned> powers, std::optional<Polynomial> denominator)
{
    const std::size_t p = base.codim();
    if (numerators.size() != p)
        throw InputError("deformation has " + std::to_string(numerators.size()) + " entries, germ has codimension " +
                         std::to_string(p));
    if (powers.empty())
        powers.assign(p, 0);
    if (powers.size() != p)
        throw InputError("deformation denominator powers do not match the sequence length");
    Deformation def;
    def.base = base;
    def.forms = std::make_shared<const FormContext>(base.ctx, a);
    const PolyContext& comb = def.forms->combined();
    bool any_power = false;
    for (unsigned e : powers)
        any_power = any_power || e > 0;
    if (any_power) {
        if (!denominator)
            throw InputError("deformation has denominator powers but no denominator");
        if (denominator->nvars() != base.ctx.nvars())
            throw InputError("denominator must be a polynomial in the ring variables");
        if (denominator->is_constant())
            throw InputError("denominator must be nonconstant");
        if (in_ideal(base.ctx, base.sequence, *denominator))
            throw InputError("denominator " + base.ctx.format(*denominator) + " lies in the ideal of the germ");
        def.denominator = denominator;
    }
    for (std::size_t i = 0; i < p; ++i) {
        if (numerators[i].nvars() != comb.nvars())
            throw InputError("deformation entry " + std::to_string(i + 1) + " lives in a different ring");
        numerators[i] = comb.normal_form(numerators[i]);
        Polynomial expect = base.sequence[i];
        if (powers[i] > 0)
            expect = expect * def.denominator->pow(powers[i]);
        if (augment_combined(*def.forms, numerators[i]) != expect)
            throw InputError("deformation entry " + std::to_string(i + 1) + " does not reduce to " +
                             base.ctx.format(base.sequence[i]) + " modulo the maximal ideal of " + a.name());
    }
    def.numerators = std::move(numerators);
    def.powers = std::move(powers);
    std::optional<Polynomial> inv;
    if (def.denominator)
        inv = def.denominator->embed(comb.nvars(), 0);
    def.regularity = regularity_report(comb, def.numerators, inv);
    if (!def.regularity.regular)
        throw InputError("deformed sequence is not regular: " + def.regularity.reason);
    return def;
}

Deformation parse_deformation(const SubvarietyGerm& base, const ArtinAlgebra& a, const std::vector<std::string>& entries,
                              const std::optional<std::string>& denominator)
{
    FormContext probe(base.ctx, a);
    const PolyContext& comb = probe.combined();
    std::optional<Polynomial> g;
    if (denominator)
        g = parse_polynomial(*denominator, base.ctx.variables());
    std::vector<Polynomial> nums;
    std::vector<unsigned> powers;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        RationalFunction rf = parse_rational_function(entries[i], comb.variables());
        Polynomial den = rf.den;
        unsigned k = 0;
        if (!den.is_constant()) {
            if (!g)
                throw InputError("deformation entry " + std::to_string(i + 1) +
                                 " has a denominator; declare it with 'denominator ='");
            Polynomial ge = g->embed(comb.nvars(), 0);
            while (!den.is_constant()) {
                auto q = exact_quotient(den, ge);
                if (!q || k >= 64)
                    throw InputError("denominator of deformation entry " + std::to_string(i + 1) +
                                     " is not a power of " + base.ctx.format(*g));
                den = *q;
                ++k;
            }
        }
        nums.push_back(rf.num.scaled(Rational(1) / den.constant_term()));
        powers.push_back(k);
    }
    return make_deformation(base, a, std::move(nums), std::move(powers), g);
}

ChainComplex alpha(const Deformation& def)
{
    return koszul(KoszulData{def.forms->combined(), def.numerators, {}});
}

FormMatrix local_fundamental_class(const ChainComplex& c, const FormContext& fc, std::size_t j, std::size_t p)
{
    if (c.cochain)
        throw MathError("local_fundamental_class: expected a chain complex");
    if (j < 1 || p < 1 || j + p - 1 > c.length())
        throw MathError("local_fundamental_class: degree range outside the complex");
    if (c.ctx.nvars() != fc.nvars() && c.ctx.nvars() != fc.combined().nvars())
        throw MathError("local_fundamental_class: complex lives in a different ring");
    FormMatrix acc;
    for (std::size_t i = j; i < j + p; ++i) {
        const PolyMatrix& m = c.maps[i - 1];
        FormMatrix dm{m.rows, m.cols, {}};
        dm.entries.reserve(m.entries.size());
        for (const auto& e : m.entries)
            dm.entries.push_back(fc.d(lift_entry(fc, c.ctx, e)));
        if (i == j) {
            acc = std::move(dm);
            continue;
        }
        FormMatrix next{acc.rows, dm.cols, {}};
        for (std::size_t r = 0; r < acc.rows; ++r)
            for (std::size_t col = 0; col < dm.cols; ++col) {
                PolyForm sum = fc.zero(acc.entries.front().degree() + 1);
                for (std::size_t k = 0; k < acc.cols; ++k)
                    sum += fc.wedge(acc.at(r, k), dm.at(k, col));
                next.entries.push_back(std::move(sum));
            }
        acc = std::move(next);
    }
    Rational inv = Rational(1) / factorial(p);
    for (auto& e : acc.entries)
        e = e.scaled(inv);
    return acc;
}

int koszul_class_sign(std::size_t p)
{
    return (p * (p - 1) / 2) % 2 == 0 ? 1 : -1;
}

ExtClass newton_class(const Deformation& def)
{
    const FormContext& fc = *def.forms;
    const std::size_t p = def.base.codim();
    std::vector<PolyForm> lifted;
    std::vector<PolyForm> base_d;
    unsigned total = 0;
    PolyForm dg;
    if (def.denominator)
        dg = fc.d(fc.function(*def.denominator));
    for (std::size_t i = 0; i < p; ++i) {
        PolyForm n = fc.from_combined(def.numerators[i]);
        PolyForm w = fc.d(n);
        if (def.powers[i] > 0) {
            w = w.times(*def.denominator) - fc.wedge(n, dg).scaled(Rational(static_cast<long>(def.powers[i])));
            total += def.powers[i] + 1;
        }
        lifted.push_back(std::move(w));
        base_d.push_back(fc.d(fc.function(def.base.sequence[i])));
    }
    PolyForm numerator = wedge_all(fc, lifted);
    PolyForm reference = wedge_all(fc, base_d);
    if (total > 0)
        reference = reference.times(def.denominator->pow(total));
    numerator -= reference;
    while (total > 0) {
        if (numerator.is_zero()) {
            total = 0;
            break;
        }
        auto q = numerator.divided(*def.denominator);
        if (!q)
            break;
        numerator = std::move(*q);
        --total;
    }
    if (!fc.is_relative(numerator))
        throw MathError("newton_class: numerator is not relative");
    ExtClass cls{KoszulData{def.base.ctx, def.base.sequence, {}}, std::move(numerator), std::nullopt, total};
    if (total > 0)
        cls.denominator = def.denominator;
    return cls;
}

ExtVerdict class_is_zero(const ExtClass& cls)
{
    std::optional<Polynomial> inv;
    if (cls.denominator_power > 0)
        inv = cls.denominator;
    return ext_class_is_zero(cls.koszul, cls.numerator, inv);
}

BoundaryResult cousin_boundary(const ExtClass& cls, const Polynomial& h)
{
    const PolyContext& ctx = cls.koszul.ctx;
    const auto& f = cls.koszul.sequence;
    if (h.nvars() != ctx.nvars())
        throw InputError("extension element lives in a different ring");
    if (in_ideal(ctx, f, h))
        throw InputError("extension element " + ctx.format(h) + " lies in the ideal of the germ");
    std::vector<Polynomial> fh = f;
    fh.push_back(h);
    RegularityReport rep = regularity_report(ctx, fh);
    if (!rep.regular)
        throw InputError("extended sequence (" + join_formatted(ctx, fh) + ") is not regular: " + rep.reason);
    Classified kind = classify(cls, h);
    BoundaryResult out;
    out.element = h;
    switch (kind.mode) {
    case BoundaryMode::Cleared:
        out.mode = "cleared";
        out.extended = KoszulData{ctx, fh, {}};
        out.numerator = cls.numerator.times(h);
        break;
    case BoundaryMode::Denominator: {
        out.mode = "denominator";
        std::vector<unsigned> levels(f.size(), 1);
        levels.push_back(cls.denominator_power);
        if (kind.scale == 0) {
            std::vector<Polynomial> fg = f;
            fg.push_back(*cls.denominator);
            out.extended = KoszulData{ctx, fg, levels};
            out.numerator = cls.numerator;
        } else {
            Rational c = 1;
            for (unsigned i = 0; i < cls.denominator_power; ++i)
                c *= kind.scale;
            out.extended = KoszulData{ctx, fh, levels};
            out.numerator = cls.numerator.scaled(c);
        }
        break;
    }
    case BoundaryMode::UnitDenominator:
        out.mode = "unit-denominator";
        out.extended = KoszulData{ctx, fh, {}};
        out.numerator = cls.numerator.times(h);
        out.inverted = cls.denominator;
        break;
    case BoundaryMode::Unsupported:
        throw InputError("extension element " + ctx.format(h) + " meets the denominator locus of " +
                         ctx.format(*cls.denominator) + " in a different codimension-" +
                         std::to_string(f.size() + 1) + " germ");
    }
    out.verdict = ext_class_is_zero(out.extended, out.numerator, out.inverted);
    return out;
}

std::vector<Polynomial> default_extensions(const Deformation& def)
{
    const PolyContext& ctx = def.base.ctx;
    const auto& f = def.base.sequence;
    ExtClass probe{KoszulData{ctx, f, {}}, PolyForm(), def.denominator, def.has_denominator() ? 1u : 0u};
    std::vector<Polynomial> cands;
    for (std::size_t v = 0; v < ctx.nvars(); ++v)
        cands.push_back(ctx.var(v));
    if (def.has_denominator()) {
        bool present = false;
        for (const auto& c : cands) {
            auto q = exact_quotient(c, *def.denominator);
            present = present || (q && q->is_constant());
        }
        if (!present)
            cands.push_back(*def.denominator);
    }
    std::vector<Polynomial> out;
    for (auto& h : cands) {
        if (in_ideal(ctx, f, h))
            continue;
        std::vector<Polynomial> fh = f;
        fh.push_back(h);
        if (!is_regular_sequence(ctx, fh))
            continue;
        if (classify(probe, h).mode == BoundaryMode::Unsupported)
            continue;
        out.push_back(std::move(h));
    }
    return out;
}

CycleReport is_milnor_cycle(const Deformation& def, std::vector<Polynomial> extensions)
{
    CycleReport rep;
    rep.newton = newton_class(def);
    rep.newton_verdict = class_is_zero(rep.newton);
    if (extensions.empty())
        extensions = default_extensions(def);
    std::vector<std::future<BoundaryResult>> jobs;
    for (const auto& h : extensions)
        jobs.push_back(std::async(std::launch::async, [&rep, h] { return cousin_boundary(rep.newton, h); }));
    for (auto& j : jobs) {
        rep.boundaries.push_back(j.get());
        rep.cycle = rep.cycle && rep.boundaries.back().zero();
    }
    return rep;
}

Deformation push_deformation(const Deformation& def, const ArtinAlgebra& target, const AlgebraMap& phi)
{
    if (phi.matrix.cols() != def.algebra().dim() || phi.matrix.rows() != target.dim())
        throw InputError("map does not match the deformation algebra and the target algebra");
    FormContext fa(def.base.ctx, target);
    std::vector<Polynomial> nums;
    for (const auto& n : def.numerators)
        nums.push_back(fa.to_combined(push_forward(*def.forms, fa, phi, def.forms->from_combined(n))));
    return make_deformation(def.base, target, std::move(nums), def.powers, def.denominator);
}

NaturalityReport naturality_check(const AlgebraMap& phi, const Deformation& def_c,
                                  const std::vector<Polynomial>& extensions, bool run_obstruction)
{
    if (!phi.target)
        throw InputError("map has no target algebra");
    Deformation def_a = push_deformation(def_c, *phi.target, phi);
    const FormContext& fa = *def_a.forms;
    ExtClass nc = newton_class(def_c);
    NaturalityReport rep;
    rep.pushed_class = nc;
    rep.pushed_class.numerator = push_forward(*def_c.forms, fa, phi, nc.numerator);
    rep.target_class = newton_class(def_a);
    unsigned k = std::max(rep.pushed_class.denominator_power, rep.target_class.denominator_power);
    PolyForm lhs = rep.pushed_class.numerator;
    PolyForm rhs = rep.target_class.numerator;
    std::optional<Polynomial> inv;
    if (k > 0) {
        const Polynomial& g = *def_c.denominator;
        lhs = lhs.times(g.pow(k - rep.pushed_class.denominator_power));
        rhs = rhs.times(g.pow(k - rep.target_class.denominator_power));
        inv = g;
    }
    rep.difference = ext_class_is_zero(rep.target_class.koszul, lhs - rhs, inv);
    rep.commutes = rep.difference.zero;
    if (run_obstruction) {
        rep.source_cycle = is_milnor_cycle(def_c, extensions).cycle;
        rep.target_cycle = is_milnor_cycle(def_a, extensions).cycle;
        if (*rep.source_cycle && !*rep.target_cycle)
            rep.commutes = false;
    }
    return rep;
}

ExtClass dual_numbers_tangent(const SubvarietyGerm& base, const std::vector<Polynomial>& normal_data,
                              Deformation* out_def)
{
    if (normal_data.size() != base.codim())
        throw InputError("tangent data has " + std::to_string(normal_data.size()) + " entries, germ has codimension " +
                         std::to_string(base.codim()));
    if (base.ctx.var_index("eps"))
        throw InputError("tangent: ring variable 'eps' clashes with the dual-numbers variable");
    PolyContext pres({"eps"}, {}, {Polynomial::variable(1, 0).pow(2)});
    ArtinAlgebra d = quotient_algebra(pres, true);
    d.set_name("Q[eps]/(eps^2)");
    const std::size_t nr = base.ctx.nvars();
    Polynomial eps = Polynomial::variable(nr + 1, nr);
    std::vector<Polynomial> nums;
    for (std::size_t i = 0; i < base.codim(); ++i) {
        if (normal_data[i].nvars() != nr)
            throw InputError("tangent data lives in a different ring");
        nums.push_back(base.sequence[i].embed(nr + 1, 0) + eps * normal_data[i].embed(nr + 1, 0));
    }
    Deformation def = make_deformation(base, d, std::move(nums));
    ExtClass cls = newton_class(def);
    if (out_def)
        *out_def = std::move(def);
    return cls;
}

ExtVerdict basis_change_difference(const Deformation& def, const std::vector<RatMatrix>& change)
{
    if (def.has_denominator())
        throw InputError("basis change check needs a deformation without denominators");
    const FormContext& fc = *def.forms;
    const std::size_t p = def.base.codim();
    ChainComplex ka = alpha(def);
    std::vector<Polynomial> base_seq;
    for (const auto& f : def.base.sequence)
        base_seq.push_back(f.embed(fc.combined().nvars(), 0));
    ChainComplex k0 = koszul(KoszulData{fc.combined(), base_seq, {}});
    if (change.size() != p + 1)
        throw InputError("basis change needs one matrix per Koszul degree");
    std::vector<RatMatrix> inv;
    for (std::size_t i = 0; i <= p; ++i) {
        if (change[i].rows() != ka.ranks[i] || change[i].cols() != ka.ranks[i])
            throw InputError("basis change matrix " + std::to_string(i) + " has the wrong size");
        auto m = inverse(change[i]);
        if (!m)
            throw InputError("basis change matrix " + std::to_string(i) + " is singular");
        inv.push_back(std::move(*m));
    }
    ChainComplex ca = conjugate(ka, change, inv);
    ChainComplex c0 = conjugate(k0, change, inv);
    PolyForm ta = local_fundamental_class(ca, fc, 1, p).at(0, 0);
    PolyForm t0 = local_fundamental_class(c0, fc, 1, p).at(0, 0);
    Rational undo = change[p].at(0, 0) / change[0].at(0, 0);
    PolyForm transported = (ta - t0).scaled(undo);
    ExtClass nc = newton_class(def);
    PolyForm diff = transported - nc.numerator.scaled(Rational(koszul_class_sign(p)));
    return ext_class_is_zero(nc.koszul, diff);
}

}  // namespace infcycle
