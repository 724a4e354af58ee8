#include "infcycle/checks.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <sstream>

#include "infcycle/errors.hpp"
#include "infcycle/hochcyc.hpp"
#include "infcycle/kaehler.hpp"
#include "infcycle/parse.hpp"
#include "infcycle/runner.hpp"

namespace infcycle {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int rand_int(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

Rational rand_coeff(std::mt19937& rng)
{
    int c = 0;
    while (c == 0)
        c = rand_int(rng, -3, 3);
    return Rational(c);
}

Polynomial random_homogeneous(std::mt19937& rng, std::size_t nvars, std::size_t first_var, int degree, int terms)
{
    Polynomial p(nvars);
    if (first_var >= nvars)
        return p;
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        for (int k = 0; k < degree; ++k)
            ++e[static_cast<std::size_t>(rand_int(rng, static_cast<int>(first_var), static_cast<int>(nvars) - 1))];
        p.add_term(e, rand_coeff(rng));
    }
    return p;
}

struct Pair {
    ArtinAlgebra r;
    ArtinAlgebra a;
};

std::vector<Pair> bloch_pairs()
{
    ArtinAlgebra q = rational_field();
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)");
    ArtinAlgebra x2 = make_algebra({"x"}, {"x^2"}, "Q[x]/(x^2)");
    ArtinAlgebra x3 = make_algebra({"x"}, {"x^3"}, "Q[x]/(x^3)");
    ArtinAlgebra d3 = make_algebra({"delta"}, {"delta^3"}, "Q[delta]/(delta^3)");
    return {{q, e}, {x2, e}, {x3, e}, {x2, d3}};
}

bool is_dual_numbers(const ArtinAlgebra& a)
{
    return a.dim() == 2 && a.nvars() == 1;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i)
        s += (i ? sep : "") + parts[i];
    return s;
}

PolyContext xyz()
{
    return PolyContext({"x", "y", "z"});
}

std::vector<SubvarietyGerm> germ_catalog()
{
    PolyContext r = xyz();
    std::vector<std::vector<std::string>> seqs = {
        {"x"}, {"x + y^2"}, {"x*y - z^2"}, {"y - x^2 + z^3"},
        {"x", "y"}, {"x - y*z", "y"}, {"x + z^2", "y - z^3"}, {"x*y - z^2", "x + y"},
    };
    std::vector<SubvarietyGerm> out;
    for (const auto& s : seqs) {
        std::vector<Polynomial> ps;
        for (const auto& t : s)
            ps.push_back(r.parse(t));
        out.push_back(make_germ(r, ps));
    }
    return out;
}

std::vector<Polynomial> extension_candidates(const PolyContext& r)
{
    std::vector<Polynomial> out;
    for (const char* s : {"x", "y", "z", "z + x", "y + z", "z^2 + y", "x + y + z", "z - x^2"})
        out.push_back(r.parse(s));
    return out;
}

std::vector<Polynomial> valid_extensions(const SubvarietyGerm& g)
{
    std::vector<Polynomial> out;
    for (auto& h : extension_candidates(g.ctx)) {
        if (ideal_member(h, g.ctx.with_relations(g.sequence)).member)
            continue;
        std::vector<Polynomial> fh = g.sequence;
        fh.push_back(h);
        if (is_regular_sequence(g.ctx, fh))
            out.push_back(h);
    }
    return out;
}

RatMatrix random_invertible(std::mt19937& rng, std::size_t n)
{
    for (;;) {
        RatMatrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                m.set(r, c, Rational(rand_int(rng, -4, 4)));
        if (inverse(m))
            return m;
    }
}

std::size_t binomial(std::size_t n, std::size_t k)
{
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// --- suites ---------------------------------------------------------------

CheckResult bloch_consistency(const CheckOptions&)
{
    CheckResult res;
    res.passed = true;
    std::vector<std::string> parts;
    double worst = 0;
    for (const auto& [r, a] : bloch_pairs()) {
        auto t0 = Clock::now();
        RelativePair pr = tensor_pair(r, a);
        std::size_t kd = bloch_group(pr).quotient.dim;
        std::size_t hd = relative(pr, 1, Flavor::HC).dim;
        bool ok = kd == hd;
        std::string s = pr.S.name() + ": " + std::to_string(kd) + "/" + std::to_string(hd);
        if (is_dual_numbers(a)) {
            std::size_t om = FormAlgebra(r).dim(1);
            ok = ok && om == kd;
            s += "/" + std::to_string(om);
        }
        worst = std::max(worst, since(t0));
        res.passed = res.passed && ok;
        parts.push_back(s);
    }
    res.passed = res.passed && worst < 30;
    std::ostringstream w;
    w << std::fixed << std::setprecision(2) << worst;
    res.detail = join(parts, ", ") + "; slowest pair " + w.str() + " s (limit 30 s)";
    return res;
}

CheckResult hodge_decomposition(const CheckOptions&)
{
    CheckResult res;
    res.passed = true;
    std::vector<std::string> bad;
    std::size_t count = 0;
    for (const auto& a : algebra_catalog()) {
        FormAlgebra f(a);
        for (std::size_t n = 0; n <= 3; ++n) {
            HodgeDecomposition h = hodge(a, n, Flavor::HH);
            HodgeDecomposition c = hodge(a, n, Flavor::HC);
            std::size_t sh = 0, sc = 0;
            for (const auto& [i, d] : h.pieces)
                sh += d;
            for (const auto& [i, d] : c.pieces)
                sc += d;
            std::size_t om = f.dim(n);
            std::size_t exact = n == 0 ? 0 : rank(f.d_matrix(n - 1));
            auto top = [&](const HodgeDecomposition& x) {
                auto it = x.pieces.find(n);
                return it == x.pieces.end() ? std::size_t(0) : it->second;
            };
            bool ok = sh == h.total && sc == c.total && top(h) == om && top(c) == om - exact;
            ++count;
            if (!ok)
                bad.push_back(a.name() + " n=" + std::to_string(n));
        }
    }
    res.passed = bad.empty();
    res.detail = std::to_string(count) + " (algebra, degree) cases" + (bad.empty() ? "" : "; failing: " + join(bad, ", "));
    return res;
}

CheckResult mixed_identities(const CheckOptions&)
{
    CheckResult res;
    res.passed = true;
    std::vector<std::string> parts;
    for (const auto& a : algebra_catalog()) {
        if (a.dim() > 4)
            continue;
        bool raw = BarComplex(a, 4, false).verify_identities();
        bool norm = BarComplex(a, 4, true).verify_identities();
        res.passed = res.passed && raw && norm;
        parts.push_back(a.name() + (raw && norm ? " ok" : " FAILED"));
    }
    res.detail = "depth 4: " + join(parts, ", ");
    return res;
}

CheckResult sbi_exactness(const CheckOptions&)
{
    CheckResult res;
    res.passed = true;
    std::vector<Pair> pairs = bloch_pairs();
    pairs.push_back({make_algebra({"x", "y"}, {"x^2", "x*y", "y^2"}, "Q[x,y]/(x,y)^2"),
                     make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)")});
    std::vector<std::string> parts;
    for (const auto& [r, a] : pairs) {
        RelativePair pr = tensor_pair(r, a);
        for (std::size_t l : {1, 2}) {
            SbiReport s = sbi_split_check(pr, l);
            res.passed = res.passed && s.exact();
            parts.push_back(pr.S.name() + " l=" + std::to_string(l) + " " + std::to_string(s.left) + "->" +
                            std::to_string(s.middle) + "->" + std::to_string(s.right) + (s.exact() ? "" : " NOT EXACT"));
        }
    }
    res.detail = std::to_string(pairs.size()) + " pairs: " + join(parts, ", ");
    return res;
}

CheckResult koszul_oracle(const CheckOptions& opt)
{
    CheckResult res;
    std::mt19937 rng(opt.seed + 5);
    std::size_t agree = 0, regular = 0, irregular = 0;
    std::vector<std::string> bad;
    for (int trial = 0; trial < 20; ++trial) {
        bool want_regular = trial < 10;
        std::size_t n = static_cast<std::size_t>(rand_int(rng, 1, 3));
        std::vector<std::string> names = {"x", "y", "z"};
        names.resize(n);
        PolyContext ctx(names);
        std::vector<Polynomial> seq;
        if (want_regular) {
            std::size_t m = static_cast<std::size_t>(rand_int(rng, 1, static_cast<int>(n)));
            for (std::size_t i = 0; i < m; ++i) {
                int deg = rand_int(rng, 1, 3);
                Exponents e(n, 0);
                e[i] = static_cast<unsigned>(deg);
                Polynomial f = Polynomial::monomial(e, rand_coeff(rng));
                f += random_homogeneous(rng, n, i + 1, deg, rand_int(rng, 0, 2));
                seq.push_back(f);
            }
        } else {
            int mode = trial % 4;
            if (n == 1 && mode != 3)
                mode = 1;
            Polynomial h = random_homogeneous(rng, n, 0, rand_int(rng, 1, 2), 2);
            while (h.is_zero() || h.is_constant())
                h = random_homogeneous(rng, n, 0, 1, 2);
            Polynomial a = random_homogeneous(rng, n, 0, rand_int(rng, 1, 2), 2);
            while (a.is_zero())
                a = random_homogeneous(rng, n, 0, 1, 2);
            switch (mode) {
            case 0: {
                Polynomial b = random_homogeneous(rng, n, 0, rand_int(rng, 1, 2), 2);
                while (b.is_zero())
                    b = random_homogeneous(rng, n, 0, 1, 2);
                seq = {h * a, h * b};
                break;
            }
            case 1:
                seq = {a, a.scaled(rand_coeff(rng))};
                break;
            case 2: {
                Polynomial b = ctx.var(n - 1).pow(2);
                int da = a.total_degree(), db = b.total_degree();
                Polynomial u = random_homogeneous(rng, n, 0, std::max(da, db) + 1 - da, 1);
                Polynomial v = random_homogeneous(rng, n, 0, std::max(da, db) + 1 - db, 1);
                Polynomial c = u * a + v * b;
                if (c.is_zero())
                    c = b * ctx.var(0).pow(static_cast<unsigned>(std::max(da, db) + 1 - db));
                seq = {a, b, c};
                break;
            }
            default:
                for (std::size_t i = 0; i <= n; ++i)
                    seq.push_back(ctx.var(i % n).pow(static_cast<unsigned>(rand_int(rng, 1, 2))));
                break;
            }
        }
        bool verdict = is_regular_sequence(ctx, seq);
        KoszulData k{ctx, seq, {}};
        int bound = 2;
        for (const auto& f : seq)
            bound += f.total_degree();
        bool vanish = true;
        for (std::size_t i = 1; i <= seq.size(); ++i)
            for (auto d : koszul_homology(k, i, bound))
                vanish = vanish && d == 0;
        auto hs = regular_by_hilbert_series(ctx, seq);
        bool ok = verdict == vanish && hs && *hs == verdict && verdict == want_regular;
        agree += ok;
        regular += verdict;
        irregular += !verdict;
        if (!ok) {
            std::vector<std::string> fs;
            for (const auto& f : seq)
                fs.push_back(ctx.format(f));
            bad.push_back("(" + join(fs, ", ") + ")");
        }
    }
    res.passed = agree == 20 && regular == 10 && irregular == 10;
    res.detail = std::to_string(agree) + "/20 agree (" + std::to_string(regular) + " regular, " +
                 std::to_string(irregular) + " irregular)" + (bad.empty() ? "" : "; mismatches " + join(bad, " "));
    return res;
}

CheckResult fundamental_class(const CheckOptions& opt)
{
    CheckResult res;
    res.passed = true;
    std::mt19937 rng(opt.seed + 6);
    std::vector<std::string> parts;
    for (std::size_t p = 1; p <= 3; ++p) {
        std::vector<std::string> names = {"x", "y", "z"};
        names.resize(p);
        PolyContext ctx(names);
        FormContext fc(ctx, rational_field());
        std::vector<std::vector<Polynomial>> seqs;
        std::vector<Polynomial> coords;
        for (std::size_t i = 0; i < p; ++i)
            coords.push_back(ctx.var(i));
        seqs.push_back(coords);
        for (int t = 0; t < 3; ++t) {
            std::vector<Polynomial> s;
            for (std::size_t i = 0; i < p; ++i)
                s.push_back(ctx.var(i) + random_polynomial(rng, p, 3, 3));
            seqs.push_back(s);
        }
        std::size_t good = 0;
        for (const auto& s : seqs) {
            ChainComplex c = koszul(KoszulData{ctx, s, {}});
            PolyForm t = local_fundamental_class(c, fc, 1, p).at(0, 0);
            PolyForm w = fc.function(ctx.one());
            for (const auto& f : s)
                w = fc.wedge(w, fc.d(fc.function(f)));
            bool ok = c.verify_square_zero() && t == w.scaled(Rational(koszul_class_sign(p)));
            good += ok;
            res.passed = res.passed && ok;
        }
        parts.push_back("p=" + std::to_string(p) + " " + std::to_string(good) + "/" + std::to_string(seqs.size()) +
                        " (sign " + std::to_string(koszul_class_sign(p)) + ")");
    }
    res.detail = join(parts, ", ");
    return res;
}

CheckResult basis_change(const CheckOptions& opt)
{
    CheckResult res;
    res.passed = true;
    std::mt19937 rng(opt.seed + 7);
    auto germs = germ_catalog();
    auto algs = coefficient_catalog();
    std::size_t good = 0, nonzero_classes = 0;
    for (int t = 0; t < 10; ++t) {
        const SubvarietyGerm& g = germs[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(germs.size()) - 1))];
        const ArtinAlgebra& a = algs[static_cast<std::size_t>(rand_int(rng, 1, static_cast<int>(algs.size()) - 1))];
        Deformation d = random_deformation(rng, g, a);
        std::vector<RatMatrix> change;
        for (std::size_t i = 0; i <= g.codim(); ++i)
            change.push_back(random_invertible(rng, binomial(g.codim(), i)));
        ExtVerdict v = basis_change_difference(d, change);
        good += v.zero;
        nonzero_classes += !class_is_zero(newton_class(d)).zero;
        res.passed = res.passed && v.zero;
    }
    res.detail = std::to_string(good) + "/10 basis changes leave the class unchanged (" +
                 std::to_string(nonzero_classes) + " of the classes are nonzero)";
    return res;
}

CheckResult graded_vanishing(const CheckOptions& opt)
{
    CheckResult res;
    res.passed = true;
    std::mt19937 rng(opt.seed + 8);
    auto germs = germ_catalog();
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)");
    ArtinAlgebra d3 = make_algebra({"delta"}, {"delta^3"}, "Q[delta]/(delta^3)");
    const int count = opt.full ? 60 : 50;
    std::size_t boundaries = 0, vanished = 0, too_few = 0, nonzero = 0, codim1 = 0, codim2 = 0;
    for (int t = 0; t < count; ++t) {
        const SubvarietyGerm& g = germs[static_cast<std::size_t>(t) % germs.size()];
        const ArtinAlgebra& a = (t / static_cast<int>(germs.size())) % 2 == 0 ? e : d3;
        Deformation d = random_deformation(rng, g, a);
        std::vector<Polynomial> ext = valid_extensions(g);
        if (ext.size() < 2)
            ++too_few;
        (g.codim() == 1 ? codim1 : codim2) += 1;
        CycleReport rep = is_milnor_cycle(d, ext);
        nonzero += !rep.newton_verdict.zero;
        for (const auto& b : rep.boundaries) {
            ++boundaries;
            bool ok = b.zero() && verify_certificates(b.extended, b.verdict, b.inverted);
            vanished += ok;
        }
        res.passed = res.passed && rep.cycle && rep.boundaries.size() >= 2;
    }
    res.passed = res.passed && vanished == boundaries && too_few == 0;
    res.detail = std::to_string(count) + " deformations (" + std::to_string(codim1) + " codim 1, " +
                 std::to_string(codim2) + " codim 2, " + std::to_string(nonzero) + " nonzero Newton classes), " +
                 std::to_string(vanished) + "/" + std::to_string(boundaries) + " boundaries vanish with verified certificates";
    return res;
}

CheckResult denominator_contrast(const CheckOptions&)
{
    CheckResult res;
    PolyContext r = xyz();
    SubvarietyGerm g = make_germ(r, {r.parse("x"), r.parse("y")});
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)");
    Deformation d = parse_deformation(g, e, {"x + eps/z", "y"}, std::string("z"));
    CycleReport rep = is_milnor_cycle(d, {r.parse("z")});
    const BoundaryResult& b = rep.boundaries.at(0);
    bool certified = verify_certificates(b.extended, b.verdict, b.inverted);
    std::size_t witnesses = 0;
    for (const auto& c : b.verdict.certificates)
        witnesses += !c.member;
    res.passed = !rep.cycle && !b.zero() && certified && witnesses > 0 && b.mode == "denominator";
    res.detail = "boundary at (x, y, z): numerator " + d.forms->format(b.numerator) + ", " +
                 std::to_string(witnesses) + " nonmember coefficient(s), certificate " +
                 (certified ? "verified" : "NOT verified");
    return res;
}

CheckResult naturality_suite(const CheckOptions& opt)
{
    CheckResult res;
    res.passed = true;
    std::mt19937 rng(opt.seed + 10);
    auto algs = coefficient_catalog();
    auto find = [&](const std::string& n) -> const ArtinAlgebra& {
        for (const auto& a : algs)
            if (a.name() == n)
                return a;
        throw MathError("catalog algebra missing: " + n);
    };
    const ArtinAlgebra& q = find("Q");
    const ArtinAlgebra& e = find("Q[eps]/(eps^2)");
    const ArtinAlgebra& d3 = find("Q[delta]/(delta^3)");
    const ArtinAlgebra& t3 = find("Q[t]/(t^3)");
    const ArtinAlgebra& m = find("Q[u,v]/(u,v)^2");
    auto el = [](const ArtinAlgebra& a, const std::string& s) {
        return a.element_of(parse_polynomial(s, a.presentation().variables()));
    };
    std::vector<AlgebraMap> maps = {
        make_algebra_map(d3, e, {el(e, "eps")}),
        identity_map(e),
        make_algebra_map(d3, q, {q.element_of(Polynomial(0))}),
        make_algebra_map(e, d3, {el(d3, "delta^2")}),
        make_algebra_map(e, m, {el(m, "u + v")}),
        make_algebra_map(m, e, {el(e, "eps"), el(e, "2*eps")}),
        make_algebra_map(t3, d3, {el(d3, "-delta")}),
        make_algebra_map(m, t3, {el(t3, "t^2"), el(t3, "-3*t^2")}),
    };
    auto germs = germ_catalog();
    std::size_t good = 0, total = 0;
    std::vector<std::string> bad;
    for (const auto& phi : maps) {
        for (std::size_t gi : {std::size_t(0), std::size_t(5)}) {
            const SubvarietyGerm& g = germs[gi];
            Deformation d = random_deformation(rng, g, *phi.source);
            NaturalityReport r = naturality_check(phi, d, valid_extensions(g), true);
            ++total;
            bool ok = r.commutes && r.source_cycle && r.target_cycle && *r.source_cycle && *r.target_cycle;
            good += ok;
            if (!ok)
                bad.push_back(phi.source->name() + "->" + phi.target->name());
        }
    }
    res.passed = bad.empty();
    res.detail = std::to_string(maps.size()) + " morphisms, " + std::to_string(good) + "/" + std::to_string(total) +
                 " squares commute" + (bad.empty() ? "" : "; failing " + join(bad, ", "));
    return res;
}

CheckResult determinism(const CheckOptions& opt)
{
    CheckResult res;
    std::vector<std::pair<std::string, std::string>> inputs;
    if (!opt.fixtures_dir.empty()) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::directory_iterator(opt.fixtures_dir))
            if (entry.path().extension() == ".icp")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files)
            inputs.emplace_back(f.string(), "");
    } else {
        for (std::size_t i = 0; i < builtin_samples().size(); ++i)
            inputs.emplace_back("sample" + std::to_string(i + 1) + ".icp", builtin_samples()[i]);
    }
    RunSettings s;
    std::size_t same = 0;
    std::vector<std::string> differing;
    for (const auto& [name, text] : inputs) {
        RunOutcome a = text.empty() ? run_file(name, s) : run_text(text, s, name);
        RunOutcome b = text.empty() ? run_file(name, s) : run_text(text, s, name);
        if (a.json == b.json && a.exit_code == b.exit_code)
            ++same;
        else
            differing.push_back(name);
    }
    res.passed = !inputs.empty() && same == inputs.size();
    res.detail = std::to_string(same) + "/" + std::to_string(inputs.size()) + " inputs byte-identical" +
                 (differing.empty() ? "" : "; differing: " + join(differing, ", "));
    return res;
}

struct Suite {
    std::string name;
    double limit;
    std::function<CheckResult(const CheckOptions&)> fn;
};

const std::vector<Suite>& suites()
{
    static const std::vector<Suite> s = {
        {"bloch-consistency", 120, bloch_consistency},
        {"hodge-decomposition", 300, hodge_decomposition},
        {"mixed-complex-identities", 60, mixed_identities},
        {"sbi-exactness", 120, sbi_exactness},
        {"koszul-regularity-oracle", 60, koszul_oracle},
        {"fundamental-class", 10, fundamental_class},
        {"basis-change-invariance", 60, basis_change},
        {"graded-obstruction-vanishing", 600, graded_vanishing},
        {"denominator-contrast", 10, denominator_contrast},
        {"naturality", 60, naturality_suite},
        {"determinism", 60, determinism},
    };
    return s;
}

}  // namespace

ArtinAlgebra make_algebra(const std::vector<std::string>& vars, const std::vector<std::string>& relations,
                          const std::string& name)
{
    std::vector<Polynomial> rels;
    for (const auto& r : relations)
        rels.push_back(parse_polynomial(r, vars));
    ArtinAlgebra a = quotient_algebra(PolyContext(vars, {}, rels), true);
    a.set_name(name);
    return a;
}

std::vector<ArtinAlgebra> algebra_catalog()
{
    ArtinAlgebra x2 = make_algebra({"x"}, {"x^2"}, "Q[x]/(x^2)");
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)");
    return {rational_field(), e, make_algebra({"x"}, {"x^3"}, "Q[x]/(x^3)"),
            make_algebra({"x", "y"}, {"x^2", "x*y", "y^2"}, "Q[x,y]/(x^2,xy,y^2)"), tensor_pair(x2, e).S};
}

std::vector<ArtinAlgebra> coefficient_catalog()
{
    return {rational_field(), make_algebra({"eps"}, {"eps^2"}, "Q[eps]/(eps^2)"),
            make_algebra({"delta"}, {"delta^3"}, "Q[delta]/(delta^3)"), make_algebra({"t"}, {"t^3"}, "Q[t]/(t^3)"),
            make_algebra({"u", "v"}, {"u^2", "u*v", "v^2"}, "Q[u,v]/(u,v)^2")};
}

Polynomial random_polynomial(std::mt19937& rng, std::size_t nvars, int max_degree, int terms)
{
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Exponents e(nvars, 0);
        int deg = rand_int(rng, 0, max_degree);
        for (int k = 0; k < deg && nvars > 0; ++k)
            ++e[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(nvars) - 1))];
        p.add_term(e, rand_coeff(rng));
    }
    return p;
}

Deformation random_deformation(std::mt19937& rng, const SubvarietyGerm& germ, const ArtinAlgebra& a)
{
    FormContext probe(germ.ctx, a);
    const PolyContext& comb = probe.combined();
    const std::size_t nr = germ.ctx.nvars();
    std::vector<Polynomial> nums;
    for (const auto& f : germ.sequence) {
        Polynomial n = f.embed(comb.nvars(), 0);
        for (std::size_t k = 1; k < a.dim(); ++k) {
            Polynomial mono = Polynomial::monomial(a.monomial(k)).embed(comb.nvars(), nr);
            n += random_polynomial(rng, nr, 2, rand_int(rng, 0, 3)).embed(comb.nvars(), 0) * mono;
        }
        nums.push_back(n);
    }
    return make_deformation(germ, a, std::move(nums));
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : suites())
            n.push_back(s.name);
        return n;
    }();
    return names;
}

CheckResult run_check(int id, const CheckOptions& options)
{
    const auto& all = suites();
    if (id < 1 || id > static_cast<int>(all.size()))
        throw InputError("no acceptance suite " + std::to_string(id));
    const Suite& s = all[static_cast<std::size_t>(id - 1)];
    auto t0 = Clock::now();
    CheckResult r;
    try {
        r = s.fn(options);
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = since(t0);
    r.id = id;
    r.name = s.name;
    r.limit_seconds = s.limit;
    return r;
}

std::vector<CheckResult> run_checks(const CheckOptions& options, const std::vector<int>& ids)
{
    std::vector<CheckResult> out;
    if (ids.empty()) {
        for (int i = 1; i <= static_cast<int>(suites().size()); ++i)
            out.push_back(run_check(i, options));
    } else {
        for (int i : ids)
            out.push_back(run_check(i, options));
    }
    return out;
}

std::string format_check(const CheckResult& r)
{
    std::ostringstream s;
    s << (r.ok() ? "PASS" : "FAIL") << "  [" << std::setw(2) << r.id << "] " << r.name << "  (" << std::fixed
      << std::setprecision(2) << r.seconds << " s, limit " << std::setprecision(0) << r.limit_seconds << " s)";
    if (r.passed && !r.ok())
        s << " over time budget";
    s << ": " << r.detail;
    return s.str();
}

const std::vector<std::string>& builtin_samples()
{
    static const std::vector<std::string> samples = {
        "[algebra R]\nvars = x\nrelations = x^2\n\n[algebra A]\nvars = eps\nrelations = eps^2\n\n"
        "[commands]\nbloch-k2 R A\nkaehler A\nhodge R n=2 flavor=hc\nrelative R A n=1\nsbi-check R A l=2\n",
        "[ring P]\nvars = x, y, z\n\n[algebra A]\nvars = eps\nrelations = eps^2\n\n"
        "[sequence Y]\nring = P\nelements = x, y\n\n"
        "[deformation D]\nsequence = Y\nalgebra = A\nentries = x + eps*y^2, y - eps*z\n\n"
        "[deformation N]\nsequence = Y\nalgebra = A\nentries = x + eps/z, y\ndenominator = z\n\n"
        "[commands]\nkoszul Y\nfundamental-class Y\nnewton-class D\nobstruction D ext=[z, y + z]\nobstruction N\n"
        "tangent Y g=[1, x]\n",
    };
    return samples;
}

}  // namespace infcycle
