#include "infcycle/runner.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "infcycle/errors.hpp"
#include "infcycle/kaehler.hpp"
#include "infcycle/parse.hpp"

namespace infcycle {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg, SourceLoc loc)
{
    throw InputError(msg, loc.line, loc.column);
}

class CommandView {
public:
    explicit CommandView(const Command& c) : c_(c) {}

    const CommandArg& arg(std::size_t i, const std::string& what) const
    {
        if (i >= c_.positional.size())
            fail(c_.name + ": missing " + what, c_.loc);
        return c_.positional[i];
    }

    void expect_positional(std::size_t lo, std::size_t hi) const
    {
        if (c_.positional.size() < lo)
            fail(c_.name + ": expected at least " + std::to_string(lo) + " arguments", c_.loc);
        if (c_.positional.size() > hi)
            fail(c_.name + ": unexpected argument '" + c_.positional[hi].text + "'", c_.positional[hi].loc);
    }

    void allow_options(std::initializer_list<const char*> names) const
    {
        for (const auto& [k, v] : c_.options) {
            bool ok = false;
            for (const char* n : names)
                ok = ok || k == n;
            if (!ok)
                fail(c_.name + ": unknown option '" + k + "'", v.loc);
        }
    }

    std::size_t uint_option(const std::string& key, std::size_t fallback) const
    {
        auto it = c_.options.find(key);
        if (it == c_.options.end())
            return fallback;
        const std::string& s = it->second.text;
        if (s.empty() || s.size() > 6 || s.find_first_not_of("0123456789") != std::string::npos)
            fail(c_.name + ": option '" + key + "' needs a nonnegative integer", it->second.loc);
        return static_cast<std::size_t>(std::stoul(s));
    }

    std::optional<std::string> option(const std::string& key) const
    {
        auto it = c_.options.find(key);
        if (it == c_.options.end())
            return std::nullopt;
        return it->second.text;
    }

    bool bool_option(const std::string& key, bool fallback) const
    {
        auto it = c_.options.find(key);
        if (it == c_.options.end())
            return fallback;
        if (it->second.text == "true" || it->second.text == "yes")
            return true;
        if (it->second.text == "false" || it->second.text == "no")
            return false;
        fail(c_.name + ": option '" + key + "' needs true or false", it->second.loc);
    }

    Flavor flavor_option(Flavor fallback) const
    {
        auto v = option("flavor");
        if (!v)
            return fallback;
        if (*v == "hh")
            return Flavor::HH;
        if (*v == "hc")
            return Flavor::HC;
        fail(c_.name + ": flavor must be hh or hc", c_.options.at("flavor").loc);
    }

    /// `[a, b, c]` or a single item, parsed as polynomials in `vars`.
    std::vector<Polynomial> poly_list(const std::string& key, const std::vector<std::string>& vars) const
    {
        std::vector<Polynomial> out;
        auto it = c_.options.find(key);
        if (it == c_.options.end())
            return out;
        std::string s = it->second.text;
        int col = it->second.loc.column;
        if (!s.empty() && s.front() == '[') {
            if (s.back() != ']')
                fail(c_.name + ": list must end with ']'", it->second.loc);
            s = s.substr(1, s.size() - 2);
            ++col;
        }
        for (const auto& item : split_list_items(s)) {
            try {
                out.push_back(parse_polynomial(item.text, vars));
            } catch (const InputError& e) {
                throw InputError(e.what(), it->second.loc.line,
                                 col + static_cast<int>(item.offset) + e.column().value_or(1) - 1);
            }
        }
        return out;
    }

private:
    const Command& c_;
};

Json strings(const std::vector<std::string>& v)
{
    Json a = Json::array();
    for (const auto& s : v)
        a.push_back(s);
    return a;
}

Json poly_strings(const PolyContext& ctx, const std::vector<Polynomial>& ps)
{
    Json a = Json::array();
    for (const auto& p : ps)
        a.push_back(ctx.format(p));
    return a;
}

Json pieces_json(const std::map<std::size_t, std::size_t>& pieces)
{
    Json o = Json::object();
    for (const auto& [i, d] : pieces)
        o[std::to_string(i)] = d;
    return o;
}

Json certificates_json(const FormContext& fc, const PolyContext& ctx, const ExtVerdict& v)
{
    Json a = Json::array();
    for (const auto& c : v.certificates) {
        Json o;
        o["key"] = fc.key_label(c.key);
        o["coefficient"] = ctx.format(c.coefficient);
        o["member"] = c.member;
        if (c.member) {
            o["saturation_power"] = c.saturation_power;
            o["cofactors"] = poly_strings(ctx, c.cofactors);
        } else {
            o["normal_form"] = ctx.format(c.normal_form);
        }
        a.push_back(std::move(o));
    }
    return a;
}

Json class_json(const FormContext& fc, const ExtClass& cls, const ExtVerdict& v)
{
    const PolyContext& ctx = cls.koszul.ctx;
    Json o;
    o["sequence"] = poly_strings(ctx, cls.koszul.sequence);
    o["numerator"] = fc.format(cls.numerator);
    if (cls.denominator && cls.denominator_power > 0)
        o["denominator"] = ctx.format(*cls.denominator);
    else
        o["denominator"] = nullptr;
    o["denominator_power"] = cls.denominator_power;
    o["zero"] = v.zero;
    o["membership_ideal"] = v.membership_ideal;
    std::optional<Polynomial> inv;
    if (cls.denominator_power > 0)
        inv = cls.denominator;
    o["certificates_verified"] = verify_certificates(cls.koszul, v, inv);
    o["certificates"] = certificates_json(fc, ctx, v);
    return o;
}

Json boundary_json(const FormContext& fc, const BoundaryResult& b)
{
    const PolyContext& ctx = b.extended.ctx;
    Json o;
    o["element"] = ctx.format(b.element);
    o["mode"] = b.mode;
    o["sequence"] = poly_strings(ctx, b.extended.sequence);
    Json lv = Json::array();
    for (unsigned l : b.extended.levels())
        lv.push_back(l);
    o["levels"] = lv;
    o["inverted"] = b.inverted ? Json(ctx.format(*b.inverted)) : Json(nullptr);
    o["numerator"] = fc.format(b.numerator);
    o["zero"] = b.zero();
    o["certificates_verified"] = verify_certificates(b.extended, b.verdict, b.inverted);
    o["certificates"] = certificates_json(fc, ctx, b.verdict);
    return o;
}

Json matrix_json(const PolyContext& ctx, const PolyMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols; ++c)
            row.push_back(ctx.format(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

class Runner {
public:
    Runner(const Problem& p, const RunSettings& s) : p_(p), s_(s) {}

    bool not_a_cycle = false;

    Json run(const Command& c)
    {
        CommandView v(c);
        const std::string& n = c.name;
        if (n == "kaehler")
            return kaehler(v);
        if (n == "bloch-k2")
            return bloch(v);
        if (n == "hh" || n == "hc")
            return homology(v, n == "hh" ? Flavor::HH : Flavor::HC);
        if (n == "hodge")
            return hodge_cmd(v);
        if (n == "relative")
            return relative_cmd(v);
        if (n == "goodwillie-k")
            return goodwillie(v);
        if (n == "sbi-check")
            return sbi(v);
        if (n == "koszul")
            return koszul_cmd(v);
        if (n == "fundamental-class")
            return fundamental(v);
        if (n == "newton-class")
            return newton(v);
        if (n == "obstruction")
            return obstruction(v);
        if (n == "naturality")
            return naturality(v);
        if (n == "tangent")
            return tangent(v);
        fail("unknown command '" + n + "'", c.loc);
    }

private:
    const Problem& p_;
    const RunSettings& s_;

    BarSettings bar() const { return BarSettings{s_.bar_depth, s_.bar_budget}; }

    RelativePair pair(const CommandView& v) const
    {
        return tensor_pair(p_.algebra(v.arg(0, "base algebra")), p_.algebra(v.arg(1, "algebra")));
    }

    Json kaehler(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({"p"});
        const ArtinAlgebra& a = p_.algebra(v.arg(0, "algebra"));
        std::size_t deg = v.uint_option("p", 1);
        FormAlgebra f(a);
        Json o;
        o["algebra"] = a.name();
        o["degree"] = deg;
        o["dim"] = f.dim(deg);
        std::vector<std::string> labels;
        for (std::size_t k = 0; k < f.dim(deg); ++k)
            labels.push_back(f.label(deg, k));
        o["basis"] = strings(labels);
        Json dims = Json::array();
        for (std::size_t j = 0; j <= a.nvars(); ++j)
            dims.push_back(f.dim(j));
        o["dims"] = dims;
        return o;
    }

    Json bloch(const CommandView& v)
    {
        v.expect_positional(2, 2);
        v.allow_options({});
        RelativePair pr = pair(v);
        RelativeFormGroup g = bloch_group(pr);
        Json o;
        o["pair"] = pr.S.name();
        o["dim"] = g.quotient.dim;
        o["basis"] = strings(g.quotient_labels);
        o["relative_forms_dim"] = g.relative_basis.size();
        o["relative_forms"] = strings(g.relative_labels);
        o["exact_dim"] = rank_of(g.absolute_dim, g.exact_part);
        return o;
    }

    Json homology(const CommandView& v, Flavor fl)
    {
        v.expect_positional(1, 1);
        v.allow_options({"n"});
        const ArtinAlgebra& a = p_.algebra(v.arg(0, "algebra"));
        std::size_t n = v.uint_option("n", 1);
        HomologyGroup g = fl == Flavor::HH ? hh(a, n, bar()) : hc(a, n, bar());
        Json o;
        o["algebra"] = a.name();
        o["degree"] = n;
        o["dim"] = g.dim;
        o["basis"] = strings(g.labels);
        o["bar_depth"] = s_.bar_depth;
        return o;
    }

    Json hodge_cmd(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({"n", "flavor"});
        const ArtinAlgebra& a = p_.algebra(v.arg(0, "algebra"));
        std::size_t n = v.uint_option("n", 1);
        HodgeDecomposition h = hodge(a, n, v.flavor_option(Flavor::HH), bar());
        std::size_t sum = 0;
        for (const auto& [i, d] : h.pieces)
            sum += d;
        Json o;
        o["algebra"] = a.name();
        o["flavor"] = flavor_name(h.flavor);
        o["degree"] = n;
        o["total"] = h.total;
        o["pieces"] = pieces_json(h.pieces);
        o["pieces_sum"] = sum;
        o["bar_depth"] = s_.bar_depth;
        return o;
    }

    Json relative_cmd(const CommandView& v)
    {
        v.expect_positional(2, 2);
        v.allow_options({"n", "flavor"});
        RelativePair pr = pair(v);
        std::size_t n = v.uint_option("n", 1);
        RelativeHomology r = relative(pr, n, v.flavor_option(Flavor::HC), bar());
        Json o;
        o["pair"] = pr.S.name();
        o["flavor"] = flavor_name(r.flavor);
        o["degree"] = n;
        o["dim"] = r.dim;
        o["absolute_dim"] = r.absolute_dim;
        o["base_dim"] = r.base_dim;
        o["basis"] = strings(r.labels);
        o["pieces"] = pieces_json(r.pieces);
        o["bar_depth"] = s_.bar_depth;
        return o;
    }

    Json goodwillie(const CommandView& v)
    {
        v.expect_positional(2, 2);
        v.allow_options({"n"});
        RelativePair pr = pair(v);
        GoodwillieReport g = goodwillie_k(pr, v.uint_option("n", 2), bar());
        Json o;
        o["pair"] = pr.S.name();
        o["n"] = g.n;
        o["dim"] = g.dim;
        o["bloch_dim"] = g.bloch_dim ? Json(*g.bloch_dim) : Json(nullptr);
        o["bar_depth"] = s_.bar_depth;
        return o;
    }

    Json sbi(const CommandView& v)
    {
        v.expect_positional(2, 2);
        v.allow_options({"l", "require-graded"});
        RelativePair pr = pair(v);
        SbiReport r = sbi_split_check(pr, v.uint_option("l", 1), bar(), v.bool_option("require-graded", true));
        Json o;
        o["pair"] = pr.S.name();
        o["weight"] = r.weight;
        o["left"] = r.left;
        o["middle"] = r.middle;
        o["right"] = r.right;
        o["b_injective"] = r.b_injective;
        o["i_surjective"] = r.i_surjective;
        o["composite_zero"] = r.composite_zero;
        o["additive"] = r.additive;
        o["exact"] = r.exact();
        return o;
    }

    Json koszul_cmd(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({});
        const SubvarietyGerm& g = p_.sequence(v.arg(0, "sequence"));
        KoszulData k{g.ctx, g.sequence, {}};
        ChainComplex c = koszul(k);
        Json o;
        o["sequence"] = poly_strings(g.ctx, g.sequence);
        o["regular"] = g.regularity.regular;
        o["method"] = g.regularity.method;
        auto hs = regular_by_hilbert_series(g.ctx, g.sequence);
        o["hilbert_series_oracle"] = hs ? Json(*hs) : Json(nullptr);
        Json maps = Json::array();
        for (const auto& m : c.maps)
            maps.push_back(matrix_json(g.ctx, m));
        o["differentials"] = maps;
        o["square_zero"] = c.verify_square_zero();
        bool homogeneous = true;
        for (const auto& f : g.sequence)
            homogeneous = homogeneous && f.is_homogeneous(g.ctx.weights());
        if (homogeneous) {
            Json h = Json::object();
            bool vanish = true;
            for (std::size_t i = 1; i <= c.length(); ++i) {
                auto dims = koszul_homology(k, i, s_.degree_bound);
                Json a = Json::array();
                for (auto d : dims) {
                    a.push_back(d);
                    vanish = vanish && d == 0;
                }
                h[std::to_string(i)] = a;
            }
            o["homology"] = h;
            o["higher_homology_vanishes"] = vanish;
            o["degree_bound"] = s_.degree_bound;
        } else {
            o["homology"] = nullptr;
            o["higher_homology_vanishes"] = nullptr;
        }
        return o;
    }

    Json fundamental(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({"j"});
        const CommandArg& ref = v.arg(0, "sequence or deformation");
        std::size_t j = v.uint_option("j", 1);
        std::optional<FormContext> own;
        const FormContext* fc = nullptr;
        ChainComplex c;
        std::vector<PolyForm> dfs;
        if (p_.deformations.count(ref.text)) {
            const Deformation& d = p_.deformation(ref);
            fc = d.forms.get();
            c = alpha(d);
            for (const auto& n : d.numerators)
                dfs.push_back(fc->d(fc->from_combined(n)));
        } else {
            const SubvarietyGerm& g = p_.sequence(ref);
            own.emplace(g.ctx, rational_field());
            fc = &*own;
            c = koszul(KoszulData{g.ctx, g.sequence, {}});
            for (const auto& f : g.sequence)
                dfs.push_back(fc->d(fc->function(f)));
        }
        std::size_t p = dfs.size();
        if (j < 1 || j > c.length())
            fail("fundamental-class: j must lie in 1.." + std::to_string(c.length()), ref.loc);
        std::size_t span = c.length() - j + 1;
        FormMatrix t = local_fundamental_class(c, *fc, j, span);
        Json rows = Json::array();
        for (std::size_t r = 0; r < t.rows; ++r) {
            Json row = Json::array();
            for (std::size_t k = 0; k < t.cols; ++k)
                row.push_back(fc->format(t.at(r, k)));
            rows.push_back(std::move(row));
        }
        Json o;
        o["codim"] = p;
        o["j"] = j;
        o["matrix"] = rows;
        if (j == 1) {
            PolyForm w = fc->function(fc->base().one());
            for (const auto& df : dfs)
                w = fc->wedge(w, df);
            int sign = koszul_class_sign(p);
            o["df_wedge"] = fc->format(w);
            o["sign"] = sign;
            o["matches"] = t.at(0, 0) == w.scaled(Rational(sign));
        }
        return o;
    }

    Json newton(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({});
        const Deformation& d = p_.deformation(v.arg(0, "deformation"));
        ExtClass cls = newton_class(d);
        Json o;
        o["algebra"] = d.algebra().name();
        o["class"] = class_json(*d.forms, cls, class_is_zero(cls));
        return o;
    }

    Json obstruction(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({"ext"});
        const Deformation& d = p_.deformation(v.arg(0, "deformation"));
        std::vector<Polynomial> ext = v.poly_list("ext", d.base.ctx.variables());
        CycleReport rep = is_milnor_cycle(d, ext);
        if (!rep.cycle)
            not_a_cycle = true;
        Json o;
        o["algebra"] = d.algebra().name();
        o["algebra_graded"] = d.algebra().graded();
        o["verdict"] = rep.cycle ? "cycle" : "not a cycle";
        o["newton"] = class_json(*d.forms, rep.newton, rep.newton_verdict);
        Json bs = Json::array();
        for (const auto& b : rep.boundaries)
            bs.push_back(boundary_json(*d.forms, b));
        o["boundaries"] = bs;
        return o;
    }

    Json naturality(const CommandView& v)
    {
        v.expect_positional(2, 2);
        v.allow_options({"ext", "obstruction"});
        const AlgebraMap& phi = p_.map(v.arg(0, "map"));
        const CommandArg& dref = v.arg(1, "deformation");
        const Deformation& d = p_.deformation(dref);
        if (phi.source != nullptr && phi.source->name() != d.algebra().name())
            fail("naturality: map source " + phi.source->name() + " differs from the deformation algebra " +
                     d.algebra().name(),
                 dref.loc);
        std::vector<Polynomial> ext = v.poly_list("ext", d.base.ctx.variables());
        NaturalityReport r = naturality_check(phi, d, ext, v.bool_option("obstruction", true));
        FormContext ft(d.base.ctx, *phi.target);
        Json o;
        o["source"] = d.algebra().name();
        o["target"] = phi.target->name();
        o["commutes"] = r.commutes;
        o["pushed_numerator"] = ft.format(r.pushed_class.numerator);
        o["target_numerator"] = ft.format(r.target_class.numerator);
        o["difference_zero"] = r.difference.zero;
        o["difference_certificates"] = certificates_json(ft, d.base.ctx, r.difference);
        o["source_cycle"] = r.source_cycle ? Json(*r.source_cycle) : Json(nullptr);
        o["target_cycle"] = r.target_cycle ? Json(*r.target_cycle) : Json(nullptr);
        return o;
    }

    Json tangent(const CommandView& v)
    {
        v.expect_positional(1, 1);
        v.allow_options({"g"});
        const SubvarietyGerm& g = p_.sequence(v.arg(0, "sequence"));
        std::vector<Polynomial> data = v.poly_list("g", g.ctx.variables());
        Deformation d;
        ExtClass cls = dual_numbers_tangent(g, data, &d);
        Json o;
        o["normal_data"] = poly_strings(g.ctx, data);
        o["class"] = class_json(*d.forms, cls, class_is_zero(cls));
        return o;
    }
};

std::string error_kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::Input:
        return "input";
    case ErrorKind::Budget:
        return "budget";
    case ErrorKind::Math:
        return "math";
    }
    return "unknown";
}

Json settings_json(const RunSettings& s)
{
    Json o;
    o["degree_bound"] = s.degree_bound;
    o["bar_depth"] = s.bar_depth;
    o["bar_budget"] = s.bar_budget;
    o["strict"] = s.strict;
    return o;
}

Json error_json(const Error& e, const std::optional<SourceLoc>& fallback, const std::string& command)
{
    Json o;
    o["kind"] = error_kind_name(e.kind());
    o["message"] = e.what();
    std::optional<int> line, column;
    if (auto* ie = dynamic_cast<const InputError*>(&e)) {
        line = ie->line();
        column = ie->column();
    }
    if (!line && fallback) {
        line = fallback->line;
        column = fallback->column;
    }
    o["line"] = line ? Json(*line) : Json(nullptr);
    o["column"] = column ? Json(*column) : Json(nullptr);
    o["command"] = command.empty() ? Json(nullptr) : Json(command);
    return o;
}

void render_value(std::ostringstream& out, const std::string& key, const Json& v, int indent)
{
    std::string pad(static_cast<std::size_t>(indent), ' ');
    if (key == "certificates" || key == "difference_certificates") {
        out << pad << key << ": " << v.size() << " entries\n";
        return;
    }
    if (v.is_object()) {
        out << pad << key << ":\n";
        for (const auto& [k, x] : v.items())
            render_value(out, k, x, indent + 2);
        return;
    }
    if (v.is_array() && !v.empty() && v.front().is_object()) {
        out << pad << key << ":\n";
        for (const auto& x : v) {
            out << pad << "  -\n";
            for (const auto& [k, y] : x.items())
                render_value(out, k, y, indent + 4);
        }
        return;
    }
    out << pad << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
}

}  // namespace

int exit_code_for(const Error& e)
{
    return e.kind() == ErrorKind::Budget ? exit_budget : exit_input;
}

RunOutcome run_problem(const Problem& problem, const RunSettings& settings, const std::string& input_name)
{
    RunOutcome out;
    Json report;
    report["schema"] = 1;
    report["input"] = input_name;
    report["settings"] = settings_json(settings);
    Json results = Json::array();
    std::ostringstream text;
    Runner runner(problem, settings);
    std::optional<Json> error;
    for (const auto& c : problem.commands) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            Json r;
            r["command"] = c.text;
            r["line"] = c.loc.line;
            r["result"] = runner.run(c);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            text << "== " << c.text << "  (line " << c.loc.line << ", " << std::fixed << std::setprecision(3) << secs
                 << " s)\n";
            for (const auto& [k, x] : r["result"].items())
                render_value(text, k, x, 2);
            results.push_back(std::move(r));
        } catch (const Error& e) {
            error = error_json(e, c.loc, c.text);
            out.exit_code = exit_code_for(e);
            text << "== " << c.text << "  (line " << c.loc.line << ")\n  error: " << e.what() << "\n";
            break;
        }
    }
    report["results"] = results;
    if (error) {
        report["status"] = "error";
        report["error"] = *error;
    } else {
        report["status"] = "ok";
        out.not_a_cycle = runner.not_a_cycle;
        if (settings.strict && runner.not_a_cycle)
            out.exit_code = exit_not_a_cycle;
    }
    out.json = report.dump(2) + "\n";
    out.text = text.str();
    return out;
}

namespace {

RunOutcome error_outcome(const Error& e, const RunSettings& settings, const std::string& input_name)
{
    RunOutcome out;
    Json report;
    report["schema"] = 1;
    report["input"] = input_name;
    report["settings"] = settings_json(settings);
    report["results"] = Json::array();
    report["status"] = "error";
    report["error"] = error_json(e, std::nullopt, "");
    out.json = report.dump(2) + "\n";
    out.text = std::string("error: ") + e.what() + "\n";
    out.exit_code = exit_code_for(e);
    return out;
}

}  // namespace

RunOutcome run_text(const std::string& text, const RunSettings& settings, const std::string& input_name)
{
    try {
        Problem p = parse_problem(text);
        return run_problem(p, settings, input_name);
    } catch (const Error& e) {
        return error_outcome(e, settings, input_name);
    }
}

RunOutcome run_file(const std::string& path, const RunSettings& settings)
{
    std::string name = path;
    if (auto pos = name.find_last_of('/'); pos != std::string::npos)
        name = name.substr(pos + 1);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return error_outcome(InputError("cannot read '" + path + "'"), settings, name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_text(ss.str(), settings, name);
}

}  // namespace infcycle
