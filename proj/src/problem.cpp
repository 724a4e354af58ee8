#include "infcycle/problem.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "infcycle/errors.hpp"
#include "infcycle/parse.hpp"

namespace infcycle {

namespace {

struct Entry {
    std::string value;
    SourceLoc key_loc;
    SourceLoc value_loc;
};

struct Block {
    std::string kind;
    std::string name;
    SourceLoc loc;
    std::map<std::string, Entry> entries;
};

const std::set<std::string> block_kinds = {"ring", "algebra", "sequence", "deformation", "map", "commands"};

const std::map<std::string, std::set<std::string>> block_keys = {
    {"ring", {"vars", "order", "weights", "relations"}},
    {"algebra", {"vars", "order", "weights", "relations", "graded"}},
    {"sequence", {"ring", "elements"}},
    {"deformation", {"sequence", "algebra", "entries", "denominator"}},
    {"map", {"source", "target", "images"}},
};

[[noreturn]] void fail(const std::string& msg, SourceLoc loc)
{
    throw InputError(msg, loc.line, loc.column);
}

/// Re-throws an error raised while interpreting `e` with the position of its value.
template <class F>
auto at_value(const Entry& e, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const InputError& err) {
        int col = e.value_loc.column;
        if (err.column())
            col += *err.column() - 1;
        throw InputError(err.what(), e.value_loc.line, col);
    }
}

/// Like at_value for one item of a comma-separated list.
template <class F>
auto at_item(const Entry& e, const ListItem& item, F&& f) -> decltype(f())
{
    Entry shifted = e;
    shifted.value_loc.column += static_cast<int>(item.offset);
    return at_value(shifted, std::forward<F>(f));
}

bool is_name(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
        return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '\''))
            return false;
    return true;
}

std::string strip_comment(const std::string& line)
{
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

int first_non_space(const std::string& s)
{
    std::size_t i = 0;
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    return static_cast<int>(i) + 1;
}

std::vector<std::string> names_list(const Entry& e)
{
    std::vector<std::string> out;
    for (auto& s : split_list(e.value)) {
        if (!is_name(s))
            fail("invalid name '" + s + "'", e.value_loc);
        out.push_back(s);
    }
    return out;
}

class Builder {
public:
    Problem problem;

    void finish(const Block& b)
    {
        if (b.kind == "commands")
            return;
        if (taken_.count(b.name))
            fail("'" + b.name + "' is already defined", b.loc);
        for (const auto& [key, e] : b.entries)
            if (!block_keys.at(b.kind).count(key))
                fail("unknown key '" + key + "' in [" + b.kind + "] block", e.key_loc);
        if (b.kind == "ring")
            problem.rings.emplace(b.name, context(b, false));
        else if (b.kind == "algebra")
            algebra(b);
        else if (b.kind == "sequence")
            sequence(b);
        else if (b.kind == "deformation")
            deformation(b);
        else if (b.kind == "map")
            map(b);
        taken_.insert(b.name);
    }

    Builder()
    {
        problem.algebras.emplace("Q", rational_field());
        taken_.insert("Q");
    }

private:
    std::set<std::string> taken_;

    static const Entry& need(const Block& b, const std::string& key)
    {
        auto it = b.entries.find(key);
        if (it == b.entries.end())
            fail("[" + b.kind + " " + b.name + "] needs '" + key + "'", b.loc);
        return it->second;
    }

    static const Entry* maybe(const Block& b, const std::string& key)
    {
        auto it = b.entries.find(key);
        return it == b.entries.end() ? nullptr : &it->second;
    }

    PolyContext context(const Block& b, bool allow_empty)
    {
        std::vector<std::string> vars;
        if (const Entry* e = maybe(b, "vars"))
            vars = names_list(*e);
        else if (!allow_empty)
            fail("[" + b.kind + " " + b.name + "] needs 'vars'", b.loc);
        std::set<std::string> seen;
        for (const auto& v : vars)
            if (!seen.insert(v).second)
                fail("duplicate variable '" + v + "'", need(b, "vars").value_loc);
        MonomialOrder order;
        if (const Entry* e = maybe(b, "order"))
            order = at_value(*e, [&] { return parse_order(trim(e->value)); });
        std::vector<int> weights;
        if (const Entry* e = maybe(b, "weights")) {
            for (auto& w : split_list(e->value)) {
                int v = 0;
                try {
                    std::size_t used = 0;
                    v = std::stoi(w, &used);
                    if (used != w.size())
                        throw std::invalid_argument(w);
                } catch (const std::exception&) {
                    fail("invalid weight '" + w + "'", e->value_loc);
                }
                if (v <= 0)
                    fail("weights must be positive", e->value_loc);
                weights.push_back(v);
            }
            if (weights.size() != vars.size())
                fail("need one weight per variable", e->value_loc);
        }
        std::vector<Polynomial> rels;
        if (const Entry* e = maybe(b, "relations"))
            for (auto& r : split_list_items(e->value))
                rels.push_back(at_item(*e, r, [&] { return parse_polynomial(r.text, vars); }));
        return at_value(b.entries.count("vars") ? b.entries.at("vars") : Entry{"", b.loc, b.loc},
                        [&] { return PolyContext(vars, order, rels, weights); });
    }

    void algebra(const Block& b)
    {
        PolyContext ctx = context(b, true);
        bool graded = true;
        if (const Entry* e = maybe(b, "graded")) {
            std::string v = trim(e->value);
            if (v == "true" || v == "yes")
                graded = true;
            else if (v == "false" || v == "no")
                graded = false;
            else
                fail("graded must be true or false", e->value_loc);
        }
        ArtinAlgebra a;
        try {
            a = quotient_algebra(ctx, graded);
        } catch (const InputError& err) {
            fail(err.what(), b.loc);
        }
        a.set_name(b.name);
        problem.algebras.emplace(b.name, std::move(a));
    }

    template <class M>
    static auto& lookup(M& m, const Entry& e, const std::string& what)
    {
        std::string key = trim(e.value);
        auto it = m.find(key);
        if (it == m.end())
            fail("undefined " + what + " '" + key + "'", e.value_loc);
        return it->second;
    }

    void sequence(const Block& b)
    {
        const Entry& re = need(b, "ring");
        const PolyContext& ctx = lookup(problem.rings, re, "ring");
        const Entry& ee = need(b, "elements");
        std::vector<Polynomial> seq;
        for (auto& s : split_list_items(ee.value))
            seq.push_back(at_item(ee, s, [&] { return parse_polynomial(s.text, ctx.variables()); }));
        try {
            problem.sequences.emplace(b.name, make_germ(ctx, std::move(seq)));
        } catch (const InputError& err) {
            fail(err.what(), b.loc);
        }
    }

    void deformation(const Block& b)
    {
        const SubvarietyGerm& germ = lookup(problem.sequences, need(b, "sequence"), "sequence");
        const ArtinAlgebra& a = lookup(problem.algebras, need(b, "algebra"), "algebra");
        const Entry& ee = need(b, "entries");
        std::optional<std::string> den;
        if (const Entry* e = maybe(b, "denominator"))
            den = trim(e->value);
        std::vector<std::string> entries;
        FormContext probe(germ.ctx, a);
        for (auto& item : split_list_items(ee.value)) {
            at_item(ee, item, [&] { return parse_rational_function(item.text, probe.combined().variables()); });
            entries.push_back(item.text);
        }
        if (const Entry* e = maybe(b, "denominator"))
            at_value(*e, [&] { return parse_polynomial(*den, germ.ctx.variables()); });
        try {
            problem.deformations.emplace(b.name, parse_deformation(germ, a, entries, den));
        } catch (const InputError& err) {
            fail(err.what(), ee.value_loc);
        }
    }

    void map(const Block& b)
    {
        const ArtinAlgebra& src = lookup(problem.algebras, need(b, "source"), "algebra");
        const ArtinAlgebra& tgt = lookup(problem.algebras, need(b, "target"), "algebra");
        std::vector<SparseVec> images;
        if (const Entry* e = maybe(b, "images"))
            for (auto& s : split_list_items(e->value)) {
                Polynomial p = at_item(*e, s, [&] { return parse_polynomial(s.text, tgt.presentation().variables()); });
                images.push_back(tgt.element_of(p));
            }
        try {
            problem.maps.emplace(b.name, make_algebra_map(src, tgt, std::move(images)));
        } catch (const InputError& err) {
            fail(err.what(), b.loc);
        }
    }
};

Command parse_command(const std::string& raw, int line_no)
{
    Command c;
    std::vector<CommandArg> toks = tokenize_command(raw, line_no);
    c.loc = toks.front().loc;
    c.text = trim(raw);
    c.name = toks.front().text;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto& t = toks[i];
        int depth = 0;
        std::size_t eq = std::string::npos;
        for (std::size_t k = 0; k < t.text.size(); ++k) {
            char ch = t.text[k];
            if (ch == '[' || ch == '(')
                ++depth;
            else if (ch == ']' || ch == ')')
                --depth;
            else if (ch == '=' && depth == 0) {
                eq = k;
                break;
            }
        }
        if (eq == std::string::npos) {
            c.positional.push_back(t);
            continue;
        }
        std::string key = t.text.substr(0, eq);
        if (!is_name(key))
            fail("invalid option name '" + key + "'", t.loc);
        if (c.options.count(key))
            fail("option '" + key + "' given twice", t.loc);
        c.options[key] = CommandArg{t.text.substr(eq + 1), SourceLoc{t.loc.line, t.loc.column + static_cast<int>(eq) + 1}};
    }
    return c;
}

}  // namespace

std::vector<CommandArg> tokenize_command(const std::string& line, int line_no)
{
    std::vector<CommandArg> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i >= line.size())
            break;
        std::size_t start = i;
        int depth = 0;
        while (i < line.size() && (depth > 0 || !std::isspace(static_cast<unsigned char>(line[i])))) {
            if (line[i] == '[' || line[i] == '(')
                ++depth;
            else if (line[i] == ']' || line[i] == ')') {
                if (--depth < 0)
                    fail(std::string("unbalanced '") + line[i] + "'", SourceLoc{line_no, static_cast<int>(i) + 1});
            }
            ++i;
        }
        if (depth != 0)
            fail("unbalanced brackets", SourceLoc{line_no, static_cast<int>(start) + 1});
        out.push_back(CommandArg{line.substr(start, i - start), SourceLoc{line_no, static_cast<int>(start) + 1}});
    }
    return out;
}

Problem parse_problem(const std::string& text)
{
    Builder builder;
    std::optional<Block> current;
    bool seen_commands = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        std::string line = strip_comment(raw);
        if (trim(line).empty())
            continue;
        SourceLoc loc{line_no, first_non_space(line)};
        std::string t = trim(line);
        if (t.front() == '[') {
            if (t.back() != ']')
                fail("block header must end with ']'", loc);
            std::istringstream hs(t.substr(1, t.size() - 2));
            std::string kind, name, extra;
            hs >> kind >> name >> extra;
            if (!block_kinds.count(kind))
                fail("unknown block kind '" + kind + "'", loc);
            if (!extra.empty())
                fail("block header has extra text '" + extra + "'", loc);
            if (kind == "commands") {
                if (!name.empty())
                    fail("[commands] takes no name", loc);
                if (seen_commands)
                    fail("[commands] given twice", loc);
                seen_commands = true;
            } else if (!is_name(name)) {
                fail("[" + kind + "] needs a name", loc);
            }
            if (current)
                builder.finish(*current);
            current = Block{kind, name, loc, {}};
            continue;
        }
        if (!current)
            fail("text outside of a block", loc);
        if (current->kind == "commands") {
            builder.problem.commands.push_back(parse_command(line, line_no));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            fail("expected 'key = value'", loc);
        std::string key = trim(line.substr(0, eq));
        if (current->entries.count(key))
            fail("key '" + key + "' given twice", loc);
        std::string rest = line.substr(eq + 1);
        SourceLoc vloc{line_no, static_cast<int>(eq) + first_non_space(rest) + 1};
        current->entries[key] = Entry{trim(rest), loc, vloc};
    }
    if (current)
        builder.finish(*current);
    return std::move(builder.problem);
}

Problem load_problem(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_problem(ss.str());
}

namespace {

template <class M>
const auto& find_ref(const M& m, const CommandArg& ref, const std::string& what)
{
    auto it = m.find(ref.text);
    if (it == m.end())
        fail("undefined " + what + " '" + ref.text + "'", ref.loc);
    return it->second;
}

}  // namespace

const ArtinAlgebra& Problem::algebra(const CommandArg& ref) const { return find_ref(algebras, ref, "algebra"); }
const PolyContext& Problem::ring(const CommandArg& ref) const { return find_ref(rings, ref, "ring"); }
const SubvarietyGerm& Problem::sequence(const CommandArg& ref) const { return find_ref(sequences, ref, "sequence"); }
const Deformation& Problem::deformation(const CommandArg& ref) const
{
    return find_ref(deformations, ref, "deformation");
}
const AlgebraMap& Problem::map(const CommandArg& ref) const { return find_ref(maps, ref, "map"); }

}  // namespace infcycle
