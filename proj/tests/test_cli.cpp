#include <doctest.h>

#include <json.hpp>

#include "infcycle/errors.hpp"
#include "infcycle/problem.hpp"
#include "infcycle/runner.hpp"

using namespace infcycle;
using Json = nlohmann::json;

namespace {

const char* bloch_text = R"(# comment
[algebra R]
vars = x
relations = x^2

[algebra A]
vars = eps
relations = eps^2

[commands]
bloch-k2 R A
)";

Json run_json(const std::string& text, const RunSettings& s = {})
{
    return Json::parse(run_text(text, s, "test.icp").json);
}

void check_error_at(const std::string& text, int line, int column, const std::string& fragment)
{
    try {
        parse_problem(text);
        FAIL("expected an error for: " << text);
    } catch (const InputError& e) {
        CHECK(e.line() == line);
        CHECK(e.column() == column);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("bloch-k2 report for Q[x]/(x^2) and the dual numbers")
{
    Json j = run_json(bloch_text);
    CHECK(j["schema"] == 1);
    CHECK(j["status"] == "ok");
    REQUIRE(j["results"].size() == 1);
    const Json& r = j["results"][0]["result"];
    CHECK(r["dim"] == 1);
    CHECK(r["basis"] == Json::array({"eps*dx"}));
}

TEST_CASE("empty command list gives an empty report")
{
    RunOutcome out = run_text("[algebra A]\nvars = eps\nrelations = eps^2\n[commands]\n", {}, "e.icp");
    CHECK(out.exit_code == 0);
    Json j = Json::parse(out.json);
    CHECK(j["results"].empty());
    CHECK(j["status"] == "ok");
    CHECK(run_text("", {}, "blank.icp").exit_code == 0);
}

TEST_CASE("parse errors carry line and column")
{
    check_error_at("[ring P]\nvars = x, y\n[sequence Y]\nring = P\nelements = x, y + w\n", 5, 19, "unknown variable");
    check_error_at("[ring P]\nvars = x\nfoo = 1\n", 3, 1, "unknown key");
    check_error_at("[sequence Y]\nring = P\nelements = x\n", 2, 8, "undefined ring 'P'");
    check_error_at("[widget W]\n", 1, 1, "unknown block kind");
    check_error_at("vars = x\n", 1, 1, "outside of a block");
    check_error_at("[algebra A]\nvars = eps\nrelations = eps^2\n[algebra A]\nvars = t\nrelations = t^2\n", 4, 1,
                   "already defined");
    check_error_at("[commands]\nhodge A flavor=[hh\n", 2, 9, "unbalanced");
}

TEST_CASE("command errors and exit codes")
{
    RunOutcome unknown = run_text(std::string(bloch_text) + "frobnicate R\n", {}, "u.icp");
    CHECK(unknown.exit_code == exit_input);
    Json j = Json::parse(unknown.json);
    CHECK(j["status"] == "error");
    CHECK(j["error"]["kind"] == "input");
    CHECK(j["error"]["line"] == 12);
    CHECK(j["results"].size() == 1);

    RunOutcome undefined = run_text("[commands]\nkaehler B\n", {}, "u.icp");
    CHECK(undefined.exit_code == exit_input);
    CHECK(Json::parse(undefined.json)["error"]["column"] == 9);

    RunOutcome budget = run_text("[algebra M]\nvars = x, y, z\nrelations = x^2, y^2, z^2\n[commands]\nhh M n=3\n", {},
                                 "b.icp");
    CHECK(budget.exit_code == exit_budget);
    CHECK(Json::parse(budget.json)["error"]["kind"] == "budget");

    RunOutcome depth = run_text(std::string(bloch_text) + "hc A n=4\n", {}, "d.icp");
    CHECK(depth.exit_code == exit_budget);
    RunSettings deeper;
    deeper.bar_depth = 5;
    CHECK(run_text(std::string(bloch_text) + "hc A n=4\n", deeper, "d.icp").exit_code == exit_ok);
}

TEST_CASE("strict mode reports a failed obstruction")
{
    std::string text = R"([ring P]
vars = x, y, z
[algebra E]
vars = eps
relations = eps^2
[sequence Y]
ring = P
elements = x, y
[deformation N]
sequence = Y
algebra = E
entries = x + eps/z, y
denominator = z
[commands]
obstruction N ext=[z]
)";
    RunOutcome lax = run_text(text, {}, "n.icp");
    CHECK(lax.exit_code == exit_ok);
    CHECK(lax.not_a_cycle);
    RunSettings strict;
    strict.strict = true;
    RunOutcome s = run_text(text, strict, "n.icp");
    CHECK(s.exit_code == exit_not_a_cycle);
    Json j = Json::parse(s.json);
    const Json& r = j["results"][0]["result"];
    CHECK(r["verdict"] == "not a cycle");
    CHECK(r["boundaries"][0]["zero"] == false);
    CHECK(r["boundaries"][0]["certificates_verified"] == true);
}

TEST_CASE("reports are deterministic")
{
    std::string text = std::string(bloch_text) + "hodge R n=2 flavor=hc\nrelative R A n=1\nsbi-check R A l=1\n";
    CHECK(run_text(text, {}, "x.icp").json == run_text(text, {}, "x.icp").json);
}

TEST_CASE("command tokenizer keeps bracketed lists together")
{
    auto toks = tokenize_command("obstruction D ext=[z, y + z]", 3);
    REQUIRE(toks.size() == 3);
    CHECK(toks[2].text == "ext=[z, y + z]");
    CHECK(toks[2].loc.line == 3);
    CHECK(toks[2].loc.column == 15);
}
