#include <doctest.h>

#include "infcycle/errors.hpp"
#include "infcycle/parse.hpp"

using namespace infcycle;

TEST_CASE("rational functions")
{
    std::vector<std::string> v = {"x", "z", "eps"};
    RationalFunction f = parse_rational_function("x + eps/z", v);
    CHECK(f.den == parse_polynomial("z", v));
    CHECK(f.num == parse_polynomial("x*z + eps", v));
    RationalFunction g = parse_rational_function("(x^2 - z^2)/(x - z)", v);
    CHECK(g.den.is_constant());
    CHECK(g.num == parse_polynomial("x + z", v));
}

TEST_CASE("parse errors carry columns")
{
    std::vector<std::string> v = {"x", "y"};
    try {
        parse_polynomial("x + w", v);
        FAIL("expected an error");
    } catch (const InputError& e) {
        CHECK(e.column() == 5);
        CHECK(std::string(e.what()).find("unknown variable 'w'") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_polynomial("x +", v), InputError);
    CHECK_THROWS_AS(parse_polynomial("(x", v), InputError);
    CHECK_THROWS_AS(parse_polynomial("1/x", v), InputError);
    CHECK_THROWS_AS(parse_polynomial("x^-1", v), InputError);
    CHECK_THROWS_AS(parse_polynomial("x/0", v), InputError);
}

TEST_CASE("top-level list splitting")
{
    auto items = split_list_items(" x, (y, z) ,w ");
    REQUIRE(items.size() == 3);
    CHECK(items[0].text == "x");
    CHECK(items[0].offset == 1);
    CHECK(items[1].text == "(y, z)");
    CHECK(items[1].offset == 4);
    CHECK(items[2].text == "w");
    CHECK(split_list("").empty());
}
