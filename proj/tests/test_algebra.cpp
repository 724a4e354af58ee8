#include <doctest.h>

#include "infcycle/checks.hpp"
#include "infcycle/errors.hpp"
#include "infcycle/kaehler.hpp"
#include "infcycle/parse.hpp"

using namespace infcycle;

TEST_CASE("catalog algebras have the expected dimensions and satisfy the axioms")
{
    auto cat = algebra_catalog();
    std::vector<std::size_t> dims = {1, 2, 3, 3, 4};
    REQUIRE(cat.size() == dims.size());
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK(cat[i].dim() == dims[i]);
        CHECK(cat[i].verify_axioms());
        CHECK(cat[i].graded());
    }
    CHECK(cat[2].nilpotency_index() == 3);
}

TEST_CASE("quotient algebra preconditions")
{
    CHECK_THROWS_AS(make_algebra({"x"}, {"x - 1"}, "bad"), InputError);
    CHECK_THROWS_AS(make_algebra({"x", "y"}, {"x^2"}, "bad"), InputError);
    // x^2 (1 - x) has a second point at x = 1
    CHECK_THROWS_AS(make_algebra({"x"}, {"x^2 - x^3"}, "bad"), InputError);
}

TEST_CASE("algebra maps respect augmentations and relations")
{
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "E");
    ArtinAlgebra d = make_algebra({"delta"}, {"delta^3"}, "D");
    CHECK_NOTHROW(make_algebra_map(d, e, {e.generator(0)}));
    CHECK_THROWS_AS(make_algebra_map(d, e, {e.unit()}), InputError);
    // delta -> delta is not well defined out of eps^2 = 0
    CHECK_THROWS_AS(make_algebra_map(e, d, {d.generator(0)}), InputError);
    CHECK_NOTHROW(make_algebra_map(e, d, {d.element_of(parse_polynomial("delta^2", {"delta"}))}));
}

TEST_CASE("Kaehler forms against the structure-constant oracle")
{
    for (const auto& a : algebra_catalog()) {
        FormAlgebra f(a);
        CHECK(f.dim(1) == omega1_dim_by_structure_constants(a));
        // d^2 = 0
        for (std::size_t j = 0; j + 2 <= a.nvars() + 1; ++j)
            CHECK((f.d_matrix(j + 1) * f.d_matrix(j)).is_zero());
    }
    ArtinAlgebra m = make_algebra({"x", "y"}, {"x^2", "x*y", "y^2"}, "M");
    FormAlgebra fm(m);
    CHECK(fm.dim(1) == 3);
    CHECK(fm.dim(2) == 1);
    // Omega^1 of Q[x]/(x^n) is spanned by dx, .., x^{n-2} dx
    CHECK(FormAlgebra(make_algebra({"x"}, {"x^5"}, "X5")).dim(1) == 4);
}

TEST_CASE("Bloch groups of the relative pairs")
{
    ArtinAlgebra q = rational_field();
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "E");
    ArtinAlgebra x2 = make_algebra({"x"}, {"x^2"}, "X2");
    ArtinAlgebra x3 = make_algebra({"x"}, {"x^3"}, "X3");
    ArtinAlgebra d3 = make_algebra({"delta"}, {"delta^3"}, "D3");
    RelativeFormGroup g = bloch_group(tensor_pair(x2, e));
    CHECK(g.quotient.dim == 1);
    CHECK(g.quotient_labels == std::vector<std::string>{"eps*dx"});
    CHECK(bloch_group(tensor_pair(q, e)).quotient.dim == 0);
    CHECK(bloch_group(tensor_pair(x3, e)).quotient.dim == 2);
    CHECK(bloch_group(tensor_pair(x2, d3)).quotient.dim == 2);
    // van der Kallen: over the dual numbers the group is Omega^1_R
    ArtinAlgebra m = make_algebra({"x", "y"}, {"x^2", "x*y", "y^2"}, "M");
    for (const auto* r : {&q, &x2, &x3, &m})
        CHECK(bloch_group(tensor_pair(*r, e)).quotient.dim == FormAlgebra(*r).dim(1));
}

TEST_CASE("module presentation of forms on a quotient ring")
{
    PolyContext r({"x", "y"}, {}, {parse_polynomial("x*y", {"x", "y"})});
    FormModule f1 = omega(r, 1);
    CHECK(f1.generators.size() == 2);
    CHECK_FALSE(f1.relations.empty());
    CHECK(omega(PolyContext({"x", "y"}), 2).free());
}
