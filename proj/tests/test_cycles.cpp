#include <doctest.h>

#include <random>

#include "infcycle/checks.hpp"
#include "infcycle/cycles.hpp"
#include "infcycle/errors.hpp"

using namespace infcycle;

namespace {

struct Fixture {
    PolyContext r{std::vector<std::string>{"x", "y", "z"}};
    ArtinAlgebra e = make_algebra({"eps"}, {"eps^2"}, "E");
    ArtinAlgebra d3 = make_algebra({"delta"}, {"delta^3"}, "D3");
    SubvarietyGerm line = make_germ(r, {r.parse("x"), r.parse("y")});
};

}  // namespace

TEST_CASE("germs must be regular")
{
    PolyContext r({"x", "y"});
    CHECK_THROWS_AS(make_germ(r, {r.parse("x*y"), r.parse("x")}), InputError);
    CHECK_THROWS_AS(make_germ(r, {}), InputError);
    CHECK_NOTHROW(make_germ(r, {r.parse("x*y"), r.parse("x + y")}));
}

TEST_CASE("deformation validation")
{
    Fixture f;
    CHECK_THROWS_AS(parse_deformation(f.line, f.e, {"x + 1 + eps", "y"}, std::nullopt), InputError);
    CHECK_THROWS_AS(parse_deformation(f.line, f.e, {"x + eps/z", "y"}, std::nullopt), InputError);
    CHECK_THROWS_AS(parse_deformation(f.line, f.e, {"x + eps/z", "y"}, std::string("x")), InputError);
    CHECK_THROWS_AS(parse_deformation(f.line, f.e, {"x + eps/(z + 1)", "y"}, std::string("z")), InputError);
    Deformation d = parse_deformation(f.line, f.e, {"x + eps/z^2", "y"}, std::string("z"));
    CHECK(d.powers == std::vector<unsigned>{2, 0});
    CHECK(d.has_denominator());
}

TEST_CASE("local fundamental class of coordinate Koszul complexes")
{
    Fixture f;
    FormContext fc(f.r, rational_field());
    ChainComplex k = koszul(KoszulData{f.r, {f.r.var(0), f.r.var(1)}, {}});
    PolyForm t = local_fundamental_class(k, fc, 1, 2).at(0, 0);
    PolyForm dxdy = fc.wedge(fc.d(fc.function(f.r.var(0))), fc.d(fc.function(f.r.var(1))));
    CHECK(t == dxdy.scaled(-1));
    CHECK(fc.format(t) == "-dx∧dy");
    ChainComplex k1 = koszul(KoszulData{f.r, {f.r.var(0)}, {}});
    CHECK(fc.format(local_fundamental_class(k1, fc, 1, 1).at(0, 0)) == "dx");
    CHECK(koszul_class_sign(1) == 1);
    CHECK(koszul_class_sign(2) == -1);
    CHECK(koszul_class_sign(3) == -1);
    CHECK(koszul_class_sign(4) == 1);
}

TEST_CASE("Newton classes of simple deformations")
{
    Fixture f;
    Deformation d1 = parse_deformation(f.line, f.e, {"x + eps", "y"}, std::nullopt);
    ExtClass c1 = newton_class(d1);
    CHECK(d1.forms->format(c1.numerator) == "-dy∧deps");
    CHECK_FALSE(class_is_zero(c1).zero);
    Deformation d2 = parse_deformation(f.line, f.e, {"x + eps*y^2", "y"}, std::nullopt);
    ExtClass c2 = newton_class(d2);
    CHECK(d2.forms->format(c2.numerator) == "-y^2*dy∧deps");
    CHECK(class_is_zero(c2).zero);
    // trivial deformations give the zero numerator over every catalog algebra
    for (const auto& a : coefficient_catalog()) {
        Deformation t = make_deformation(f.line, a,
                                         {f.r.var(0).embed(f.r.nvars() + a.nvars(), 0),
                                          f.r.var(1).embed(f.r.nvars() + a.nvars(), 0)});
        CHECK(newton_class(t).numerator.is_zero());
    }
}

TEST_CASE("Cousin boundaries: polynomial deformations vanish, the denominator case does not")
{
    Fixture f;
    Deformation d1 = parse_deformation(f.line, f.e, {"x + eps", "y"}, std::nullopt);
    CycleReport rep = is_milnor_cycle(d1, {f.r.parse("z"), f.r.parse("y + z")});
    CHECK(rep.cycle);
    REQUIRE(rep.boundaries.size() == 2);
    CHECK(d1.forms->format(rep.boundaries[0].numerator) == "-z*dy∧deps");
    for (const auto& b : rep.boundaries)
        CHECK(verify_certificates(b.extended, b.verdict, b.inverted));

    Deformation dn = parse_deformation(f.line, f.e, {"x + eps/z", "y"}, std::string("z"));
    ExtClass cn = newton_class(dn);
    CHECK(cn.denominator_power == 2);
    CHECK(dn.forms->format(cn.numerator) == "eps*dy∧dz - z*dy∧deps");
    CycleReport bad = is_milnor_cycle(dn, {f.r.parse("z")});
    CHECK_FALSE(bad.cycle);
    CHECK(bad.boundaries[0].mode == "denominator");
    CHECK(bad.boundaries[0].extended.levels() == std::vector<unsigned>{1, 1, 2});
    CHECK(verify_certificates(bad.boundaries[0].extended, bad.boundaries[0].verdict, std::nullopt));
    // away from z = 0 the denominator is a unit
    CycleReport off = is_milnor_cycle(dn, {f.r.parse("z - 1")});
    CHECK(off.boundaries[0].mode == "unit-denominator");
    CHECK(off.cycle);

    CHECK_THROWS_AS(cousin_boundary(cn, f.r.parse("x")), InputError);
    CHECK_THROWS_AS(cousin_boundary(cn, f.r.parse("x*z")), InputError);
    // z^2 cuts out the same point as the denominator but a different ideal
    CHECK_THROWS_AS(cousin_boundary(cn, f.r.parse("z^2")), InputError);
    CHECK_THROWS_AS(cousin_boundary(cn, f.r.parse("z*(z - 1)")), InputError);
    CHECK(cousin_boundary(cn, f.r.parse("y + z")).mode == "denominator");
}

TEST_CASE("default extensions are the remaining coordinates")
{
    Fixture f;
    Deformation d = parse_deformation(f.line, f.e, {"x + eps", "y"}, std::nullopt);
    auto ext = default_extensions(d);
    REQUIRE(ext.size() == 1);
    CHECK(ext[0] == f.r.var(2));
}

TEST_CASE("naturality along delta -> eps")
{
    Fixture f;
    AlgebraMap phi = make_algebra_map(f.d3, f.e, {f.e.generator(0)});
    Deformation dc = parse_deformation(f.line, f.d3, {"x + delta", "y + delta^2*z"}, std::nullopt);
    Deformation da = push_deformation(dc, f.e, phi);
    CHECK(da.forms->format(da.forms->from_combined(da.numerators[0])) == "x + eps");
    CHECK(da.forms->format(da.forms->from_combined(da.numerators[1])) == "y");
    NaturalityReport r = naturality_check(phi, dc, {f.r.parse("z")}, true);
    CHECK(r.commutes);
    CHECK(r.pushed_class.numerator == r.target_class.numerator);
    // pushing to Q kills the relative class
    ArtinAlgebra q = rational_field();
    AlgebraMap aug = make_algebra_map(f.d3, q, {q.element_of(Polynomial(0))});
    NaturalityReport z = naturality_check(aug, dc);
    CHECK(z.commutes);
    CHECK(z.target_class.numerator.is_zero());
}

TEST_CASE("first-order tangent map")
{
    PolyContext r({"x"});
    SubvarietyGerm g = make_germ(r, {r.var(0)});
    Deformation d;
    ExtClass c = dual_numbers_tangent(g, {r.one()}, &d);
    CHECK(d.forms->format(c.numerator) == "deps");
    CHECK_FALSE(class_is_zero(c).zero);

    // additivity in the normal data
    PolyContext s({"x", "y", "z"});
    SubvarietyGerm line = make_germ(s, {s.var(0), s.var(1)});
    std::mt19937 rng(5);
    for (int t = 0; t < 5; ++t) {
        std::vector<Polynomial> g1 = {random_polynomial(rng, 3, 2, 3), random_polynomial(rng, 3, 2, 3)};
        std::vector<Polynomial> g2 = {random_polynomial(rng, 3, 2, 3), random_polynomial(rng, 3, 2, 3)};
        std::vector<Polynomial> g12 = {g1[0] + g2[0], g1[1] + g2[1]};
        PolyForm sum = dual_numbers_tangent(line, g1).numerator + dual_numbers_tangent(line, g2).numerator;
        CHECK(dual_numbers_tangent(line, g12).numerator == sum);
    }
    CHECK_THROWS_AS(dual_numbers_tangent(line, {s.one()}), InputError);

    // radial field (x, y): d(x + eps x) d(y + eps y) - dx dy = 2 eps dx dy + y dx deps - x dy deps,
    // and 2 eps dx dy survives modulo (x, y)
    Deformation radial;
    ExtClass rc = dual_numbers_tangent(line, {s.var(0), s.var(1)}, &radial);
    CHECK(radial.forms->format(rc.numerator) == "2*eps*dx∧dy + y*dx∧deps - x*dy∧deps");
    CHECK_FALSE(class_is_zero(rc).zero);
}

TEST_CASE("basis changes leave the Newton class unchanged")
{
    Fixture f;
    std::mt19937 rng(9);
    Deformation d = random_deformation(rng, f.line, f.d3);
    auto m = [](std::vector<std::vector<long>> rows) {
        std::vector<DenseVec> dv;
        for (auto& r : rows) {
            DenseVec v;
            for (long x : r)
                v.push_back(Rational(x));
            dv.push_back(v);
        }
        return RatMatrix::from_dense(dv);
    };
    std::vector<RatMatrix> change = {m({{2}}), m({{1, 3}, {-1, 2}}), m({{-5}})};
    CHECK(basis_change_difference(d, change).zero);
    std::vector<RatMatrix> singular = {m({{2}}), m({{1, 1}, {1, 1}}), m({{1}})};
    CHECK_THROWS_AS(basis_change_difference(d, singular), InputError);
}
