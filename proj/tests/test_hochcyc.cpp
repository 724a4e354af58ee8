#include <doctest.h>

#include "infcycle/checks.hpp"
#include "infcycle/errors.hpp"
#include "infcycle/hochcyc.hpp"
#include "infcycle/kaehler.hpp"

using namespace infcycle;

namespace {

ArtinAlgebra truncated(unsigned m)
{
    return make_algebra({"x"}, {"x^" + std::to_string(m)}, "Q[x]/(x^" + std::to_string(m) + ")");
}

}  // namespace

TEST_CASE("bar complex identities")
{
    for (const auto& a : algebra_catalog()) {
        CHECK(BarComplex(a, 4, true).verify_identities());
        CHECK(BarComplex(a, 4, false).verify_identities());
    }
    ArtinAlgebra e = truncated(2);
    BarComplex raw(e, 3, false), norm(e, 3, true);
    CHECK(raw.dim(3) == 16);
    CHECK(norm.dim(3) == 2);
}

TEST_CASE("bar complex budget")
{
    ArtinAlgebra big = make_algebra({"x", "y", "z"}, {"x^2", "y^2", "z^2"}, "B");
    CHECK_THROWS_AS(BarComplex(big, 4, false), BudgetError);
    CHECK_THROWS_AS(hc(truncated(2), 4, BarSettings{4, default_bar_budget}), BudgetError);
}

TEST_CASE("Hochschild and cyclic homology of truncated polynomial rings")
{
    // Over Q: HH_n(Q[x]/(x^m)) has dimension m - 1 for n >= 1, and the reduced cyclic
    // homology is (m - 1)-dimensional in even degrees and zero in odd degrees.
    for (unsigned m : {2u, 3u}) {
        ArtinAlgebra a = truncated(m);
        CHECK(hh(a, 0).dim == m);
        for (std::size_t n = 1; n <= 3; ++n)
            CHECK(hh(a, n).dim == m - 1);
        CHECK(hc(a, 0).dim == m);
        CHECK(hc(a, 1).dim == 0);
        CHECK(hc(a, 2).dim == m);
        CHECK(hc(a, 3).dim == 0);
    }
    // HC of the ground field is Q in even degrees
    ArtinAlgebra q = rational_field();
    CHECK(hc(q, 0).dim == 1);
    CHECK(hc(q, 1).dim == 0);
    CHECK(hc(q, 2).dim == 1);
}

TEST_CASE("Eulerian idempotents are orthogonal and sum to the identity")
{
    ArtinAlgebra m = make_algebra({"x", "y"}, {"x^2", "x*y", "y^2"}, "M");
    BarComplex bar(m, 4, true);
    for (std::size_t n = 1; n <= 3; ++n) {
        RatMatrix sum(bar.dim(n), bar.dim(n));
        for (std::size_t i = 0; i <= n; ++i) {
            RatMatrix e = eulerian_matrix(bar, n, i);
            CHECK((e * e - e).is_zero());
            for (std::size_t j = 0; j <= n; ++j)
                if (j != i)
                    CHECK((e * eulerian_matrix(bar, n, j)).is_zero());
            // commutes with b for commutative algebras
            if (n >= 1)
                CHECK((bar.b(n) * e - eulerian_matrix(bar, n - 1, i) * bar.b(n)).is_zero());
            sum = sum + e;
        }
        CHECK((sum - RatMatrix::identity(bar.dim(n))).is_zero());
    }
    CHECK(eulerian_idempotents(3).size() == 4);
    CHECK_THROWS_AS(eulerian_idempotents(7), BudgetError);
}

TEST_CASE("Hodge pieces match forms in the top weight")
{
    for (const auto& a : algebra_catalog()) {
        FormAlgebra f(a);
        for (std::size_t p = 0; p <= 3; ++p) {
            HodgeDecomposition h = hodge(a, p, Flavor::HH);
            HodgeDecomposition c = hodge(a, p, Flavor::HC);
            std::size_t exact = p == 0 ? 0 : rank(f.d_matrix(p - 1));
            CHECK(h.pieces[p] == f.dim(p));
            CHECK(c.pieces[p] == f.dim(p) - exact);
            std::size_t sh = 0;
            for (const auto& [i, d] : h.pieces)
                sh += d;
            CHECK(sh == h.total);
        }
    }
}

TEST_CASE("relative groups and the Goodwillie identification")
{
    ArtinAlgebra e = truncated(2);
    e.set_name("E");
    ArtinAlgebra x2 = make_algebra({"y"}, {"y^2"}, "Y2");
    RelativePair pr = tensor_pair(x2, e);
    RelativeHomology r = relative(pr, 1, Flavor::HC);
    CHECK(r.dim == 1);
    CHECK(r.dim == r.absolute_dim - r.base_dim);
    GoodwillieReport g = goodwillie_k(pr, 2);
    CHECK(g.dim == 1);
    REQUIRE(g.bloch_dim.has_value());
    CHECK(*g.bloch_dim == 1);
}

TEST_CASE("SBI splitting on graded pairs and the graded precondition")
{
    ArtinAlgebra e = truncated(2);
    ArtinAlgebra y3 = make_algebra({"y"}, {"y^3"}, "Y3");
    RelativePair pr = tensor_pair(y3, e);
    for (std::size_t l : {1, 2}) {
        SbiReport s = sbi_split_check(pr, l);
        CHECK(s.exact());
        CHECK(s.middle == s.left + s.right);
    }
    PolyContext ng_local({"t"}, {}, {Polynomial::variable(1, 0).pow(3)});
    ArtinAlgebra plain = quotient_algebra(ng_local, false);
    CHECK_FALSE(plain.graded());
    CHECK_THROWS_AS(sbi_split_check(tensor_pair(y3, plain), 1), InputError);
    CHECK_NOTHROW(sbi_split_check(tensor_pair(y3, plain), 1, BarSettings{}, false));
}
