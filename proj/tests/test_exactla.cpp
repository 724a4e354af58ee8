#include <doctest.h>

#include <random>

#include "infcycle/errors.hpp"
#include "infcycle/exactla.hpp"

using namespace infcycle;

namespace {

RatMatrix dense(const std::vector<std::vector<long>>& rows)
{
    std::vector<DenseVec> d;
    for (const auto& r : rows) {
        DenseVec v;
        for (long x : r)
            v.push_back(Rational(x));
        d.push_back(v);
    }
    return RatMatrix::from_dense(d);
}

RatMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int sparsity)
{
    RatMatrix m(r, c);
    std::uniform_int_distribution<int> coeff(-5, 5), keep(0, sparsity);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng) == 0)
                m.set(i, j, Rational(coeff(rng), 1 + (coeff(rng) + 5) % 3));
    return m;
}

}  // namespace

TEST_CASE("sparse vectors keep sorted nonzero entries")
{
    SparseVec v;
    v.add(3, 2);
    v.add(1, 1);
    v.add(3, -2);
    CHECK(v.nnz() == 1);
    CHECK(v.at(1) == 1);
    CHECK(v.at(3) == 0);
    SparseVec w = SparseVec::unit(0, Rational(1, 2)) + v;
    CHECK(w.leading() == 0);
    CHECK(w.trailing() == 1);
}

TEST_CASE("rank of small matrices")
{
    // rows 1 and 3 sum to twice row 2
    CHECK(rank(dense({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}})) == 2);
    CHECK(rank(dense({{0, 0}, {0, 0}})) == 0);
    CHECK(rank(RatMatrix::identity(5)) == 5);
}

TEST_CASE("kernel vectors are annihilated and have the right count")
{
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        RatMatrix m = random_matrix(rng, 4, 7, 1);
        Subspace k = kernel_basis(m);
        CHECK(k.dim() + rank(m) == 7);
        for (const auto& v : k.basis())
            CHECK(m.apply(v).empty());
    }
}

TEST_CASE("row rank equals column rank on random matrices")
{
    std::mt19937 rng(11);
    for (int t = 0; t < 30; ++t) {
        RatMatrix m = random_matrix(rng, 5, 6, 2);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("solve returns a solution or reports inconsistency")
{
    RatMatrix m = dense({{1, 1}, {1, 1}});
    CHECK_FALSE(solve(m, SparseVec::unit(0)).has_value());
    RatMatrix a = dense({{2, 1}, {1, 3}});
    auto x = solve(a, SparseVec::unit(1));
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == SparseVec::unit(1));
    CHECK(x->at(0) == Rational(-1, 5));
    CHECK(x->at(1) == Rational(2, 5));
}

TEST_CASE("inverse")
{
    RatMatrix a = dense({{2, 1}, {1, 3}});
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK((a * *inv - RatMatrix::identity(2)).is_zero());
    CHECK_FALSE(inverse(dense({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("subquotient of cycles by boundaries")
{
    // ambient Q^3, cycles span e0, e1, boundaries span e0 + e1
    std::vector<SparseVec> z = {SparseVec::unit(0), SparseVec::unit(1)};
    std::vector<SparseVec> b = {SparseVec::unit(0) + SparseVec::unit(1)};
    Subquotient q = subquotient(3, z, b);
    CHECK(q.dim == 1);
    REQUIRE(q.representatives.size() == 1);
    Subspace zs = Subspace::span(3, z);
    CHECK(zs.contains(q.representatives[0]));
    CHECK(quotient_dim(zs, Subspace::span(3, b)) == 1);
    CHECK_THROWS_AS(quotient_dim(Subspace::span(3, b), zs), MathError);
}

TEST_CASE("echelon pivot rules")
{
    Echelon lead(3, PivotRule::Leading), trail(3, PivotRule::Trailing);
    SparseVec v = SparseVec::unit(0) + SparseVec::unit(2);
    lead.insert(v);
    trail.insert(v);
    CHECK(lead.is_pivot(0));
    CHECK(trail.is_pivot(2));
    CHECK(lead.free_columns() == std::vector<std::size_t>{1, 2});
    CHECK(trail.free_columns() == std::vector<std::size_t>{0, 1});
}
