#pragma once

/**
 * Exact linear algebra over the rationals.
 *
 * Everything here is sparse: vectors are sorted (index, value) lists without
 * stored zeros, matrices are lists of sparse rows.  Row reduction normalizes
 * pivots to 1, so every echelon form produced is canonical once fully reduced.
 */

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace infcycle {

using Rational = mpq_class;
using DenseVec = std::vector<Rational>;

std::string to_string(const Rational& q);

class SparseVec {
public:
    using Entry = std::pair<std::size_t, Rational>;

    SparseVec() = default;
    static SparseVec unit(std::size_t i, const Rational& value = 1);
    static SparseVec from_dense(const DenseVec& v);

    bool empty() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

    Rational at(std::size_t i) const;
    void add(std::size_t i, const Rational& value);
    /// this += c * other
    void axpy(const Rational& c, const SparseVec& other);
    void scale(const Rational& c);
    /// Appends an entry whose index is larger than every stored index.
    void push_back(std::size_t i, const Rational& value);

    std::size_t leading() const { return entries_.front().first; }
    std::size_t trailing() const { return entries_.back().first; }
    std::size_t max_index_plus_one() const { return entries_.empty() ? 0 : entries_.back().first + 1; }

    DenseVec to_dense(std::size_t dim) const;

    friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

private:
    std::vector<Entry> entries_;
};

SparseVec operator+(SparseVec a, const SparseVec& b);
SparseVec operator-(SparseVec a, const SparseVec& b);
SparseVec operator*(const Rational& c, SparseVec v);

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols);
    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(std::size_t cols, std::vector<SparseVec> rows);
    static RatMatrix from_columns(std::size_t rows, const std::vector<SparseVec>& columns);
    static RatMatrix from_dense(const std::vector<DenseVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Rational& value);
    void add(std::size_t r, std::size_t c, const Rational& value);
    const SparseVec& row(std::size_t r) const { return data_[r]; }
    SparseVec& row(std::size_t r) { return data_[r]; }

    std::vector<SparseVec> columns() const;
    RatMatrix transpose() const;
    SparseVec apply(const SparseVec& x) const;
    bool is_zero() const;
    std::size_t nnz() const;

    RatMatrix operator*(const RatMatrix& other) const;
    RatMatrix operator+(const RatMatrix& other) const;
    RatMatrix operator-(const RatMatrix& other) const;
    RatMatrix scaled(const Rational& c) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_index(std::size_t r, std::size_t c) const;

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<SparseVec> data_;
};

enum class PivotRule {
    Leading,  ///< pivot on the first nonzero coordinate
    Trailing  ///< pivot on the last nonzero coordinate; keeps low coordinates as representatives
};

/**
 * Incrementally built echelon basis of a subspace of Q^dim.
 *
 * Rows are keyed by pivot column and normalized so the pivot entry is 1.
 * reduce() returns the unique remainder with zeros in every pivot column.
 */
class Echelon {
public:
    explicit Echelon(std::size_t dim, PivotRule rule = PivotRule::Leading) : dim_(dim), rule_(rule) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    PivotRule rule() const { return rule_; }

    SparseVec reduce(SparseVec v) const;
    /// Returns true when v was independent of the current rows.
    bool insert(const SparseVec& v);
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    bool is_pivot(std::size_t c) const { return rows_.count(c) != 0; }

    /// Back-substitutes so that every row is zero in the other pivot columns.
    void make_reduced();

    const std::map<std::size_t, SparseVec>& rows() const { return rows_; }
    std::vector<std::size_t> pivots() const;
    std::vector<std::size_t> free_columns() const;

private:
    std::size_t pivot_of(const SparseVec& v) const { return rule_ == PivotRule::Leading ? v.leading() : v.trailing(); }

    std::size_t dim_;
    PivotRule rule_;
    std::map<std::size_t, SparseVec> rows_;
};

class Subspace {
public:
    explicit Subspace(std::size_t ambient_dim) : ambient_dim_(ambient_dim) {}
    /// Keeps the independent members of `vectors`, in order.
    static Subspace span(std::size_t ambient_dim, const std::vector<SparseVec>& vectors);
    static Subspace whole(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return ambient_dim_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<SparseVec>& basis() const { return basis_; }
    bool contains(const SparseVec& v) const;

private:
    std::size_t ambient_dim_;
    std::vector<SparseVec> basis_;
};

std::size_t rank(const RatMatrix& m);
Subspace kernel_basis(const RatMatrix& m);
/// Some x with m x = b, or nullopt when the system is inconsistent.
std::optional<SparseVec> solve(const RatMatrix& m, const SparseVec& b);
std::optional<DenseVec> solve(const RatMatrix& m, const DenseVec& b);
/// dim(big) - dim(small); throws MathError("not a subspace") unless small is contained in big.
std::size_t quotient_dim(const Subspace& big, const Subspace& small);
std::size_t rank_of(std::size_t dim, const std::vector<SparseVec>& vectors);
/// Inverse of a square matrix, or nullopt when it is singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

/// Classes of `cycles` modulo `boundaries` with one representative per basis class.
struct Subquotient {
    std::size_t dim = 0;
    std::vector<SparseVec> representatives;
};
Subquotient subquotient(std::size_t ambient_dim, const std::vector<SparseVec>& cycles,
                        const std::vector<SparseVec>& boundaries);

}  // namespace infcycle
