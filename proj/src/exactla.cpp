#include "infcycle/exactla.hpp"

#include <algorithm>

#include "infcycle/errors.hpp"

namespace infcycle {

std::string to_string(const Rational& q)
{
    return q.get_str();
}

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(std::size_t i, const Rational& value)
{
    SparseVec v;
    if (value != 0)
        v.entries_.emplace_back(i, value);
    return v;
}

SparseVec SparseVec::from_dense(const DenseVec& d)
{
    SparseVec v;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0)
            v.entries_.emplace_back(i, d[i]);
    return v;
}

Rational SparseVec::at(std::size_t i) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i)
        return it->second;
    return 0;
}

void SparseVec::add(std::size_t i, const Rational& value)
{
    if (value == 0)
        return;
    if (entries_.empty() || entries_.back().first < i) {
        entries_.emplace_back(i, value);
        return;
    }
    auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                               [](const Entry& e, std::size_t k) { return e.first < k; });
    if (it != entries_.end() && it->first == i) {
        it->second += value;
        if (it->second == 0)
            entries_.erase(it);
    }
    else {
        entries_.insert(it, Entry(i, value));
    }
}

void SparseVec::push_back(std::size_t i, const Rational& value)
{
    if (value != 0)
        entries_.emplace_back(i, value);
}

void SparseVec::axpy(const Rational& c, const SparseVec& other)
{
    if (c == 0 || other.empty())
        return;
    std::vector<Entry> out;
    out.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
        if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            out.push_back(std::move(*a));
            ++a;
        }
        else if (a == entries_.end() || b->first < a->first) {
            out.emplace_back(b->first, c * b->second);
            ++b;
        }
        else {
            Rational s = a->second + c * b->second;
            if (s != 0)
                out.emplace_back(a->first, std::move(s));
            ++a;
            ++b;
        }
    }
    entries_ = std::move(out);
}

void SparseVec::scale(const Rational& c)
{
    if (c == 0) {
        entries_.clear();
        return;
    }
    for (auto& e : entries_)
        e.second *= c;
}

DenseVec SparseVec::to_dense(std::size_t dim) const
{
    DenseVec d(dim);
    for (const auto& [i, v] : entries_)
        d.at(i) = v;
    return d;
}

SparseVec operator+(SparseVec a, const SparseVec& b)
{
    a.axpy(1, b);
    return a;
}

SparseVec operator-(SparseVec a, const SparseVec& b)
{
    a.axpy(-1, b);
    return a;
}

SparseVec operator*(const Rational& c, SparseVec v)
{
    v.scale(c);
    return v;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

RatMatrix RatMatrix::identity(std::size_t n)
{
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i].push_back(i, 1);
    return m;
}

RatMatrix RatMatrix::from_rows(std::size_t cols, std::vector<SparseVec> rows)
{
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].max_index_plus_one() > cols)
            throw MathError("RatMatrix::from_rows: column index out of range");
        m.data_[r] = std::move(rows[r]);
    }
    return m;
}

RatMatrix RatMatrix::from_columns(std::size_t rows, const std::vector<SparseVec>& columns)
{
    RatMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) {
            if (r >= rows)
                throw MathError("RatMatrix::from_columns: row index out of range");
            m.data_[r].push_back(c, v);
        }
    return m;
}

RatMatrix RatMatrix::from_dense(const std::vector<DenseVec>& rows)
{
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RatMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw MathError("RatMatrix::from_dense: ragged rows");
        m.data_[r] = SparseVec::from_dense(rows[r]);
    }
    return m;
}

void RatMatrix::check_index(std::size_t r, std::size_t c) const
{
    if (r >= rows_ || c >= cols_)
        throw MathError("RatMatrix: index (" + std::to_string(r) + "," + std::to_string(c) + ") out of bounds");
}

Rational RatMatrix::at(std::size_t r, std::size_t c) const
{
    check_index(r, c);
    return data_[r].at(c);
}

void RatMatrix::set(std::size_t r, std::size_t c, const Rational& value)
{
    check_index(r, c);
    Rational old = data_[r].at(c);
    data_[r].add(c, value - old);
}

void RatMatrix::add(std::size_t r, std::size_t c, const Rational& value)
{
    check_index(r, c);
    data_[r].add(c, value);
}

std::vector<SparseVec> RatMatrix::columns() const
{
    std::vector<SparseVec> cols(cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            cols[c].push_back(r, v);
    return cols;
}

RatMatrix RatMatrix::transpose() const
{
    RatMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [c, v] : data_[r])
            t.data_[c].push_back(r, v);
    return t;
}

SparseVec RatMatrix::apply(const SparseVec& x) const
{
    SparseVec out;
    for (std::size_t r = 0; r < rows_; ++r) {
        Rational s = 0;
        auto a = data_[r].begin();
        auto b = x.begin();
        while (a != data_[r].end() && b != x.end()) {
            if (a->first < b->first)
                ++a;
            else if (b->first < a->first)
                ++b;
            else {
                s += a->second * b->second;
                ++a;
                ++b;
            }
        }
        out.push_back(r, s);
    }
    return out;
}

bool RatMatrix::is_zero() const
{
    return std::all_of(data_.begin(), data_.end(), [](const SparseVec& r) { return r.empty(); });
}

std::size_t RatMatrix::nnz() const
{
    std::size_t n = 0;
    for (const auto& r : data_)
        n += r.nnz();
    return n;
}

RatMatrix RatMatrix::operator*(const RatMatrix& other) const
{
    if (cols_ != other.rows_)
        throw MathError("RatMatrix: dimension mismatch in product");
    RatMatrix m(rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (const auto& [k, v] : data_[r])
            m.data_[r].axpy(v, other.data_[k]);
    return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& other) const
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw MathError("RatMatrix: dimension mismatch in sum");
    RatMatrix m = *this;
    for (std::size_t r = 0; r < rows_; ++r)
        m.data_[r].axpy(1, other.data_[r]);
    return m;
}

RatMatrix RatMatrix::operator-(const RatMatrix& other) const
{
    return *this + other.scaled(-1);
}

RatMatrix RatMatrix::scaled(const Rational& c) const
{
    RatMatrix m = *this;
    for (auto& r : m.data_)
        r.scale(c);
    return m;
}

// ---------------------------------------------------------------- Echelon

SparseVec Echelon::reduce(SparseVec v) const
{
    if (rows_.empty())
        return v;
    if (rule_ == PivotRule::Leading) {
        // Rows only touch columns >= their pivot, so one ascending sweep suffices.
        std::size_t from = 0;
        while (true) {
            auto it = std::find_if(v.begin(), v.end(), [&](const SparseVec::Entry& e) {
                return e.first >= from && rows_.count(e.first) != 0;
            });
            if (it == v.end())
                break;
            std::size_t c = it->first;
            Rational coef = it->second;
            v.axpy(-coef, rows_.at(c));
            from = c + 1;
        }
    }
    else {
        std::size_t upto = dim_;
        while (true) {
            const SparseVec::Entry* hit = nullptr;
            for (auto it = v.entries().rbegin(); it != v.entries().rend(); ++it)
                if (it->first < upto && rows_.count(it->first) != 0) {
                    hit = &*it;
                    break;
                }
            if (!hit)
                break;
            std::size_t c = hit->first;
            Rational coef = hit->second;
            v.axpy(-coef, rows_.at(c));
            upto = c;
        }
    }
    return v;
}

bool Echelon::insert(const SparseVec& v)
{
    SparseVec r = reduce(v);
    if (r.empty())
        return false;
    std::size_t p = pivot_of(r);
    Rational inv = 1 / r.at(p);
    r.scale(inv);
    rows_.emplace(p, std::move(r));
    return true;
}

void Echelon::make_reduced()
{
    if (rule_ == PivotRule::Leading) {
        for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
            SparseVec& row = it->second;
            for (auto jt = rows_.upper_bound(it->first); jt != rows_.end(); ++jt) {
                Rational c = row.at(jt->first);
                if (c != 0)
                    row.axpy(-c, jt->second);
            }
        }
    }
    else {
        for (auto it = rows_.begin(); it != rows_.end(); ++it) {
            SparseVec& row = it->second;
            for (auto jt = rows_.begin(); jt != it; ++jt) {
                Rational c = row.at(jt->first);
                if (c != 0)
                    row.axpy(-c, jt->second);
            }
        }
    }
}

std::vector<std::size_t> Echelon::pivots() const
{
    std::vector<std::size_t> p;
    for (const auto& [c, row] : rows_)
        p.push_back(c);
    return p;
}

std::vector<std::size_t> Echelon::free_columns() const
{
    std::vector<std::size_t> f;
    for (std::size_t c = 0; c < dim_; ++c)
        if (!rows_.count(c))
            f.push_back(c);
    return f;
}

// ---------------------------------------------------------------- Subspace

Subspace Subspace::span(std::size_t ambient_dim, const std::vector<SparseVec>& vectors)
{
    Subspace s(ambient_dim);
    Echelon e(ambient_dim);
    for (const auto& v : vectors) {
        if (v.max_index_plus_one() > ambient_dim)
            throw MathError("Subspace: vector longer than ambient dimension");
        if (e.insert(v))
            s.basis_.push_back(v);
    }
    return s;
}

Subspace Subspace::whole(std::size_t ambient_dim)
{
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        s.basis_.push_back(SparseVec::unit(i));
    return s;
}

bool Subspace::contains(const SparseVec& v) const
{
    Echelon e(ambient_dim_);
    for (const auto& b : basis_)
        e.insert(b);
    return e.contains(v);
}

// ---------------------------------------------------------------- operations

std::size_t rank_of(std::size_t dim, const std::vector<SparseVec>& vectors)
{
    Echelon e(dim);
    for (const auto& v : vectors)
        e.insert(v);
    return e.rank();
}

std::size_t rank(const RatMatrix& m)
{
    // Eliminate along the shorter side.
    if (m.rows() <= m.cols()) {
        Echelon e(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r)
            e.insert(m.row(r));
        return e.rank();
    }
    return rank_of(m.rows(), m.columns());
}

Subspace kernel_basis(const RatMatrix& m)
{
    Echelon e(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        e.insert(m.row(r));
    e.make_reduced();
    std::vector<SparseVec> basis;
    for (std::size_t f : e.free_columns()) {
        SparseVec v;
        v.add(f, 1);
        for (const auto& [p, row] : e.rows()) {
            Rational c = row.at(f);
            if (c != 0)
                v.add(p, -c);
        }
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

std::optional<SparseVec> solve(const RatMatrix& m, const SparseVec& b)
{
    if (b.max_index_plus_one() > m.rows())
        throw MathError("solve: right-hand side longer than row count");
    const std::size_t n = m.cols();
    Echelon e(n + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        SparseVec row = m.row(r);
        row.add(n, b.at(r));
        e.insert(row);
    }
    if (e.is_pivot(n))
        return std::nullopt;
    e.make_reduced();
    SparseVec x;
    for (const auto& [p, row] : e.rows())
        x.add(p, row.at(n));
    return x;
}

std::optional<DenseVec> solve(const RatMatrix& m, const DenseVec& b)
{
    if (b.size() != m.rows())
        throw MathError("solve: right-hand side length differs from row count");
    auto x = solve(m, SparseVec::from_dense(b));
    if (!x)
        return std::nullopt;
    return x->to_dense(m.cols());
}

std::size_t quotient_dim(const Subspace& big, const Subspace& small)
{
    if (big.ambient_dim() != small.ambient_dim())
        throw MathError("not a subspace: ambient dimensions differ");
    Echelon e(big.ambient_dim());
    for (const auto& v : big.basis())
        e.insert(v);
    for (const auto& v : small.basis())
        if (!e.contains(v))
            throw MathError("not a subspace");
    return big.dim() - small.dim();
}

Subquotient subquotient(std::size_t ambient_dim, const std::vector<SparseVec>& cycles,
                        const std::vector<SparseVec>& boundaries)
{
    Echelon e(ambient_dim, PivotRule::Trailing);
    for (const auto& b : boundaries)
        e.insert(b);
    Subquotient q;
    for (const auto& z : cycles) {
        SparseVec r = e.reduce(z);
        if (r.empty())
            continue;
        e.insert(r);
        r.scale(1 / r.at(r.trailing()));
        q.representatives.push_back(std::move(r));
    }
    q.dim = q.representatives.size();
    return q;
}

std::optional<RatMatrix> inverse(const RatMatrix& m)
{
    if (m.rows() != m.cols())
        throw MathError("inverse: matrix is not square");
    const std::size_t n = m.rows();
    std::vector<SparseVec> cols;
    cols.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = solve(m, SparseVec::unit(i));
        if (!x)
            return std::nullopt;
        cols.push_back(std::move(*x));
    }
    RatMatrix inv = RatMatrix::from_columns(n, cols);
    if (!(m * inv - RatMatrix::identity(n)).is_zero())
        return std::nullopt;
    return inv;
}

}  // namespace infcycle
