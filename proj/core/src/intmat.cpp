#include "sseq/intmat.hpp"

#include <sstream>
#include <stdexcept>

namespace sseq {

std::string to_string(const Int& x)
{
    return x.get_str();
}

IntMat::IntMat(int rows, int cols, std::initializer_list<long> entries)
    : rows_(rows), cols_(cols), a_(size_t(rows) * cols)
{
    if (entries.size() != a_.size())
        throw std::invalid_argument("IntMat: entry count does not match dimensions");
    size_t i = 0;
    for (long e : entries)
        a_[i++] = e;
}

IntMat IntMat::identity(int n)
{
    IntMat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

IntMat IntMat::from_columns(int rows, const std::vector<IntVec>& cols)
{
    IntMat m(rows, int(cols.size()));
    for (int c = 0; c < int(cols.size()); ++c) {
        if (int(cols[c].size()) != rows)
            throw std::invalid_argument("IntMat::from_columns: column length mismatch");
        for (int r = 0; r < rows; ++r)
            m.at(r, c) = cols[c][r];
    }
    return m;
}

bool IntMat::is_zero() const
{
    for (const Int& x : a_)
        if (x != 0)
            return false;
    return true;
}

IntVec IntMat::column(int c) const
{
    IntVec v(rows_);
    for (int r = 0; r < rows_; ++r)
        v[r] = at(r, c);
    return v;
}

IntVec IntMat::row(int r) const
{
    IntVec v(cols_);
    for (int c = 0; c < cols_; ++c)
        v[c] = at(r, c);
    return v;
}

void IntMat::set_column(int c, const IntVec& v)
{
    for (int r = 0; r < rows_; ++r)
        at(r, c) = v[r];
}

IntMat IntMat::transpose() const
{
    IntMat m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            m.at(c, r) = at(r, c);
    return m;
}

IntMat IntMat::operator*(const IntMat& o) const
{
    if (cols_ != o.rows_)
        throw std::invalid_argument("IntMat::operator*: dimension mismatch");
    IntMat m(rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const Int& x = at(r, k);
            if (x == 0)
                continue;
            for (int c = 0; c < o.cols_; ++c) {
                const Int& y = o.at(k, c);
                if (y != 0)
                    m.at(r, c) += x * y;
            }
        }
    return m;
}

IntVec IntMat::apply(const IntVec& v) const
{
    if (int(v.size()) != cols_)
        throw std::invalid_argument("IntMat::apply: dimension mismatch");
    IntVec out(rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) {
            const Int& x = at(r, c);
            if (x != 0 && v[c] != 0)
                out[r] += x * v[c];
        }
    return out;
}

IntMat IntMat::operator+(const IntMat& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMat::operator+: dimension mismatch");
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = a_[i] + o.a_[i];
    return m;
}

IntMat IntMat::operator-() const
{
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = -a_[i];
    return m;
}

IntMat IntMat::scaled(const Int& k) const
{
    IntMat m(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = k * a_[i];
    return m;
}

IntMat IntMat::hconcat(const IntMat& a, const IntMat& b)
{
    if (a.cols_ == 0 && a.rows_ == 0)
        return b;
    if (b.cols_ == 0 && b.rows_ == 0)
        return a;
    if (a.rows_ != b.rows_)
        throw std::invalid_argument("IntMat::hconcat: row count mismatch");
    IntMat m(a.rows_, a.cols_ + b.cols_);
    for (int r = 0; r < a.rows_; ++r) {
        for (int c = 0; c < a.cols_; ++c)
            m.at(r, c) = a.at(r, c);
        for (int c = 0; c < b.cols_; ++c)
            m.at(r, a.cols_ + c) = b.at(r, c);
    }
    return m;
}

IntMat IntMat::submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const
{
    IntMat m(int(row_idx.size()), int(col_idx.size()));
    for (int r = 0; r < m.rows_; ++r)
        for (int c = 0; c < m.cols_; ++c)
            m.at(r, c) = at(row_idx[r], col_idx[c]);
    return m;
}

IntMat IntMat::columns(const std::vector<int>& col_idx) const
{
    IntMat m(rows_, int(col_idx.size()));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < m.cols_; ++c)
            m.at(r, c) = at(r, col_idx[c]);
    return m;
}

IntMat IntMat::reduced_mod(const Int& m) const
{
    if (m == 0)
        return *this;
    IntMat out(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i)
        out.a_[i] = int_mod(a_[i], m);
    return out;
}

Int IntMat::determinant() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("IntMat::determinant: not square");
    int n = rows_;
    if (n == 0)
        return 1;
    IntMat w(*this);
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (w.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (w.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                return 0;
            w.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = int_divexact(t, prev);
            }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : Int(-w.at(n - 1, n - 1));
}

void IntMat::swap_rows(int i, int j)
{
    if (i == j)
        return;
    for (int c = 0; c < cols_; ++c)
        std::swap(at(i, c), at(j, c));
}

void IntMat::swap_cols(int i, int j)
{
    if (i == j)
        return;
    for (int r = 0; r < rows_; ++r)
        std::swap(at(r, i), at(r, j));
}

void IntMat::add_row_multiple(int dst, int src, const Int& k)
{
    if (k == 0)
        return;
    for (int c = 0; c < cols_; ++c) {
        const Int& x = at(src, c);
        if (x != 0)
            at(dst, c) += k * x;
    }
}

void IntMat::add_col_multiple(int dst, int src, const Int& k)
{
    if (k == 0)
        return;
    for (int r = 0; r < rows_; ++r) {
        const Int& x = at(r, src);
        if (x != 0)
            at(r, dst) += k * x;
    }
}

void IntMat::negate_row(int i)
{
    for (int c = 0; c < cols_; ++c)
        at(i, c) = -at(i, c);
}

void IntMat::negate_col(int j)
{
    for (int r = 0; r < rows_; ++r)
        at(r, j) = -at(r, j);
}

std::string to_string(const IntMat& m)
{
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < m.rows(); ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < m.cols(); ++c)
            os << (c ? " " : "") << m.at(r, c).get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace sseq
