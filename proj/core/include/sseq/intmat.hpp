#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sseq/ints.hpp"

namespace sseq {

/* Dense integer matrix, row-major, arbitrary-precision entries. */
class IntMat {
public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}
    IntMat(int rows, int cols, std::initializer_list<long> entries);

    static IntMat identity(int n);
    static IntMat zero(int rows, int cols) { return IntMat(rows, cols); }
    static IntMat from_columns(int rows, const std::vector<IntVec>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
    const Int& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

    bool operator==(const IntMat& o) const = default;
    bool is_zero() const;

    IntVec column(int c) const;
    IntVec row(int r) const;
    void set_column(int c, const IntVec& v);

    IntMat transpose() const;
    IntMat operator*(const IntMat& o) const;
    IntVec apply(const IntVec& v) const;  // matrix * column vector
    IntMat operator+(const IntMat& o) const;
    IntMat operator-() const;
    IntMat scaled(const Int& k) const;

    /* Columns of both matrices side by side. Row counts must agree
     * (an empty matrix is promoted). */
    static IntMat hconcat(const IntMat& a, const IntMat& b);
    IntMat submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const;
    IntMat columns(const std::vector<int>& col_idx) const;

    /* Entrywise reduction into [0, m). No-op for m = 0. */
    IntMat reduced_mod(const Int& m) const;

    /* Exact determinant by fraction-free (Bareiss) elimination; square only. */
    Int determinant() const;

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    void add_row_multiple(int dst, int src, const Int& k);  // row dst += k * row src
    void add_col_multiple(int dst, int src, const Int& k);
    void negate_row(int i);
    void negate_col(int j);

private:
    int rows_, cols_;
    std::vector<Int> a_;
};

std::string to_string(const IntMat& m);

}  // namespace sseq
