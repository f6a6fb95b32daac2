#pragma once

#include <cstddef>
#include <vector>

#include "dgcat/error.hpp"
#include "dgcat/rational.hpp"

namespace dgcat {

// Sparse rational matrix. Entries are kept sorted by (row, col) with no
// zeros and no duplicate positions.
class SparseMatrix {
public:
    struct Entry {
        int row;
        int col;
        Q value;
    };

    SparseMatrix() : rows_(0), cols_(0) {}
    SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}

    static SparseMatrix zero(int rows, int cols) { return SparseMatrix(rows, cols); }
    static SparseMatrix identity(int n);
    static SparseMatrix scalar(int n, const Q& c);
    // Accumulates duplicates, drops zeros.
    static SparseMatrix from_triplets(int rows, int cols, std::vector<Entry> entries);
    static SparseMatrix from_dense_rows(const std::vector<QVec>& rows, int cols);
    // Columns are the given vectors.
    static SparseMatrix from_columns(const std::vector<QVec>& cols, int rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero_matrix() const { return entries_.empty(); }
    std::size_t nnz() const { return entries_.size(); }

    Q at(int r, int c) const;

    QVec apply(const QVec& v) const;          // m * v
    QVec apply_transpose(const QVec& v) const;
    SparseMatrix multiply(const SparseMatrix& rhs) const;
    SparseMatrix add(const SparseMatrix& rhs) const;
    SparseMatrix scaled(const Q& c) const;
    SparseMatrix transpose() const;

    std::vector<QVec> dense_rows() const;
    QVec column(int c) const;

    bool operator==(const SparseMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_ || entries_.size() != o.entries_.size())
            return false;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (entries_[i].row != o.entries_[i].row || entries_[i].col != o.entries_[i].col ||
                entries_[i].value != o.entries_[i].value)
                return false;
        return true;
    }

private:
    int rows_;
    int cols_;
    std::vector<Entry> entries_;
};

}  // namespace dgcat
