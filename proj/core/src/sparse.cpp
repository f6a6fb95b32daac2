#include "dgcat/sparse.hpp"

#include <algorithm>
#include <map>

#include "dgcat/error.hpp"

namespace dgcat {

SparseMatrix SparseMatrix::identity(int n) { return scalar(n, Q(1)); }

SparseMatrix SparseMatrix::scalar(int n, const Q& c) {
    SparseMatrix m(n, n);
    if (!is_zero(c))
        for (int i = 0; i < n; ++i)
            m.entries_.push_back({i, i, c});
    return m;
}

SparseMatrix SparseMatrix::from_triplets(int rows, int cols, std::vector<Entry> entries) {
    for (const Entry& e : entries)
        require(e.row >= 0 && e.row < rows && e.col >= 0 && e.col < cols, Errc::Internal,
                "sparse entry out of bounds");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m(rows, cols);
    for (Entry& e : entries) {
        if (!m.entries_.empty() && m.entries_.back().row == e.row && m.entries_.back().col == e.col) {
            m.entries_.back().value += e.value;
            if (is_zero(m.entries_.back().value))
                m.entries_.pop_back();
        } else if (!is_zero(e.value)) {
            m.entries_.push_back(std::move(e));
        }
    }
    // A cancellation can leave a zero before a same-position merge; sweep once.
    m.entries_.erase(std::remove_if(m.entries_.begin(), m.entries_.end(),
                                    [](const Entry& e) { return is_zero(e.value); }),
                     m.entries_.end());
    return m;
}

SparseMatrix SparseMatrix::from_dense_rows(const std::vector<QVec>& rows, int cols) {
    std::vector<Entry> es;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
        require(static_cast<int>(rows[r].size()) == cols, Errc::Internal, "dense row width mismatch");
        for (int c = 0; c < cols; ++c)
            if (!is_zero(rows[r][c]))
                es.push_back({r, c, rows[r][c]});
    }
    return from_triplets(static_cast<int>(rows.size()), cols, std::move(es));
}

SparseMatrix SparseMatrix::from_columns(const std::vector<QVec>& cols, int rows) {
    std::vector<Entry> es;
    for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
        require(static_cast<int>(cols[c].size()) == rows, Errc::Internal, "dense column height mismatch");
        for (int r = 0; r < rows; ++r)
            if (!is_zero(cols[c][r]))
                es.push_back({r, c, cols[c][r]});
    }
    return from_triplets(rows, static_cast<int>(cols.size()), std::move(es));
}

Q SparseMatrix::at(int r, int c) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<int, int>(r, c),
                               [](const Entry& e, const std::pair<int, int>& p) {
                                   return e.row != p.first ? e.row < p.first : e.col < p.second;
                               });
    if (it != entries_.end() && it->row == r && it->col == c)
        return it->value;
    return Q(0);
}

QVec SparseMatrix::apply(const QVec& v) const {
    require(static_cast<int>(v.size()) == cols_, Errc::Internal, "apply: size mismatch");
    QVec r = zero_vec(rows_);
    for (const Entry& e : entries_)
        if (!is_zero(v[e.col]))
            r[e.row] += e.value * v[e.col];
    return r;
}

QVec SparseMatrix::apply_transpose(const QVec& v) const {
    require(static_cast<int>(v.size()) == rows_, Errc::Internal, "apply_transpose: size mismatch");
    QVec r = zero_vec(cols_);
    for (const Entry& e : entries_)
        if (!is_zero(v[e.row]))
            r[e.col] += e.value * v[e.row];
    return r;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
    require(cols_ == rhs.rows_, Errc::Internal, "multiply: shape mismatch");
    // Row-by-row accumulation over rhs rows indexed by this matrix's columns.
    std::vector<std::vector<const Entry*>> rhs_rows(rhs.rows_);
    for (const Entry& e : rhs.entries_)
        rhs_rows[e.row].push_back(&e);
    std::vector<Entry> out;
    std::map<int, Q> acc;
    int current_row = -1;
    auto flush = [&]() {
        for (auto& [c, v] : acc)
            if (!is_zero(v))
                out.push_back({current_row, c, v});
        acc.clear();
    };
    for (const Entry& e : entries_) {
        if (e.row != current_row) {
            if (current_row >= 0)
                flush();
            current_row = e.row;
        }
        for (const Entry* re : rhs_rows[e.col])
            acc[re->col] += e.value * re->value;
    }
    if (current_row >= 0)
        flush();
    SparseMatrix m(rows_, rhs.cols_);
    m.entries_ = std::move(out);
    return m;
}

SparseMatrix SparseMatrix::add(const SparseMatrix& rhs) const {
    require(rows_ == rhs.rows_ && cols_ == rhs.cols_, Errc::Internal, "add: shape mismatch");
    std::vector<Entry> es = entries_;
    es.insert(es.end(), rhs.entries_.begin(), rhs.entries_.end());
    return from_triplets(rows_, cols_, std::move(es));
}

SparseMatrix SparseMatrix::scaled(const Q& c) const {
    SparseMatrix m(rows_, cols_);
    if (is_zero(c))
        return m;
    m.entries_ = entries_;
    for (Entry& e : m.entries_)
        e.value *= c;
    return m;
}

SparseMatrix SparseMatrix::transpose() const {
    std::vector<Entry> es;
    es.reserve(entries_.size());
    for (const Entry& e : entries_)
        es.push_back({e.col, e.row, e.value});
    return from_triplets(cols_, rows_, std::move(es));
}

std::vector<QVec> SparseMatrix::dense_rows() const {
    std::vector<QVec> rows(rows_, zero_vec(cols_));
    for (const Entry& e : entries_)
        rows[e.row][e.col] = e.value;
    return rows;
}

QVec SparseMatrix::column(int c) const {
    QVec v = zero_vec(rows_);
    for (const Entry& e : entries_)
        if (e.col == c)
            v[e.row] = e.value;
    return v;
}

}  // namespace dgcat
