#include "dgcat/linalg.hpp"

#include <algorithm>
#include <map>

#include "dgcat/error.hpp"

namespace dgcat {

namespace {

constexpr int kDenseLimit = 64;

using SparseRow = std::map<int, Q>;

// Shared elimination on sparse rows. Pivot rule: smallest column index,
// then smallest row index among the remaining rows.
std::pair<std::vector<SparseRow>, std::vector<int>> rref_sparse(std::vector<SparseRow> rows,
                                                                int ambient) {
    std::vector<SparseRow> done;
    std::vector<int> pivots;
    for (int col = 0; col < ambient; ++col) {
        std::size_t found = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            auto it = rows[r].begin();
            if (it != rows[r].end() && it->first == col) {
                found = r;
                break;
            }
        }
        if (found == rows.size())
            continue;
        SparseRow piv = std::move(rows[found]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(found));
        Q inv = 1 / piv.at(col);
        for (auto& [c, v] : piv)
            v *= inv;
        auto eliminate = [&](SparseRow& row) {
            auto it = row.find(col);
            if (it == row.end())
                return;
            Q factor = it->second;
            for (const auto& [c, v] : piv) {
                Q delta = factor * v;
                auto jt = row.find(c);
                if (jt == row.end()) {
                    row.emplace(c, -delta);
                } else {
                    jt->second -= delta;
                    if (is_zero(jt->second))
                        row.erase(jt);
                }
            }
        };
        for (SparseRow& row : rows)
            eliminate(row);
        for (SparseRow& row : done)
            eliminate(row);
        done.push_back(std::move(piv));
        pivots.push_back(col);
    }
    return {std::move(done), std::move(pivots)};
}

std::pair<std::vector<QVec>, std::vector<int>> rref_dense(std::vector<QVec> rows, int ambient) {
    std::vector<int> pivots;
    std::size_t lead = 0;
    for (int col = 0; col < ambient && lead < rows.size(); ++col) {
        std::size_t found = rows.size();
        for (std::size_t r = lead; r < rows.size(); ++r)
            if (!is_zero(rows[r][static_cast<std::size_t>(col)])) {
                found = r;
                break;
            }
        if (found == rows.size())
            continue;
        std::swap(rows[lead], rows[found]);
        Q inv = 1 / rows[lead][static_cast<std::size_t>(col)];
        for (Q& x : rows[lead])
            x *= inv;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead)
                continue;
            const Q factor = rows[r][static_cast<std::size_t>(col)];
            if (is_zero(factor))
                continue;
            for (int c = col; c < ambient; ++c)
                rows[r][static_cast<std::size_t>(c)] -= factor * rows[lead][static_cast<std::size_t>(c)];
        }
        pivots.push_back(col);
        ++lead;
    }
    rows.resize(lead);
    return {std::move(rows), std::move(pivots)};
}

}  // namespace

bool Echelon::has_pivot(int col) const {
    return std::binary_search(pivots.begin(), pivots.end(), col);
}

std::optional<QVec> Echelon::coordinates(const QVec& v) const {
    require(static_cast<int>(v.size()) == ambient, Errc::Internal, "coordinates: size mismatch");
    // RREF rows have unit pivots and zeros in other pivot columns, so the
    // coordinates are just the pivot entries of v; check the residual.
    QVec coords(rows.size(), Q(0));
    QVec residual = v;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        coords[r] = v[static_cast<std::size_t>(pivots[r])];
        if (!is_zero(coords[r]))
            axpy(residual, -coords[r], rows[r]);
    }
    if (!is_zero(residual))
        return std::nullopt;
    return coords;
}

Echelon rref(std::vector<QVec> rows, int ambient) {
    Echelon e;
    e.ambient = ambient;
    if (ambient < kDenseLimit) {
        auto [rr, piv] = rref_dense(std::move(rows), ambient);
        e.rows = std::move(rr);
        e.pivots = std::move(piv);
        return e;
    }
    std::vector<SparseRow> srows;
    srows.reserve(rows.size());
    for (const QVec& row : rows) {
        SparseRow sr;
        for (int c = 0; c < ambient; ++c)
            if (!is_zero(row[static_cast<std::size_t>(c)]))
                sr.emplace(c, row[static_cast<std::size_t>(c)]);
        if (!sr.empty())
            srows.push_back(std::move(sr));
    }
    auto [rr, piv] = rref_sparse(std::move(srows), ambient);
    e.pivots = std::move(piv);
    e.rows.reserve(rr.size());
    for (const SparseRow& sr : rr) {
        QVec row = zero_vec(static_cast<std::size_t>(ambient));
        for (const auto& [c, v] : sr)
            row[static_cast<std::size_t>(c)] = v;
        e.rows.push_back(std::move(row));
    }
    return e;
}

Subspace Subspace::from_generators(const std::vector<QVec>& gens, int ambient) {
    Echelon e = rref(gens, ambient);
    Subspace s;
    s.ambient = ambient;
    s.basis = std::move(e.rows);
    return s;
}

bool Subspace::contains(const QVec& v) const { return coordinates(v).has_value(); }

std::optional<QVec> Subspace::coordinates(const QVec& v) const {
    Echelon e;
    e.ambient = ambient;
    e.rows = basis;
    for (const QVec& row : basis) {
        for (int c = 0; c < ambient; ++c)
            if (!is_zero(row[static_cast<std::size_t>(c)])) {
                e.pivots.push_back(c);
                break;
            }
    }
    return e.coordinates(v);
}

bool Subspace::contains(const Subspace& other) const {
    require(ambient == other.ambient, Errc::Internal, "contains: ambient mismatch");
    for (const QVec& v : other.basis)
        if (!contains(v))
            return false;
    return true;
}

Subspace kernel_basis(const SparseMatrix& m) {
    Echelon e = rref(m.dense_rows(), m.cols());
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int p : e.pivots)
        is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<QVec> gens;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)])
            continue;
        QVec v = zero_vec(static_cast<std::size_t>(m.cols()));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < e.rows.size(); ++r)
            v[static_cast<std::size_t>(e.pivots[r])] = -e.rows[r][static_cast<std::size_t>(f)];
        gens.push_back(std::move(v));
    }
    return Subspace::from_generators(gens, m.cols());
}

Subspace image_basis(const SparseMatrix& m) {
    return Subspace::from_generators(m.transpose().dense_rows(), m.rows());
}

std::optional<QVec> solve_particular(const SparseMatrix& m, const QVec& b) {
    require(static_cast<int>(b.size()) == m.rows(), Errc::Internal, "solve: rhs size mismatch");
    // Eliminate on the augmented matrix [m | b].
    std::vector<QVec> aug = m.dense_rows();
    for (int r = 0; r < m.rows(); ++r)
        aug[static_cast<std::size_t>(r)].push_back(b[static_cast<std::size_t>(r)]);
    Echelon e = rref(std::move(aug), m.cols() + 1);
    QVec x = zero_vec(static_cast<std::size_t>(m.cols()));
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (e.pivots[r] == m.cols())
            return std::nullopt;  // inconsistent row 0 = 1
        x[static_cast<std::size_t>(e.pivots[r])] = e.rows[r].back();
    }
    return x;
}

std::optional<AffineSolution> solve_affine(const SparseMatrix& m, const QVec& b) {
    auto x = solve_particular(m, b);
    if (!x)
        return std::nullopt;
    AffineSolution s;
    s.particular = std::move(*x);
    s.homogeneous = kernel_basis(m);
    return s;
}

Subspace complement_basis(const Subspace& sub, const Subspace& inside) {
    require(sub.ambient == inside.ambient, Errc::Internal, "complement: ambient mismatch");
    require(inside.contains(sub), Errc::NotContained, "complement_basis: sub is not contained in inside");
    std::vector<QVec> current = sub.basis;
    std::vector<QVec> picked;
    Echelon span = rref(current, sub.ambient);
    for (const QVec& v : inside.basis) {
        if (span.contains(v))
            continue;
        picked.push_back(v);
        current.push_back(v);
        span = rref(current, sub.ambient);
    }
    require(static_cast<int>(picked.size()) == inside.dim() - sub.dim(), Errc::Internal,
            "complement dimension mismatch");
    Subspace s;
    s.ambient = sub.ambient;
    s.basis = std::move(picked);  // keep the chosen echelon vectors as-is
    return s;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    require(a.ambient == b.ambient, Errc::Internal, "subspace_sum: ambient mismatch");
    std::vector<QVec> gens = a.basis;
    gens.insert(gens.end(), b.basis.begin(), b.basis.end());
    return Subspace::from_generators(gens, a.ambient);
}

int rank(const SparseMatrix& m) { return rref(m.dense_rows(), m.cols()).rank(); }

}  // namespace dgcat
