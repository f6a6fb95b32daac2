#pragma once

#include <optional>
#include <vector>

#include "dgcat/sparse.hpp"

namespace dgcat {

// Reduced row echelon form of a list of row vectors. Pivoting is
// deterministic: columns left to right, first remaining row with a nonzero
// entry. The resulting row set is the canonical RREF of the row space.
struct Echelon {
    std::vector<QVec> rows;   // nonzero rows, pivot entries are 1
    std::vector<int> pivots;  // pivot column per row, strictly increasing
    int ambient = 0;

    int rank() const { return static_cast<int>(rows.size()); }
    bool has_pivot(int col) const;
    // Writes v as a combination of the rows; returns coordinates, or nullopt
    // if v is outside the row space.
    std::optional<QVec> coordinates(const QVec& v) const;
    bool contains(const QVec& v) const { return coordinates(v).has_value(); }
};

Echelon rref(std::vector<QVec> rows, int ambient);

// A linear subspace stored as the canonical reduced echelon basis, so equal
// subspaces compare equal.
struct Subspace {
    int ambient = 0;
    std::vector<QVec> basis;  // RREF rows

    static Subspace from_generators(const std::vector<QVec>& gens, int ambient);
    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const QVec& v) const;
    bool contains(const Subspace& other) const;
    std::optional<QVec> coordinates(const QVec& v) const;
    bool operator==(const Subspace& o) const { return ambient == o.ambient && basis == o.basis; }
};

Subspace kernel_basis(const SparseMatrix& m);
Subspace image_basis(const SparseMatrix& m);

struct AffineSolution {
    QVec particular;      // free variables set to zero
    Subspace homogeneous; // kernel of the matrix
};

// Solves m * x = b exactly; nullopt when b is not in the column space.
std::optional<AffineSolution> solve_affine(const SparseMatrix& m, const QVec& b);
// Particular solution only (kernel not computed).
std::optional<QVec> solve_particular(const SparseMatrix& m, const QVec& b);

// Vectors extending a basis of `sub` to one of `inside`; taken greedily from
// `inside`'s echelon basis, so the result is deterministic.
Subspace complement_basis(const Subspace& sub, const Subspace& inside);

// Sum of subspaces of a common ambient space.
Subspace subspace_sum(const Subspace& a, const Subspace& b);

int rank(const SparseMatrix& m);

}  // namespace dgcat
