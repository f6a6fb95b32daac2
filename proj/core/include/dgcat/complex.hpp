#pragma once

#include <map>
#include <vector>

#include "dgcat/labels.hpp"
#include "dgcat/linalg.hpp"
#include "dgcat/window.hpp"

namespace dgcat {

// Chain complex of finite dimensional rational vector spaces inside a degree
// window. Degrees with no basis are implicit; d_n maps C_n -> C_{n-1}.
class Complex {
public:
    using Basis = std::map<int, std::vector<BasisLabel>>;
    using Diffs = std::map<int, SparseMatrix>;

    Complex() = default;

    // Validates shapes and d^2 = 0 for all n with n, n-1, n-2 in the window.
    static Complex make(DegreeWindow w, Basis basis, Diffs diffs);
    static Complex zero(DegreeWindow w) { return make(w, {}, {}); }
    // Q concentrated in degree n.
    static Complex point(DegreeWindow w, int n, BasisLabel label);
    // Acyclic disc: Q in degrees n and n-1 with identity differential.
    static Complex disc(DegreeWindow w, int n);

    const DegreeWindow& window() const { return window_; }
    int dim(int n) const;
    const std::vector<BasisLabel>& labels(int n) const;
    SparseMatrix d(int n) const;  // zero matrix of the right shape if absent
    const Basis& basis() const { return basis_; }

    std::vector<int> support() const;  // degrees with nonzero basis, ascending
    bool is_cycle(int n, const QVec& v) const;

    bool operator==(const Complex& o) const {
        return window_ == o.window_ && basis_ == o.basis_ && diffs_ == o.diffs_;
    }

private:
    DegreeWindow window_;
    Basis basis_;
    Diffs diffs_;  // only nonzero differentials stored
};

// Degreewise components of a chain map; degrees without an entry are zero.
using ChainMapData = std::map<int, SparseMatrix>;

SparseMatrix chain_map_component(const Complex& src, const Complex& dst, const ChainMapData& f,
                                 int n, int shift = 0);
// f must satisfy d_dst f = f d_src degreewise (as degree-`shift` map).
void check_chain_map(const Complex& src, const Complex& dst, const ChainMapData& f, int shift = 0);

ChainMapData identity_chain_map(const Complex& c);
ChainMapData compose_chain_maps(const Complex& a, const Complex& b, const Complex& c,
                                const ChainMapData& f, const ChainMapData& g);

// Homology at one degree with a canonical reduce procedure: any cycle z is
// written z = reps * coords + d(witness) with the coordinate part unique.
struct HomologyData {
    int degree = 0;
    int dimension = 0;
    std::vector<QVec> representatives;  // cycles, independent modulo boundaries
    SparseMatrix rep_matrix;            // columns are the representatives
    SparseMatrix boundary_matrix;       // d_{n+1}
    SparseMatrix d_n;                   // for the cycle check

    struct Reduction {
        QVec coordinates;
        QVec witness;  // element of C_{n+1}
    };
    Reduction reduce(const QVec& cycle) const;
};

// Preconditions: n-1, n, n+1 in window (OutOfWindow otherwise).
HomologyData homology(const Complex& c, int n);

// (shift(c,k))_n = c_{n-k}, differential scaled by (-1)^k. Content must stay
// inside the window.
Complex shift(const Complex& c, int k);

// Mapping cone of a degree-0 chain map: cone_n = src_{n-1} + dst_n with
// d(x, y) = (-dx, f x + dy).
Complex cone(const Complex& src, const Complex& dst, const ChainMapData& f);

struct QuasiIsoReport {
    struct DegreeVerdict {
        int degree;
        int dim_src;
        int dim_dst;
        int rank_induced;
        bool iso;
    };
    std::vector<DegreeVerdict> degrees;
    bool overall = true;
};

// Induced-homology isomorphism verdict per degree over [lo, hi]; the range
// must lie in the trusted range of both windows.
QuasiIsoReport is_quasi_iso(const Complex& src, const Complex& dst, const ChainMapData& f, int lo,
                            int hi);

// Direct sum, used by tests and path objects.
Complex direct_sum(const Complex& a, const Complex& b);

}  // namespace dgcat
