#pragma once

#include <functional>
#include <memory>

#include "dgcat/complex.hpp"

namespace dgcat {

struct WordRing;

// Sparse vector in a hom-space basis.
using BasisProduct = std::vector<std::pair<int, Q>>;

struct ComposeKey {
    ObjectTag src;
    ObjectTag mid;
    ObjectTag dst;
    int p;
    int q;
    auto operator<=>(const ComposeKey&) const = default;
};

// Differential graded ring with many objects: one hom complex per ordered
// object pair and a bilinear composition
//   hom(mid,dst)_p  x  hom(src,mid)_q  ->  hom(src,dst)_{p+q}.
class DGCategory {
public:
    std::vector<ObjectTag> objects;
    DegreeWindow window;
    std::map<PairKey, Complex> hom;
    std::map<ObjectTag, QVec> identities;  // degree-0 cycles in hom(G,G)

    using BasisCompose = std::function<BasisProduct(const DGCategory&, ObjectTag src, ObjectTag mid,
                                                    ObjectTag dst, int p, int q, int bi, int ai)>;
    BasisCompose basis_compose;
    std::shared_ptr<const WordRing> words;       // set for presented rings
    std::shared_ptr<const void> composer_state;  // keeps delegated state alive

    const Complex& hom_at(PairKey key) const;
    const Complex& hom_at(ObjectTag src, ObjectTag dst) const { return hom_at({src, dst}); }
    int dim(PairKey key, int n) const { return hom_at(key).dim(n); }

    // b in hom(mid,dst)_p, a in hom(src,mid)_q; result in hom(src,dst)_{p+q}
    // (a zero vector when p+q falls outside the window).
    QVec compose(ObjectTag src, ObjectTag mid, ObjectTag dst, int p, int q, const QVec& b,
                 const QVec& a) const;

    bool has_pair(PairKey key) const { return hom.find(key) != hom.end(); }
};

struct ConsistencyReport {
    long checks = 0;
    std::vector<std::string> violations;
    bool pass() const { return violations.empty(); }
};

// Verifies d^2 = 0, the Leibniz rule, associativity and unit laws on basis
// tuples whose degrees (and their sums) lie in [sum_lo, sum_hi].
ConsistencyReport check_consistency(const DGCategory& cat, int sum_lo, int sum_hi);
ConsistencyReport check_consistency(const DGCategory& cat);

// Explicit product tables, used by small table-backed categories.
struct ProductTable {
    std::map<ComposeKey, std::vector<std::vector<BasisProduct>>> table;
};

DGCategory make_table_category(std::vector<ObjectTag> objects, DegreeWindow window,
                               std::map<PairKey, Complex> hom, std::map<ObjectTag, QVec> identities,
                               std::shared_ptr<const ProductTable> table);

// Graded category with zero differential: hom(G,G')_n = H_n of the input,
// with composition induced on canonical representatives.
struct HomologyCategory {
    DGCategory cat;
    std::map<std::pair<PairKey, int>, HomologyData> data;

    // Homology coordinates of a cycle.
    QVec reduce(PairKey key, int degree, const QVec& cycle) const;
};
HomologyCategory homology_category(const DGCategory& r);

// Ring maps: an object bijection plus a chain map per object pair,
// multiplicative and identity-preserving.
struct DGFunctor {
    std::map<ObjectTag, ObjectTag> object_map;
    std::map<PairKey, ChainMapData> components;  // keyed by source pair

    ObjectTag map_object(ObjectTag g) const;
    PairKey map_pair(PairKey p) const { return {map_object(p.src), map_object(p.dst)}; }
    SparseMatrix component(const DGCategory& src, const DGCategory& dst, PairKey pair, int n) const;
    QVec apply(const DGCategory& src, const DGCategory& dst, PairKey pair, int n,
               const QVec& v) const;
};

struct FunctorCheckOptions {
    bool check_multiplicative = true;
    // Only basis pairs with p + q in [sum_lo, sum_hi] are checked.
    int sum_lo;
    int sum_hi;
};

DGFunctor make_dg_functor(const DGCategory& src, const DGCategory& dst,
                          std::map<ObjectTag, ObjectTag> object_map,
                          std::map<PairKey, ChainMapData> components,
                          const FunctorCheckOptions& opts);
DGFunctor make_dg_functor(const DGCategory& src, const DGCategory& dst,
                          std::map<ObjectTag, ObjectTag> object_map,
                          std::map<PairKey, ChainMapData> components);

DGFunctor compose_functors(const DGCategory& a, const DGCategory& b, const DGCategory& c,
                           const DGFunctor& f, const DGFunctor& g);

struct FunctorQuasiIsoReport {
    std::map<PairKey, QuasiIsoReport> pairs;
    bool overall = true;
};
FunctorQuasiIsoReport is_quasi_iso_functor(const DGFunctor& f, const DGCategory& src,
                                           const DGCategory& dst, int lo, int hi);

// (-1)-connected cover: degree 0 becomes the cycles, negative degrees vanish.
struct ConnectedCover {
    DGCategory cover;
    DGFunctor inclusion;  // cover -> original
};
ConnectedCover connected_cover(const DGCategory& r);

// Structural equality used by determinism checks: same objects, windows,
// bases, differentials, identities, and all in-window basis products.
bool structurally_equal(const DGCategory& a, const DGCategory& b);

}  // namespace dgcat
