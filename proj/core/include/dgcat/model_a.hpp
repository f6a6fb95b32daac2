#pragma once

#include "dgcat/dg_category.hpp"

namespace dgcat {

// Truncated context: k finite-subgroup labels inside a degree window. With
// finitely many labels every module splits into its idempotent pieces, so
// modules are stored one graded piece per subgroup with a degree -2 action.
struct OFContext {
    int k = 3;
    DegreeWindow window;

    OFContext() = default;
    OFContext(int k_, DegreeWindow w) : k(k_), window(w) {
        require(k >= 1, Errc::ConfigError, "need at least one finite subgroup label");
    }
};

struct OFModule {
    int k = 0;
    // basis[h]: degree -> labels of the h-piece
    std::vector<std::map<int, std::vector<BasisLabel>>> basis;
    // action[h]: degree n -> matrix piece_n -> piece_{n-2} (absent = zero)
    std::vector<std::map<int, SparseMatrix>> action;

    int dim(int h, int n) const;
    const std::vector<BasisLabel>& labels(int h, int n) const;
    SparseMatrix act(int h, int n) const;
    int total_dim(int n) const;
};

struct GradedVS {
    std::map<int, std::vector<BasisLabel>> basis;
    int dim(int n) const;
    std::vector<int> support() const;
};

// Basis bookkeeping for (t tensor V) at one degree: pairs (b, j) with
// v_j in V_b and n - b even; the degree -2 action is the identity in this
// indexing because it only shifts the invertible t coordinate.
struct TensorTV {
    static int dim(const GradedVS& v, int n);
    // index of (b, j) within degree n
    static int index(const GradedVS& v, int n, int b, int j);
    // 1 (x) dV as a matrix TV_n -> TV_{n-1}
    static SparseMatrix vertex_d(const GradedVS& v, const std::map<int, SparseMatrix>& dv, int n);
    // 1 (x) phi of degree nu: TV(a)_n -> TV(b)_{n+nu}
    static SparseMatrix vertex_map(const GradedVS& a, const GradedVS& b,
                                   const std::map<int, SparseMatrix>& phi, int nu, int n);
};

// Object of the truncated abelian category: a map beta from the nub to
// t (x) vertex whose kernel and cokernel are torsion for the total action.
struct AObject {
    OFContext ctx;
    OFModule nub;
    GradedVS vertex;
    std::vector<std::map<int, SparseMatrix>> beta;  // [h]: degree -> nub^h_n -> TV^h_n

    SparseMatrix beta_at(int h, int n) const;
};

struct DGAObject {
    AObject obj;
    std::vector<std::map<int, SparseMatrix>> d_nub;  // [h]: degree n -> n-1
    std::map<int, SparseMatrix> d_vertex;

    SparseMatrix d_nub_at(int h, int n) const;
    SparseMatrix d_vertex_at(int n) const;

    // Validates module structure, beta squares, d^2 = 0 and the torsion
    // condition on ker/coker of beta in the trusted range.
    static DGAObject make(AObject obj, std::vector<std::map<int, SparseMatrix>> d_nub,
                          std::map<int, SparseMatrix> d_vertex);
    static DGAObject make_plain(AObject obj) { return make(std::move(obj), {}, {}); }
};

struct AMorphism {
    std::vector<std::map<int, SparseMatrix>> theta;  // [h]: degree -> A.nub^h_n -> B.nub^h_n
    std::map<int, SparseMatrix> phi;                 // degree b -> V^A_b -> V^B_b

    SparseMatrix theta_at(const DGAObject& a, const DGAObject& b, int h, int n) const;
    SparseMatrix phi_at(const DGAObject& a, const DGAObject& b, int n) const;
};

// Commuting square and O_F-linearity checks (degree-0 chain maps).
void check_a_morphism(const DGAObject& a, const DGAObject& b, const AMorphism& f);

// --- standard objects -----------------------------------------------------

// Sigma^s I(H_h): one-dimensional in degrees s, s+2, s+4, ... (labels S<s>I)
DGAObject make_susp_injective(const OFContext& ctx, int h, int s);
// Sigma^s I = sum over all h
DGAObject make_susp_injective_sum(const OFContext& ctx, int s);
// L_H = (Sigma Q(H) -> 0)
DGAObject make_l_h(const OFContext& ctx, int h);
// L_T = (O_F -> t)
DGAObject make_l_t(const OFContext& ctx);
// (t -> t), vertex Q[0]
DGAObject make_t_object(const OFContext& ctx);

struct StandardObjects {
    std::vector<DGAObject> injective_h;  // I(H_h) as (I(H) -> 0)
    DGAObject injective_sum;             // (I -> 0)
    std::vector<DGAObject> l_h;
    DGAObject l_t;
    DGAObject t_object;
};
StandardObjects build_standard_objects(const OFContext& ctx);

// Acyclic path object x ~ Sigma^{-1}x with d(a,b) = (da, a - d b); the
// projection to x is a degreewise split epimorphism.
DGAObject path_object(const DGAObject& x);
AMorphism path_projection(const DGAObject& x);

DGAObject shift_dga(const DGAObject& x, int s);

// Degreewise pullback of f: A -> Z and g: B -> Z; g must be degreewise
// surjective. Returns the object plus the two projections.
struct PullbackDGA {
    DGAObject object;
    AMorphism to_a;
    AMorphism to_b;
};
PullbackDGA pullback_dga(const DGAObject& a, const DGAObject& b, const DGAObject& z,
                         const AMorphism& f, const AMorphism& g);

// The two fibrant models: I_H = (Sigma I(H) x| Sigma^2 I(H) -> 0) and
// I_T = (t x| Sigma I -> t), both built by pullback, with the inclusions
// from L_H and L_T.
struct BasicCellModel {
    DGAObject object;
    AMorphism inclusion;  // from L_H (resp. L_T)
};
BasicCellModel make_fibrant_i_h(const OFContext& ctx, int h);
BasicCellModel make_fibrant_i_t(const OFContext& ctx);

// Quasi-isomorphism verdict for the canonical inclusion over the trusted
// range (the nub of a vertex-free object carries the homology).
QuasiIsoReport verify_fibrant_replacement(const DGAObject& l, const DGAObject& i,
                                          const AMorphism& incl);

// Complex of underlying-graded morphisms of degree n with
// d f = d_B f + (-1)^{n+1} f d_A; basis morphisms are retained so that the
// endomorphism category can compose them.
struct GradedMorphism {
    int shift = 0;
    std::vector<std::map<int, SparseMatrix>> theta;  // [h]: m -> A^h_m -> B^h_{m+shift}
    std::map<int, SparseMatrix> phi;                 // b -> V^A_b -> V^B_{b+shift}
};

struct HomComplexDGA {
    Complex complex;
    std::map<int, std::vector<GradedMorphism>> morphisms;  // per degree, basis order
};

HomComplexDGA hom_complex_dga(const DGAObject& a, const DGAObject& b);

// The full Ch_Q-subcategory on the given objects; this is the engine's
// computed endomorphism category.
struct EndoCategoryResult {
    DGCategory cat;
    std::map<PairKey, HomComplexDGA> homs;
    std::vector<DGAObject> objects;  // in tag order
};
EndoCategoryResult endomorphism_category(const OFContext& ctx,
                                         const std::vector<ObjectTag>& tags,
                                         const std::vector<DGAObject>& objects);

// Homology of the nub complex of a vertex-free object (per subgroup piece).
HomologyData nub_homology(const DGAObject& x, int h, int n);

}  // namespace dgcat
