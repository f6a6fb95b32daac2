#include "dgcat/complex.hpp"

#include <algorithm>

namespace dgcat {

namespace {
const std::vector<BasisLabel> kEmptyLabels;
}

std::string to_string(ObjectTag t) {
    if (t.is_circle())
        return "T";
    return "H" + std::to_string(t.id + 1);
}

ObjectTag parse_object_tag(const std::string& s) {
    if (s == "T")
        return ObjectTag::circle();
    require(s.size() >= 2 && s[0] == 'H', Errc::ConfigError, "bad object tag: " + s);
    int i = std::stoi(s.substr(1));
    require(i >= 1, Errc::ConfigError, "bad object tag index: " + s);
    return ObjectTag::finite(i - 1);
}

std::string default_label_text(const std::string& family, const std::vector<int>& indices,
                               int subgroup) {
    std::string s = family;
    if (!indices.empty()) {
        s += "_";
        for (std::size_t i = 0; i < indices.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(indices[i]);
        }
    }
    if (subgroup != kNoSubgroup)
        s += "^" + to_string(ObjectTag{subgroup});
    return s;
}

BasisLabel::BasisLabel(std::string fam, std::vector<int> idx, int sub)
    : family(std::move(fam)), indices(std::move(idx)), subgroup(sub) {
    text = default_label_text(family, indices, subgroup);
}

Complex Complex::make(DegreeWindow w, Basis basis, Diffs diffs) {
    Complex c;
    c.window_ = w;
    for (auto it = basis.begin(); it != basis.end();) {
        require(w.contains(it->first), Errc::OutOfWindow,
                "basis at degree " + std::to_string(it->first) + " outside window");
        if (it->second.empty())
            it = basis.erase(it);
        else
            ++it;
    }
    c.basis_ = std::move(basis);
    auto dim_at = [&](int n) {
        auto it = c.basis_.find(n);
        return it == c.basis_.end() ? 0 : static_cast<int>(it->second.size());
    };
    for (auto& [n, m] : diffs) {
        require(w.contains(n), Errc::OutOfWindow, "differential outside window");
        require(m.rows() == dim_at(n - 1) && m.cols() == dim_at(n), Errc::IllFormed,
                "differential shape mismatch at degree " + std::to_string(n));
        if (!m.is_zero_matrix())
            c.diffs_.emplace(n, m);
    }
    // d^2 = 0 inside the window.
    for (const auto& [n, m] : c.diffs_) {
        if (!w.contains(n - 2))
            continue;
        auto it = c.diffs_.find(n - 1);
        if (it == c.diffs_.end())
            continue;
        require(it->second.multiply(m).is_zero_matrix(), Errc::IllFormed,
                "d^2 != 0 at degree " + std::to_string(n));
    }
    return c;
}

Complex Complex::point(DegreeWindow w, int n, BasisLabel label) {
    Basis b;
    b[n] = {std::move(label)};
    return make(w, std::move(b), {});
}

Complex Complex::disc(DegreeWindow w, int n) {
    Basis b;
    b[n] = {BasisLabel("x", {n})};
    b[n - 1] = {BasisLabel("x", {n - 1})};
    Diffs d;
    d[n] = SparseMatrix::identity(1);
    return make(w, std::move(b), std::move(d));
}

int Complex::dim(int n) const {
    auto it = basis_.find(n);
    return it == basis_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<BasisLabel>& Complex::labels(int n) const {
    auto it = basis_.find(n);
    return it == basis_.end() ? kEmptyLabels : it->second;
}

SparseMatrix Complex::d(int n) const {
    auto it = diffs_.find(n);
    if (it != diffs_.end())
        return it->second;
    return SparseMatrix::zero(dim(n - 1), dim(n));
}

std::vector<int> Complex::support() const {
    std::vector<int> s;
    for (const auto& [n, labels] : basis_)
        s.push_back(n);
    return s;
}

bool Complex::is_cycle(int n, const QVec& v) const {
    require(static_cast<int>(v.size()) == dim(n), Errc::Internal, "is_cycle: size mismatch");
    return dgcat::is_zero(d(n).apply(v));
}

SparseMatrix chain_map_component(const Complex& src, const Complex& dst, const ChainMapData& f,
                                 int n, int shift) {
    auto it = f.find(n);
    if (it != f.end())
        return it->second;
    return SparseMatrix::zero(dst.dim(n + shift), src.dim(n));
}

void check_chain_map(const Complex& src, const Complex& dst, const ChainMapData& f, int shift) {
    for (const auto& [n, m] : f)
        require(m.rows() == dst.dim(n + shift) && m.cols() == src.dim(n), Errc::IllFormed,
                "chain map component shape mismatch at degree " + std::to_string(n));
    for (int n = src.window().lo; n <= src.window().hi; ++n) {
        if (!dst.window().contains(n + shift - 1) || !src.window().contains(n - 1))
            continue;
        SparseMatrix lhs = dst.d(n + shift).multiply(chain_map_component(src, dst, f, n, shift));
        SparseMatrix rhs = chain_map_component(src, dst, f, n - 1, shift).multiply(src.d(n));
        require(lhs == rhs, Errc::IllFormed,
                "map does not commute with differentials at degree " + std::to_string(n));
    }
}

ChainMapData identity_chain_map(const Complex& c) {
    ChainMapData f;
    for (int n : c.support())
        f[n] = SparseMatrix::identity(c.dim(n));
    return f;
}

ChainMapData compose_chain_maps(const Complex& a, const Complex& b, const Complex& c,
                                const ChainMapData& f, const ChainMapData& g) {
    // g after f
    ChainMapData h;
    for (int n : a.support()) {
        SparseMatrix m = chain_map_component(b, c, g, n, 0).multiply(chain_map_component(a, b, f, n, 0));
        if (!m.is_zero_matrix())
            h[n] = m;
    }
    return h;
}

HomologyData::Reduction HomologyData::reduce(const QVec& cycle) const {
    require(is_zero(d_n.apply(cycle)), Errc::NotACycle, "reduce: input is not a cycle");
    int r = rep_matrix.cols();
    int w = boundary_matrix.cols();
    // Solve [R | D] (x, u) = cycle; the x part is unique.
    std::vector<SparseMatrix::Entry> es;
    for (const auto& e : rep_matrix.entries())
        es.push_back(e);
    for (const auto& e : boundary_matrix.entries())
        es.push_back({e.row, e.col + r, e.value});
    SparseMatrix joint = SparseMatrix::from_triplets(rep_matrix.rows(), r + w, std::move(es));
    auto sol = solve_particular(joint, cycle);
    require(sol.has_value(), Errc::Internal, "reduce: cycle outside cycles+boundaries");
    Reduction red;
    red.coordinates.assign(sol->begin(), sol->begin() + r);
    red.witness.assign(sol->begin() + r, sol->end());
    return red;
}

HomologyData homology(const Complex& c, int n) {
    const DegreeWindow& w = c.window();
    require(w.contains(n) && w.contains(n - 1) && w.contains(n + 1), Errc::OutOfWindow,
            "homology needs degrees n-1, n, n+1 inside the window");
    HomologyData h;
    h.degree = n;
    h.d_n = c.d(n);
    h.boundary_matrix = c.d(n + 1);
    Subspace cycles = kernel_basis(h.d_n);
    Subspace boundaries = image_basis(h.boundary_matrix);
    Subspace reps = complement_basis(boundaries, cycles);
    h.dimension = reps.dim();
    h.representatives = reps.basis;
    h.rep_matrix = SparseMatrix::from_columns(reps.basis, c.dim(n));
    return h;
}

Complex shift(const Complex& c, int k) {
    Complex::Basis basis;
    Complex::Diffs diffs;
    for (int n : c.support()) {
        require(c.window().contains(n + k), Errc::OutOfWindow,
                "shift pushes content outside the window");
        basis[n + k] = c.labels(n);
        SparseMatrix d = c.d(n);
        if (!d.is_zero_matrix() && c.window().contains(n + k - 1))
            diffs[n + k] = (k % 2 == 0) ? d : d.scaled(Q(-1));
    }
    return Complex::make(c.window(), std::move(basis), std::move(diffs));
}

Complex cone(const Complex& src, const Complex& dst, const ChainMapData& f) {
    require(src.window() == dst.window(), Errc::IllFormed, "cone: windows differ");
    check_chain_map(src, dst, f);
    const DegreeWindow& w = src.window();
    Complex::Basis basis;
    Complex::Diffs diffs;
    for (int n = w.lo; n <= w.hi; ++n) {
        int a = w.contains(n - 1) ? src.dim(n - 1) : 0;
        int b = dst.dim(n);
        if (a + b == 0)
            continue;
        std::vector<BasisLabel> labels;
        for (int i = 0; i < a; ++i) {
            BasisLabel l = src.labels(n - 1)[static_cast<std::size_t>(i)];
            l.family = "c." + l.family;
            l.text = "c." + l.text;
            labels.push_back(std::move(l));
        }
        for (int i = 0; i < b; ++i)
            labels.push_back(dst.labels(n)[static_cast<std::size_t>(i)]);
        basis[n] = std::move(labels);
    }
    auto dim_at = [&](int n) {
        auto it = basis.find(n);
        return it == basis.end() ? 0 : static_cast<int>(it->second.size());
    };
    for (int n = w.lo; n <= w.hi; ++n) {
        if (!w.contains(n - 1) || dim_at(n) == 0)
            continue;
        int a = w.contains(n - 1) ? src.dim(n - 1) : 0;
        int a_out = w.contains(n - 2) ? src.dim(n - 2) : 0;
        std::vector<SparseMatrix::Entry> es;
        const SparseMatrix d_src = src.d(n - 1);
        const SparseMatrix f_comp = chain_map_component(src, dst, f, n - 1, 0);
        const SparseMatrix d_dst = dst.d(n);
        if (a > 0 && a_out > 0)
            for (const auto& e : d_src.entries())
                es.push_back({e.row, e.col, -e.value});
        if (a > 0)
            for (const auto& e : f_comp.entries())
                es.push_back({e.row + a_out, e.col, e.value});
        for (const auto& e : d_dst.entries())
            es.push_back({e.row + a_out, e.col + a, e.value});
        SparseMatrix m = SparseMatrix::from_triplets(dim_at(n - 1), dim_at(n), std::move(es));
        if (!m.is_zero_matrix())
            diffs[n] = m;
    }
    return Complex::make(w, std::move(basis), std::move(diffs));
}

QuasiIsoReport is_quasi_iso(const Complex& src, const Complex& dst, const ChainMapData& f, int lo,
                            int hi) {
    require(src.window().trusted(lo) && src.window().trusted(hi) && dst.window().trusted(lo) &&
                dst.window().trusted(hi),
            Errc::OutOfWindow, "quasi-iso range must lie in the trusted range");
    QuasiIsoReport rep;
    for (int n = lo; n <= hi; ++n) {
        HomologyData hs = homology(src, n);
        HomologyData hd = homology(dst, n);
        SparseMatrix comp = chain_map_component(src, dst, f, n, 0);
        int rk = 0;
        std::vector<QVec> images;
        for (const QVec& r : hs.representatives)
            images.push_back(hd.reduce(comp.apply(r)).coordinates);
        rk = rref(images, hd.dimension).rank();
        bool iso = (hs.dimension == hd.dimension) && rk == hd.dimension;
        rep.degrees.push_back({n, hs.dimension, hd.dimension, rk, iso});
        rep.overall = rep.overall && iso;
    }
    return rep;
}

Complex direct_sum(const Complex& a, const Complex& b) {
    require(a.window() == b.window(), Errc::IllFormed, "direct_sum: windows differ");
    Complex::Basis basis;
    Complex::Diffs diffs;
    const DegreeWindow& w = a.window();
    for (int n = w.lo; n <= w.hi; ++n) {
        int da = a.dim(n), db = b.dim(n);
        if (da + db == 0)
            continue;
        std::vector<BasisLabel> labels = a.labels(n);
        for (BasisLabel l : b.labels(n)) {
            l.family = "r." + l.family;
            l.text = "r." + l.text;
            labels.push_back(std::move(l));
        }
        basis[n] = std::move(labels);
    }
    for (int n = w.lo; n <= w.hi; ++n) {
        if (!w.contains(n - 1))
            continue;
        std::vector<SparseMatrix::Entry> es;
        const SparseMatrix da = a.d(n);
        const SparseMatrix db = b.d(n);
        for (const auto& e : da.entries())
            es.push_back(e);
        for (const auto& e : db.entries())
            es.push_back({e.row + a.dim(n - 1), e.col + a.dim(n), e.value});
        if (es.empty())
            continue;
        auto it = basis.find(n);
        int cols = it == basis.end() ? 0 : static_cast<int>(it->second.size());
        auto jt = basis.find(n - 1);
        int rows = jt == basis.end() ? 0 : static_cast<int>(jt->second.size());
        diffs[n] = SparseMatrix::from_triplets(rows, cols, std::move(es));
    }
    return Complex::make(w, std::move(basis), std::move(diffs));
}

}  // namespace dgcat
