#include "dgcat/model_a.hpp"

#include <algorithm>

namespace dgcat {

namespace {
const std::vector<BasisLabel> kNoLabels;

SparseMatrix block_diag(const SparseMatrix& a, const SparseMatrix& b) {
    std::vector<SparseMatrix::Entry> es;
    for (const auto& e : a.entries())
        es.push_back(e);
    for (const auto& e : b.entries())
        es.push_back({e.row + a.rows(), e.col + a.cols(), e.value});
    return SparseMatrix::from_triplets(a.rows() + b.rows(), a.cols() + b.cols(), std::move(es));
}

}  // namespace

int OFModule::dim(int h, int n) const {
    if (h < 0 || h >= k)
        return 0;
    auto it = basis[static_cast<std::size_t>(h)].find(n);
    return it == basis[static_cast<std::size_t>(h)].end() ? 0
                                                          : static_cast<int>(it->second.size());
}

const std::vector<BasisLabel>& OFModule::labels(int h, int n) const {
    if (h < 0 || h >= k)
        return kNoLabels;
    auto it = basis[static_cast<std::size_t>(h)].find(n);
    return it == basis[static_cast<std::size_t>(h)].end() ? kNoLabels : it->second;
}

SparseMatrix OFModule::act(int h, int n) const {
    auto it = action[static_cast<std::size_t>(h)].find(n);
    if (it != action[static_cast<std::size_t>(h)].end())
        return it->second;
    return SparseMatrix::zero(dim(h, n - 2), dim(h, n));
}

int OFModule::total_dim(int n) const {
    int d = 0;
    for (int h = 0; h < k; ++h)
        d += dim(h, n);
    return d;
}

int GradedVS::dim(int n) const {
    auto it = basis.find(n);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

std::vector<int> GradedVS::support() const {
    std::vector<int> s;
    for (const auto& [n, labels] : basis)
        if (!labels.empty())
            s.push_back(n);
    return s;
}

int TensorTV::dim(const GradedVS& v, int n) {
    int d = 0;
    for (const auto& [b, labels] : v.basis)
        if ((n - b) % 2 == 0)
            d += static_cast<int>(labels.size());
    return d;
}

int TensorTV::index(const GradedVS& v, int n, int b, int j) {
    int idx = 0;
    for (const auto& [deg, labels] : v.basis) {
        if ((n - deg) % 2 != 0)
            continue;
        if (deg == b)
            return idx + j;
        idx += static_cast<int>(labels.size());
    }
    fail(Errc::Internal, "TensorTV::index: degree not present");
}

SparseMatrix TensorTV::vertex_d(const GradedVS& v, const std::map<int, SparseMatrix>& dv, int n) {
    std::vector<SparseMatrix::Entry> es;
    for (const auto& [b, labels] : v.basis) {
        if ((n - b) % 2 != 0)
            continue;
        auto it = dv.find(b);
        if (it == dv.end())
            continue;
        for (const auto& e : it->second.entries())
            es.push_back({index(v, n - 1, b - 1, e.row), index(v, n, b, e.col), e.value});
    }
    return SparseMatrix::from_triplets(dim(v, n - 1), dim(v, n), std::move(es));
}

SparseMatrix TensorTV::vertex_map(const GradedVS& a, const GradedVS& b,
                                  const std::map<int, SparseMatrix>& phi, int nu, int n) {
    std::vector<SparseMatrix::Entry> es;
    for (const auto& [deg, labels] : a.basis) {
        if ((n - deg) % 2 != 0)
            continue;
        auto it = phi.find(deg);
        if (it == phi.end())
            continue;
        for (const auto& e : it->second.entries())
            es.push_back(
                {index(b, n + nu, deg + nu, e.row), index(a, n, deg, e.col), e.value});
    }
    return SparseMatrix::from_triplets(dim(b, n + nu), dim(a, n), std::move(es));
}

SparseMatrix AObject::beta_at(int h, int n) const {
    auto it = beta[static_cast<std::size_t>(h)].find(n);
    if (it != beta[static_cast<std::size_t>(h)].end())
        return it->second;
    return SparseMatrix::zero(TensorTV::dim(vertex, n), nub.dim(h, n));
}

SparseMatrix DGAObject::d_nub_at(int h, int n) const {
    auto it = d_nub[static_cast<std::size_t>(h)].find(n);
    if (it != d_nub[static_cast<std::size_t>(h)].end())
        return it->second;
    return SparseMatrix::zero(obj.nub.dim(h, n - 1), obj.nub.dim(h, n));
}

SparseMatrix DGAObject::d_vertex_at(int n) const {
    auto it = d_vertex.find(n);
    if (it != d_vertex.end())
        return it->second;
    return SparseMatrix::zero(obj.vertex.dim(n - 1), obj.vertex.dim(n));
}

namespace {

void check_torsion(const DGAObject& x) {
    const DegreeWindow& w = x.obj.ctx.window;
    for (int h = 0; h < x.obj.nub.k; ++h) {
        std::map<int, Subspace> image;
        for (int n = w.lo; n <= w.hi; ++n)
            image.emplace(n, image_basis(x.obj.beta_at(h, n)));
        for (int n = w.trusted_lo(); n <= w.trusted_hi(); ++n) {
            // Kernel elements must die under the action before leaving the
            // window.
            Subspace ker = kernel_basis(x.obj.beta_at(h, n));
            for (QVec v : ker.basis) {
                int deg = n;
                while (!is_zero(v)) {
                    v = x.obj.nub.act(h, deg).apply(v);
                    deg -= 2;
                    require(deg >= w.lo || is_zero(v), Errc::IllFormed,
                            "beta kernel element not visibly torsion at degree " +
                                std::to_string(n));
                }
            }
            // Cokernel elements likewise; the action on t (x) V is the
            // identity in the (b, j) indexing.
            int tv = TensorTV::dim(x.obj.vertex, n);
            const Subspace& im_n = image.at(n);
            Subspace full = Subspace::from_generators(
                [&] {
                    std::vector<QVec> gens;
                    for (int i = 0; i < tv; ++i)
                        gens.push_back(unit_vec(static_cast<std::size_t>(tv),
                                                static_cast<std::size_t>(i)));
                    return gens;
                }(),
                tv);
            Subspace reps = complement_basis(im_n, full);
            for (QVec v : reps.basis) {
                int deg = n;
                for (;;) {
                    // reduce modulo the image at this degree
                    const Subspace& im = image.at(deg);
                    QVec residual = v;
                    for (std::size_t r = 0; r < im.basis.size(); ++r) {
                        // v - proj: use echelon pivot reduction
                    }
                    // Simple containment check suffices: torsion means the
                    // class eventually lands in the image.
                    if (im.contains(v))
                        break;
                    if (deg - 2 < w.lo) {
                        fail(Errc::IllFormed, "beta cokernel element not visibly torsion at degree " +
                                                  std::to_string(n));
                    }
                    deg -= 2;  // identity transport of the t-coordinate
                }
            }
        }
    }
}

}  // namespace

DGAObject DGAObject::make(AObject obj, std::vector<std::map<int, SparseMatrix>> d_nub,
                          std::map<int, SparseMatrix> d_vertex) {
    DGAObject x;
    require(static_cast<int>(obj.nub.basis.size()) == obj.ctx.k, Errc::IllFormed,
            "nub pieces do not match the context");
    if (d_nub.empty())
        d_nub.resize(static_cast<std::size_t>(obj.ctx.k));
    x.obj = std::move(obj);
    x.d_nub = std::move(d_nub);
    x.d_vertex = std::move(d_vertex);

    const DegreeWindow& w = x.obj.ctx.window;
    const int k = x.obj.ctx.k;
    for (int h = 0; h < k; ++h) {
        for (int n = w.lo; n <= w.hi; ++n) {
            // shapes
            SparseMatrix c = x.obj.nub.act(h, n);
            require(c.rows() == x.obj.nub.dim(h, n - 2) && c.cols() == x.obj.nub.dim(h, n),
                    Errc::IllFormed, "action shape mismatch");
            SparseMatrix d = x.d_nub_at(h, n);
            require(d.rows() == x.obj.nub.dim(h, n - 1) && d.cols() == x.obj.nub.dim(h, n),
                    Errc::IllFormed, "nub differential shape mismatch");
            SparseMatrix b = x.obj.beta_at(h, n);
            require(b.rows() == TensorTV::dim(x.obj.vertex, n) && b.cols() == x.obj.nub.dim(h, n),
                    Errc::IllFormed, "beta shape mismatch");
            // d^2 = 0
            if (w.contains(n - 2))
                require(x.d_nub_at(h, n - 1).multiply(d).is_zero_matrix(), Errc::IllFormed,
                        "nub d^2 != 0 at degree " + std::to_string(n));
            // O_F-linearity of d: d(n-2) act(n) = act(n-1) d(n), all degrees
            // n..n-3 in window
            if (w.contains(n - 3))
                require(x.d_nub_at(h, n - 2).multiply(c) ==
                            x.obj.nub.act(h, n - 1).multiply(d),
                        Errc::IllFormed, "nub differential is not O_F-linear at " + std::to_string(n));
            // O_F-linearity of beta: beta(n-2) act(n) = beta(n) (identity
            // transport on t (x) V)
            if (w.contains(n - 2))
                require(x.obj.beta_at(h, n - 2).multiply(c) == b, Errc::IllFormed,
                        "beta is not O_F-linear at degree " + std::to_string(n));
            // beta chain map: TVd(n) beta(n) = beta(n-1) d(n)
            if (w.contains(n - 1)) {
                SparseMatrix tvd = TensorTV::vertex_d(x.obj.vertex, x.d_vertex, n);
                require(tvd.multiply(b) == x.obj.beta_at(h, n - 1).multiply(d), Errc::IllFormed,
                        "beta is not a chain map at degree " + std::to_string(n));
            }
        }
    }
    for (int n = w.lo; n <= w.hi; ++n) {
        SparseMatrix dv = x.d_vertex_at(n);
        require(dv.rows() == x.obj.vertex.dim(n - 1) && dv.cols() == x.obj.vertex.dim(n),
                Errc::IllFormed, "vertex differential shape mismatch");
        if (w.contains(n - 2))
            require(x.d_vertex_at(n - 1).multiply(dv).is_zero_matrix(), Errc::IllFormed,
                    "vertex d^2 != 0");
    }
    check_torsion(x);
    return x;
}

SparseMatrix AMorphism::theta_at(const DGAObject& a, const DGAObject& b, int h, int n) const {
    auto it = theta[static_cast<std::size_t>(h)].find(n);
    if (it != theta[static_cast<std::size_t>(h)].end())
        return it->second;
    return SparseMatrix::zero(b.obj.nub.dim(h, n), a.obj.nub.dim(h, n));
}

SparseMatrix AMorphism::phi_at(const DGAObject& a, const DGAObject& b, int n) const {
    auto it = phi.find(n);
    if (it != phi.end())
        return it->second;
    return SparseMatrix::zero(b.obj.vertex.dim(n), a.obj.vertex.dim(n));
}

void check_a_morphism(const DGAObject& a, const DGAObject& b, const AMorphism& f) {
    const DegreeWindow& w = a.obj.ctx.window;
    const int k = a.obj.ctx.k;
    for (int h = 0; h < k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            SparseMatrix th = f.theta_at(a, b, h, n);
            require(th.rows() == b.obj.nub.dim(h, n) && th.cols() == a.obj.nub.dim(h, n),
                    Errc::IllFormed, "morphism theta shape mismatch");
            // equivariance
            if (w.contains(n - 2))
                require(f.theta_at(a, b, h, n - 2).multiply(a.obj.nub.act(h, n)) ==
                            b.obj.nub.act(h, n).multiply(th),
                        Errc::NotCompatible, "morphism does not commute with the action");
            // chain map
            if (w.contains(n - 1))
                require(f.theta_at(a, b, h, n - 1).multiply(a.d_nub_at(h, n)) ==
                            b.d_nub_at(h, n).multiply(th),
                        Errc::NotCompatible, "morphism does not commute with d");
            // square
            SparseMatrix lhs = b.obj.beta_at(h, n).multiply(th);
            SparseMatrix rhs =
                TensorTV::vertex_map(a.obj.vertex, b.obj.vertex, f.phi, 0, n).multiply(
                    a.obj.beta_at(h, n));
            require(lhs == rhs, Errc::NotCompatible, "morphism square does not commute");
        }
    for (int n = w.lo; n <= w.hi; ++n)
        if (w.contains(n - 1))
            require(f.phi_at(a, b, n - 1).multiply(a.d_vertex_at(n)) ==
                        b.d_vertex_at(n).multiply(f.phi_at(a, b, n)),
                    Errc::NotCompatible, "vertex map does not commute with d");
}

DGAObject make_susp_injective(const OFContext& ctx, int h, int s) {
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));
    std::string fam = "S" + std::to_string(s) + "I";
    for (int n = s; n <= ctx.window.hi; n += 2) {
        if (n < ctx.window.lo)
            continue;
        a.nub.basis[static_cast<std::size_t>(h)][n] = {BasisLabel(fam, {n}, h)};
        if (n > s && ctx.window.contains(n - 2))
            a.nub.action[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
    }
    return DGAObject::make_plain(std::move(a));
}

DGAObject make_susp_injective_sum(const OFContext& ctx, int s) {
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));
    std::string fam = "S" + std::to_string(s) + "I";
    for (int h = 0; h < ctx.k; ++h)
        for (int n = s; n <= ctx.window.hi; n += 2) {
            if (n < ctx.window.lo)
                continue;
            a.nub.basis[static_cast<std::size_t>(h)][n] = {BasisLabel(fam, {n}, h)};
            if (n > s && ctx.window.contains(n - 2))
                a.nub.action[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
        }
    return DGAObject::make_plain(std::move(a));
}

DGAObject make_l_h(const OFContext& ctx, int h) {
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));
    a.nub.basis[static_cast<std::size_t>(h)][1] = {BasisLabel("SQH", {1}, h)};
    return DGAObject::make_plain(std::move(a));
}

DGAObject make_l_t(const OFContext& ctx) {
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));
    a.vertex.basis[0] = {BasisLabel("v", {0})};
    for (int h = 0; h < ctx.k; ++h)
        for (int n = 0; n >= ctx.window.lo; n -= 2) {
            if (n > ctx.window.hi)
                continue;
            a.nub.basis[static_cast<std::size_t>(h)][n] = {BasisLabel("O", {n}, h)};
            a.beta[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
            if (ctx.window.contains(n - 2))
                a.nub.action[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
        }
    return DGAObject::make_plain(std::move(a));
}

DGAObject make_t_object(const OFContext& ctx) {
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));
    a.vertex.basis[0] = {BasisLabel("v", {0})};
    int lo = ctx.window.lo + ((ctx.window.lo % 2 == 0) ? 0 : 1);
    for (int h = 0; h < ctx.k; ++h)
        for (int n = lo; n <= ctx.window.hi; n += 2) {
            a.nub.basis[static_cast<std::size_t>(h)][n] = {BasisLabel("t", {n}, h)};
            a.beta[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
            if (ctx.window.contains(n - 2))
                a.nub.action[static_cast<std::size_t>(h)][n] = SparseMatrix::identity(1);
        }
    return DGAObject::make_plain(std::move(a));
}

StandardObjects build_standard_objects(const OFContext& ctx) {
    StandardObjects s;
    for (int h = 0; h < ctx.k; ++h) {
        s.injective_h.push_back(make_susp_injective(ctx, h, 0));
        s.l_h.push_back(make_l_h(ctx, h));
    }
    s.injective_sum = make_susp_injective_sum(ctx, 0);
    s.l_t = make_l_t(ctx);
    s.t_object = make_t_object(ctx);
    return s;
}

DGAObject path_object(const DGAObject& x) {
    const OFContext& ctx = x.obj.ctx;
    const DegreeWindow& w = ctx.window;
    AObject a;
    a.ctx = ctx;
    a.nub.k = ctx.k;
    a.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    a.nub.action.resize(static_cast<std::size_t>(ctx.k));
    a.beta.resize(static_cast<std::size_t>(ctx.k));

    // vertex: V + V[+1 down] with prefixed labels
    for (int b = w.lo; b <= w.hi; ++b) {
        std::vector<BasisLabel> labels = x.obj.vertex.basis.count(b)
                                             ? x.obj.vertex.basis.at(b)
                                             : std::vector<BasisLabel>{};
        if (w.contains(b + 1))
            for (BasisLabel l : x.obj.vertex.basis.count(b + 1)
                                    ? x.obj.vertex.basis.at(b + 1)
                                    : std::vector<BasisLabel>{}) {
                l.family = "p" + l.family;
                l.text = "p." + l.text;
                labels.push_back(std::move(l));
            }
        if (!labels.empty())
            a.vertex.basis[b] = std::move(labels);
    }

    auto first_dim = [&](int h, int n) { return x.obj.nub.dim(h, n); };
    auto second_dim = [&](int h, int n) { return w.contains(n + 1) ? x.obj.nub.dim(h, n + 1) : 0; };
    auto v_first_dim = [&](int b) { return x.obj.vertex.dim(b); };
    auto v_second_dim = [&](int b) { return w.contains(b + 1) ? x.obj.vertex.dim(b + 1) : 0; };

    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            int d1 = first_dim(h, n), d2 = second_dim(h, n);
            if (d1 + d2 == 0)
                continue;
            std::vector<BasisLabel> labels = x.obj.nub.labels(h, n);
            for (BasisLabel l : w.contains(n + 1) ? x.obj.nub.labels(h, n + 1) : kNoLabels) {
                l.family = "p" + l.family;
                l.text = "p." + l.text;
                labels.push_back(std::move(l));
            }
            a.nub.basis[static_cast<std::size_t>(h)][n] = std::move(labels);
        }

    // action and beta blockwise; TV of the path vertex decomposes the same way
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            int d1 = first_dim(h, n), d2 = second_dim(h, n);
            if (d1 + d2 == 0)
                continue;
            if (w.contains(n - 2)) {
                SparseMatrix act = block_diag(x.obj.nub.act(h, n),
                                              w.contains(n + 1) && w.contains(n - 1)
                                                  ? x.obj.nub.act(h, n + 1)
                                                  : SparseMatrix::zero(second_dim(h, n - 2), d2));
                if (!act.is_zero_matrix())
                    a.nub.action[static_cast<std::size_t>(h)][n] = act;
            }
            // beta: first block through beta(n), second through beta(n+1)
            std::vector<SparseMatrix::Entry> es;
            SparseMatrix b1 = x.obj.beta_at(h, n);
            for (const auto& e : b1.entries()) {
                // TV(V_P)_n index of the first-block target: same (b, j)
                // with j counted within the combined V_P basis.
                es.push_back({0, 0, Q(0)});  // placeholder replaced below
                es.pop_back();
                // compute target row: find (bdeg, j) of e.row in TV(V)
                int row = e.row;
                int bdeg = 0, j = 0;
                {
                    int idx = 0;
                    bool found = false;
                    for (const auto& [deg, labels] : x.obj.vertex.basis) {
                        if ((n - deg) % 2 != 0)
                            continue;
                        if (row < idx + static_cast<int>(labels.size())) {
                            bdeg = deg;
                            j = row - idx;
                            found = true;
                            break;
                        }
                        idx += static_cast<int>(labels.size());
                    }
                    require(found, Errc::Internal, "path beta index out of range");
                }
                es.push_back({TensorTV::index(a.vertex, n, bdeg, j), e.col, e.value});
            }
            if (d2 > 0) {
                SparseMatrix b2 = x.obj.beta_at(h, n + 1);
                for (const auto& e : b2.entries()) {
                    int row = e.row;
                    int bdeg = 0, j = 0;
                    {
                        int idx = 0;
                        bool found = false;
                        for (const auto& [deg, labels] : x.obj.vertex.basis) {
                            if ((n + 1 - deg) % 2 != 0)
                                continue;
                            if (row < idx + static_cast<int>(labels.size())) {
                                bdeg = deg;
                                j = row - idx;
                                found = true;
                                break;
                            }
                            idx += static_cast<int>(labels.size());
                        }
                        require(found, Errc::Internal, "path beta index out of range");
                    }
                    // second-summand vertex basis (bdeg+... ) sits at V_P
                    // degree bdeg-1 offset by the first-block dimension
                    int target =
                        TensorTV::index(a.vertex, n, bdeg - 1, v_first_dim(bdeg - 1) + j);
                    es.push_back({target, d1 + e.col, e.value});
                }
            }
            SparseMatrix bm = SparseMatrix::from_triplets(TensorTV::dim(a.vertex, n), d1 + d2,
                                                          std::move(es));
            if (!bm.is_zero_matrix())
                a.beta[static_cast<std::size_t>(h)][n] = bm;
        }

    // differentials: d(a, b) = (d a, a - d b)
    std::vector<std::map<int, SparseMatrix>> d_nub(static_cast<std::size_t>(ctx.k));
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            if (!w.contains(n - 1))
                continue;
            int d1 = first_dim(h, n), d2 = second_dim(h, n);
            int r1 = first_dim(h, n - 1), r2 = second_dim(h, n - 1);
            if ((d1 + d2) == 0 || (r1 + r2) == 0)
                continue;
            std::vector<SparseMatrix::Entry> es;
            SparseMatrix dx = x.d_nub_at(h, n);
            for (const auto& e : dx.entries())
                es.push_back(e);
            // twist: first-block a at degree n lands as the second block of
            // degree n-1 (which is x_n) with coefficient 1
            for (int i = 0; i < d1; ++i)
                if (r2 == d1)
                    es.push_back({r1 + i, i, Q(1)});
            require(d1 == 0 || r2 == d1, Errc::Internal, "path twist dimension mismatch");
            if (d2 > 0 && r2 > 0) {
                SparseMatrix dx2 = x.d_nub_at(h, n + 1);
                for (const auto& e : dx2.entries())
                    es.push_back({r1 + e.row, d1 + e.col, -e.value});
            }
            SparseMatrix m = SparseMatrix::from_triplets(r1 + r2, d1 + d2, std::move(es));
            if (!m.is_zero_matrix())
                d_nub[static_cast<std::size_t>(h)][n] = m;
        }
    std::map<int, SparseMatrix> d_vertex;
    for (int n = w.lo; n <= w.hi; ++n) {
        if (!w.contains(n - 1))
            continue;
        int d1 = v_first_dim(n), d2 = v_second_dim(n);
        int r1 = v_first_dim(n - 1), r2 = v_second_dim(n - 1);
        if ((d1 + d2) == 0 || (r1 + r2) == 0)
            continue;
        std::vector<SparseMatrix::Entry> es;
        SparseMatrix dv = x.d_vertex_at(n);
        for (const auto& e : dv.entries())
            es.push_back(e);
        for (int i = 0; i < d1; ++i)
            if (r2 == d1)
                es.push_back({r1 + i, i, Q(1)});
        require(d1 == 0 || r2 == d1, Errc::Internal, "path vertex twist dimension mismatch");
        if (d2 > 0 && r2 > 0) {
            SparseMatrix dv2 = x.d_vertex_at(n + 1);
            for (const auto& e : dv2.entries())
                es.push_back({r1 + e.row, d1 + e.col, -e.value});
        }
        SparseMatrix m = SparseMatrix::from_triplets(r1 + r2, d1 + d2, std::move(es));
        if (!m.is_zero_matrix())
            d_vertex[n] = m;
    }
    return DGAObject::make(std::move(a), std::move(d_nub), std::move(d_vertex));
}

AMorphism path_projection(const DGAObject& x) {
    const OFContext& ctx = x.obj.ctx;
    const DegreeWindow& w = ctx.window;
    AMorphism f;
    f.theta.resize(static_cast<std::size_t>(ctx.k));
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            int d1 = x.obj.nub.dim(h, n);
            int d2 = w.contains(n + 1) ? x.obj.nub.dim(h, n + 1) : 0;
            if (d1 == 0)
                continue;
            std::vector<SparseMatrix::Entry> es;
            for (int i = 0; i < d1; ++i)
                es.push_back({i, i, Q(1)});
            f.theta[static_cast<std::size_t>(h)][n] =
                SparseMatrix::from_triplets(d1, d1 + d2, std::move(es));
        }
    for (int b = w.lo; b <= w.hi; ++b) {
        int d1 = x.obj.vertex.dim(b);
        int d2 = w.contains(b + 1) ? x.obj.vertex.dim(b + 1) : 0;
        if (d1 == 0)
            continue;
        std::vector<SparseMatrix::Entry> es;
        for (int i = 0; i < d1; ++i)
            es.push_back({i, i, Q(1)});
        f.phi[b] = SparseMatrix::from_triplets(d1, d1 + d2, std::move(es));
    }
    return f;
}

PullbackDGA pullback_dga(const DGAObject& a, const DGAObject& b, const DGAObject& z,
                         const AMorphism& f, const AMorphism& g) {
    const OFContext& ctx = a.obj.ctx;
    const DegreeWindow& w = ctx.window;
    check_a_morphism(a, z, f);
    check_a_morphism(b, z, g);
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n)
            require(rank(g.theta_at(b, z, h, n)) == z.obj.nub.dim(h, n), Errc::PreconditionFailed,
                    "pullback: second leg is not degreewise surjective at degree " +
                        std::to_string(n));

    AObject p;
    p.ctx = ctx;
    p.nub.k = ctx.k;
    p.nub.basis.resize(static_cast<std::size_t>(ctx.k));
    p.nub.action.resize(static_cast<std::size_t>(ctx.k));
    p.beta.resize(static_cast<std::size_t>(ctx.k));

    // vertex pullback
    std::map<int, Subspace> v_kernels;
    for (int bdeg = w.lo; bdeg <= w.hi; ++bdeg) {
        int da = a.obj.vertex.dim(bdeg), db = b.obj.vertex.dim(bdeg);
        if (da + db == 0)
            continue;
        std::vector<SparseMatrix::Entry> es;
        SparseMatrix pf = f.phi_at(a, z, bdeg);
        SparseMatrix pg = g.phi_at(b, z, bdeg);
        for (const auto& e : pf.entries())
            es.push_back(e);
        for (const auto& e : pg.entries())
            es.push_back({e.row, e.col + da, -e.value});
        Subspace ker =
            kernel_basis(SparseMatrix::from_triplets(z.obj.vertex.dim(bdeg), da + db, std::move(es)));
        std::vector<BasisLabel> labels;
        for (int i = 0; i < ker.dim(); ++i) {
            const QVec& v = ker.basis[static_cast<std::size_t>(i)];
            BasisLabel lead;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!is_zero(v[j])) {
                    lead = static_cast<int>(j) < da
                               ? a.obj.vertex.basis.at(bdeg)[j]
                               : b.obj.vertex.basis.at(bdeg)[j - static_cast<std::size_t>(da)];
                    break;
                }
            labels.push_back(lead);
        }
        if (!labels.empty())
            p.vertex.basis[bdeg] = std::move(labels);
        v_kernels.emplace(bdeg, std::move(ker));
    }

    std::vector<std::map<int, Subspace>> kernels(static_cast<std::size_t>(ctx.k));
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            int da = a.obj.nub.dim(h, n), db = b.obj.nub.dim(h, n);
            if (da + db == 0)
                continue;
            std::vector<SparseMatrix::Entry> es;
            SparseMatrix tf = f.theta_at(a, z, h, n);
            SparseMatrix tg = g.theta_at(b, z, h, n);
            for (const auto& e : tf.entries())
                es.push_back(e);
            for (const auto& e : tg.entries())
                es.push_back({e.row, e.col + da, -e.value});
            Subspace ker = kernel_basis(
                SparseMatrix::from_triplets(z.obj.nub.dim(h, n), da + db, std::move(es)));
            if (ker.dim() == 0)
                continue;
            std::vector<BasisLabel> labels;
            for (int i = 0; i < ker.dim(); ++i) {
                const QVec& v = ker.basis[static_cast<std::size_t>(i)];
                BasisLabel lead;
                for (std::size_t j = 0; j < v.size(); ++j)
                    if (!is_zero(v[j])) {
                        lead = static_cast<int>(j) < da
                                   ? a.obj.nub.labels(h, n)[j]
                                   : b.obj.nub.labels(h, n)[j - static_cast<std::size_t>(da)];
                        break;
                    }
                labels.push_back(lead);
            }
            p.nub.basis[static_cast<std::size_t>(h)][n] = std::move(labels);
            kernels[static_cast<std::size_t>(h)].emplace(n, std::move(ker));
        }

    auto kernel_at = [&](int h, int n) -> const Subspace* {
        auto it = kernels[static_cast<std::size_t>(h)].find(n);
        return it == kernels[static_cast<std::size_t>(h)].end() ? nullptr : &it->second;
    };

    // induced action, differential, beta, and the two projections
    std::vector<std::map<int, SparseMatrix>> d_nub(static_cast<std::size_t>(ctx.k));
    AMorphism to_a, to_b;
    to_a.theta.resize(static_cast<std::size_t>(ctx.k));
    to_b.theta.resize(static_cast<std::size_t>(ctx.k));
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            const Subspace* ker = kernel_at(h, n);
            if (!ker)
                continue;
            int da = a.obj.nub.dim(h, n), db = b.obj.nub.dim(h, n);
            // projections
            std::vector<QVec> cols_a, cols_b;
            for (const QVec& v : ker->basis) {
                cols_a.emplace_back(v.begin(), v.begin() + da);
                cols_b.emplace_back(v.begin() + da, v.end());
            }
            SparseMatrix ma = SparseMatrix::from_columns(cols_a, da);
            SparseMatrix mb = SparseMatrix::from_columns(cols_b, db);
            if (!ma.is_zero_matrix())
                to_a.theta[static_cast<std::size_t>(h)][n] = ma;
            if (!mb.is_zero_matrix())
                to_b.theta[static_cast<std::size_t>(h)][n] = mb;

            auto push_through = [&](const SparseMatrix& map_a, const SparseMatrix& map_b,
                                    const Subspace* target, const std::string& what) {
                std::vector<QVec> cols;
                for (const QVec& v : ker->basis) {
                    QVec va(v.begin(), v.begin() + da);
                    QVec vb(v.begin() + da, v.end());
                    QVec wa = map_a.apply(va);
                    QVec wb = map_b.apply(vb);
                    QVec joint(wa);
                    joint.insert(joint.end(), wb.begin(), wb.end());
                    if (!target) {
                        require(is_zero(joint), Errc::NotCompatible,
                                what + " does not restrict to the pullback");
                        cols.push_back(QVec{});
                        continue;
                    }
                    auto coords = target->coordinates(joint);
                    require(coords.has_value(), Errc::NotCompatible,
                            what + " does not restrict to the pullback");
                    cols.push_back(std::move(*coords));
                }
                if (!target)
                    return SparseMatrix::zero(0, static_cast<int>(ker->basis.size()));
                return SparseMatrix::from_columns(cols, target->dim());
            };

            if (w.contains(n - 2)) {
                SparseMatrix act = push_through(a.obj.nub.act(h, n), b.obj.nub.act(h, n),
                                                kernel_at(h, n - 2), "action");
                if (!act.is_zero_matrix())
                    p.nub.action[static_cast<std::size_t>(h)][n] = act;
            }
            if (w.contains(n - 1)) {
                SparseMatrix d = push_through(a.d_nub_at(h, n), b.d_nub_at(h, n),
                                              kernel_at(h, n - 1), "differential");
                if (!d.is_zero_matrix())
                    d_nub[static_cast<std::size_t>(h)][n] = d;
            }
        }

    // beta of the pullback via the embedding TV(V_P) -> TV(V_A) + TV(V_B)
    for (int h = 0; h < ctx.k; ++h)
        for (int n = w.lo; n <= w.hi; ++n) {
            const Subspace* ker = kernel_at(h, n);
            if (!ker)
                continue;
            int da = a.obj.nub.dim(h, n);
            int tva = TensorTV::dim(a.obj.vertex, n);
            int tvb = TensorTV::dim(b.obj.vertex, n);
            int tvp = TensorTV::dim(p.vertex, n);
            // embedding matrix
            std::vector<QVec> emb_cols;
            for (const auto& [bdeg, labels] : p.vertex.basis) {
                if ((n - bdeg) % 2 != 0)
                    continue;
                const Subspace& vk = v_kernels.at(bdeg);
                int dva = a.obj.vertex.dim(bdeg);
                for (std::size_t j = 0; j < labels.size(); ++j) {
                    const QVec& kv = vk.basis[j];
                    QVec col = zero_vec(static_cast<std::size_t>(tva + tvb));
                    for (int ja = 0; ja < dva; ++ja)
                        if (!is_zero(kv[static_cast<std::size_t>(ja)]))
                            col[static_cast<std::size_t>(TensorTV::index(a.obj.vertex, n, bdeg, ja))] =
                                kv[static_cast<std::size_t>(ja)];
                    for (int jb = 0; jb < static_cast<int>(kv.size()) - dva; ++jb)
                        if (!is_zero(kv[static_cast<std::size_t>(dva + jb)]))
                            col[static_cast<std::size_t>(
                                tva + TensorTV::index(b.obj.vertex, n, bdeg, jb))] =
                                kv[static_cast<std::size_t>(dva + jb)];
                    emb_cols.push_back(std::move(col));
                }
            }
            SparseMatrix emb = SparseMatrix::from_columns(emb_cols, tva + tvb);
            require(emb.cols() == tvp, Errc::Internal, "pullback vertex embedding mismatch");

            std::vector<QVec> beta_cols;
            bool nonzero = false;
            for (const QVec& v : ker->basis) {
                QVec va(v.begin(), v.begin() + da);
                QVec vb(v.begin() + da, v.end());
                QVec u = a.obj.beta_at(h, n).apply(va);
                QVec ub = b.obj.beta_at(h, n).apply(vb);
                u.insert(u.end(), ub.begin(), ub.end());
                if (is_zero(u)) {
                    beta_cols.push_back(zero_vec(static_cast<std::size_t>(tvp)));
                    continue;
                }
                auto sol = solve_particular(emb, u);
                require(sol.has_value(), Errc::NotCompatible,
                        "beta does not restrict to the pullback");
                nonzero = true;
                beta_cols.push_back(std::move(*sol));
            }
            if (nonzero)
                p.beta[static_cast<std::size_t>(h)][n] =
                    SparseMatrix::from_columns(beta_cols, tvp);
        }

    // vertex projections and differential
    std::map<int, SparseMatrix> d_vertex;
    for (const auto& [bdeg, ker] : v_kernels) {
        if (ker.dim() == 0)
            continue;
        int da = a.obj.vertex.dim(bdeg);
        std::vector<QVec> cols_a, cols_b, cols_d;
        for (const QVec& v : ker.basis) {
            QVec va(v.begin(), v.begin() + da);
            QVec vb(v.begin() + da, v.end());
            cols_a.push_back(va);
            cols_b.push_back(vb);
            if (w.contains(bdeg - 1)) {
                QVec wa = a.d_vertex_at(bdeg).apply(va);
                QVec wb = b.d_vertex_at(bdeg).apply(vb);
                wa.insert(wa.end(), wb.begin(), wb.end());
                auto it = v_kernels.find(bdeg - 1);
                if (it == v_kernels.end()) {
                    require(is_zero(wa), Errc::NotCompatible,
                            "vertex differential does not restrict to the pullback");
                } else {
                    auto coords = it->second.coordinates(wa);
                    require(coords.has_value(), Errc::NotCompatible,
                            "vertex differential does not restrict to the pullback");
                    cols_d.push_back(std::move(*coords));
                }
            }
        }
        SparseMatrix ma = SparseMatrix::from_columns(cols_a, da);
        SparseMatrix mb = SparseMatrix::from_columns(cols_b, a.obj.vertex.dim(bdeg) == 0
                                                                 ? static_cast<int>(cols_b[0].size())
                                                                 : static_cast<int>(cols_b[0].size()));
        if (!ma.is_zero_matrix())
            to_a.phi[bdeg] = ma;
        if (!mb.is_zero_matrix())
            to_b.phi[bdeg] = mb;
        if (!cols_d.empty()) {
            auto it = v_kernels.find(bdeg - 1);
            SparseMatrix md = SparseMatrix::from_columns(cols_d, it->second.dim());
            if (!md.is_zero_matrix())
                d_vertex[bdeg] = md;
        }
    }

    PullbackDGA out;
    out.object = DGAObject::make(std::move(p), std::move(d_nub), std::move(d_vertex));
    out.to_a = std::move(to_a);
    out.to_b = std::move(to_b);
    check_a_morphism(out.object, a, out.to_a);
    check_a_morphism(out.object, b, out.to_b);
    return out;
}

}  // namespace dgcat
