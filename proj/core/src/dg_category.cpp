#include "dgcat/dg_category.hpp"

#include <algorithm>

namespace dgcat {

namespace {

std::string tuple_desc(PairKey pair, int p, int i) {
    return to_string(pair) + " deg " + std::to_string(p) + " #" + std::to_string(i);
}

}  // namespace

const Complex& DGCategory::hom_at(PairKey key) const {
    auto it = hom.find(key);
    require(it != hom.end(), Errc::Internal, "missing hom pair " + to_string(key));
    return it->second;
}

QVec DGCategory::compose(ObjectTag src, ObjectTag mid, ObjectTag dst, int p, int q, const QVec& b,
                         const QVec& a) const {
    const Complex& target = hom_at({src, dst});
    if (!window.contains(p + q))
        return {};
    QVec out = zero_vec(static_cast<std::size_t>(target.dim(p + q)));
    for (int bi = 0; bi < static_cast<int>(b.size()); ++bi) {
        if (is_zero(b[static_cast<std::size_t>(bi)]))
            continue;
        for (int ai = 0; ai < static_cast<int>(a.size()); ++ai) {
            if (is_zero(a[static_cast<std::size_t>(ai)]))
                continue;
            const Q c = b[static_cast<std::size_t>(bi)] * a[static_cast<std::size_t>(ai)];
            for (const auto& [ti, tv] : basis_compose(*this, src, mid, dst, p, q, bi, ai))
                out[static_cast<std::size_t>(ti)] += c * tv;
        }
    }
    return out;
}

ConsistencyReport check_consistency(const DGCategory& cat, int sum_lo, int sum_hi) {
    ConsistencyReport rep;
    auto violation = [&](const std::string& s) {
        if (rep.violations.size() < 50)
            rep.violations.push_back(s);
        else if (rep.violations.size() == 50)
            rep.violations.push_back("... further violations suppressed");
    };

    // d^2 = 0 on every hom complex.
    for (const auto& [pair, cx] : cat.hom) {
        for (int n : cx.support()) {
            if (!cat.window.contains(n - 2))
                continue;
            ++rep.checks;
            if (!cx.d(n - 1).multiply(cx.d(n)).is_zero_matrix())
                violation("d^2 != 0 on " + to_string(pair) + " at degree " + std::to_string(n));
        }
    }

    auto unit_at = [&](ObjectTag g) -> const QVec& {
        auto it = cat.identities.find(g);
        require(it != cat.identities.end(), Errc::Internal, "missing identity for " + to_string(g));
        return it->second;
    };

    // Unit laws and identity cycles.
    for (ObjectTag g : cat.objects) {
        const QVec& e = unit_at(g);
        const Complex& end = cat.hom_at({g, g});
        ++rep.checks;
        if (!end.is_cycle(0, e))
            violation("identity of " + to_string(g) + " is not a cycle");
        for (ObjectTag h : cat.objects) {
            const Complex& cx = cat.hom_at({g, h});
            for (int n : cx.support()) {
                if (n < sum_lo || n > sum_hi)
                    continue;
                for (int i = 0; i < cx.dim(n); ++i) {
                    QVec v = unit_vec(static_cast<std::size_t>(cx.dim(n)), static_cast<std::size_t>(i));
                    ++rep.checks;
                    if (cat.compose(g, g, h, n, 0, v, e) != v)
                        violation("right unit law fails at " + tuple_desc({g, h}, n, i));
                    ++rep.checks;
                    if (cat.compose(g, h, h, 0, n, unit_at(h), v) != v)
                        violation("left unit law fails at " + tuple_desc({g, h}, n, i));
                }
            }
        }
    }

    // Leibniz rule on basis pairs.
    for (ObjectTag g0 : cat.objects)
        for (ObjectTag g1 : cat.objects)
            for (ObjectTag g2 : cat.objects) {
                const Complex& ca = cat.hom_at({g0, g1});
                const Complex& cb = cat.hom_at({g1, g2});
                const Complex& ct = cat.hom_at({g0, g2});
                for (int q : ca.support())
                    for (int p : cb.support()) {
                        int s = p + q;
                        if (s - 1 < cat.window.lo || s < sum_lo || s > sum_hi || !cat.window.contains(s))
                            continue;
                        const SparseMatrix da = ca.d(q);
                        const SparseMatrix db = cb.d(p);
                        for (int bi = 0; bi < cb.dim(p); ++bi) {
                            QVec bv = unit_vec(static_cast<std::size_t>(cb.dim(p)),
                                               static_cast<std::size_t>(bi));
                            QVec dbv = db.apply(bv);
                            for (int ai = 0; ai < ca.dim(q); ++ai) {
                                QVec av = unit_vec(static_cast<std::size_t>(ca.dim(q)),
                                                   static_cast<std::size_t>(ai));
                                QVec dav = da.apply(av);
                                QVec lhs = ct.d(s).apply(cat.compose(g0, g1, g2, p, q, bv, av));
                                QVec rhs = cat.compose(g0, g1, g2, p - 1, q, dbv, av);
                                QVec term = cat.compose(g0, g1, g2, p, q - 1, bv, dav);
                                if (p % 2 == 0)
                                    rhs = add(rhs, term);
                                else
                                    rhs = sub(rhs, term);
                                ++rep.checks;
                                if (lhs != rhs)
                                    violation("Leibniz fails for " + tuple_desc({g1, g2}, p, bi) +
                                              " o " + tuple_desc({g0, g1}, q, ai));
                            }
                        }
                    }
            }

    // Associativity on basis triples.
    for (ObjectTag g0 : cat.objects)
        for (ObjectTag g1 : cat.objects)
            for (ObjectTag g2 : cat.objects)
                for (ObjectTag g3 : cat.objects) {
                    const Complex& ca = cat.hom_at({g0, g1});
                    const Complex& cb = cat.hom_at({g1, g2});
                    const Complex& cc = cat.hom_at({g2, g3});
                    for (int r : ca.support())
                        for (int q : cb.support()) {
                            if (!cat.window.contains(q + r))
                                continue;
                            for (int p : cc.support()) {
                                int s = p + q + r;
                                if (s < sum_lo || s > sum_hi || !cat.window.contains(s) ||
                                    !cat.window.contains(p + q))
                                    continue;
                                for (int ci = 0; ci < cc.dim(p); ++ci) {
                                    QVec cv = unit_vec(static_cast<std::size_t>(cc.dim(p)),
                                                       static_cast<std::size_t>(ci));
                                    for (int bi = 0; bi < cb.dim(q); ++bi) {
                                        QVec bv = unit_vec(static_cast<std::size_t>(cb.dim(q)),
                                                           static_cast<std::size_t>(bi));
                                        QVec cb_prod = cat.compose(g1, g2, g3, p, q, cv, bv);
                                        for (int ai = 0; ai < ca.dim(r); ++ai) {
                                            QVec av = unit_vec(static_cast<std::size_t>(ca.dim(r)),
                                                               static_cast<std::size_t>(ai));
                                            QVec lhs =
                                                cat.compose(g0, g1, g3, p + q, r, cb_prod, av);
                                            QVec rhs = cat.compose(
                                                g0, g2, g3, p, q + r, cv,
                                                cat.compose(g0, g1, g2, q, r, bv, av));
                                            ++rep.checks;
                                            if (lhs != rhs)
                                                violation("associativity fails for triple at " +
                                                          tuple_desc({g2, g3}, p, ci) + " o " +
                                                          tuple_desc({g1, g2}, q, bi) + " o " +
                                                          tuple_desc({g0, g1}, r, ai));
                                        }
                                    }
                                }
                            }
                        }
                }

    return rep;
}

ConsistencyReport check_consistency(const DGCategory& cat) {
    return check_consistency(cat, cat.window.lo, cat.window.hi);
}

DGCategory make_table_category(std::vector<ObjectTag> objects, DegreeWindow window,
                               std::map<PairKey, Complex> hom, std::map<ObjectTag, QVec> identities,
                               std::shared_ptr<const ProductTable> table) {
    DGCategory cat;
    cat.objects = std::move(objects);
    cat.window = window;
    cat.hom = std::move(hom);
    cat.identities = std::move(identities);
    cat.composer_state = table;
    cat.basis_compose = [table](const DGCategory&, ObjectTag src, ObjectTag mid, ObjectTag dst,
                                int p, int q, int bi, int ai) -> BasisProduct {
        auto it = table->table.find({src, mid, dst, p, q});
        if (it == table->table.end())
            return {};
        return it->second[static_cast<std::size_t>(bi)][static_cast<std::size_t>(ai)];
    };
    return cat;
}

QVec HomologyCategory::reduce(PairKey key, int degree, const QVec& cycle) const {
    auto it = data.find({key, degree});
    require(it != data.end(), Errc::OutOfWindow,
            "no homology data for " + to_string(key) + " deg " + std::to_string(degree));
    return it->second.reduce(cycle).coordinates;
}

HomologyCategory homology_category(const DGCategory& r) {
    HomologyCategory out;
    std::map<PairKey, Complex> hom;
    for (const auto& [pair, cx] : r.hom) {
        Complex::Basis basis;
        for (int n = r.window.lo + 1; n <= r.window.hi - 1; ++n) {
            if (cx.dim(n) == 0 && cx.dim(n + 1) == 0)
                continue;
            HomologyData h = homology(cx, n);
            if (h.dimension == 0)
                continue;
            std::vector<BasisLabel> labels;
            for (int i = 0; i < h.dimension; ++i) {
                // Name the class by the leading term of its representative.
                const QVec& rep = h.representatives[static_cast<std::size_t>(i)];
                std::string lead = "0";
                for (std::size_t j = 0; j < rep.size(); ++j)
                    if (!is_zero(rep[j])) {
                        lead = cx.labels(n)[j].text;
                        break;
                    }
                BasisLabel l("cls", {n, i});
                l.text = "[" + lead + "]";
                labels.push_back(std::move(l));
            }
            basis[n] = std::move(labels);
            out.data.emplace(std::make_pair(pair, n), std::move(h));
        }
        hom.emplace(pair, Complex::make(r.window, std::move(basis), {}));
    }

    // Induced composition on representatives.
    auto table = std::make_shared<ProductTable>();
    for (ObjectTag g0 : r.objects)
        for (ObjectTag g1 : r.objects)
            for (ObjectTag g2 : r.objects) {
                for (const auto& [kq, hq] : out.data) {
                    if (kq.first != PairKey{g0, g1})
                        continue;
                    for (const auto& [kp, hp] : out.data) {
                        if (kp.first != PairKey{g1, g2})
                            continue;
                        int p = hp.degree, q = hq.degree;
                        auto target = out.data.find({{g0, g2}, p + q});
                        std::vector<std::vector<BasisProduct>> cell(
                            static_cast<std::size_t>(hp.dimension),
                            std::vector<BasisProduct>(static_cast<std::size_t>(hq.dimension)));
                        bool any = false;
                        for (int bi = 0; bi < hp.dimension; ++bi)
                            for (int ai = 0; ai < hq.dimension; ++ai) {
                                QVec prod = r.compose(g0, g1, g2, p, q,
                                                      hp.representatives[static_cast<std::size_t>(bi)],
                                                      hq.representatives[static_cast<std::size_t>(ai)]);
                                if (is_zero(prod) || target == out.data.end())
                                    continue;
                                QVec coords = target->second.reduce(prod).coordinates;
                                BasisProduct bp;
                                for (std::size_t t = 0; t < coords.size(); ++t)
                                    if (!is_zero(coords[t]))
                                        bp.emplace_back(static_cast<int>(t), coords[t]);
                                if (!bp.empty())
                                    any = true;
                                cell[static_cast<std::size_t>(bi)][static_cast<std::size_t>(ai)] =
                                    std::move(bp);
                            }
                        if (any)
                            table->table.emplace(ComposeKey{g0, g1, g2, p, q}, std::move(cell));
                    }
                }
            }

    std::map<ObjectTag, QVec> identities;
    for (ObjectTag g : r.objects) {
        auto it = out.data.find({{g, g}, 0});
        require(it != out.data.end(), Errc::Internal,
                "identity class missing in homology category of " + to_string(g));
        identities[g] = it->second.reduce(r.identities.at(g)).coordinates;
    }

    out.cat = make_table_category(r.objects, r.window, std::move(hom), std::move(identities),
                                  std::move(table));
    return out;
}

ObjectTag DGFunctor::map_object(ObjectTag g) const {
    auto it = object_map.find(g);
    require(it != object_map.end(), Errc::Internal, "functor object map misses " + to_string(g));
    return it->second;
}

SparseMatrix DGFunctor::component(const DGCategory& src, const DGCategory& dst, PairKey pair,
                                  int n) const {
    auto it = components.find(pair);
    const Complex& s = src.hom_at(pair);
    const Complex& d = dst.hom_at(map_pair(pair));
    if (it == components.end())
        return SparseMatrix::zero(d.dim(n), s.dim(n));
    return chain_map_component(s, d, it->second, n, 0);
}

QVec DGFunctor::apply(const DGCategory& src, const DGCategory& dst, PairKey pair, int n,
                      const QVec& v) const {
    return component(src, dst, pair, n).apply(v);
}

DGFunctor make_dg_functor(const DGCategory& src, const DGCategory& dst,
                          std::map<ObjectTag, ObjectTag> object_map,
                          std::map<PairKey, ChainMapData> components,
                          const FunctorCheckOptions& opts) {
    DGFunctor f;
    f.object_map = std::move(object_map);
    f.components = std::move(components);

    for (ObjectTag g : src.objects)
        f.map_object(g);

    for (const auto& [pair, comp] : f.components)
        check_chain_map(src.hom_at(pair), dst.hom_at(f.map_pair(pair)), comp);

    // Identities map to identities.
    for (ObjectTag g : src.objects) {
        QVec img = f.apply(src, dst, {g, g}, 0, src.identities.at(g));
        require(img == dst.identities.at(f.map_object(g)), Errc::NotMultiplicative,
                "functor does not preserve the identity of " + to_string(g));
    }

    if (opts.check_multiplicative) {
        for (ObjectTag g0 : src.objects)
            for (ObjectTag g1 : src.objects)
                for (ObjectTag g2 : src.objects) {
                    const Complex& ca = src.hom_at({g0, g1});
                    const Complex& cb = src.hom_at({g1, g2});
                    for (int q : ca.support())
                        for (int p : cb.support()) {
                            int s = p + q;
                            if (s < opts.sum_lo || s > opts.sum_hi || !src.window.contains(s) ||
                                !dst.window.contains(s))
                                continue;
                            for (int bi = 0; bi < cb.dim(p); ++bi) {
                                QVec bv = unit_vec(static_cast<std::size_t>(cb.dim(p)),
                                                   static_cast<std::size_t>(bi));
                                QVec fb = f.apply(src, dst, {g1, g2}, p, bv);
                                for (int ai = 0; ai < ca.dim(q); ++ai) {
                                    QVec av = unit_vec(static_cast<std::size_t>(ca.dim(q)),
                                                       static_cast<std::size_t>(ai));
                                    QVec lhs = f.apply(src, dst, {g0, g2}, s,
                                                       src.compose(g0, g1, g2, p, q, bv, av));
                                    QVec rhs = dst.compose(f.map_object(g0), f.map_object(g1),
                                                           f.map_object(g2), p, q, fb,
                                                           f.apply(src, dst, {g0, g1}, q, av));
                                    require(lhs == rhs, Errc::NotMultiplicative,
                                            "functor not multiplicative at " +
                                                tuple_desc({g1, g2}, p, bi) + " o " +
                                                tuple_desc({g0, g1}, q, ai));
                                }
                            }
                        }
                }
    }
    return f;
}

DGFunctor make_dg_functor(const DGCategory& src, const DGCategory& dst,
                          std::map<ObjectTag, ObjectTag> object_map,
                          std::map<PairKey, ChainMapData> components) {
    FunctorCheckOptions opts{true, src.window.lo, src.window.hi};
    return make_dg_functor(src, dst, std::move(object_map), std::move(components), opts);
}

DGFunctor compose_functors(const DGCategory& a, const DGCategory& b, const DGCategory& c,
                           const DGFunctor& f, const DGFunctor& g) {
    DGFunctor h;
    for (const auto& [x, y] : f.object_map)
        h.object_map[x] = g.map_object(y);
    for (ObjectTag g0 : a.objects)
        for (ObjectTag g1 : a.objects) {
            PairKey pair{g0, g1};
            ChainMapData comp;
            const Complex& sa = a.hom_at(pair);
            for (int n : sa.support()) {
                SparseMatrix m = g.component(b, c, f.map_pair(pair), n)
                                     .multiply(f.component(a, b, pair, n));
                if (!m.is_zero_matrix())
                    comp[n] = m;
            }
            if (!comp.empty())
                h.components[pair] = std::move(comp);
        }
    return h;
}

FunctorQuasiIsoReport is_quasi_iso_functor(const DGFunctor& f, const DGCategory& src,
                                           const DGCategory& dst, int lo, int hi) {
    FunctorQuasiIsoReport rep;
    for (ObjectTag g0 : src.objects)
        for (ObjectTag g1 : src.objects) {
            PairKey pair{g0, g1};
            ChainMapData comp;
            auto it = f.components.find(pair);
            if (it != f.components.end())
                comp = it->second;
            QuasiIsoReport r =
                is_quasi_iso(src.hom_at(pair), dst.hom_at(f.map_pair(pair)), comp, lo, hi);
            rep.overall = rep.overall && r.overall;
            rep.pairs.emplace(pair, std::move(r));
        }
    return rep;
}

namespace {

struct CoverState {
    std::shared_ptr<const DGCategory> parent;
    std::map<PairKey, Subspace> cycles0;  // degree-0 cycle bases
};

}  // namespace

ConnectedCover connected_cover(const DGCategory& r) {
    auto state = std::make_shared<CoverState>();
    state->parent = std::make_shared<DGCategory>(r);

    std::map<PairKey, Complex> hom;
    DGFunctor incl;
    for (ObjectTag g : r.objects)
        incl.object_map[g] = g;

    for (const auto& [pair, cx] : r.hom) {
        Subspace z0 = kernel_basis(cx.d(0));
        Complex::Basis basis;
        Complex::Diffs diffs;
        for (int n : cx.support())
            if (n > 0)
                basis[n] = cx.labels(n);
        std::vector<BasisLabel> z0_labels;
        for (int i = 0; i < z0.dim(); ++i) {
            const QVec& v = z0.basis[static_cast<std::size_t>(i)];
            std::string lead;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!is_zero(v[j])) {
                    lead = cx.labels(0)[j].text;
                    break;
                }
            BasisLabel l("z0", {i});
            l.text = "z0(" + lead + ")";
            z0_labels.push_back(std::move(l));
        }
        if (!z0_labels.empty())
            basis[0] = std::move(z0_labels);
        for (int n : cx.support()) {
            if (n <= 0 || !r.window.contains(n - 1))
                continue;
            if (n >= 2) {
                SparseMatrix d = cx.d(n);
                if (!d.is_zero_matrix())
                    diffs[n] = d;
            } else {  // n == 1: express d_1 image in the cycle basis
                SparseMatrix d = cx.d(1);
                std::vector<QVec> cols;
                for (int j = 0; j < d.cols(); ++j) {
                    auto coords = z0.coordinates(d.column(j));
                    require(coords.has_value(), Errc::Internal,
                            "d_1 image is not a cycle in connected cover");
                    cols.push_back(std::move(*coords));
                }
                SparseMatrix m = SparseMatrix::from_columns(cols, z0.dim());
                if (!m.is_zero_matrix())
                    diffs[1] = m;
            }
        }
        hom.emplace(pair, Complex::make(r.window, std::move(basis), std::move(diffs)));

        ChainMapData comp;
        for (int n : cx.support())
            if (n > 0)
                comp[n] = SparseMatrix::identity(cx.dim(n));
        if (z0.dim() > 0)
            comp[0] = SparseMatrix::from_columns(z0.basis, cx.dim(0));
        if (!comp.empty())
            incl.components[pair] = std::move(comp);
        state->cycles0.emplace(pair, std::move(z0));
    }

    DGCategory cover;
    cover.objects = r.objects;
    cover.window = r.window;
    cover.hom = std::move(hom);
    cover.composer_state = state;
    cover.basis_compose = [state](const DGCategory& self, ObjectTag src, ObjectTag mid,
                                  ObjectTag dst, int p, int q, int bi, int ai) -> BasisProduct {
        const DGCategory& parent = *state->parent;
        auto lift = [&](PairKey pair, int deg, int idx) -> QVec {
            if (deg == 0)
                return state->cycles0.at(pair).basis[static_cast<std::size_t>(idx)];
            return unit_vec(static_cast<std::size_t>(parent.hom_at(pair).dim(deg)),
                            static_cast<std::size_t>(idx));
        };
        QVec prod = parent.compose(src, mid, dst, p, q, lift({mid, dst}, p, bi),
                                   lift({src, mid}, q, ai));
        BasisProduct out;
        if (p + q == 0) {
            auto coords = state->cycles0.at({src, dst}).coordinates(prod);
            require(coords.has_value(), Errc::Internal, "cover product is not a cycle");
            for (std::size_t t = 0; t < coords->size(); ++t)
                if (!is_zero((*coords)[t]))
                    out.emplace_back(static_cast<int>(t), (*coords)[t]);
        } else {
            for (std::size_t t = 0; t < prod.size(); ++t)
                if (!is_zero(prod[t]))
                    out.emplace_back(static_cast<int>(t), prod[t]);
        }
        return out;
    };
    for (ObjectTag g : r.objects) {
        auto coords = state->cycles0.at({g, g}).coordinates(r.identities.at(g));
        require(coords.has_value(), Errc::Internal, "identity is not a degree-0 cycle");
        cover.identities[g] = std::move(*coords);
    }

    return {std::move(cover), std::move(incl)};
}

bool structurally_equal(const DGCategory& a, const DGCategory& b) {
    if (a.objects != b.objects || !(a.window == b.window) || a.identities != b.identities)
        return false;
    if (a.hom.size() != b.hom.size())
        return false;
    for (const auto& [pair, cx] : a.hom) {
        auto it = b.hom.find(pair);
        if (it == b.hom.end() || !(cx == it->second))
            return false;
    }
    for (ObjectTag g0 : a.objects)
        for (ObjectTag g1 : a.objects)
            for (ObjectTag g2 : a.objects) {
                const Complex& ca = a.hom_at({g0, g1});
                const Complex& cb = a.hom_at({g1, g2});
                for (int q : ca.support())
                    for (int p : cb.support()) {
                        if (!a.window.contains(p + q))
                            continue;
                        for (int bi = 0; bi < cb.dim(p); ++bi)
                            for (int ai = 0; ai < ca.dim(q); ++ai)
                                if (a.basis_compose(a, g0, g1, g2, p, q, bi, ai) !=
                                    b.basis_compose(b, g0, g1, g2, p, q, bi, ai))
                                    return false;
                    }
            }
    return true;
}

}  // namespace dgcat
