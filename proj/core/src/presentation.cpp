#include "dgcat/presentation.hpp"

#include <algorithm>

namespace dgcat {

namespace {

bool contains_subword(const Word& w, const Word& pattern) {
    if (pattern.empty() || pattern.size() > w.size())
        return false;
    for (std::size_t start = 0; start + pattern.size() <= w.size(); ++start) {
        bool hit = true;
        for (std::size_t j = 0; j < pattern.size(); ++j)
            if (w[start + j] != pattern[j]) {
                hit = false;
                break;
            }
        if (hit)
            return true;
    }
    return false;
}

struct WordOrder {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size())
            return a.size() < b.size();
        return a < b;
    }
};

}  // namespace

const std::vector<Word>& WordRing::words_at(PairKey pair, int degree) const {
    static const std::vector<Word> kEmpty;
    auto it = words.find(pair);
    if (it == words.end())
        return kEmpty;
    auto jt = it->second.find(degree);
    return jt == it->second.end() ? kEmpty : jt->second;
}

std::optional<int> WordRing::find(PairKey pair, int degree, const Word& w) const {
    auto it = index.find(pair);
    if (it == index.end())
        return std::nullopt;
    auto jt = it->second.find(degree);
    if (jt == it->second.end())
        return std::nullopt;
    auto kt = jt->second.find(w);
    if (kt == jt->second.end())
        return std::nullopt;
    return kt->second;
}

int WordRing::word_degree(const Word& w) const {
    int d = 0;
    for (int g : w)
        d += pres.generators[static_cast<std::size_t>(g)].degree;
    return d;
}

PairKey WordRing::word_pair(const Word& w) const {
    require(!w.empty(), Errc::Internal, "word_pair of the empty word is ambiguous");
    return {pres.generators[static_cast<std::size_t>(w.back())].src,
            pres.generators[static_cast<std::size_t>(w.front())].dst};
}

std::string WordRing::word_text(const Word& w) const {
    if (w.empty())
        return "id";
    std::string s;
    int tag = kNoSubgroup;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const GeneratorSpec& g = pres.generators[static_cast<std::size_t>(w[i])];
        if (i)
            s += "*";
        s += default_label_text(g.label.family, g.label.indices, kNoSubgroup);
        if (g.subgroup != kNoSubgroup)
            tag = g.subgroup;
    }
    if (tag != kNoSubgroup)
        s += "^" + to_string(ObjectTag{tag});
    return s;
}

std::optional<std::tuple<PairKey, int, int>> WordRing::normalize(const Word& w) const {
    int tag = kNoSubgroup;
    for (int g : w) {
        int t = pres.generators[static_cast<std::size_t>(g)].subgroup;
        if (t == kNoSubgroup)
            continue;
        if (tag == kNoSubgroup)
            tag = t;
        else if (tag != t)
            return std::nullopt;
    }
    for (const Word& pattern : pres.forbidden)
        if (contains_subword(w, pattern))
            return std::nullopt;
    int degree = word_degree(w);
    if (!window.contains(degree))
        return std::nullopt;
    PairKey pair = word_pair(w);
    auto idx = find(pair, degree, w);
    require(idx.has_value(), Errc::Internal, "normalized word missing from basis: " + word_text(w));
    return std::make_tuple(pair, degree, *idx);
}

namespace {

struct Enumeration {
    std::map<PairKey, std::map<int, std::vector<Word>>> words;
    bool cap_exceeded = false;
};

Enumeration enumerate_words(const Presentation& p, DegreeWindow w, int cap) {
    Enumeration out;
    auto composable = [&](int g, const Word& word) {
        return word.empty() ||
               p.generators[static_cast<std::size_t>(g)].src ==
                   p.generators[static_cast<std::size_t>(word.front())].dst;
    };
    auto allowed = [&](const Word& word) {
        int tag = kNoSubgroup;
        for (int g : word) {
            int t = p.generators[static_cast<std::size_t>(g)].subgroup;
            if (t == kNoSubgroup)
                continue;
            if (tag == kNoSubgroup)
                tag = t;
            else if (tag != t)
                return false;
        }
        for (const Word& pattern : p.forbidden)
            if (contains_subword(word, pattern))
                return false;
        return true;
    };

    std::vector<std::pair<Word, int>> frontier;  // (word, degree)
    for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
        int d = p.generators[static_cast<std::size_t>(g)].degree;
        if (d > w.hi)
            continue;
        Word word{g};
        if (allowed(word))
            frontier.emplace_back(std::move(word), d);
    }
    std::vector<std::pair<Word, int>> all = frontier;
    for (int len = 1; len < cap && !frontier.empty(); ++len) {
        std::vector<std::pair<Word, int>> next;
        for (const auto& [word, deg] : frontier) {
            for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
                int d = deg + p.generators[static_cast<std::size_t>(g)].degree;
                if (d > w.hi || !composable(g, word))
                    continue;
                Word ext;
                ext.reserve(word.size() + 1);
                ext.push_back(g);
                ext.insert(ext.end(), word.begin(), word.end());
                if (allowed(ext))
                    next.emplace_back(std::move(ext), d);
            }
        }
        all.insert(all.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    // One more extension step detects in-window words beyond the cap.
    for (const auto& [word, deg] : frontier) {
        for (int g = 0; g < static_cast<int>(p.generators.size()); ++g) {
            int d = deg + p.generators[static_cast<std::size_t>(g)].degree;
            if (d > w.hi || !composable(g, word))
                continue;
            Word ext;
            ext.push_back(g);
            ext.insert(ext.end(), word.begin(), word.end());
            if (allowed(ext)) {
                out.cap_exceeded = true;
                break;
            }
        }
        if (out.cap_exceeded)
            break;
    }

    for (auto& [word, deg] : all) {
        if (deg < w.lo)
            continue;
        PairKey pair{p.generators[static_cast<std::size_t>(word.back())].src,
                     p.generators[static_cast<std::size_t>(word.front())].dst};
        out.words[pair][deg].push_back(std::move(word));
    }
    if (w.contains(0))
        for (ObjectTag g : p.objects)
            out.words[{g, g}][0].push_back(Word{});
    for (auto& [pair, by_degree] : out.words)
        for (auto& [deg, list] : by_degree)
            std::sort(list.begin(), list.end(), WordOrder{});
    return out;
}

void validate_presentation(const Presentation& p) {
    for (std::size_t gi = 0; gi < p.generators.size(); ++gi) {
        const GeneratorSpec& g = p.generators[gi];
        require(g.degree >= 0, Errc::IllFormed,
                "generator " + g.label.text + " has negative degree (unsupported)");
        for (const auto& [coeff, word] : g.differential) {
            require(!word.empty(), Errc::IllFormed, "empty differential word");
            int deg = 0;
            for (int li : word) {
                require(li >= 0 && li < static_cast<int>(gi), Errc::IllFormed,
                        "differential of " + g.label.text + " references a non-earlier generator");
                deg += p.generators[static_cast<std::size_t>(li)].degree;
            }
            require(deg == g.degree - 1, Errc::IllFormed,
                    "differential of " + g.label.text + " has wrong degree");
            for (std::size_t j = 0; j + 1 < word.size(); ++j)
                require(p.generators[static_cast<std::size_t>(word[j])].src ==
                            p.generators[static_cast<std::size_t>(word[j + 1])].dst,
                        Errc::IllFormed, "differential word of " + g.label.text + " not composable");
            require(p.generators[static_cast<std::size_t>(word.back())].src == g.src &&
                        p.generators[static_cast<std::size_t>(word.front())].dst == g.dst,
                    Errc::IllFormed,
                    "differential word of " + g.label.text + " has wrong source or target");
        }
    }
    for (const Word& pattern : p.forbidden) {
        require(!pattern.empty(), Errc::IllFormed, "empty forbidden pattern");
        for (std::size_t j = 0; j + 1 < pattern.size(); ++j)
            require(p.generators[static_cast<std::size_t>(pattern[j])].src ==
                        p.generators[static_cast<std::size_t>(pattern[j + 1])].dst,
                    Errc::IllFormed, "forbidden pattern not composable");
    }
}

}  // namespace

RealizeResult realize_presentation(const Presentation& p, DegreeWindow w) {
    validate_presentation(p);
    RealizeResult result;

    auto ring = std::make_shared<WordRing>();
    ring->pres = p;
    ring->window = w;

    int cap = p.cap;
    for (;;) {
        require(cap <= 64, Errc::CapExceeded, "word length cap exceeds 64");
        Enumeration e = enumerate_words(p, w, cap);
        if (e.cap_exceeded) {
            result.warnings.push_back("word cap " + std::to_string(cap) + " exceeded; raised to " +
                                      std::to_string(cap + 4));
            cap += 4;
            continue;
        }
        ring->words = std::move(e.words);
        break;
    }
    ring->cap_used = cap;
    for (const auto& [pair, by_degree] : ring->words)
        for (const auto& [deg, list] : by_degree)
            for (int i = 0; i < static_cast<int>(list.size()); ++i)
                ring->index[pair][deg][list[static_cast<std::size_t>(i)]] = i;

    // Differential on words by the Leibniz rule; a failed lookup of an
    // in-window term means the cap must grow.
    bool retry = false;
    std::map<PairKey, Complex> hom;
    for (const auto& [pair, by_degree] : ring->words) {
        Complex::Basis basis;
        Complex::Diffs diffs;
        for (const auto& [deg, list] : by_degree) {
            std::vector<BasisLabel> labels;
            for (const Word& word : list) {
                if (word.empty()) {
                    BasisLabel l("id", {}, pair.src.is_circle() ? kNoSubgroup : pair.src.id);
                    labels.push_back(std::move(l));
                } else if (word.size() == 1) {
                    labels.push_back(p.generators[static_cast<std::size_t>(word[0])].label);
                } else {
                    BasisLabel l;
                    l.family = "w";
                    l.indices = word;
                    for (int li : word) {
                        int t = p.generators[static_cast<std::size_t>(li)].subgroup;
                        if (t != kNoSubgroup)
                            l.subgroup = t;
                    }
                    l.text = ring->word_text(word);
                    labels.push_back(std::move(l));
                }
            }
            basis[deg] = std::move(labels);
        }
        for (const auto& [deg, list] : by_degree) {
            if (!w.contains(deg - 1))
                continue;
            auto rows_it = by_degree.find(deg - 1);
            int rows = rows_it == by_degree.end() ? 0 : static_cast<int>(rows_it->second.size());
            std::vector<SparseMatrix::Entry> es;
            for (int col = 0; col < static_cast<int>(list.size()); ++col) {
                const Word& word = list[static_cast<std::size_t>(col)];
                int sign_deg = 0;
                for (std::size_t j = 0; j < word.size(); ++j) {
                    const GeneratorSpec& gj = p.generators[static_cast<std::size_t>(word[j])];
                    Q sign = (sign_deg % 2 == 0) ? Q(1) : Q(-1);
                    for (const auto& [coeff, dword] : gj.differential) {
                        Word term(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(j));
                        term.insert(term.end(), dword.begin(), dword.end());
                        term.insert(term.end(), word.begin() + static_cast<std::ptrdiff_t>(j) + 1,
                                    word.end());
                        // Monomial normalization: dropped when zero.
                        bool zero = false;
                        int tag = kNoSubgroup;
                        for (int li : term) {
                            int t = p.generators[static_cast<std::size_t>(li)].subgroup;
                            if (t == kNoSubgroup)
                                continue;
                            if (tag == kNoSubgroup)
                                tag = t;
                            else if (tag != t) {
                                zero = true;
                                break;
                            }
                        }
                        if (!zero)
                            for (const Word& pattern : p.forbidden)
                                if (contains_subword(term, pattern)) {
                                    zero = true;
                                    break;
                                }
                        if (zero)
                            continue;
                        auto idx = ring->find(pair, deg - 1, term);
                        if (!idx) {
                            retry = true;
                            continue;
                        }
                        es.push_back({*idx, col, sign * coeff});
                    }
                    sign_deg += gj.degree;
                }
            }
            SparseMatrix m = SparseMatrix::from_triplets(rows, static_cast<int>(list.size()),
                                                         std::move(es));
            if (!m.is_zero_matrix())
                diffs[deg] = m;
        }
        hom.emplace(pair, Complex::make(w, std::move(basis), std::move(diffs)));
    }
    require(!retry, Errc::CapExceeded,
            "differential produced a word beyond the cap; raise the presentation cap");

    DGCategory cat;
    cat.objects = p.objects;
    cat.window = w;
    // Pairs without words still need (empty) hom complexes.
    for (ObjectTag g0 : p.objects)
        for (ObjectTag g1 : p.objects)
            if (hom.find({g0, g1}) == hom.end())
                hom.emplace(PairKey{g0, g1}, Complex::zero(w));
    cat.hom = std::move(hom);
    cat.words = ring;
    cat.composer_state = ring;
    cat.basis_compose = [ring](const DGCategory&, ObjectTag src, ObjectTag mid, ObjectTag dst,
                               int p_, int q_, int bi, int ai) -> BasisProduct {
        const Word& b = ring->words_at({mid, dst}, p_).at(static_cast<std::size_t>(bi));
        const Word& a = ring->words_at({src, mid}, q_).at(static_cast<std::size_t>(ai));
        Word w2;
        w2.reserve(b.size() + a.size());
        w2.insert(w2.end(), b.begin(), b.end());
        w2.insert(w2.end(), a.begin(), a.end());
        if (w2.empty())
            return {{0, Q(1)}};  // id o id
        auto norm = ring->normalize(w2);
        if (!norm)
            return {};
        auto [pair, deg, idx] = *norm;
        require((pair == PairKey{src, dst}) && deg == p_ + q_, Errc::Internal,
                "word composition landed in the wrong hom component");
        return {{idx, Q(1)}};
    };
    for (ObjectTag g : p.objects) {
        auto idx = ring->find({g, g}, 0, Word{});
        require(idx.has_value(), Errc::Internal, "identity word missing");
        cat.identities[g] =
            unit_vec(static_cast<std::size_t>(cat.hom_at({g, g}).dim(0)), static_cast<std::size_t>(*idx));
    }
    result.cat = std::move(cat);
    return result;
}

int find_generator(const DGCategory& cat, const std::string& label_text) {
    require(cat.words != nullptr, Errc::Internal, "find_generator on a non-presented ring");
    const auto& gens = cat.words->pres.generators;
    for (int i = 0; i < static_cast<int>(gens.size()); ++i)
        if (gens[static_cast<std::size_t>(i)].label.text == label_text)
            return i;
    fail(Errc::Internal, "generator not found: " + label_text);
}

std::optional<int> find_word_index(const DGCategory& cat, PairKey pair, int degree, const Word& w) {
    require(cat.words != nullptr, Errc::Internal, "find_word_index on a non-presented ring");
    return cat.words->find(pair, degree, w);
}

QVec word_vector(const DGCategory& cat, PairKey pair, int degree, const Word& w) {
    auto idx = find_word_index(cat, pair, degree, w);
    require(idx.has_value(), Errc::Internal, "word not in basis");
    return unit_vec(static_cast<std::size_t>(cat.hom_at(pair).dim(degree)),
                    static_cast<std::size_t>(*idx));
}

}  // namespace dgcat
