#pragma once

#include <optional>

#include "dgcat/dg_category.hpp"

namespace dgcat {

// Generator of a presented ring. Differentials are rational combinations of
// composable words in strictly earlier generators.
struct GeneratorSpec {
    ObjectTag src;
    ObjectTag dst;
    int degree = 0;
    BasisLabel label;
    int subgroup = kNoSubgroup;  // structural finite-subgroup tag
    std::vector<std::pair<Q, std::vector<int>>> differential;
};

// Monomial (subword-zero) presentation: hom bases are the composable words
// avoiding the forbidden subwords and mixing of finite-subgroup tags.
struct Presentation {
    std::vector<ObjectTag> objects;
    std::vector<GeneratorSpec> generators;
    std::vector<std::vector<int>> forbidden;
    int cap = 8;
};

using Word = std::vector<int>;  // generator indices, leftmost applied last

struct WordRing {
    Presentation pres;
    DegreeWindow window;
    int cap_used = 8;
    // per (pair, degree): canonically ordered words; the empty word sits at
    // (G, G, 0) and is the identity.
    std::map<PairKey, std::map<int, std::vector<Word>>> words;
    std::map<PairKey, std::map<int, std::map<Word, int>>> index;

    const std::vector<Word>& words_at(PairKey pair, int degree) const;
    std::optional<int> find(PairKey pair, int degree, const Word& w) const;
    // Concatenation with monomial normalization; nullopt when the result is
    // zero (forbidden subword, mixed tags, or degree outside the window).
    std::optional<std::tuple<PairKey, int, int>> normalize(const Word& w) const;
    int word_degree(const Word& w) const;
    PairKey word_pair(const Word& w) const;
    std::string word_text(const Word& w) const;
};

struct RealizeResult {
    DGCategory cat;
    std::vector<std::string> warnings;
};

// Builds the word-basis ring. The cap is raised automatically (with a
// warning) when in-window words would exceed it.
RealizeResult realize_presentation(const Presentation& p, DegreeWindow w);

// Helpers for locating elements of presented rings.
int find_generator(const DGCategory& cat, const std::string& label_text);
std::optional<int> find_word_index(const DGCategory& cat, PairKey pair, int degree, const Word& w);
QVec word_vector(const DGCategory& cat, PairKey pair, int degree, const Word& w);

}  // namespace dgcat
