#pragma once

#include <compare>
#include <string>
#include <vector>

namespace dgcat {

// Object tags for rings with many objects: one object per finite subgroup
// label H1..Hk plus one for the circle group, printed "T".
struct ObjectTag {
    int id = 0;  // 0..k-1 finite subgroups, kCircle for the circle

    static constexpr int kCircle = -1;
    static ObjectTag circle() { return ObjectTag{kCircle}; }
    static ObjectTag finite(int i) { return ObjectTag{i}; }

    bool is_circle() const { return id == kCircle; }
    auto operator<=>(const ObjectTag&) const = default;
};

std::string to_string(ObjectTag t);
// "T" or "H<i+1>"; parse accepts the same forms.
ObjectTag parse_object_tag(const std::string& s);

struct PairKey {
    ObjectTag src;
    ObjectTag dst;
    auto operator<=>(const PairKey&) const = default;
};

inline std::string to_string(PairKey p) { return to_string(p.src) + "->" + to_string(p.dst); }

constexpr int kNoSubgroup = -2;

// Basis element label: a family symbol, integer indices, and an optional
// finite-subgroup tag. `text` is the display form used in serialization.
struct BasisLabel {
    std::string family;
    std::vector<int> indices;
    int subgroup = kNoSubgroup;
    std::string text;

    BasisLabel() = default;
    BasisLabel(std::string fam, std::vector<int> idx, int sub = kNoSubgroup);

    auto operator<=>(const BasisLabel&) const = default;
};

std::string default_label_text(const std::string& family, const std::vector<int>& indices,
                               int subgroup);

}  // namespace dgcat
