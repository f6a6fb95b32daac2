#include "dgcat/presentation.hpp"
#include "doctest.h"

using namespace dgcat;

namespace {

const DegreeWindow W{-10, 14, 3};

// Two objects A, B; one degree-0 arrow u: A->B, one degree-1 loop t on B
// with dt = u-composite killed... kept simple: dt = 0, forbidden t*t.
Presentation toy() {
    Presentation p;
    ObjectTag A = ObjectTag::finite(0), B = ObjectTag::circle();
    p.objects = {A, B};
    GeneratorSpec u{A, B, 0, BasisLabel("u", {}), 0, {}};
    GeneratorSpec t{B, B, 1, BasisLabel("t", {}), kNoSubgroup, {}};
    GeneratorSpec v{B, B, 2, BasisLabel("v", {}), kNoSubgroup, {{q(1), {1}}}};  // dv = t
    p.generators = {u, t, v};
    p.forbidden = {{1, 1}};  // t*t = 0
    return p;
}

}  // namespace

TEST_CASE("empty presentation realizes the discrete category") {
    Presentation p;
    p.objects = {ObjectTag::finite(0), ObjectTag::circle()};
    DGCategory cat = realize_presentation(p, W).cat;
    for (ObjectTag g : p.objects) {
        CHECK(cat.hom_at({g, g}).dim(0) == 1);
        for (int n = W.lo; n <= W.hi; ++n)
            if (n != 0)
                CHECK(cat.hom_at({g, g}).dim(n) == 0);
    }
    CHECK(cat.hom_at({p.objects[0], p.objects[1]}).support().empty());
    CHECK(check_consistency(cat).pass());
}

TEST_CASE("toy monomial ring: word bases, differential, consistency") {
    DGCategory cat = realize_presentation(toy(), W).cat;
    ObjectTag A = ObjectTag::finite(0), B = ObjectTag::circle();
    // (A,B) words: u, t*u, v*u, v*t*u, ... t*t forbidden.
    CHECK(cat.hom_at({A, B}).dim(0) == 1);   // u
    CHECK(cat.hom_at({A, B}).dim(1) == 1);   // t*u
    CHECK(cat.hom_at({A, B}).dim(2) == 1);   // v*u
    CHECK(cat.hom_at({A, B}).dim(3) == 2);   // v*t*u, t*v*u
    CHECK(check_consistency(cat).pass());

    // d(v*u) = t*u.
    QVec vu = word_vector(cat, {A, B}, 2, {2, 0});
    QVec d = cat.hom_at({A, B}).d(2).apply(vu);
    CHECK(d == word_vector(cat, {A, B}, 1, {1, 0}));

    // Composition: (t) o (u) = t*u; (t) o (t*u) = 0.
    QVec t = word_vector(cat, {B, B}, 1, {1});
    QVec u = word_vector(cat, {A, B}, 0, {0});
    CHECK(cat.compose(A, B, B, 1, 0, t, u) == word_vector(cat, {A, B}, 1, {1, 0}));
    CHECK(is_zero(cat.compose(A, B, B, 1, 1, t, word_vector(cat, {A, B}, 1, {1, 0}))));
}

TEST_CASE("structural subgroup separation kills mixed words") {
    Presentation p;
    ObjectTag H1 = ObjectTag::finite(0), H2 = ObjectTag::finite(1), T = ObjectTag::circle();
    p.objects = {H1, H2, T};
    p.generators = {
        GeneratorSpec{H1, T, 0, BasisLabel("f", {}, 0), 0, {}},
        GeneratorSpec{H2, T, 0, BasisLabel("f", {}, 1), 1, {}},
        GeneratorSpec{T, H1, 1, BasisLabel("g", {}, 0), 0, {}},
        GeneratorSpec{T, H2, 1, BasisLabel("g", {}, 1), 1, {}},
    };
    DGCategory cat = realize_presentation(p, W).cat;
    // g^H2 o f^H1 would be a composable word H1 -> H2 but mixes tags.
    CHECK(cat.hom_at({H1, H2}).support().empty());
    CHECK(cat.hom_at({H1, H1}).dim(1) == 1);  // g^H1 * f^H1
    CHECK(check_consistency(cat).pass());
}

TEST_CASE("word cap rises automatically with a warning") {
    Presentation p;
    ObjectTag B = ObjectTag::circle();
    p.objects = {B};
    p.generators = {GeneratorSpec{B, B, 1, BasisLabel("t", {}), kNoSubgroup, {}}};
    p.cap = 4;  // words t^n live up to degree 14
    RealizeResult r = realize_presentation(p, W);
    CHECK(!r.warnings.empty());
    CHECK(r.cat.hom_at({B, B}).dim(14) == 1);
}

TEST_CASE("ill-formed differentials are rejected") {
    Presentation p;
    ObjectTag B = ObjectTag::circle();
    p.objects = {B};
    // dv references a later generator.
    GeneratorSpec v{B, B, 2, BasisLabel("v", {}), kNoSubgroup, {{q(1), {1}}}};
    GeneratorSpec t{B, B, 1, BasisLabel("t", {}), kNoSubgroup, {}};
    p.generators = {v, t};
    CHECK_THROWS_AS(realize_presentation(p, W), Error);
}

TEST_CASE("deterministic rebuild") {
    DGCategory a = realize_presentation(toy(), W).cat;
    DGCategory b = realize_presentation(toy(), W).cat;
    CHECK(structurally_equal(a, b));
}
