#include <doctest.h>

#include <string>
#include <vector>

#include "bracecalc/errors.hpp"
#include "bracecalc/fibration.hpp"

using namespace bracecalc;

namespace {

LieElement wgen(const LieAlgebra& alg, const std::string& name) {
    return alg.adjoint_shift(alg.generator(name), GradingView::Samelson,
                             GradingView::Whitehead);
}

// model of the free loop fibration on S^2: base generator Id (Whitehead
// degree 2), fibre generators u = ad iota (degree 2) and v = ad gamma
// (degree 3), pairing {Id, u}_s = 2v.
SplitFibration loop_model() {
    LieAlgebra base({{"Id", 1}});
    LieAlgebra fibre({{"u", 1}, {"v", 2}});
    BraceEntry e;
    e.base_word = {0};
    e.fibre_word = {0};
    e.value = fibre.adjoint_shift(fibre.generator("v").scaled(Rational(2)),
                                  GradingView::Samelson, GradingView::Whitehead);
    // keep the source algebras alive while the constructor re-homes e.value
    return SplitFibration(base, fibre, {e});
}

SplitFibration trivial_pairing() {
    return SplitFibration(LieAlgebra({{"Id", 1}}), LieAlgebra({{"w", 1}}), {});
}

// a composite-row pairing that contradicts the derivation identity:
// {a, c} = 0 but {a, [c,c]} != 0
SplitFibration broken_pairing() {
    LieAlgebra base({{"a", 1}});
    LieAlgebra fibre({{"c", 1}, {"e", 2}});
    BraceEntry bad;
    bad.base_word = {0};
    bad.fibre_word = {0, 0}; // [c,c]
    bad.value = fibre.adjoint_shift(
        fibre.element({{Word{0, 1}, Rational(1)}}, GradingView::Samelson),
        GradingView::Samelson, GradingView::Whitehead);
    return SplitFibration(base, fibre, {bad});
}

} // namespace

TEST_CASE("james brace is bilinear and vanishes on zero") {
    SplitFibration fib = loop_model();
    LieElement id = wgen(fib.base(), "Id");
    LieElement u = wgen(fib.fibre(), "u");
    CHECK(fib.james_brace(id, fib.fibre().zero()).is_zero());
    CHECK(fib.james_brace(fib.base().zero(), u).is_zero());
    LieElement br = fib.james_brace(id, u);
    CHECK(br.degree() == 3); // |Id| + |u| - 1
    CHECK(br.view() == GradingView::Whitehead);
    CHECK(br == wgen(fib.fibre(), "v").scaled(Rational(2)));
    CHECK(fib.james_brace(id.scaled(Rational(3)), u) == br.scaled(Rational(3)));
    CHECK(fib.james_brace(id, u.scaled(Rational(1, 2))) == br.scaled(Rational(1, 2)));
}

TEST_CASE("unlisted pairs brace to zero") {
    SplitFibration fib = loop_model();
    LieElement id = wgen(fib.base(), "Id");
    LieElement v = wgen(fib.fibre(), "v");
    CHECK(fib.james_brace(id, v).is_zero());
}

TEST_CASE("assembling a consistent pairing lists the mixed relations") {
    TotalLie tot = assemble_total_lie(loop_model(), 10);
    REQUIRE(tot.base_generators.size() == 1);
    REQUIRE(tot.fibre_generators.size() == 2);
    CHECK(tot.triples_checked > 0);
    REQUIRE(tot.relations.size() == 2);
    CHECK(tot.relations[0] == "[Id, u] = 2*v");
    CHECK(tot.relations[1] == "[Id, v] = 0");
    CHECK(assemble_total_lie(trivial_pairing(), 8).triples_checked > 0);
    CHECK_THROWS_AS(assemble_total_lie(loop_model(), 2), CapTooSmall);
}

TEST_CASE("a pairing that breaks the derivation identity is rejected") {
    SplitFibration fib = broken_pairing();
    LieElement a = wgen(fib.base(), "a");
    LieElement c = wgen(fib.fibre(), "c");
    Verdict v = derivation_identity_check(fib, a, c, c);
    CHECK(v.status == Status::Fails);
    CHECK(!v.witness.empty());
    try {
        assemble_total_lie(fib, 8);
        FAIL("expected InvalidPairing");
    } catch (const InvalidPairing& e) {
        CHECK(std::string(e.what()).find("(a, c, c)") != std::string::npos);
        CHECK(std::string(e.what()).find("defect") != std::string::npos);
    }
}

TEST_CASE("identity checks pass on the consistent model") {
    SplitFibration fib = loop_model();
    LieElement id = wgen(fib.base(), "Id");
    LieElement u = wgen(fib.fibre(), "u");
    LieElement v = wgen(fib.fibre(), "v");
    CHECK(derivation_identity_check(fib, id, u, v).status == Status::Holds);
    CHECK(lie_map_identity_check(fib, id, id, u).status == Status::Holds);
    CHECK(fib.derivation_defect(id, u, u).is_zero());
    CHECK(fib.lie_map_defect(id, id, v).is_zero());
}

TEST_CASE("pullbacks scale the brace by the degree of the map") {
    SplitFibration fib = loop_model();
    LieElement id = wgen(fib.base(), "Id");
    LieElement u = wgen(fib.fibre(), "u");
    LieElement br = fib.james_brace(id, u);
    CHECK(brace_pullback(fib, 0, id, u).is_zero()); // null composite
    CHECK(brace_pullback(fib, 1, id, u) == br);     // identity pullback
    CHECK(brace_pullback(fib, 2, id, u) == br.scaled(Rational(2)));
}

TEST_CASE("product fibrations brace componentwise") {
    SplitFibration fib1 = loop_model();
    SplitFibration fib2 = trivial_pairing();
    LieElement id = wgen(fib1.base(), "Id");
    LieElement u = wgen(fib1.fibre(), "u");
    LieElement w = wgen(fib2.fibre(), "w");
    auto [left, right] = brace_product_fibration(fib1, fib2, id, u, w);
    CHECK(left == fib1.james_brace(id, u)); // = 2v, the loop-model brace
    CHECK(right.is_zero());

    SplitFibration other(LieAlgebra({{"Id", 2}}), LieAlgebra({{"w", 1}}), {});
    CHECK_THROWS_AS(brace_product_fibration(fib1, other, id, u, w), BaseMismatch);
}

TEST_CASE("free loop brace on S^2 is twice the Hopf class") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    SpaceClass f;
    f.space = SpaceRef::sphere(2);
    f.degree = 2;
    f.value = GroupElement::make(ht.group_lookup(f.space, 2), {1}, {});
    f.label = "Id";
    LoopClass g;
    g.cls = f;
    g.shift = 1;
    FreeLoopBraceResult r = free_loop_brace(ht, 1, f, g);
    CHECK_FALSE(r.is_zero());
    CHECK(r.to_string() == "2 ad gamma");
    CHECK(r.value.degree() == 2);
    CHECK(!r.citations.empty());
}

TEST_CASE("free loop brace validates its inputs") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    SpaceClass f;
    f.space = SpaceRef::sphere(2);
    f.degree = 2;
    f.value = GroupElement::make(ht.group_lookup(f.space, 2), {1}, {});
    LoopClass g;
    g.cls = f;
    g.shift = 1;
    CHECK_THROWS_AS(free_loop_brace(ht, 2, f, g), BaseMismatch); // shift != m
    LoopClass low;
    low.cls = f;
    low.cls.degree = 2;
    low.shift = 2;
    CHECK_THROWS_AS(free_loop_brace(ht, 2, f, low), DegreeOutOfRange);
    SpaceClass other = f;
    other.space = SpaceRef::sphere(3);
    other.degree = 3;
    other.value = GroupElement::make(ht.group_lookup(other.space, 3), {1}, {});
    CHECK_THROWS_AS(free_loop_brace(ht, 1, other, g), BaseMismatch);
    // no Whitehead row for [pi_4(S^3), pi_3(S^3)]
    SpaceClass f3 = other;
    LoopClass g3;
    g3.cls = other;
    g3.cls.degree = 4;
    g3.cls.value = GroupElement::make(ht.group_lookup(f3.space, 4), {}, {1});
    g3.shift = 1;
    CHECK_THROWS_AS(free_loop_brace(ht, 1, f3, g3), MissingEntry);
}

TEST_CASE("surface sphere bundles separate the two verdicts") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    SurfaceBundleReport flat = surface_bundle_report(ht, 1, 2, false);
    CHECK(flat.james.status == Status::Holds);
    CHECK(flat.product.status == Status::Holds);
    CHECK(flat.w_class == "w(T S(zeta)) = 1 + pi^*w_2(zeta)");

    SurfaceBundleReport twisted = surface_bundle_report(ht, 1, 2, true);
    CHECK(twisted.james.status == Status::Holds);
    CHECK(twisted.james.caveats ==
          std::vector<std::string>{caveat_generalized_brace_not_implied});
    CHECK(twisted.product.status == Status::Fails);
    CHECK(twisted.product.witness == "pi^*w_2(zeta) != 0 in H^2(S(zeta); Z/2)");

    SurfaceBundleReport high = surface_bundle_report(ht, 3, 5, true);
    CHECK(high.james.status == Status::Holds);
    CHECK(high.product.status == Status::Fails);
    CHECK_THROWS_AS(surface_bundle_report(ht, 0, 2, false), Unsupported);
}

TEST_CASE("sphere-over-sphere splitting is decided by the brace value") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    FGAbGroup g = ht.group_lookup(SpaceRef::sphere(3), 6); // Z_12
    CHECK(sphere_over_sphere_split(ht, 4, 3, GroupElement::zero(g)).status ==
          Status::Holds);
    Verdict v = sphere_over_sphere_split(ht, 4, 3, GroupElement::make(g, {}, {5}));
    CHECK(v.status == Status::Fails);
    CHECK(v.witness.find("(5*nu')") != std::string::npos);
}

TEST_CASE("descriptors parse and drive the splitting verdicts") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    const ClutchingTable& ct = ClutchingTable::builtin();

    FibrationDescriptor wedge = FibrationDescriptor::parse(R"({
        "schema": "fibration/1", "kind": "wedge-over-wedge",
        "base_dims": [4], "fibre_dims": [3], "braces": []
    })", ht);
    CHECK(wedge.kind_name() == "wedge-over-wedge");
    CHECK(h_split_verdict(ht, ct, wedge).status == Status::Holds);

    FibrationDescriptor obstructed = FibrationDescriptor::parse(R"({
        "schema": "fibration/1", "kind": "wedge-over-wedge",
        "base_dims": [4], "fibre_dims": [3],
        "braces": [{"base_dim": 4, "fibre_dim": 3, "witness": "[iota_4, iota_3]"}]
    })", ht);
    Verdict v = h_split_verdict(ht, ct, obstructed);
    CHECK(v.status == Status::Fails);
    CHECK(v.witness.find("[iota_4, iota_3]") != std::string::npos);

    FibrationDescriptor loops = FibrationDescriptor::parse(R"({
        "schema": "fibration/1", "kind": "free-loop", "m": 2, "space": "S2"
    })", ht);
    Verdict vl = h_split_verdict(ht, ct, loops);
    CHECK(vl.status == Status::Holds);

    CHECK_THROWS_AS(FibrationDescriptor::parse("{]", ht), SchemaError);
    CHECK_THROWS_AS(FibrationDescriptor::parse(R"({"schema": "fibration/2"})", ht),
                    SchemaError);
    CHECK_THROWS_AS(
        FibrationDescriptor::parse(R"({"schema": "fibration/1", "kind": "moebius"})", ht),
        Unsupported);
}

TEST_CASE("rational verdicts know where they do not apply") {
    const HomotopyTable& ht = HomotopyTable::builtin();
    const ClutchingTable& ct = ClutchingTable::builtin();
    FibrationDescriptor surface = FibrationDescriptor::parse(R"({
        "schema": "fibration/1", "kind": "surface-bundle",
        "genus": 1, "n": 2, "w2_nonzero": true
    })", ht);
    CHECK_THROWS_AS(rational_verdicts(ht, ct, surface), Unsupported);

    FibrationDescriptor homog = FibrationDescriptor::parse(R"json({
        "schema": "fibration/1", "kind": "homogeneous",
        "total": "SU(3)", "subgroup_sphere": 3, "base_sphere": 5
    })json", ht);
    CHECK(h_split_verdict(ht, ct, homog).status == Status::Fails);
    Verdict vr = rational_verdicts(ht, ct, homog);
    CHECK(vr.status == Status::Holds);
    CHECK(vr.caveats == std::vector<std::string>{caveat_converse_fails});
}
