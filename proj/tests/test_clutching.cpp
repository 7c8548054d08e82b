#include <doctest.h>

#include <string>
#include <vector>

#include "bracecalc/clutching.hpp"
#include "bracecalc/errors.hpp"

using namespace bracecalc;

namespace {

ClutchingClass cls(const ClutchingTable& t, int n, int q, std::vector<long long> free_c,
                   std::vector<long long> tor_c) {
    ClutchingClass c;
    c.n = n;
    c.q = q;
    FGAbGroup g = t.groups().group_lookup(SpaceRef::so(q + 1), n - 1);
    c.rho = GroupElement::make(g, std::move(free_c), std::move(tor_c));
    return c;
}

} // namespace

TEST_CASE("table exposes exact sequences and J columns") {
    const ClutchingTable& t = ClutchingTable::builtin();
    CHECK(t.has_exact_sequence(4));
    CHECK_FALSE(t.has_exact_sequence(5));
    CHECK_THROWS_AS(t.exact_sequence(5), MissingEntry);
    const ExactSeqSO& s = t.exact_sequence(4);
    CHECK(s.pi_n_sn == FGAbGroup::make(1, {}));
    CHECK(s.top == t.groups().group_lookup(SpaceRef::sphere(4), 7));
    CHECK(t.has_j_map(3, 3));
    GroupHom j = t.j_map(3, 3); // pi_3(SO(3)) -> pi_6(S^3) = Z_12
    CHECK(j.dom == FGAbGroup::make(1, {}));
    CHECK(j.cod == FGAbGroup::make(0, {12}));
    CHECK(j.is_surjective());
    CHECK_FALSE(t.j_map_citation(3, 3).empty());
    GroupHom sig = t.suspension(2, 5); // pi_5(S^2) -> pi_6(S^3)
    CHECK(sig.dom == FGAbGroup::make(0, {2}));
    CHECK(sig.cod == FGAbGroup::make(0, {12}));
}

TEST_CASE("exact sequence lift is a section of iota") {
    const ClutchingTable& t = ClutchingTable::builtin();
    for (int n : {2, 4, 6, 8, 10, 12}) {
        const ExactSeqSO& s = t.exact_sequence(n);
        for (int k = 0; k < s.so_n1.generator_count(); ++k) {
            GroupElement g = GroupElement::basis(s.so_n1, k);
            CHECK(s.iota.apply(s.lift(g)) == g);
        }
    }
}

TEST_CASE("trivial clutching gives a vanishing brace") {
    const ClutchingTable& t = ClutchingTable::builtin();
    ClutchedBrace b = brace_from_clutching(t, cls(t, 4, 2, {0}, {}));
    CHECK(b.resolved);
    CHECK(b.value.is_zero());
    CHECK(b.sphere == 3);
    CHECK(b.degree == 6);
    CHECK(!b.citations.empty());
}

TEST_CASE("non-suspension base keeps the brace formal") {
    const ClutchingTable& t = ClutchingTable::builtin();
    ClutchedBrace b = brace_from_clutching(t, cls(t, 4, 2, {1}, {}), false);
    CHECK_FALSE(b.resolved);
    CHECK(to_string(b.formal) == "J[eps] - J[rho]");
}

TEST_CASE("brace resolves to minus J of the clutching class") {
    const ClutchingTable& t = ClutchingTable::builtin();
    // rho a generator of pi_3(SO(3)) = Z, J onto Z_12: -J[rho] = -1 mod 12
    ClutchedBrace b = brace_from_clutching(t, cls(t, 4, 2, {1}, {}));
    CHECK(b.resolved);
    CHECK(b.value == GroupElement::make(b.value.group, {}, {11}));
}

TEST_CASE("cell structures need a stabilizing lift and scale with it") {
    const ClutchingTable& t = ClutchingTable::builtin();
    const ExactSeqSO& s = t.exact_sequence(4);

    ClutchingClass zero = cls(t, 4, 4, {0}, {});
    CHECK_THROWS_AS(thom_attaching(t, zero), MissingEntry); // no lift supplied
    zero.lift = GroupElement::zero(s.so_n);
    CHECK(thom_attaching(t, zero).attaching.is_zero());
    CHECK(thom_attaching(t, zero).thom_space == "Th(xi) = D^8 cup_{J(xi)} S^4");
    CHECK(thom_attaching(t, zero).total_space ==
          "S(xi + eps) = D^8 cup_{iota_* J(xi) + [omega]} (S^4 v S^4)");

    GroupElement xi = GroupElement::basis(s.so_n, 0);
    ClutchingClass one;
    one.n = one.q = 4;
    one.rho = s.iota.apply(xi);
    one.lift = xi;
    ClutchingClass two;
    two.n = two.q = 4;
    two.rho = s.iota.apply(xi.scaled(2));
    two.lift = xi.scaled(2);
    CellStructure c1 = thom_attaching(t, one);
    CellStructure c2 = thom_attaching(t, two);
    CHECK_FALSE(c1.attaching.is_zero());
    CHECK(c2.attaching == c1.attaching + c1.attaching);

    ClutchingClass wrong = one;
    wrong.lift = xi.scaled(3); // does not stabilize to rho
    CHECK_THROWS_AS(thom_attaching(t, wrong), SchemaError);
}

TEST_CASE("identical clutching classes are fibre homotopy equivalent") {
    const ClutchingTable& t = ClutchingTable::builtin();
    ClutchingClass c = cls(t, 12, 12, {3}, {});
    Verdict v = fibre_equiv_decision(t, c, c);
    CHECK(v.status == Status::Holds);
    CHECK(!v.citations.empty());
    ClutchingClass other = cls(t, 4, 4, {1}, {});
    CHECK_THROWS_AS(fibre_equiv_decision(t, c, other), BaseMismatch);
}

TEST_CASE("husemoller report separates im(J) from im(Sigma)") {
    const ClutchingTable& t = ClutchingTable::builtin();
    HusemollerReport hr = husemoller_report(t, cls(t, 4, 2, {1}, {}));
    CHECK(hr.j_description == "J: pi_3(SO(3)) = Z -> pi_6(S^3) = Z_12");
    CHECK(hr.j_onto);
    CHECK_FALSE(hr.sigma_onto);
    CHECK(hr.counterexample);
    CHECK_FALSE(hr.has_lift);
    CHECK_FALSE(hr.j_rho.is_zero());
    CHECK_FALSE(hr.j_rho_in_sigma_image);
    CHECK(!hr.citations.empty());
}

TEST_CASE("rectified suspension demands a lift") {
    const ClutchingTable& t = ClutchingTable::builtin();
    // pi_3(SO(2)) = 0, so a nonzero rho has no vector-bundle representative
    CHECK_THROWS_AS(husemoller_rectified(t, cls(t, 4, 2, {1}, {})), NoLift);
    // over SO(13) every class lifts through the split sequence, and the
    // rectified identity Sigma(-J xi) = J[iota_* xi] holds on the nose
    RectifiedSuspension r = husemoller_rectified(t, cls(t, 12, 12, {1}, {}));
    CHECK(r.equal);
    CHECK(r.suspended == r.j_rho);
}

TEST_CASE("whitehead square coordinates follow the Hopf pattern") {
    const ClutchingTable& t = ClutchingTable::builtin();
    CHECK(p_map(t, 2).zg_form == "(2, 0)");
    CHECK(p_map(t, 6).zg_form == "(1, 0)");
    CHECK(p_map(t, 4).zg_form == "(2, g_4)");
    CHECK_FALSE(p_map(t, 4).citation.empty());
}

TEST_CASE("shipped exact sequences pass their own audit") {
    const ClutchingTable& t = ClutchingTable::builtin();
    auto all = exactness_audit_all(t);
    CHECK(all.size() == 6);
    for (const auto& [n, v] : all) CHECK(v.status == Status::Holds);
}

TEST_CASE("a corrupted iota column is caught by the audit") {
    const ClutchingTable& t = ClutchingTable::builtin();
    ExactSeqSO s = t.exact_sequence(4);
    s.iota.cols[0] = s.iota.cols[0].scaled(2);
    CHECK_THROWS_AS(exactness_audit(t, s), AuditFailure);
}
