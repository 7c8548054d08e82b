#include <doctest.h>

#include <optional>
#include <vector>

#include "bracecalc/abelian.hpp"
#include "bracecalc/errors.hpp"

using namespace bracecalc;

namespace {

IntMat mat_mul(const IntMat& a, const IntMat& b) {
    IntMat out(a.size(), std::vector<long long>(b[0].size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < b.size(); ++k)
            for (size_t j = 0; j < b[0].size(); ++j)
                out[i][j] += a[i][k] * b[k][j];
    return out;
}

long long det3(const IntMat& m) {
    if (m.size() == 1) return m[0][0];
    if (m.size() == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

} // namespace

TEST_CASE("smith normal form produces dividing factors and unimodular transforms") {
    IntMat A{{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}};
    SmithResult s = smith_normal_form(A);
    REQUIRE(s.factors.size() == 3);
    CHECK(s.factors == std::vector<long long>{2, 2, 156});
    for (size_t i = 0; i + 1 < s.factors.size(); ++i)
        if (s.factors[i + 1] != 0) CHECK(s.factors[i + 1] % s.factors[i] == 0);
    CHECK((det3(s.U) == 1 || det3(s.U) == -1));
    CHECK((det3(s.V) == 1 || det3(s.V) == -1));
    IntMat uav = mat_mul(mat_mul(s.U, A), s.V);
    for (size_t i = 0; i < uav.size(); ++i)
        for (size_t j = 0; j < uav[i].size(); ++j)
            CHECK(uav[i][j] == (i == j ? s.factors[i] : 0));
}

TEST_CASE("group normalization sorts arbitrary torsion into a divisor chain") {
    bool changed = false;
    FGAbGroup g = FGAbGroup::make(1, {4, 2}, &changed);
    CHECK(changed);
    CHECK(g.torsion == std::vector<long long>{2, 4});
    CHECK(g.to_string() == "Z + Z_2 + Z_4");
    CHECK(g.torsion_order() == 8);

    changed = false;
    FGAbGroup h = FGAbGroup::make(0, {2, 4}, &changed);
    CHECK_FALSE(changed);

    // ones are dropped, non-chains like {2, 3} become {6}
    FGAbGroup k = FGAbGroup::make(0, {3, 2, 1}, &changed);
    CHECK(changed);
    CHECK(k.torsion == std::vector<long long>{6});
    CHECK(FGAbGroup::make(0, {}).is_trivial());
    CHECK(FGAbGroup::make(0, {}).to_string() == "0");
}

TEST_CASE("cokernel presentation recovers the canonical form") {
    // Z^3 / <(2,0,0), (0,3,0)> = Z + Z_2 + Z_3 = Z + Z_6
    FGAbGroup g = FGAbGroup::from_relations(3, {{2, 0, 0}, {0, 3, 0}});
    CHECK(g.free_rank == 1);
    CHECK(g.torsion == std::vector<long long>{6});
}

TEST_CASE("element arithmetic reduces torsion coordinates") {
    FGAbGroup g = FGAbGroup::make(1, {12});
    GroupElement a = GroupElement::make(g, {2}, {7});
    GroupElement b = GroupElement::make(g, {-1}, {9});
    GroupElement sum = a + b;
    CHECK(sum.free_c == std::vector<long long>{1});
    CHECK(sum.tor_c == std::vector<long long>{4});
    CHECK((a - a).is_zero());
    CHECK(a.scaled(12).tor_c == std::vector<long long>{0});
    CHECK((-a).tor_c == std::vector<long long>{5});
    CHECK(GroupElement::zero(g).is_zero());
    CHECK(GroupElement::basis(g, 0).free_c == std::vector<long long>{1});
    CHECK(GroupElement::basis(g, 1).tor_c == std::vector<long long>{1});
}

TEST_CASE("element rendering uses labels when present") {
    FGAbGroup g = FGAbGroup::make(1, {12});
    g.torsion_labels = {"g_4"};
    GroupElement x = GroupElement::make(g, {2}, {3});
    CHECK(x.to_string() == "(2, 3*g_4)");
    FGAbGroup z = FGAbGroup::make(2, {});
    CHECK(GroupElement::make(z, {4, -1}, {}).to_string() == "(4, -1)");
    CHECK(GroupElement::zero(z).to_string() == "0");
}

TEST_CASE("homomorphisms check well-definedness and compute images") {
    FGAbGroup dom = FGAbGroup::make(0, {2});
    FGAbGroup cod = FGAbGroup::make(0, {4});
    // Z_2 -> Z_4 sending the generator to 2 is a homomorphism...
    GroupHom h = GroupHom::make(dom, cod, {GroupElement::make(cod, {}, {2})});
    CHECK(h.apply(GroupElement::basis(dom, 0)).tor_c == std::vector<long long>{2});
    CHECK_FALSE(h.is_surjective());
    // ...sending it to 1 is not (2 * 1 != 0 in Z_4)
    CHECK_THROWS_AS(GroupHom::make(dom, cod, {GroupElement::make(cod, {}, {1})}),
                    SchemaError);
    // Z -> Z_4 by 1 -> 1 is onto
    GroupHom onto = GroupHom::make(FGAbGroup::make(1, {}), cod,
                                   {GroupElement::make(cod, {}, {1})});
    CHECK(onto.is_surjective());
}

TEST_CASE("membership, kernels and integer solving") {
    FGAbGroup g = FGAbGroup::make(1, {12});
    GroupElement two_tor = GroupElement::make(g, {0}, {2});
    GroupElement free_one = GroupElement::make(g, {1}, {0});
    auto sol = solve_in_group({two_tor, free_one}, GroupElement::make(g, {3}, {8}));
    REQUIRE(sol.has_value());
    CHECK((*sol)[1] == 3);
    CHECK(((*sol)[0] * 2) % 12 == 8);
    // (0, 1) is not in <(0, 2)>
    CHECK_FALSE(solve_in_group({two_tor}, GroupElement::make(g, {0}, {1})).has_value());

    // kernel of Z -> Z_12, 1 -> 4: generated by 3
    GroupHom h = GroupHom::make(FGAbGroup::make(1, {}), FGAbGroup::make(0, {12}),
                                {GroupElement::make(FGAbGroup::make(0, {12}), {}, {4})});
    auto ker = kernel_generators(h);
    REQUIRE(!ker.empty());
    for (const auto& k : ker) CHECK(h.apply(k).is_zero());
    CHECK(solve_in_group(ker, GroupElement::make(h.dom, {3}, {})).has_value());
    CHECK_FALSE(solve_in_group(ker, GroupElement::make(h.dom, {1}, {})).has_value());

    auto x = integer_solve({{2, 0}, {0, 3}}, {4, 9});
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<long long>{2, 3});
    CHECK_FALSE(integer_solve({{2}}, {3}).has_value());
}

TEST_CASE("rationalization kills torsion and keeps free rank") {
    CHECK(rationalize(FGAbGroup::make(0, {12})) == 0);
    CHECK(rationalize(FGAbGroup::make(1, {2})) == 1);
    CHECK(rationalize(FGAbGroup::make(2, {})) == 2);
    GroupElement x = GroupElement::make(FGAbGroup::make(1, {2}), {5}, {1});
    CHECK(rationalize_element(x) == std::vector<Rational>{Rational(5)});
}
