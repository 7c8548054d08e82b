#include <doctest.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bracecalc/errors.hpp"
#include "bracecalc/graded_lie.hpp"
#include "oracle_tensor.hpp"

using bracecalc::CapTooSmall;
using bracecalc::Generator;
using bracecalc::GradingView;
using bracecalc::LieAlgebra;
using bracecalc::LieElement;
using bracecalc::MixedDegree;
using bracecalc::Rational;
using bracecalc::UnknownGenerator;
using bracecalc::Word;

namespace {

// tiny deterministic generator for the randomized oracle comparisons
struct Rng {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    long long pick(long long lo, long long hi) {
        return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
};

LieElement random_homogeneous(const LieAlgebra& alg, Rng& rng, int sdeg) {
    auto basis = alg.graded_basis(6); // plenty for the degrees sampled below
    const auto& words = basis[static_cast<size_t>(sdeg - 1)];
    std::map<Word, Rational> terms;
    for (const auto& w : words)
        if (rng.pick(0, 2) != 0)
            terms[w] = Rational(rng.pick(-4, 4), rng.pick(1, 3));
    if (terms.empty() && !words.empty()) terms[words[0]] = Rational(1);
    return alg.element(terms, GradingView::Samelson);
}

// dimensions and bracket values of a whole algebra against the tensor oracle
void check_algebra_against_oracle(const LieAlgebra& alg, int sdeg_cap) {
    auto basis = alg.graded_basis(sdeg_cap);
    std::vector<std::vector<oracle::Tensor>> embedded(basis.size());
    for (size_t d = 0; d < basis.size(); ++d) {
        for (const auto& w : basis[d]) embedded[d].push_back(oracle::embed_word(alg, w));
        // linear independence of the claimed basis inside the envelope
        CHECK(oracle::tensor_rank(embedded[d]) == basis[d].size());
    }
    // every pairwise bracket of basis monomials must multiply out to the
    // graded commutator of the embeddings; together with independence this
    // pins both the structure constants and the dimensions
    for (int du = 1; du <= sdeg_cap; ++du)
        for (int dv = du; dv + du <= sdeg_cap; ++dv)
            for (const auto& u : basis[static_cast<size_t>(du - 1)])
                for (const auto& v : basis[static_cast<size_t>(dv - 1)]) {
                    LieElement bu = alg.element({{u, Rational(1)}}, GradingView::Samelson);
                    LieElement bv = alg.element({{v, Rational(1)}}, GradingView::Samelson);
                    oracle::Tensor want = oracle::commutator(
                        oracle::embed_word(alg, u), du, oracle::embed_word(alg, v), dv);
                    CHECK(oracle::embed(alg, alg.bracket(bu, bv)) == want);
                }
}

} // namespace

TEST_CASE("bracket of an even generator with itself vanishes") {
    LieAlgebra alg({{"x", 2}});
    LieElement x = alg.generator("x");
    CHECK(alg.bracket(x, x).is_zero());
}

TEST_CASE("square of an odd generator survives") {
    LieAlgebra alg({{"a", 1}});
    LieElement a = alg.generator("a");
    LieElement sq = alg.bracket(a, a);
    CHECK_FALSE(sq.is_zero());
    CHECK(sq.samelson_degree() == 2);
    CHECK(sq.to_string() == "[a,a]");
    // [a,[a,a]] = 0 over Q by the graded Jacobi identity
    CHECK(alg.bracket(a, sq).is_zero());
}

TEST_CASE("graded antisymmetry in Samelson degrees 1 and 2") {
    LieAlgebra alg({{"a", 1}, {"b", 2}});
    LieElement a = alg.generator("a"), b = alg.generator("b");
    // [a,b] + (-1)^{1*2} [b,a] = [a,b] + [b,a] = 0
    CHECK((alg.bracket(a, b) + alg.bracket(b, a)).is_zero());
    // and in the tensor algebra: ab - (-1)^{2} ba = ab - ba
    oracle::Tensor want{{{0, 1}, mpq_class(1)}, {{1, 0}, mpq_class(-1)}};
    CHECK(oracle::embed(alg, alg.bracket(a, b)) == want);
}

TEST_CASE("jacobi defect is identically zero and the oracle agrees") {
    LieAlgebra alg({{"a", 1}, {"b", 1}, {"c", 2}});
    Rng rng{0x5eedull};
    for (int trial = 0; trial < 40; ++trial) {
        int d1 = static_cast<int>(rng.pick(1, 3));
        int d2 = static_cast<int>(rng.pick(1, 3));
        int d3 = static_cast<int>(rng.pick(1, 3));
        LieElement x = random_homogeneous(alg, rng, d1);
        LieElement y = random_homogeneous(alg, rng, d2);
        LieElement z = random_homogeneous(alg, rng, d3);
        CHECK(alg.jacobi_defect(x, y, z).is_zero());
        // Samelson-form Jacobi, verified by multiplying out tensors:
        // [x,[y,z]] = [[x,y],z] + (-1)^{d1 d2} [y,[x,z]]
        oracle::Tensor lhs = oracle::embed(alg, alg.bracket(x, alg.bracket(y, z)));
        oracle::Tensor rhs = oracle::add(
            oracle::embed(alg, alg.bracket(alg.bracket(x, y), z)),
            oracle::scale(oracle::embed(alg, alg.bracket(y, alg.bracket(x, z))),
                          (d1 * d2) % 2 == 0 ? 1 : -1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("adjoint shift moves a generator without touching the coefficient") {
    LieAlgebra alg({{"a", 1}, {"b", 2}});
    LieElement a = alg.generator("a").scaled(Rational(3, 2));
    LieElement shifted = alg.adjoint_shift(a, GradingView::Samelson, GradingView::Whitehead);
    CHECK(shifted.view() == GradingView::Whitehead);
    CHECK(shifted.degree() == 2);
    CHECK(shifted.samelson_degree() == 1);
    CHECK(shifted.terms() == a.terms());
}

TEST_CASE("adjoint shift signs one bracket node and is an involution") {
    LieAlgebra alg({{"a", 1}, {"b", 2}});
    LieElement ab = alg.bracket(alg.generator("a"), alg.generator("b"));
    LieElement w = alg.adjoint_shift(ab, GradingView::Samelson, GradingView::Whitehead);
    // single node with left subtree a of Samelson degree k = 1: sign (-1)^1
    CHECK(w.terms().begin()->second == Rational(-1));
    CHECK(ab.terms().begin()->second == Rational(1));
    LieElement back = alg.adjoint_shift(w, GradingView::Whitehead, GradingView::Samelson);
    CHECK(back == ab);
    CHECK(back.terms() == ab.terms());
}

TEST_CASE("whitehead bracket satisfies the shifted sign rules") {
    LieAlgebra alg({{"a", 1}, {"b", 2}});
    LieElement a = alg.adjoint_shift(alg.generator("a"), GradingView::Samelson,
                                     GradingView::Whitehead);
    LieElement b = alg.adjoint_shift(alg.generator("b"), GradingView::Samelson,
                                     GradingView::Whitehead);
    // quasi-Lie antisymmetry with Whitehead degrees |a| = 2, |b| = 3:
    // [a,b] = (-1)^{2*3} [b,a]
    CHECK(alg.whitehead_bracket(a, b) == alg.whitehead_bracket(b, a));
    CHECK(alg.whitehead_bracket(a, b).view() == GradingView::Whitehead);
    CHECK(alg.whitehead_bracket(a, b).degree() == 4);
}

TEST_CASE("graded basis of a single odd generator") {
    LieAlgebra alg({{"a", 1}});
    auto basis = alg.graded_basis(4);
    REQUIRE(basis.size() == 4);
    CHECK(basis[0] == std::vector<Word>{{0}});
    CHECK(basis[1] == std::vector<Word>{{0, 0}}); // the square [a,a]
    CHECK(basis[2].empty());                      // [a,[a,a]] = 0 over Q
    CHECK(basis[3].empty());
}

TEST_CASE("graded basis of a single even generator has no square") {
    LieAlgebra alg({{"a", 2}});
    auto basis = alg.graded_basis(4);
    REQUIRE(basis.size() == 4);
    CHECK(basis[1] == std::vector<Word>{{0}}); // degree 2: the generator
    CHECK(basis[3].empty());                   // degree 4: empty, [a,a] = 0
}

TEST_CASE("two odd generators give a three-dimensional degree 2") {
    LieAlgebra alg({{"a", 1}, {"b", 1}});
    auto basis = alg.graded_basis(2);
    // [a,a], [a,b], [b,b]
    CHECK(basis[1].size() == 3);
}

TEST_CASE("basis dimensions and structure constants match the tensor oracle") {
    check_algebra_against_oracle(LieAlgebra({{"a", 1}}), 6);
    check_algebra_against_oracle(LieAlgebra({{"a", 2}}), 6);
    check_algebra_against_oracle(LieAlgebra({{"a", 1}, {"b", 1}}), 6);
    check_algebra_against_oracle(LieAlgebra({{"a", 1}, {"b", 2}}), 6);
    check_algebra_against_oracle(LieAlgebra({{"a", 2}, {"b", 3}}), 8);
    check_algebra_against_oracle(LieAlgebra({{"a", 1}, {"b", 1}, {"c", 1}}), 4);
}

TEST_CASE("element construction validates words, degrees and views") {
    LieAlgebra alg({{"a", 1}, {"b", 1}});
    CHECK_THROWS_AS(alg.element({{Word{0}, Rational(1)}, {Word{0, 1}, Rational(1)}},
                                GradingView::Samelson),
                    MixedDegree);
    CHECK_THROWS_AS(alg.element({{Word{1, 0}, Rational(1)}}, GradingView::Samelson),
                    MixedDegree); // "ba" is not a basis monomial
    CHECK_THROWS_AS(alg.element({{Word{7}, Rational(1)}}, GradingView::Samelson),
                    UnknownGenerator);
    CHECK_THROWS_AS(alg.generator("zz"), UnknownGenerator);
    CHECK_THROWS_AS(alg.graded_basis(0), CapTooSmall);
    CHECK(alg.zero().is_zero());
    CHECK(alg.zero().to_string() == "0");
}

TEST_CASE("mixing algebras is rejected") {
    LieAlgebra one({{"a", 1}});
    LieAlgebra other({{"b", 1}});
    CHECK_THROWS_AS(one.bracket(one.generator("a"), other.generator("b")),
                    UnknownGenerator);
    // structurally identical algebras interoperate: identity is by value
    LieAlgebra twin({{"a", 1}});
    CHECK(one.bracket(one.generator("a"), twin.generator("a")) ==
          one.element({{Word{0, 0}, Rational(1)}}, GradingView::Samelson));
}

TEST_CASE("word helpers expose the standard bracketing") {
    LieAlgebra alg({{"a", 1}, {"b", 2}});
    Word ab{0, 1};
    CHECK(alg.word_degree(ab) == 3);
    CHECK(alg.word_to_string(ab) == "[a,b]");
    auto [l, r] = alg.word_children(ab);
    CHECK(l == Word{0});
    CHECK(r == Word{1});
    Word sq{0, 0};
    auto [sl, sr] = alg.word_children(sq);
    CHECK(sl == Word{0});
    CHECK(sr == Word{0});
    CHECK(alg.shift_sign(sq) == -1); // left subtree a has odd Samelson degree
    CHECK_THROWS_AS(alg.word_children(Word{0}), MixedDegree);
}

TEST_CASE("bracket is bilinear over the rationals") {
    LieAlgebra alg({{"a", 1}, {"b", 1}, {"c", 2}});
    Rng rng{0xb117ull};
    for (int trial = 0; trial < 25; ++trial) {
        int d1 = static_cast<int>(rng.pick(1, 3));
        int d2 = static_cast<int>(rng.pick(1, 3));
        LieElement x = random_homogeneous(alg, rng, d1);
        LieElement y = random_homogeneous(alg, rng, d1);
        LieElement z = random_homogeneous(alg, rng, d2);
        Rational c(rng.pick(-5, 5), rng.pick(1, 4));
        CHECK(alg.bracket(x + y, z) == (alg.bracket(x, z) + alg.bracket(y, z)));
        CHECK(alg.bracket(z, x.scaled(c)) == alg.bracket(z, x).scaled(c));
    }
}
