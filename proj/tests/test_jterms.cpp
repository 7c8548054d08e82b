#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "bracecalc/jterms.hpp"

using namespace bracecalc;

namespace {

JNode rho() { return JNode::atom(JAtom::Kind::Rho, "rho"); }
JNode rho2() { return JNode::atom(JAtom::Kind::Rho, "sigma"); }

struct Rng {
    uint64_t s;
    uint64_t next() {
        uint64_t z = (s += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
};

} // namespace

TEST_CASE("J is additive") {
    // J[rho + sigma] - J[rho] - J[sigma] normalizes to zero
    JNode expr = JNode::sum({JNode::j(JNode::sum({rho(), rho2()})),
                             JNode::scale(-1, JNode::j(rho())),
                             JNode::scale(-1, JNode::j(rho2()))});
    CHECK(j_normal_form(expr, false).empty());
    CHECK(to_string(j_normal_form(expr, false)) == "0");
}

TEST_CASE("scalars move through J") {
    JNode expr = JNode::j(JNode::scale(3, rho()));
    JNormalForm nf = j_normal_form(expr, false);
    REQUIRE(nf.size() == 1);
    CHECK(nf[0].coeff == 3);
    CHECK(nf[0].pushforwards.empty());
    CHECK(nf[0].atom == JAtom{JAtom::Kind::Rho, "rho"});
    CHECK(to_string(nf) == "3 J[rho]");
}

TEST_CASE("epsilon dies over a suspension base and survives otherwise") {
    JNode expr = JNode::j(JNode::atom(JAtom::Kind::Epsilon, "eps"));
    CHECK(j_normal_form(expr, true).empty());
    JNormalForm kept = j_normal_form(expr, false);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].atom.kind == JAtom::Kind::Epsilon);
}

TEST_CASE("constant classifying maps give zero") {
    JNode expr = JNode::j(JNode::atom(JAtom::Kind::ConstMap, "c"));
    CHECK(j_normal_form(expr, false).empty());
}

TEST_CASE("naturality turns composition into pushforward") {
    // J[phi . rho] - phi_* J[rho] -> 0
    JNode expr = JNode::sum({JNode::j(JNode::compose("phi", rho())),
                             JNode::scale(-1, JNode::push("phi", JNode::j(rho())))});
    CHECK(j_normal_form(expr, false).empty());
    // and the pushforward order is outermost-first in the normal form
    JNode nested = JNode::push("psi", JNode::j(JNode::compose("phi", rho())));
    JNormalForm nf = j_normal_form(nested, false);
    REQUIRE(nf.size() == 1);
    CHECK(nf[0].pushforwards == std::vector<std::string>{"psi", "phi"});
    CHECK(to_string(nf) == "psi_* phi_* J[rho]");
}

TEST_CASE("like terms merge and cancellations drop out") {
    JNode expr = JNode::sum({JNode::j(rho()), JNode::j(rho()),
                             JNode::scale(-2, JNode::j(rho())), JNode::j(rho2())});
    JNormalForm nf = j_normal_form(expr, false);
    REQUIRE(nf.size() == 1);
    CHECK(nf[0].atom.name == "sigma");
    CHECK(nf[0].coeff == 1);
}

TEST_CASE("randomized redex order always reaches the same normal form") {
    // a deliberately redex-rich expression
    JNode expr = JNode::sum(
        {JNode::j(JNode::sum({JNode::scale(2, rho()),
                              JNode::compose("phi", JNode::sum({rho2(), rho2()})),
                              JNode::atom(JAtom::Kind::Epsilon, "eps")})),
         JNode::push("psi", JNode::j(JNode::scale(-1, JNode::compose("phi", rho())))),
         JNode::scale(3, JNode::j(JNode::atom(JAtom::Kind::ConstMap, "c")))});
    for (bool base_is_suspension : {false, true}) {
        JNormalForm want = j_normal_form(expr, base_is_suspension);
        Rng rng{base_is_suspension ? 0xabcull : 0xdefull};
        for (int trial = 0; trial < 50; ++trial) {
            JNode cur = expr;
            int guard = 0;
            for (;;) {
                auto redexes = j_redexes(cur, base_is_suspension);
                if (redexes.empty()) break;
                cur = j_apply_redex(cur, redexes[rng.next() % redexes.size()]);
                REQUIRE(++guard < 10000); // termination
            }
            CHECK(j_read_normal_form(cur) == want);
        }
    }
}
