#include <doctest.h>

#include <limits>

#include "bracecalc/rational.hpp"

using bracecalc::OverflowError;
using bracecalc::Rational;

TEST_CASE("rational arithmetic is exact and normalized") {
    Rational a(1, 3), b(1, 6);
    CHECK((a + b) == Rational(1, 2));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 18));
    CHECK((a / b) == Rational(2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational());
    CHECK((-Rational(5, 3)) == Rational(-5, 3));
}

TEST_CASE("rational predicates and ordering") {
    CHECK(Rational().is_zero());
    CHECK(Rational(4, 2).is_integer());
    CHECK_FALSE(Rational(1, 2).is_integer());
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1) < Rational(-1, 2));
    CHECK(Rational(7, 2).to_string() == "7/2");
    CHECK(Rational(-6, 3).to_string() == "-2");
}

TEST_CASE("rational arithmetic refuses to wrap") {
    long long big = std::numeric_limits<long long>::max();
    Rational m(big);
    CHECK_THROWS_AS(m + Rational(1), OverflowError);
    CHECK_THROWS_AS(m * Rational(2), OverflowError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), OverflowError);
    CHECK_THROWS_AS(Rational(1, 0), OverflowError);
    // near-overflow values that reduce back into range must succeed
    CHECK((Rational(big, 2) * Rational(2, big)) == Rational(1));
}

TEST_CASE("compound assignment matches the binary operators") {
    Rational r(3, 4);
    r += Rational(1, 4);
    CHECK(r == Rational(1));
    r -= Rational(1, 2);
    CHECK(r == Rational(1, 2));
    r *= Rational(6);
    CHECK(r == Rational(3));
}
