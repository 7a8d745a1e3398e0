#include <doctest.h>
#include <fmf/rational.hpp>

#include <random>

using fmf::Rational;

TEST_CASE("rational normalizes sign and lowest terms") {
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(-3, 6).to_string() == "-1/2");
    CHECK(Rational(4).to_string() == "4/1");
}

TEST_CASE("rational parse accepts n and n/d only") {
    CHECK(Rational::parse("3") == Rational(3));
    CHECK(Rational::parse("-2/4") == Rational(-1, 2));
    CHECK_FALSE(Rational::parse("1/0"));
    CHECK_FALSE(Rational::parse("1.5"));
    CHECK_FALSE(Rational::parse(""));
    CHECK_FALSE(Rational::parse("1/"));
}

TEST_CASE("rational field laws hold on random samples") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-50, 50);
    for (int i = 0; i < 2000; ++i) {
        Rational a(d(rng), 1 + (d(rng) + 50) % 12);
        Rational b(d(rng), 1 + (d(rng) + 50) % 12);
        Rational c(d(rng), 1 + (d(rng) + 50) % 12);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK((a / b) * b == a);
        CHECK(Rational::parse(a.to_string()) == a);
        CHECK(((a < b) == (a.to_double() < b.to_double())));
    }
}
