#include <doctest.h>

#include <random>

#include "azurep/matrix.hpp"

using namespace azurep;

TEST_CASE("rational scalars are exact") {
    const ExactField Q = ExactField::rationals();
    const Scalar a = Q.parse("1/3");
    const Scalar b = Q.parse("1/6");
    CHECK((a + b) == Q.parse("1/2"));
    CHECK((a * b) == Q.parse("1/18"));
    CHECK((a - a).is_zero());
    CHECK(a.inverse() == Q.from_int(3));
    CHECK(Q.from_int(-7).pow(2) == Q.from_int(49));
}

TEST_CASE("prime field arithmetic") {
    const ExactField F5 = ExactField::prime_field(5);
    CHECK(F5.from_int(7) == F5.from_int(2));
    CHECK(F5.from_int(-1) == F5.from_int(4));
    CHECK((F5.from_int(3) * F5.from_int(4)) == F5.from_int(2));
    CHECK(F5.from_int(3).inverse() == F5.from_int(2));
    CHECK(F5.from_rational(Rational("1/2")) == F5.from_int(3));
    CHECK_THROWS_AS(ExactField::prime_field(6), InputError);
    CHECK_THROWS_AS((void)F5.from_int(0).inverse(), InputError);
}

TEST_CASE("field mixing is rejected") {
    const Scalar a = ExactField::rationals().one();
    const Scalar b = ExactField::prime_field(3).one();
    CHECK_THROWS_AS((void)(a + b), InputError);
}

TEST_CASE("rref, rank and inverse over F_5") {
    const ExactField F = ExactField::prime_field(5);
    Mat m(F, 3, 3);
    const std::int64_t vals[3][3] = {{1, 2, 0}, {0, 1, 4}, {2, 0, 1}};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = F.from_int(vals[r][c]);
    CHECK(rank(m) == 3);
    const auto inv = inverse(m);
    REQUIRE(inv.has_value());
    CHECK((*inv * m) == Mat::identity(F, 3));
}

TEST_CASE("solve and null space agree with a hand-checked system") {
    const ExactField Q = ExactField::rationals();
    // x + y = 3, 2x + 2y = 6: one pivot, one free variable
    Mat a(Q, 2, 2);
    a.at(0, 0) = Q.one(); a.at(0, 1) = Q.one();
    a.at(1, 0) = Q.from_int(2); a.at(1, 1) = Q.from_int(2);
    const auto x = solve(a, Vec{Q.from_int(3), Q.from_int(6)});
    REQUIRE(x.has_value());
    CHECK((a * *x) == Vec{Q.from_int(3), Q.from_int(6)});
    CHECK(null_space(a).size() == 1);
    CHECK(!solve(a, Vec{Q.from_int(3), Q.from_int(7)}).has_value());
}

TEST_CASE("random matrices: inverse round trip and rank bounds") {
    const ExactField F = ExactField::prime_field(7);
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        Mat m(F, 4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                m.at(r, c) = F.from_int(static_cast<std::int64_t>(rng() % 7));
        const auto inv = inverse(m);
        if (inv) {
            CHECK((m * *inv) == Mat::identity(F, 4));
            CHECK(rank(m) == 4);
        } else {
            CHECK(rank(m) < 4);
        }
    }
}

TEST_CASE("span comparison is representation independent") {
    const ExactField Q = ExactField::rationals();
    const Vec e1{Q.one(), Q.zero(), Q.zero()};
    const Vec e2{Q.zero(), Q.one(), Q.zero()};
    const Vec sum = e1 + e2;
    CHECK(spans_equal(Q, {e1, e2}, {sum, e2}, 3));
    CHECK(!spans_equal(Q, {e1}, {e2}, 3));
    CHECK(in_span(Q, {e1, e2}, sum));
    CHECK(!in_span(Q, {e1}, e2));
}

TEST_CASE("kronecker product shape and values") {
    const ExactField F = ExactField::prime_field(3);
    Mat a(F, 1, 2);
    a.at(0, 0) = F.from_int(2);
    a.at(0, 1) = F.one();
    const Mat k = kronecker(a, Mat::identity(F, 2));
    CHECK(k.rows() == 2);
    CHECK(k.cols() == 4);
    CHECK(k.at(0, 0) == F.from_int(2));
    CHECK(k.at(1, 3) == F.one());
    CHECK(k.at(0, 1) == F.zero());
}
