#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freenc/polynomial.hpp"

using freenc::MatTuple;
using freenc::Matrix;
using freenc::NcPolynomial;
using freenc::Rational;
using freenc::Word;

namespace {

std::mt19937_64 rng(77);

Rational small_rational() {
    std::uniform_int_distribution<int> num(-2, 2);
    return Rational(num(rng));
}

MatTuple<Rational> random_tuple(int d, int n) {
    MatTuple<Rational> x(d, n);
    for (int j = 0; j < d; ++j)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) x[j](a, b) = small_rational();
    return x;
}

NcPolynomial<Rational> random_poly(int d, int deg, int terms) {
    NcPolynomial<Rational> p(d);
    std::uniform_int_distribution<int> len(0, deg), letter(1, d), coeff(-3, 3);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> ls(static_cast<std::size_t>(len(rng)));
        for (auto& l : ls) l = letter(rng);
        p.add_term(Word(std::move(ls)), Rational(coeff(rng)));
    }
    return p;
}

using P = NcPolynomial<Rational>;

P var(int d, int j) { return P::variable(d, j); }

}  // namespace

TEST_CASE("addition and cancellation") {
    P x1 = var(2, 1), x2 = var(2, 2);
    CHECK((x1 + (-x1)).is_zero());
    P sum = x1 * x2 + x2 * x1;
    CHECK(sum.coefficient(Word({1, 2})) == Rational(1));
    CHECK(sum.coefficient(Word({2, 1})) == Rational(1));
    CHECK(Rational(2) * x1 + Rational(3) * x1 == Rational(5) * x1);
    CHECK_THROWS_AS(var(2, 1) + var(3, 1), freenc::ArgumentError);
}

TEST_CASE("multiplication is convolution over concatenation") {
    P x1 = var(2, 1), x2 = var(2, 2);
    CHECK(x1 * x2 == P::monomial(2, Word({1, 2}), Rational(1)));
    P lhs = (x1 + x2) * (x1 - x2);
    P expect = x1 * x1 - x1 * x2 + x2 * x1 - x2 * x2;
    CHECK(lhs == expect);
    P one = P::constant(2, Rational(1));
    P p = random_poly(2, 3, 6);
    CHECK(one * p == p);
    CHECK(p * one == p);
}

TEST_CASE("degree conventions") {
    CHECK(!P(2).degree().has_value());
    P p = var(2, 1) * var(2, 2) * var(2, 1) + var(2, 2);
    CHECK(p.degree() == 3);
    CHECK(P::constant(2, Rational(5)).degree() == 0);
}

TEST_CASE("homogeneous parts partition the polynomial") {
    P p = var(2, 1) + var(2, 1) * var(2, 2);
    CHECK(p.homogeneous_part(2) == var(2, 1) * var(2, 2));
    CHECK(p.homogeneous_part(0).is_zero());
    for (int trial = 0; trial < 20; ++trial) {
        P q = random_poly(3, 4, 8);
        P sum(3);
        for (int j = 0; j <= 4; ++j) sum = sum + q.homogeneous_part(j);
        CHECK(sum == q);
    }
}

TEST_CASE("evaluation basics") {
    P c = P::constant(2, Rational(7));
    MatTuple<Rational> x = random_tuple(2, 2);
    CHECK(c.eval(x) == Matrix<Rational>::scalar(2, Rational(7)));
    CHECK(var(2, 1).eval(x) == x[0]);
    // commutator vanishes on a commuting pair
    MatTuple<Rational> comm(2, 2);
    comm[0] = Matrix<Rational>::scalar(2, Rational(3));
    comm[1] = random_tuple(1, 2)[0];
    P commutator = var(2, 1) * var(2, 2) - var(2, 2) * var(2, 1);
    CHECK(commutator.eval(comm).is_zero());
}

TEST_CASE("evaluation is a unital algebra morphism") {
    for (int trial = 0; trial < 25; ++trial) {
        int d = 1 + trial % 3, n = 1 + trial % 4;
        P p = random_poly(d, 3, 5), q = random_poly(d, 3, 5);
        MatTuple<Rational> x = random_tuple(d, n);
        CHECK((p * q).eval(x) == p.eval(x) * q.eval(x));
        CHECK((p + q).eval(x) == p.eval(x) + q.eval(x));
        CHECK(P::constant(d, Rational(1)).eval(x) == Matrix<Rational>::identity(n));
    }
}

TEST_CASE("evaluation respects direct sums and similarities") {
    for (int trial = 0; trial < 15; ++trial) {
        int d = 1 + trial % 2;
        P p = random_poly(d, 3, 5);
        MatTuple<Rational> x = random_tuple(d, 2), y = random_tuple(d, 3);
        CHECK(p.eval(direct_sum(x, y)) == direct_sum(p.eval(x), p.eval(y)));
        // invertible similarity
        Matrix<Rational> t(2, 2);
        while (true) {
            t = random_tuple(1, 2)[0];
            if (freenc::try_invert(t)) break;
        }
        Matrix<Rational> tinv = freenc::invert(t);
        CHECK(p.eval(conjugate(t, x, tinv)) == t * p.eval(x) * tinv);
    }
}

TEST_CASE("evaluation respects intertwining") {
    // col[I,0] intertwines X with upper-left-corner extensions of X
    for (int trial = 0; trial < 10; ++trial) {
        P p = random_poly(2, 3, 5);
        MatTuple<Rational> x = random_tuple(2, 2), c = random_tuple(2, 1);
        // y = [[x, b],[0, c]] satisfies  y t = t x  for t = col[I2, 0]
        MatTuple<Rational> y(2, 3);
        for (int j = 0; j < 2; ++j) {
            y[j].set_block(0, 0, x[j]);
            y[j](0, 2) = small_rational();
            y[j](1, 2) = small_rational();
            y[j].set_block(2, 2, c[j]);
        }
        Matrix<Rational> t(3, 2);
        t(0, 0) = Rational(1);
        t(1, 1) = Rational(1);
        for (int j = 0; j < 2; ++j) REQUIRE(y[j] * t == t * x[j]);
        CHECK(p.eval(y) * t == t * p.eval(x));
    }
}

TEST_CASE("standard identity small cases") {
    P p1 = freenc::standard_identity<Rational>(1);
    P expect = var(2, 2) * var(2, 1) * var(2, 2) - var(2, 1) * var(2, 2) * var(2, 2);
    CHECK(p1 == expect);
    CHECK(p1.degree() == 3);

    P p2 = freenc::standard_identity<Rational>(2);
    CHECK(p2.degree() == 6);
    CHECK(p2.terms().size() == 6);

    CHECK_THROWS_AS(freenc::standard_identity<Rational>(0), freenc::ArgumentError);
}

TEST_CASE("standard identity vanishes on matching sizes and has witnesses above") {
    for (int n = 1; n <= 3; ++n) {
        P pn = freenc::standard_identity<Rational>(n);
        int expected_degree = (n + 1) * (n + 2) / 2;
        CHECK(pn.degree() == expected_degree);
        for (int trial = 0; trial < 8; ++trial) {
            CHECK(pn.eval(random_tuple(2, n)).is_zero());
        }
        bool witness = false;
        for (int trial = 0; trial < 64 && !witness; ++trial)
            witness = !pn.eval(random_tuple(2, n + 1)).is_zero();
        CHECK(witness);
    }
}

TEST_CASE("subset-expansion evaluation agrees with the expanded polynomial") {
    for (int k = 1; k <= 3; ++k) {
        P pk = freenc::standard_identity<Rational>(k);
        for (int trial = 0; trial < 6; ++trial) {
            MatTuple<Rational> x = random_tuple(2, 2 + trial % 3);
            CHECK(freenc::standard_identity_eval(k, x) == pk.eval(x));
        }
    }
}

TEST_CASE("identity series evaluation truncates exactly") {
    MatTuple<Rational> x1 = random_tuple(2, 1);
    CHECK(freenc::example_identity_series_eval(x1).is_zero());

    MatTuple<Rational> x2 = random_tuple(2, 2);
    CHECK(freenc::example_identity_series_eval(x2) ==
          freenc::standard_identity<Rational>(1).eval(x2));

    MatTuple<Rational> x3 = random_tuple(2, 3);
    CHECK(freenc::example_identity_series_eval(x3) ==
          freenc::standard_identity<Rational>(1).eval(x3) +
              freenc::standard_identity<Rational>(2).eval(x3));
}
