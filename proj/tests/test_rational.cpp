#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freenc/rational.hpp"

using freenc::BigInt;
using freenc::Rational;

TEST_CASE("BigInt construction and printing") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(123456789012345678ll).to_string() == "123456789012345678");
    CHECK(BigInt::from_string("-987654321098765432109876543210").to_string() ==
          "-987654321098765432109876543210");
    CHECK(BigInt::from_string("000123").to_string() == "123");
    CHECK(BigInt::from_string("-0") == BigInt(0));
}

TEST_CASE("BigInt arithmetic agrees with long long on random inputs") {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<long long> dist(-1000000000ll, 1000000000ll);
    for (int i = 0; i < 2000; ++i) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)) == BigInt(a + b));
        CHECK((BigInt(a) - BigInt(b)) == BigInt(a - b));
        CHECK((BigInt(a) * BigInt(b)) == BigInt(a * b));
        if (b != 0) {
            CHECK((BigInt(a) / BigInt(b)) == BigInt(a / b));
            CHECK((BigInt(a) % BigInt(b)) == BigInt(a % b));
        }
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
}

TEST_CASE("BigInt multi-limb division round trips") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> dist(-1000000000ll, 1000000000ll);
    for (int i = 0; i < 500; ++i) {
        BigInt a = BigInt(dist(rng)) * BigInt(dist(rng)) * BigInt(dist(rng));
        BigInt b = BigInt(dist(rng)) * BigInt(dist(rng));
        if (b.is_zero()) continue;
        BigInt q, r;
        BigInt::divmod(a, b, q, r);
        CHECK(q * b + r == a);
        CHECK(r.abs() < b.abs());
        // remainder carries the dividend's sign
        if (!r.is_zero()) CHECK(r.sign() == a.sign());
    }
}

TEST_CASE("BigInt divides numbers around limb boundaries") {
    BigInt two32 = BigInt(1ll << 32);
    BigInt big = two32 * two32 * two32;  // 2^96
    CHECK((big / two32).to_string() == (two32 * two32).to_string());
    CHECK((big % two32).is_zero());
    CHECK(((big + BigInt(5)) % two32) == BigInt(5));
    // divisor requiring normalization (top limb with high bit clear)
    BigInt d = BigInt::from_string("4294967297");  // 2^32 + 1
    BigInt n = BigInt::from_string("79228162514264337593543950336");  // 2^96
    BigInt q, r;
    BigInt::divmod(n, d, q, r);
    CHECK(q * d + r == n);
}

TEST_CASE("BigInt gcd") {
    CHECK(BigInt::gcd(BigInt(12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(-12), BigInt(18)) == BigInt(6));
    CHECK(BigInt::gcd(BigInt(0), BigInt(5)) == BigInt(5));
    BigInt a = BigInt::from_string("123456789123456789123456789");
    CHECK(BigInt::gcd(a * BigInt(30), a * BigInt(42)) == a * BigInt(6));
}

TEST_CASE("Rational normalization") {
    CHECK(Rational(2, 4).to_string() == "1/2");
    CHECK(Rational(-2, -4).to_string() == "1/2");
    CHECK(Rational(2, -4).to_string() == "-1/2");
    CHECK(Rational(0, 7).to_string() == "0/1");
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("Rational parsing") {
    CHECK(Rational::parse("3/2") == Rational(3, 2));
    CHECK(Rational::parse("-3/6") == Rational(-1, 2));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("0.25") == Rational(1, 4));
    CHECK(Rational::parse("-1.5") == Rational(-3, 2));
}

TEST_CASE("Rational field laws on random values") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> dist(-40, 40);
    auto rnd = [&] {
        long long den = 0;
        while (den == 0) den = dist(rng);
        return Rational(dist(rng), den);
    };
    for (int i = 0; i < 500; ++i) {
        Rational a = rnd(), b = rnd(), c = rnd();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == Rational(0));
        if (!b.is_zero()) CHECK(a / b * b == a);
    }
}
