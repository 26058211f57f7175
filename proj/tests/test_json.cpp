#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "freenc/json_io.hpp"

using freenc::Cplx;
using freenc::Json;
using freenc::MatTuple;
using freenc::Matrix;
using freenc::NcPolynomial;
using freenc::Rational;
using freenc::TTSeries;
using freenc::Word;

namespace {

std::mt19937_64 rng(808);

Matrix<Rational> random_matrix(int rows, int cols) {
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Matrix<Rational> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = Rational(num(rng), den(rng));
    return m;
}

}  // namespace

TEST_CASE("scalar forms") {
    CHECK(freenc::scalar_to_json(Rational(3, 2)) == Json("3/2"));
    CHECK(freenc::scalar_from_json<Rational>(Json("-7/3")) == Rational(-7, 3));
    CHECK(freenc::scalar_from_json<Rational>(Json(4)) == Rational(4));
    CHECK_THROWS_AS(freenc::scalar_from_json<Rational>(Json(1.5)), freenc::ArgumentError);
    Cplx z = freenc::scalar_from_json<Cplx>(freenc::scalar_to_json(Cplx(1.25, -2.5)));
    CHECK(z == Cplx(1.25, -2.5));
}

TEST_CASE("tuple round trip and field tags") {
    for (int trial = 0; trial < 20; ++trial) {
        int d = 1 + trial % 3, n = 1 + trial % 4;
        std::vector<Matrix<Rational>> mats;
        for (int j = 0; j < d; ++j) mats.push_back(random_matrix(n, n));
        MatTuple<Rational> t(d, std::move(mats));
        CHECK(freenc::mattuple_from_json<Rational>(freenc::mattuple_to_json(t)) == t);
    }
    MatTuple<Rational> t(2, 2);
    Json j = freenc::mattuple_to_json(t);
    CHECK(j.at("field") == "rational");
    CHECK_THROWS_AS(freenc::mattuple_from_json<Cplx>(j), freenc::ArgumentError);
    j["n"] = 5;
    CHECK_THROWS_AS(freenc::mattuple_from_json<Rational>(j), freenc::ArgumentError);
}

TEST_CASE("polynomial terms are graded-lex ordered and round trip") {
    NcPolynomial<Rational> p(2);
    p.add_term(Word({2, 1}), Rational(3));
    p.add_term(Word::empty(), Rational(-1, 2));
    p.add_term(Word({1}), Rational(5, 3));
    Json j = freenc::poly_to_json(p);
    REQUIRE(j.at("terms").size() == 3);
    CHECK(j.at("terms").at(0).at("word") == "e");
    CHECK(j.at("terms").at(1).at("word") == "g1");
    CHECK(j.at("terms").at(2).at("word") == "g2.g1");
    CHECK(freenc::poly_from_json<Rational>(j) == p);
}

TEST_CASE("series round trip preserves coefficients and the verified flag") {
    std::uniform_int_distribution<int> coeff(-4, 4);
    TTSeries<Rational> series;
    series.d = 2;
    series.s = 2;
    std::vector<Matrix<Rational>> center;
    center.push_back(random_matrix(2, 2));
    center.push_back(random_matrix(2, 2));
    series.center = MatTuple<Rational>(2, std::move(center));
    for (int len = 0; len <= 2; ++len)
        for (const Word& w : freenc::words_of_length(2, len)) {
            freenc::CoeffTensor<Rational> t(2, len);
            for (std::size_t i = 0; i < t.size(); ++i) t.at(i) = random_matrix(2, 2);
            series.coeffs.emplace(w, t);
        }
    series.verified = false;
    TTSeries<Rational> back = freenc::ttseries_from_json<Rational>(freenc::ttseries_to_json(series));
    CHECK(back.d == series.d);
    CHECK(back.s == series.s);
    CHECK(back.center == series.center);
    CHECK(back.verified == series.verified);
    REQUIRE(back.coeffs.size() == series.coeffs.size());
    for (const auto& [w, t] : series.coeffs) CHECK(back.coeffs.at(w) == t);
}
