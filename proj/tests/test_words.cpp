#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "freenc/word.hpp"

using freenc::Word;
using freenc::words_of_length;

TEST_CASE("word length") {
    CHECK(word_length(Word::empty()) == 0);
    CHECK(word_length(Word{1, 2, 1}) == 3);
    CHECK(word_length(Word{2}) == 1);
}

TEST_CASE("word transpose") {
    CHECK(Word({1, 2, 3}).transpose() == Word({3, 2, 1}));
    CHECK(Word::empty().transpose() == Word::empty());
    CHECK(Word({1, 1}).transpose() == Word({1, 1}));
}

TEST_CASE("word concatenation") {
    CHECK(concat(Word::empty(), Word{1}) == Word{1});
    CHECK(concat(Word{1}, Word{2}) == Word({1, 2}));
    CHECK(concat(Word({2, 1}), Word{1}) == Word({2, 1, 1}));
}

TEST_CASE("enumeration by length") {
    auto w0 = words_of_length(2, 0);
    REQUIRE(w0.size() == 1);
    CHECK(w0[0] == Word::empty());

    auto w2 = words_of_length(2, 2);
    REQUIRE(w2.size() == 4);
    CHECK(w2[0] == Word({1, 1}));
    CHECK(w2[1] == Word({1, 2}));
    CHECK(w2[2] == Word({2, 1}));
    CHECK(w2[3] == Word({2, 2}));

    CHECK(words_of_length(3, 2).size() == 9);

    CHECK_THROWS_AS(words_of_length(0, 2), freenc::ArgumentError);
    CHECK_THROWS_AS(words_of_length(2, -1), freenc::ArgumentError);
}

TEST_CASE("word algebra properties") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> len(0, 6), letter(1, 3);
    auto rnd = [&] {
        std::vector<int> ls(static_cast<std::size_t>(len(rng)));
        for (auto& l : ls) l = letter(rng);
        return Word(std::move(ls));
    };
    for (int i = 0; i < 300; ++i) {
        Word u = rnd(), v = rnd();
        CHECK(u.transpose().transpose() == u);
        CHECK(concat(u, v).length() == u.length() + v.length());
        CHECK(concat(u, v).transpose() == concat(v.transpose(), u.transpose()));
    }
    // d^l distinct words, each of length l, in sorted order
    for (int d = 1; d <= 3; ++d)
        for (int l = 0; l <= 4; ++l) {
            auto ws = words_of_length(d, l);
            std::set<Word> uniq(ws.begin(), ws.end());
            std::size_t expect = 1;
            for (int k = 0; k < l; ++k) expect *= static_cast<std::size_t>(d);
            CHECK(uniq.size() == expect);
            for (const auto& w : ws) CHECK(w.length() == static_cast<std::size_t>(l));
            CHECK(std::is_sorted(ws.begin(), ws.end()));
        }
}

TEST_CASE("text form round trip") {
    CHECK(Word::empty().str() == "e");
    CHECK(Word({1, 2, 1}).str() == "g1.g2.g1");
    CHECK(Word::parse("g1.g2.g1", 2) == Word({1, 2, 1}));
    CHECK(Word::parse("e", 2) == Word::empty());
    CHECK_THROWS_AS(Word::parse("g3", 2), freenc::ArgumentError);
    CHECK_THROWS_AS(Word::parse("g1.", 2), freenc::ArgumentError);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> len(0, 8), letter(1, 12);
    for (int i = 0; i < 200; ++i) {
        std::vector<int> ls(static_cast<std::size_t>(len(rng)));
        for (auto& l : ls) l = letter(rng);
        Word w(std::move(ls));
        CHECK(Word::parse(w.str(), 12) == w);
    }
}
