#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "freenc/errors.hpp"

namespace freenc {

/// Element of the free monoid on d generators. Letters are 1-based
/// generator indices; the empty sequence is the identity.
class Word {
  public:
    Word() = default;
    Word(std::initializer_list<int> letters) : letters_(letters) {}
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    static Word empty() { return Word(); }

    std::size_t length() const { return letters_.size(); }
    bool is_empty() const { return letters_.empty(); }
    int letter(std::size_t k) const { return letters_[k]; }
    const std::vector<int>& letters() const { return letters_; }

    Word transpose() const {
        return Word(std::vector<int>(letters_.rbegin(), letters_.rend()));
    }

    friend Word concat(const Word& u, const Word& v) {
        std::vector<int> r = u.letters_;
        r.insert(r.end(), v.letters_.begin(), v.letters_.end());
        return Word(std::move(r));
    }

    bool letters_within(int d) const {
        for (int g : letters_)
            if (g < 1 || g > d) return false;
        return true;
    }

    friend bool operator==(const Word&, const Word&) = default;

    /// Graded lexicographic order: by length, then lex on letters.
    /// Keeps coefficient tables and serialized output deterministic.
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.letters_.size() != b.letters_.size())
            return a.letters_.size() <=> b.letters_.size();
        return a.letters_ <=> b.letters_;
    }

    /// Text form "g1.g2.g1"; the identity prints as "e".
    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += '.';
            s += 'g';
            s += std::to_string(letters_[i]);
        }
        return s;
    }

    /// Parses the text form; letters must lie in [1, d] when d >= 1.
    static Word parse(std::string_view s, int d = 0) {
        if (s == "e") return Word();
        std::vector<int> letters;
        std::size_t i = 0;
        while (i < s.size()) {
            if (s[i] != 'g') throw ArgumentError("word: expected 'g' in \"" + std::string(s) + "\"");
            ++i;
            std::size_t start = i;
            while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
            if (i == start) throw ArgumentError("word: missing generator index");
            int g = std::stoi(std::string(s.substr(start, i - start)));
            if (g < 1 || (d >= 1 && g > d))
                throw ArgumentError("word: generator index out of range in \"" + std::string(s) + "\"");
            letters.push_back(g);
            if (i < s.size()) {
                if (s[i] != '.') throw ArgumentError("word: expected '.' separator");
                ++i;
                if (i == s.size()) throw ArgumentError("word: trailing separator");
            }
        }
        return Word(std::move(letters));
    }

  private:
    std::vector<int> letters_;
};

inline std::size_t word_length(const Word& w) { return w.length(); }
inline Word word_transpose(const Word& w) { return w.transpose(); }
inline Word word_concat(const Word& u, const Word& v) { return concat(u, v); }

/// All d^len words of the given length, in lexicographic order.
inline std::vector<Word> words_of_length(int d, int len) {
    if (d < 1) throw ArgumentError("words_of_length: d must be >= 1");
    if (len < 0) throw ArgumentError("words_of_length: length must be >= 0");
    std::vector<Word> out;
    std::vector<int> cur(static_cast<std::size_t>(len), 1);
    while (true) {
        out.push_back(Word(cur));
        int pos = len - 1;
        while (pos >= 0 && cur[pos] == d) {
            cur[pos] = 1;
            --pos;
        }
        if (pos < 0) break;
        ++cur[pos];
    }
    return out;
}

}  // namespace freenc
