#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "freenc/tuple.hpp"
#include "freenc/word.hpp"

namespace freenc {

/// Polynomial in d noncommuting indeterminates with scalar coefficients:
/// a finitely supported map from words to K, zero coefficients pruned.
template <class K>
class NcPolynomial {
  public:
    explicit NcPolynomial(int d) : d_(d) {
        if (d < 1) throw ArgumentError("NcPolynomial: d must be >= 1");
    }

    static NcPolynomial constant(int d, const K& c) {
        NcPolynomial p(d);
        p.set(Word::empty(), c);
        return p;
    }
    static NcPolynomial variable(int d, int j) {
        if (j < 1 || j > d) throw ArgumentError("NcPolynomial: variable index out of range");
        NcPolynomial p(d);
        p.set(Word{j}, ScalarTraits<K>::one());
        return p;
    }
    static NcPolynomial monomial(int d, const Word& w, const K& c) {
        if (!w.letters_within(d)) throw ArgumentError("NcPolynomial: word letter out of range");
        NcPolynomial p(d);
        p.set(w, c);
        return p;
    }

    int d() const { return d_; }
    const std::map<Word, K>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    K coefficient(const Word& w) const {
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? ScalarTraits<K>::zero() : it->second;
    }

    void set(const Word& w, const K& c) {
        if (!w.letters_within(d_)) throw ArgumentError("NcPolynomial: word letter out of range");
        if (ScalarTraits<K>::is_zero(c))
            coeffs_.erase(w);
        else
            coeffs_[w] = c;
    }
    void add_term(const Word& w, const K& c) { set(w, coefficient(w) + c); }

    friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) {
        return a.d_ == b.d_ && a.coeffs_ == b.coeffs_;
    }

    friend NcPolynomial operator+(const NcPolynomial& a, const NcPolynomial& b) {
        check_same_d(a, b);
        NcPolynomial r = a;
        for (const auto& [w, c] : b.coeffs_) r.add_term(w, c);
        return r;
    }
    friend NcPolynomial operator-(const NcPolynomial& a, const NcPolynomial& b) {
        check_same_d(a, b);
        NcPolynomial r = a;
        for (const auto& [w, c] : b.coeffs_) r.add_term(w, -c);
        return r;
    }
    NcPolynomial operator-() const {
        NcPolynomial r(d_);
        for (const auto& [w, c] : coeffs_) r.coeffs_[w] = -c;
        return r;
    }
    /// Convolution over word concatenation.
    friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
        check_same_d(a, b);
        NcPolynomial r(a.d_);
        for (const auto& [u, cu] : a.coeffs_)
            for (const auto& [v, cv] : b.coeffs_) r.add_term(concat(u, v), cu * cv);
        return r;
    }
    friend NcPolynomial operator*(const K& c, const NcPolynomial& p) {
        NcPolynomial r(p.d_);
        for (const auto& [w, cw] : p.coeffs_) r.set(w, c * cw);
        return r;
    }

    /// Max word length over the support; the zero polynomial has no degree.
    std::optional<int> degree() const {
        std::optional<int> deg;
        for (const auto& [w, c] : coeffs_)
            deg = std::max<int>(deg.value_or(0), static_cast<int>(w.length()));
        return deg;
    }

    /// Restriction to words of length exactly j.
    NcPolynomial homogeneous_part(int j) const {
        if (j < 0) throw ArgumentError("homogeneous_part: j must be >= 0");
        NcPolynomial r(d_);
        for (const auto& [w, c] : coeffs_)
            if (static_cast<int>(w.length()) == j) r.coeffs_[w] = c;
        return r;
    }

    /// Evaluation at a tuple of square matrices; monomial powers are shared
    /// along common word prefixes.
    Matrix<K> eval(const MatTuple<K>& x) const {
        if (x.d() != d_) throw ArgumentError("NcPolynomial: evaluation point has wrong d");
        const int n = x.n();
        Matrix<K> acc(n, n);
        auto it = coeffs_.begin();
        if (it != coeffs_.end() && it->first.is_empty()) {
            acc = Matrix<K>::scalar(n, it->second);
            ++it;
        }
        // stack of partial products X^{w[0..k]} shared between consecutive
        // support words (the map is graded-lex ordered, so prefixes cluster)
        std::vector<Matrix<K>> stack;
        std::vector<int> stack_word;
        for (; it != coeffs_.end(); ++it) {
            const auto& letters = it->first.letters();
            std::size_t keep = 0;
            while (keep < stack_word.size() && keep < letters.size() &&
                   stack_word[keep] == letters[keep])
                ++keep;
            stack.resize(keep);
            stack_word.resize(keep);
            for (std::size_t k = keep; k < letters.size(); ++k) {
                const Matrix<K>& xj = x[letters[k] - 1];
                stack.push_back(stack.empty() ? xj : stack.back() * xj);
                stack_word.push_back(letters[k]);
            }
            acc = acc + it->second * stack.back();
        }
        return acc;
    }

  private:
    int d_;
    std::map<Word, K> coeffs_;

    static void check_same_d(const NcPolynomial& a, const NcPolynomial& b) {
        if (a.d_ != b.d_) throw ArgumentError("NcPolynomial: mismatched d");
    }
};

namespace detail {

template <class Fn>
void for_each_permutation(int n, Fn&& fn) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[i] = i;
    int sign = 1;
    while (true) {
        fn(perm, sign);
        // next permutation in lexicographic order, tracking parity by
        // counting the swaps performed
        int i = n - 2;
        while (i >= 0 && perm[i] >= perm[i + 1]) --i;
        if (i < 0) break;
        int j = n - 1;
        while (perm[j] <= perm[i]) --j;
        std::swap(perm[i], perm[j]);
        sign = -sign;
        for (int a = i + 1, b = n - 1; a < b; ++a, --b) {
            std::swap(perm[a], perm[b]);
            sign = -sign;
        }
    }
}

}  // namespace detail

/// The alternating-sum identity of degree (n+1)(n+2)/2 in two letters:
/// sum over pi in S_{n+1} of sign(pi) x1^{pi(1)-1} x2 ... x1^{pi(n+1)-1} x2.
/// Vanishes on every pair of n x n matrices.
template <class K>
NcPolynomial<K> standard_identity(int n) {
    if (n < 1) throw ArgumentError("standard_identity: n must be >= 1");
    NcPolynomial<K> p(2);
    detail::for_each_permutation(n + 1, [&](const std::vector<int>& perm, int sign) {
        std::vector<int> letters;
        for (int v : perm) {
            letters.insert(letters.end(), static_cast<std::size_t>(v), 1);
            letters.push_back(2);
        }
        p.add_term(Word(std::move(letters)),
                   sign > 0 ? ScalarTraits<K>::one() : -ScalarTraits<K>::one());
    });
    return p;
}

/// Evaluates standard_identity(k) at X without expanding its (k+1)! terms:
/// with B_i = X1^{i-1} X2, the value is the fully alternating sum over all
/// orderings of B_1 ... B_{k+1}, computed by expansion on the first factor
/// with memoization over index subsets. Zero partial sums prune branches.
template <class K>
Matrix<K> standard_identity_eval(int k, const MatTuple<K>& x) {
    if (k < 1) throw ArgumentError("standard_identity_eval: n must be >= 1");
    if (x.d() != 2) throw ArgumentError("standard_identity_eval: needs d = 2");
    const int m = k + 1;
    const int n = x.n();
    std::vector<Matrix<K>> b;
    b.reserve(static_cast<std::size_t>(m));
    Matrix<K> power = Matrix<K>::identity(n);
    for (int i = 0; i < m; ++i) {
        b.push_back(power * x[1]);
        power = power * x[0];
    }
    std::vector<std::optional<Matrix<K>>> memo(std::size_t(1) << m);
    std::function<const Matrix<K>&(unsigned)> alt = [&](unsigned mask) -> const Matrix<K>& {
        auto& slot = memo[mask];
        if (slot) return *slot;
        if (mask == 0) {
            slot = Matrix<K>::identity(n);
            return *slot;
        }
        Matrix<K> acc(n, n);
        int rank = 0;
        for (int i = 0; i < m; ++i) {
            if (!(mask & (1u << i))) continue;
            if (!b[i].is_zero()) {
                const Matrix<K>& rest = alt(mask & ~(1u << i));
                if (!rest.is_zero()) {
                    Matrix<K> term = b[i] * rest;
                    acc = rank % 2 == 0 ? acc + term : acc - term;
                }
            }
            ++rank;
        }
        slot = std::move(acc);
        return *slot;
    };
    return alt((1u << m) - 1);
}

/// f(X1, X2) = sum over k of standard_identity(k) evaluated at X; the terms
/// with k >= n vanish on n x n input, so the truncation at n - 1 is exact.
template <class K>
Matrix<K> example_identity_series_eval(const MatTuple<K>& x) {
    if (x.d() != 2) throw ArgumentError("example_identity_series_eval: needs d = 2");
    Matrix<K> acc(x.n(), x.n());
    for (int k = 1; k < x.n(); ++k) acc = acc + standard_identity_eval(k, x);
    return acc;
}

}  // namespace freenc
