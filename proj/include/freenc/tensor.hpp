#pragma once

#include <optional>
#include <span>
#include <vector>

#include "freenc/tuple.hpp"
#include "freenc/word.hpp"

namespace freenc {

/// Elementary tensor in (K^{s x s})^{(x) l}: an ordered list of l >= 1
/// square s x s factors.
template <class K>
struct TensorTerm {
    std::vector<Matrix<K>> factors;

    int degree() const { return static_cast<int>(factors.size()); }
    bool has_zero_factor() const {
        for (const auto& f : factors)
            if (f.is_zero()) return true;
        return false;
    }
};

/// Rectangular grid of tensor-algebra elements of one degree; entries are
/// kept as raw term lists, no canonicalization.
template <class K>
class FauxTensorMatrix {
  public:
    FauxTensorMatrix(int s, int rows, int cols, int degree)
        : s_(s), rows_(rows), cols_(cols), degree_(degree),
          entries_(static_cast<std::size_t>(rows) * cols) {
        if (s < 1) throw ArgumentError("FauxTensorMatrix: s must be >= 1");
        if (degree < 1) throw ArgumentError("FauxTensorMatrix: degree must be >= 1");
    }

    /// Views an sm x sm matrix as an m x m grid of s x s blocks, each entry a
    /// single degree-1 term. Exactly-zero blocks are dropped.
    static FauxTensorMatrix from_blocks(const Matrix<K>& z, int s) {
        if (!z.is_square() || z.rows() % s != 0)
            throw ArgumentError("FauxTensorMatrix: size must be a multiple of s");
        const int m = z.rows() / s;
        FauxTensorMatrix r(s, m, m, 1);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Matrix<K> b = z.block(i * s, j * s, s, s);
                if (!b.is_zero()) r.entry(i, j).push_back(TensorTerm<K>{{std::move(b)}});
            }
        return r;
    }

    int s() const { return s_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int degree() const { return degree_; }

    std::vector<TensorTerm<K>>& entry(int i, int j) {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const std::vector<TensorTerm<K>>& entry(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }

    /// Dense canonical coordinates over entry-basis tuples decide zeroness;
    /// term lists themselves are not canonical.
    bool entry_is_zero(int i, int j) const {
        const auto& terms = entry(i, j);
        if (terms.empty()) return true;
        const int dim = s_ * s_;
        std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
        while (true) {
            K coord = ScalarTraits<K>::zero();
            for (const auto& t : terms) {
                K prod = ScalarTraits<K>::one();
                bool zero = false;
                for (int k = 0; k < degree_; ++k) {
                    const K& v = t.factors[k](idx[k] / s_, idx[k] % s_);
                    if (ScalarTraits<K>::is_zero(v)) {
                        zero = true;
                        break;
                    }
                    prod = prod * v;
                }
                if (!zero) coord = coord + prod;
            }
            if (!ScalarTraits<K>::is_zero(coord)) return false;
            int pos = degree_ - 1;
            while (pos >= 0 && idx[pos] == dim - 1) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[pos];
        }
        return true;
    }

    bool is_zero() const {
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!entry_is_zero(i, j)) return false;
        return true;
    }

  private:
    int s_, rows_, cols_, degree_;
    std::vector<std::vector<TensorTerm<K>>> entries_;
};

/// Matrix product over the tensor algebra: entry-level multiplication is
/// tensor concatenation, degrees add. Terms with a zero factor are dropped.
template <class K>
FauxTensorMatrix<K> odot(const FauxTensorMatrix<K>& a, const FauxTensorMatrix<K>& b) {
    if (a.s() != b.s()) throw ArgumentError("odot: mismatched block size s");
    if (a.cols() != b.rows()) throw ArgumentError("odot: inner dimensions do not match");
    FauxTensorMatrix<K> r(a.s(), a.rows(), b.cols(), a.degree() + b.degree());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const auto& left = a.entry(i, k);
            if (left.empty()) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const auto& right = b.entry(k, j);
                if (right.empty()) continue;
                auto& out = r.entry(i, j);
                for (const auto& lt : left)
                    for (const auto& rt : right) {
                        TensorTerm<K> t;
                        t.factors.reserve(lt.factors.size() + rt.factors.size());
                        t.factors.insert(t.factors.end(), lt.factors.begin(), lt.factors.end());
                        t.factors.insert(t.factors.end(), rt.factors.begin(), rt.factors.end());
                        out.push_back(std::move(t));
                    }
            }
        }
    return r;
}

/// The w-th nc power of Z: Z_{i1} (odot_s) ... (odot_s) Z_{il}, each
/// coordinate viewed as an m x m matrix of s x s blocks.
template <class K>
FauxTensorMatrix<K> nc_power_word(const MatTuple<K>& z, int s, const Word& w) {
    if (w.is_empty()) throw ArgumentError("nc_power_word: word must have length >= 1");
    if (!w.letters_within(z.d())) throw ArgumentError("nc_power_word: letter out of range");
    if (s < 1 || z.n() % s != 0)
        throw ArgumentError("nc_power_word: size must be a positive multiple of s");
    FauxTensorMatrix<K> r = FauxTensorMatrix<K>::from_blocks(z[w.letter(0) - 1], s);
    for (std::size_t k = 1; k < w.length(); ++k)
        r = odot(r, FauxTensorMatrix<K>::from_blocks(z[w.letter(k) - 1], s));
    return r;
}

/// Smallest rank kappa <= m with all word powers of X - (+)Y of length kappa
/// vanishing; nullopt when X is not jointly nilpotent about Y.
template <class K>
std::optional<int> is_jointly_nilpotent(const MatTuple<K>& x, int s, const MatTuple<K>& y) {
    if (x.d() != y.d()) throw ArgumentError("is_jointly_nilpotent: mismatched d");
    if (y.n() != s) throw ArgumentError("is_jointly_nilpotent: center size must be s");
    if (s < 1 || x.n() % s != 0)
        throw ArgumentError("is_jointly_nilpotent: size must be a positive multiple of s");
    const int m = x.n() / s;
    const MatTuple<K> z = x - direct_sum_copies(y, m);
    for (int kappa = 1; kappa <= m; ++kappa) {
        bool all_zero = true;
        for (const Word& w : words_of_length(z.d(), kappa)) {
            if (!nc_power_word(z, s, w).is_zero()) {
                all_zero = false;
                break;
            }
        }
        if (all_zero) return kappa;
    }
    return std::nullopt;
}

}  // namespace freenc
