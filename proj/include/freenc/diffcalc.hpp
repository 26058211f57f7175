#pragma once

#include <span>
#include <vector>

#include "freenc/function.hpp"
#include "freenc/linalg.hpp"
#include "freenc/tensor.hpp"
#include "freenc/tuple.hpp"
#include "freenc/word.hpp"

namespace freenc {

namespace detail {

// Evaluates f on the block bidiagonal matrix built from diags/supers and
// returns the requested block of the partitioned result. When evaluation
// hits a DomainError, the superdiagonal is rescaled by r = 2^-k (the result
// block is homogeneous of degree (col - row) in the superdiagonal, so the
// block is divided by r^(col-row)); the schedule stops at 2^-16.
template <class K>
Matrix<K> bidiagonal_block(const NcFunction<K>& f, std::span<const MatTuple<K>> diags,
                           std::span<const RectTuple<K>> supers, int row, int col) {
    std::vector<int> sizes;
    sizes.reserve(diags.size());
    for (const auto& x : diags) sizes.push_back(x.n());
    const int order = col - row;
    for (int k = 0;; ++k) {
        const K r = ScalarTraits<K>::pow2_inv(k);
        std::vector<RectTuple<K>> scaled;
        scaled.reserve(supers.size());
        for (const auto& z : supers) scaled.push_back(k == 0 ? z : r * z);
        MatTuple<K> w = bidiagonal<K>(diags, scaled);
        try {
            Matrix<K> value = f(w);
            Matrix<K> blockv = block_extract(value, sizes, sizes, row, col);
            if (k > 0 && order > 0) {
                K factor = ScalarTraits<K>::one();
                for (int i = 0; i < order; ++i) factor = factor / r;
                blockv = factor * blockv;
            }
            return blockv;
        } catch (const DomainError&) {
            if (k >= 16) throw;
        }
    }
}

}  // namespace detail

/// Right difference-differential operator: the (1,2) block of f evaluated on
/// the 2x2 block upper triangular matrix with X, Y on the diagonal and Z in
/// the corner.
template <class K>
Matrix<K> delta_R(const NcFunction<K>& f, const MatTuple<K>& X, const MatTuple<K>& Y,
                  const RectTuple<K>& Z) {
    if (X.d() != f.d() || Y.d() != f.d() || Z.d() != f.d())
        throw ArgumentError("delta_R: mismatched d");
    if (Z.rows() != X.n() || Z.cols() != Y.n())
        throw ArgumentError("delta_R: direction must have shape n x m");
    const MatTuple<K> diags[2] = {X, Y};
    const RectTuple<K> supers[1] = {Z};
    return detail::bidiagonal_block<K>(f, diags, supers, 0, 1);
}

/// Left variant: the (2,1) block of f on the block lower triangular matrix.
template <class K>
Matrix<K> delta_L(const NcFunction<K>& f, const MatTuple<K>& X, const MatTuple<K>& Y,
                  const RectTuple<K>& Z) {
    if (X.d() != f.d() || Y.d() != f.d() || Z.d() != f.d())
        throw ArgumentError("delta_L: mismatched d");
    if (Z.rows() != Y.n() || Z.cols() != X.n())
        throw ArgumentError("delta_L: direction must have shape m x n");
    std::vector<int> sizes = {X.n(), Y.n()};
    for (int k = 0;; ++k) {
        const K r = ScalarTraits<K>::pow2_inv(k);
        RectTuple<K> z = k == 0 ? Z : r * Z;
        MatTuple<K> w = lower_block(X, z, Y);
        try {
            Matrix<K> value = f(w);
            Matrix<K> blockv = block_extract(value, sizes, sizes, 1, 0);
            if (k > 0) blockv = (ScalarTraits<K>::one() / r) * blockv;
            return blockv;
        } catch (const DomainError&) {
            if (k >= 16) throw;
        }
    }
}

/// Order-l operator: the (1, l+1) block of f on the block bidiagonal matrix
/// with Xs on the diagonal and Zs on the superdiagonal.
template <class K>
Matrix<K> delta_R_higher(const NcFunction<K>& f, std::span<const MatTuple<K>> Xs,
                         std::span<const RectTuple<K>> Zs) {
    if (Xs.size() != Zs.size() + 1)
        throw ArgumentError("delta_R_higher: need one more diagonal point than direction");
    return detail::bidiagonal_block<K>(f, Xs, Zs, 0, static_cast<int>(Zs.size()));
}

template <class K>
Matrix<K> delta_R_higher(const NcFunction<K>& f, const std::vector<MatTuple<K>>& Xs,
                         const std::vector<RectTuple<K>>& Zs) {
    return delta_R_higher<K>(f, std::span<const MatTuple<K>>(Xs), std::span<const RectTuple<K>>(Zs));
}

/// j-th partial operator: delta_R along the direction A e_j.
template <class K>
Matrix<K> delta_R_partial(const NcFunction<K>& f, int j, const MatTuple<K>& X,
                          const MatTuple<K>& Y, const Matrix<K>& A) {
    return delta_R(f, X, Y, RectTuple<K>::along_coordinate(f.d(), j, A));
}

/// Word-indexed partial operator. The word is read left-to-right along the
/// superdiagonal (superdiagonal block k is As[k] e_{w_k}); the returned
/// (1, |w|+1) block is the operator indexed by the *transposed* word,
/// applied at (Xs)(As). Callers wanting the operator for w itself must pass
/// word_transpose(w).
template <class K>
Matrix<K> delta_R_word(const NcFunction<K>& f, const Word& w, std::span<const MatTuple<K>> Xs,
                       std::span<const Matrix<K>> As) {
    if (!w.letters_within(f.d())) throw ArgumentError("delta_R_word: letter out of range");
    if (Xs.size() != w.length() + 1 || As.size() != w.length())
        throw ArgumentError("delta_R_word: need |w|+1 points and |w| arguments");
    std::vector<RectTuple<K>> supers;
    supers.reserve(As.size());
    for (std::size_t k = 0; k < As.size(); ++k)
        supers.push_back(RectTuple<K>::along_coordinate(f.d(), w.letter(k), As[k]));
    return detail::bidiagonal_block<K>(f, Xs, supers, 0, static_cast<int>(w.length()));
}

template <class K>
Matrix<K> delta_R_word(const NcFunction<K>& f, const Word& w, const std::vector<MatTuple<K>>& Xs,
                       const std::vector<Matrix<K>>& As) {
    return delta_R_word<K>(f, w, std::span<const MatTuple<K>>(Xs), std::span<const Matrix<K>>(As));
}

/// Result of checking the full block pattern of f on a bidiagonal matrix:
/// diagonal blocks f(X^i), block (i,j) the order (j-i) operator, zeros below.
struct PatternReport {
    bool ok = true;
    std::vector<std::pair<int, int>> mismatches;
};

template <class K>
PatternReport full_pattern_check(const NcFunction<K>& f, std::span<const MatTuple<K>> Xs,
                                 std::span<const RectTuple<K>> Zs) {
    if (Xs.size() != Zs.size() + 1)
        throw ArgumentError("full_pattern_check: need one more diagonal point than direction");
    const int blocks = static_cast<int>(Xs.size());
    std::vector<int> sizes;
    for (const auto& x : Xs) sizes.push_back(x.n());
    // same rescaling fallback as the block extractors; block (i,j) of the
    // scaled evaluation picks up a factor r^(j-i)
    Matrix<K> value(0, 0);
    K r_used = ScalarTraits<K>::one();
    for (int k = 0;; ++k) {
        const K r = ScalarTraits<K>::pow2_inv(k);
        std::vector<RectTuple<K>> scaled;
        scaled.reserve(Zs.size());
        for (const auto& z : Zs) scaled.push_back(k == 0 ? z : r * z);
        try {
            value = f(bidiagonal<K>(std::span<const MatTuple<K>>(Xs),
                                    std::span<const RectTuple<K>>(scaled)));
            r_used = r;
            break;
        } catch (const DomainError&) {
            if (k >= 16) throw;
        }
    }
    std::vector<K> descale(static_cast<std::size_t>(blocks), ScalarTraits<K>::one());
    for (int o = 1; o < blocks; ++o) descale[o] = descale[o - 1] / r_used;
    PatternReport report;
    auto flag = [&](int i, int j) {
        report.ok = false;
        report.mismatches.emplace_back(i, j);
    };
    for (int i = 0; i < blocks; ++i) {
        for (int j = 0; j < blocks; ++j) {
            Matrix<K> blockv = block_extract(value, sizes, sizes, i, j);
            if (i > j) {
                if (!blockv.is_zero()) flag(i, j);
            } else if (i == j) {
                if (blockv != f(Xs[i])) flag(i, j);
            } else {
                blockv = descale[j - i] * blockv;
                std::vector<MatTuple<K>> subx(Xs.begin() + i, Xs.begin() + j + 1);
                std::vector<RectTuple<K>> subz(Zs.begin() + i, Zs.begin() + j);
                if (blockv != delta_R_higher<K>(f, subx, subz)) flag(i, j);
            }
        }
    }
    return report;
}

template <class K>
PatternReport full_pattern_check(const NcFunction<K>& f, const std::vector<MatTuple<K>>& Xs,
                                 const std::vector<RectTuple<K>>& Zs) {
    return full_pattern_check<K>(f, std::span<const MatTuple<K>>(Xs),
                                 std::span<const RectTuple<K>>(Zs));
}

/// First-order consistency of the differential against a finite difference:
/// || (f(Y + hZ) - f(Y)) / h - delta_R(f, Y, Y, Z) || in the operator norm,
/// expected O(h) for smooth f.
inline double directional_derivative_check(const NcFunction<Cplx>& f, const MatTuple<Cplx>& Y,
                                           const MatTuple<Cplx>& Z, double h) {
    if (Z.n() != Y.n() || Z.d() != Y.d())
        throw ArgumentError("directional_derivative_check: shape mismatch");
    MatTuple<Cplx> shifted = Y + Cplx(h, 0.0) * Z;
    Matrix<Cplx> fd = Cplx(1.0 / h, 0.0) * (f(shifted) - f(Y));
    Matrix<Cplx> diff = delta_R(f, Y, Y, RectTuple<Cplx>::from_square(Z));
    return operator_norm(fd - diff);
}

}  // namespace freenc
