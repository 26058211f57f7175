#pragma once

#include <span>
#include <vector>

#include "freenc/matrix.hpp"

namespace freenc {

template <class K>
class RectTuple;

/// d-tuple of square n x n matrices; the evaluation points of everything.
template <class K>
class MatTuple {
  public:
    MatTuple() = default;
    MatTuple(int d, int n) : d_(d), n_(n), mats_(static_cast<std::size_t>(d), Matrix<K>(n, n)) {
        if (d < 1) throw ArgumentError("MatTuple: d must be >= 1");
    }
    MatTuple(int d, std::vector<Matrix<K>> mats) : d_(d), mats_(std::move(mats)) {
        if (d < 1 || static_cast<int>(mats_.size()) != d)
            throw ArgumentError("MatTuple: need exactly d matrices");
        n_ = mats_[0].rows();
        for (const auto& m : mats_)
            if (!m.is_square() || m.rows() != n_)
                throw ArgumentError("MatTuple: all matrices must be square of one size");
    }

    static MatTuple scalar_point(int d, std::span<const K> mu) {
        MatTuple t(d, 1);
        for (int j = 0; j < d; ++j) t[j](0, 0) = mu[j];
        return t;
    }

    int d() const { return d_; }
    int n() const { return n_; }
    Matrix<K>& operator[](int j) { return mats_[j]; }
    const Matrix<K>& operator[](int j) const { return mats_[j]; }

    friend bool operator==(const MatTuple& a, const MatTuple& b) {
        return a.d_ == b.d_ && a.n_ == b.n_ && a.mats_ == b.mats_;
    }

    friend MatTuple operator+(const MatTuple& a, const MatTuple& b) {
        check_compatible(a, b);
        MatTuple r = a;
        for (int j = 0; j < a.d_; ++j) r.mats_[j] = a.mats_[j] + b.mats_[j];
        return r;
    }
    friend MatTuple operator-(const MatTuple& a, const MatTuple& b) {
        check_compatible(a, b);
        MatTuple r = a;
        for (int j = 0; j < a.d_; ++j) r.mats_[j] = a.mats_[j] - b.mats_[j];
        return r;
    }
    friend MatTuple operator*(const K& c, const MatTuple& t) {
        MatTuple r = t;
        for (auto& m : r.mats_) m = c * m;
        return r;
    }
    /// Coordinatewise left/right action of scalar matrices.
    friend MatTuple conjugate(const Matrix<K>& t, const MatTuple& x, const Matrix<K>& tinv) {
        std::vector<Matrix<K>> mats;
        mats.reserve(x.d_);
        for (const auto& m : x.mats_) mats.push_back(t * m * tinv);
        return MatTuple(x.d_, std::move(mats));
    }

  private:
    int d_ = 0, n_ = 0;
    std::vector<Matrix<K>> mats_;

    static void check_compatible(const MatTuple& a, const MatTuple& b) {
        if (a.d_ != b.d_ || a.n_ != b.n_) throw ArgumentError("MatTuple: incompatible tuples");
    }
};

/// d-tuple of rectangular matrices sharing one shape; the directions.
template <class K>
class RectTuple {
  public:
    RectTuple() = default;
    RectTuple(int d, int rows, int cols)
        : d_(d), rows_(rows), cols_(cols), mats_(static_cast<std::size_t>(d), Matrix<K>(rows, cols)) {
        if (d < 1) throw ArgumentError("RectTuple: d must be >= 1");
    }
    RectTuple(int d, std::vector<Matrix<K>> mats) : d_(d), mats_(std::move(mats)) {
        if (d < 1 || static_cast<int>(mats_.size()) != d)
            throw ArgumentError("RectTuple: need exactly d matrices");
        rows_ = mats_[0].rows();
        cols_ = mats_[0].cols();
        for (const auto& m : mats_)
            if (m.rows() != rows_ || m.cols() != cols_)
                throw ArgumentError("RectTuple: all matrices must share one shape");
    }

    /// The tuple A*e_j: the scalar matrix A in slot j, zeros elsewhere.
    static RectTuple along_coordinate(int d, int j, const Matrix<K>& a) {
        if (j < 1 || j > d) throw ArgumentError("RectTuple: coordinate out of range");
        RectTuple r(d, a.rows(), a.cols());
        r.mats_[j - 1] = a;
        return r;
    }

    int d() const { return d_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Matrix<K>& operator[](int j) { return mats_[j]; }
    const Matrix<K>& operator[](int j) const { return mats_[j]; }

    friend bool operator==(const RectTuple& a, const RectTuple& b) {
        return a.d_ == b.d_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.mats_ == b.mats_;
    }

    friend RectTuple operator+(const RectTuple& a, const RectTuple& b) {
        if (a.d_ != b.d_ || a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ArgumentError("RectTuple: incompatible tuples");
        RectTuple r = a;
        for (int j = 0; j < a.d_; ++j) r.mats_[j] = a.mats_[j] + b.mats_[j];
        return r;
    }
    friend RectTuple operator*(const K& c, const RectTuple& t) {
        RectTuple r = t;
        for (auto& m : r.mats_) m = c * m;
        return r;
    }
    friend RectTuple operator*(const Matrix<K>& s, const RectTuple& t) {
        std::vector<Matrix<K>> mats;
        mats.reserve(t.d_);
        for (const auto& m : t.mats_) mats.push_back(s * m);
        return RectTuple(t.d_, std::move(mats));
    }
    friend RectTuple operator*(const RectTuple& t, const Matrix<K>& s) {
        std::vector<Matrix<K>> mats;
        mats.reserve(t.d_);
        for (const auto& m : t.mats_) mats.push_back(m * s);
        return RectTuple(t.d_, std::move(mats));
    }

    static RectTuple from_square(const MatTuple<K>& x) {
        std::vector<Matrix<K>> mats;
        for (int j = 0; j < x.d(); ++j) mats.push_back(x[j]);
        return RectTuple(x.d(), std::move(mats));
    }
    MatTuple<K> to_square() const {
        if (rows_ != cols_) throw ArgumentError("RectTuple: not square");
        return MatTuple<K>(d_, mats_);
    }

  private:
    int d_ = 0, rows_ = 0, cols_ = 0;
    std::vector<Matrix<K>> mats_;
};

template <class K>
MatTuple<K> direct_sum(const MatTuple<K>& x, const MatTuple<K>& y) {
    if (x.d() != y.d()) throw ArgumentError("direct_sum: mismatched d");
    std::vector<Matrix<K>> mats;
    mats.reserve(x.d());
    for (int j = 0; j < x.d(); ++j) mats.push_back(direct_sum(x[j], y[j]));
    return MatTuple<K>(x.d(), std::move(mats));
}

template <class K>
MatTuple<K> direct_sum_copies(const MatTuple<K>& y, int m) {
    if (m < 1) throw ArgumentError("direct_sum_copies: m must be >= 1");
    MatTuple<K> r = y;
    for (int k = 1; k < m; ++k) r = direct_sum(r, y);
    return r;
}

/// Per coordinate [[X_j, Z_j], [0, Y_j]].
template <class K>
MatTuple<K> upper_block(const MatTuple<K>& x, const RectTuple<K>& z, const MatTuple<K>& y) {
    if (x.d() != y.d() || x.d() != z.d()) throw ArgumentError("upper_block: mismatched d");
    if (z.rows() != x.n() || z.cols() != y.n())
        throw ArgumentError("upper_block: direction shape must be n x m");
    std::vector<Matrix<K>> mats;
    mats.reserve(x.d());
    for (int j = 0; j < x.d(); ++j) {
        Matrix<K> m(x.n() + y.n(), x.n() + y.n());
        m.set_block(0, 0, x[j]);
        m.set_block(0, x.n(), z[j]);
        m.set_block(x.n(), x.n(), y[j]);
        mats.push_back(std::move(m));
    }
    return MatTuple<K>(x.d(), std::move(mats));
}

/// Per coordinate [[X_j, 0], [Z_j, Y_j]] with Z of shape m x n.
template <class K>
MatTuple<K> lower_block(const MatTuple<K>& x, const RectTuple<K>& z, const MatTuple<K>& y) {
    if (x.d() != y.d() || x.d() != z.d()) throw ArgumentError("lower_block: mismatched d");
    if (z.rows() != y.n() || z.cols() != x.n())
        throw ArgumentError("lower_block: direction shape must be m x n");
    std::vector<Matrix<K>> mats;
    mats.reserve(x.d());
    for (int j = 0; j < x.d(); ++j) {
        Matrix<K> m(x.n() + y.n(), x.n() + y.n());
        m.set_block(0, 0, x[j]);
        m.set_block(x.n(), 0, z[j]);
        m.set_block(x.n(), x.n(), y[j]);
        mats.push_back(std::move(m));
    }
    return MatTuple<K>(x.d(), std::move(mats));
}

/// Block upper bidiagonal assembly: diagonal blocks diags[0..l], superdiagonal
/// blocks supers[0..l-1], zeros elsewhere. supers[k] must be n_k x n_{k+1}.
template <class K>
MatTuple<K> bidiagonal(std::span<const MatTuple<K>> diags, std::span<const RectTuple<K>> supers) {
    if (diags.empty()) throw ArgumentError("bidiagonal: need at least one diagonal block");
    if (supers.size() + 1 != diags.size())
        throw ArgumentError("bidiagonal: need one super block per adjacent diagonal pair");
    const int d = diags[0].d();
    int total = 0;
    for (const auto& x : diags) {
        if (x.d() != d) throw ArgumentError("bidiagonal: mismatched d");
        total += x.n();
    }
    for (std::size_t k = 0; k < supers.size(); ++k) {
        if (supers[k].d() != d) throw ArgumentError("bidiagonal: mismatched d");
        if (supers[k].rows() != diags[k].n() || supers[k].cols() != diags[k + 1].n())
            throw ArgumentError("bidiagonal: super block shape does not chain");
    }
    std::vector<Matrix<K>> mats;
    mats.reserve(d);
    for (int j = 0; j < d; ++j) {
        Matrix<K> m(total, total);
        int off = 0;
        for (std::size_t k = 0; k < diags.size(); ++k) {
            m.set_block(off, off, diags[k][j]);
            if (k < supers.size()) m.set_block(off, off + diags[k].n(), supers[k][j]);
            off += diags[k].n();
        }
        mats.push_back(std::move(m));
    }
    return MatTuple<K>(d, std::move(mats));
}

/// Per-coordinate block extraction from a tuple.
template <class K>
RectTuple<K> block_extract(const MatTuple<K>& t, const std::vector<int>& row_partition,
                           const std::vector<int>& col_partition, int i, int j) {
    std::vector<Matrix<K>> mats;
    mats.reserve(t.d());
    for (int k = 0; k < t.d(); ++k)
        mats.push_back(block_extract(t[k], row_partition, col_partition, i, j));
    return RectTuple<K>(t.d(), std::move(mats));
}

}  // namespace freenc
