#pragma once

#include <optional>
#include <vector>

#include "freenc/errors.hpp"
#include "freenc/scalar.hpp"

namespace freenc {

/// Dense row-major matrix over a scalar backend K.
template <class K>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, ScalarTraits<K>::zero()) {
        if (rows < 0 || cols < 0) throw ArgumentError("Matrix: negative dimension");
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ScalarTraits<K>::one();
        return m;
    }
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
    static Matrix scalar(int n, const K& c) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = c;
        return m;
    }
    static Matrix unit(int rows, int cols, int i, int j) {
        Matrix m(rows, cols);
        m(i, j) = ScalarTraits<K>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    K& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const K& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const K& v : data_)
            if (!ScalarTraits<K>::is_zero(v)) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "add");
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] + b.data_[i];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b, "subtract");
        Matrix r = a;
        for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] = r.data_[i] - b.data_[i];
        return r;
    }
    Matrix operator-() const {
        Matrix r = *this;
        for (K& v : r.data_) v = -v;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw ArgumentError("Matrix: inner dimensions do not match");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const K& aik = a(i, k);
                if (ScalarTraits<K>::is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }
    friend Matrix operator*(const K& c, const Matrix& m) {
        Matrix r = m;
        for (K& v : r.data_) v = c * v;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    Matrix block(int row0, int col0, int nrows, int ncols) const {
        if (row0 < 0 || col0 < 0 || row0 + nrows > rows_ || col0 + ncols > cols_)
            throw ArgumentError("Matrix: block out of range");
        Matrix r(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
        return r;
    }
    void set_block(int row0, int col0, const Matrix& b) {
        if (row0 + b.rows_ > rows_ || col0 + b.cols_ > cols_)
            throw ArgumentError("Matrix: block placement out of range");
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) (*this)(row0 + i, col0 + j) = b(i, j);
    }

    friend Matrix direct_sum(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ + b.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(a.rows_, a.cols_, b);
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const K& v : data_) m = std::max(m, ScalarTraits<K>::magnitude(v));
        return m;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<K> data_;

    static void check_same_shape(const Matrix& a, const Matrix& b, const char* op) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw ArgumentError(std::string("Matrix: shape mismatch in ") + op);
    }
};

/// Extracts the (i, j) block of a matrix cut along the given row/column
/// partitions (sizes must sum to the matrix dimensions).
template <class K>
Matrix<K> block_extract(const Matrix<K>& m, const std::vector<int>& row_partition,
                        const std::vector<int>& col_partition, int i, int j) {
    int rsum = 0, csum = 0;
    for (int v : row_partition) rsum += v;
    for (int v : col_partition) csum += v;
    if (rsum != m.rows() || csum != m.cols())
        throw ArgumentError("block_extract: partition does not sum to matrix dimensions");
    if (i < 0 || i >= static_cast<int>(row_partition.size()) || j < 0 ||
        j >= static_cast<int>(col_partition.size()))
        throw ArgumentError("block_extract: block index out of range");
    int r0 = 0, c0 = 0;
    for (int k = 0; k < i; ++k) r0 += row_partition[k];
    for (int k = 0; k < j; ++k) c0 += col_partition[k];
    return m.block(r0, c0, row_partition[i], col_partition[j]);
}

namespace detail {

// Fraction-free Gauss-Jordan (Montante/Bareiss) on an integer matrix.
// Returns det(B) and overwrites `aug` with det(B) * B^{-1}.
inline std::optional<BigInt> bareiss_inverse(std::vector<std::vector<BigInt>>& b,
                                             std::vector<std::vector<BigInt>>& aug) {
    const int n = static_cast<int>(b.size());
    BigInt prev(1);
    for (int k = 0; k < n; ++k) {
        int pivot = -1;
        for (int i = k; i < n; ++i)
            if (!b[i][k].is_zero()) {
                pivot = i;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != k) {
            std::swap(b[pivot], b[k]);
            std::swap(aug[pivot], aug[k]);
        }
        const BigInt p = b[k][k];
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const BigInt f = b[i][k];
            for (int j = 0; j < n; ++j) {
                b[i][j] = (p * b[i][j] - f * b[k][j]) / prev;
                aug[i][j] = (p * aug[i][j] - f * aug[k][j]) / prev;
            }
        }
        prev = p;
    }
    // b is now diag(d, ..., d) with d the final pivot, and aug = d * B^{-1};
    // row swaps are absorbed because aug underwent the same row operations.
    return b[n - 1][n - 1];
}

}  // namespace detail

/// Exact inverse over the rationals via fraction-free elimination on the
/// denominator-cleared integer matrix. Returns nullopt when singular.
inline std::optional<Matrix<Rational>> try_invert(const Matrix<Rational>& a) {
    if (!a.is_square()) throw ArgumentError("invert: matrix must be square");
    const int n = a.rows();
    if (n == 0) return Matrix<Rational>(0, 0);
    BigInt delta(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const BigInt& d = a(i, j).den();
            BigInt g = BigInt::gcd(delta, d);
            delta = delta * (d / g);
        }
    std::vector<std::vector<BigInt>> b(n, std::vector<BigInt>(n));
    std::vector<std::vector<BigInt>> aug(n, std::vector<BigInt>(n, BigInt(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) b[i][j] = a(i, j).num() * (delta / a(i, j).den());
        aug[i][i] = BigInt(1);
    }
    auto det = detail::bareiss_inverse(b, aug);
    if (!det) return std::nullopt;
    Matrix<Rational> inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv(i, j) = Rational(delta * aug[i][j], *det);
    return inv;
}

/// Inverse with partial pivoting; a pivot below 1e-12 times the matrix
/// max-norm reports singularity.
inline std::optional<Matrix<Cplx>> try_invert(const Matrix<Cplx>& a) {
    if (!a.is_square()) throw ArgumentError("invert: matrix must be square");
    const int n = a.rows();
    if (n == 0) return Matrix<Cplx>(0, 0);
    const double threshold = 1e-12 * a.max_abs();
    Matrix<Cplx> m = a;
    Matrix<Cplx> inv = Matrix<Cplx>::identity(n);
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > best) {
                best = std::abs(m(i, k));
                pivot = i;
            }
        if (best <= threshold) return std::nullopt;
        if (pivot != k)
            for (int j = 0; j < n; ++j) {
                std::swap(m(k, j), m(pivot, j));
                std::swap(inv(k, j), inv(pivot, j));
            }
        const Cplx p = m(k, k);
        for (int j = 0; j < n; ++j) {
            m(k, j) /= p;
            inv(k, j) /= p;
        }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const Cplx f = m(i, k);
            if (f == Cplx(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) {
                m(i, j) -= f * m(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

template <class K>
Matrix<K> invert(const Matrix<K>& a, Span span = {}) {
    auto inv = try_invert(a);
    if (!inv) throw DomainError("matrix inverse does not exist", span);
    return *inv;
}

}  // namespace freenc
