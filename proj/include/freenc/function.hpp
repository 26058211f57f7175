#pragma once

#include <functional>
#include <memory>
#include <utility>

#include "freenc/polynomial.hpp"
#include "freenc/tuple.hpp"

namespace freenc {

/// An evaluable nc function: a size-preserving rule MatTuple -> square
/// matrix. Evaluation may throw DomainError; everything else about being a
/// nc function (respecting direct sums, similarities, intertwining) is a
/// property the test suites verify, not something the type enforces.
template <class K>
class NcFunction {
  public:
    using EvalFn = std::function<Matrix<K>(const MatTuple<K>&)>;

    NcFunction(int d, EvalFn eval) : d_(d), eval_(std::move(eval)) {
        if (d < 1) throw ArgumentError("NcFunction: d must be >= 1");
    }

    int d() const { return d_; }

    Matrix<K> operator()(const MatTuple<K>& x) const {
        if (x.d() != d_) throw ArgumentError("NcFunction: evaluation point has wrong d");
        Matrix<K> r = eval_(x);
        if (r.rows() != x.n() || r.cols() != x.n())
            throw DomainError("NcFunction: evaluation rule did not preserve size");
        return r;
    }

    static NcFunction constant(int d, const K& c) {
        return NcFunction(d, [c](const MatTuple<K>& x) { return Matrix<K>::scalar(x.n(), c); });
    }
    static NcFunction coordinate(int d, int j) {
        if (j < 1 || j > d) throw ArgumentError("NcFunction: coordinate out of range");
        return NcFunction(d, [j](const MatTuple<K>& x) { return x[j - 1]; });
    }
    static NcFunction from_polynomial(NcPolynomial<K> p) {
        int d = p.d();
        return NcFunction(d, [p = std::move(p)](const MatTuple<K>& x) { return p.eval(x); });
    }

    friend NcFunction operator+(const NcFunction& f, const NcFunction& g) {
        check_same_d(f, g);
        return NcFunction(f.d_, [f, g](const MatTuple<K>& x) { return f(x) + g(x); });
    }
    friend NcFunction operator-(const NcFunction& f, const NcFunction& g) {
        check_same_d(f, g);
        return NcFunction(f.d_, [f, g](const MatTuple<K>& x) { return f(x) - g(x); });
    }
    friend NcFunction operator*(const NcFunction& f, const NcFunction& g) {
        check_same_d(f, g);
        return NcFunction(f.d_, [f, g](const MatTuple<K>& x) { return f(x) * g(x); });
    }
    friend NcFunction operator*(const K& c, const NcFunction& f) {
        return NcFunction(f.d_, [c, f](const MatTuple<K>& x) { return c * f(x); });
    }

    /// Pointwise inverse; the domain shrinks to where f(X) is invertible.
    friend NcFunction inverse(const NcFunction& f) {
        return NcFunction(f.d_, [f](const MatTuple<K>& x) { return invert(f(x)); });
    }

    /// g o f for a single-variable outer function g.
    friend NcFunction compose(const NcFunction& g, const NcFunction& f) {
        if (g.d() != 1) throw ArgumentError("compose: outer function must have d = 1");
        return NcFunction(f.d_, [g, f](const MatTuple<K>& x) {
            return g(MatTuple<K>(1, {f(x)}));
        });
    }

  private:
    int d_;
    EvalFn eval_;

    static void check_same_d(const NcFunction& f, const NcFunction& g) {
        if (f.d_ != g.d_) throw ArgumentError("NcFunction: mismatched d");
    }
};

}  // namespace freenc
