#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "freenc/tuple.hpp"

namespace freenc {

inline double frobenius_norm(const Matrix<Cplx>& m) {
    double s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

/// Operator 2-norm estimated by power iteration on A^H A, fixed seed and a
/// 200-step cap so every float report is reproducible.
inline double operator_norm(const Matrix<Cplx>& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    const Matrix<Cplx> ah = [&] {
        Matrix<Cplx> t(a.cols(), a.rows());
        for (int i = 0; i < a.rows(); ++i)
            for (int j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
        return t;
    }();
    std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Cplx> v(static_cast<std::size_t>(a.cols()));
    for (auto& x : v) x = Cplx(dist(rng), dist(rng));
    auto apply = [&](const Matrix<Cplx>& m, const std::vector<Cplx>& in) {
        std::vector<Cplx> out(static_cast<std::size_t>(m.rows()), Cplx(0, 0));
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out[i] += m(i, j) * in[j];
        return out;
    };
    auto norm2 = [](const std::vector<Cplx>& x) {
        double s = 0;
        for (const auto& c : x) s += std::norm(c);
        return std::sqrt(s);
    };
    double sigma = 0;
    for (int step = 0; step < 200; ++step) {
        std::vector<Cplx> w = apply(ah, apply(a, v));
        double lambda = norm2(w);
        if (lambda == 0.0) return 0.0;
        for (auto& c : w) c /= lambda;
        double next = std::sqrt(lambda);
        if (step > 2 && std::abs(next - sigma) <= 1e-13 * std::max(1.0, sigma)) {
            sigma = next;
            break;
        }
        sigma = next;
        v = std::move(w);
    }
    return sigma;
}

/// Tuple norm: the max over coordinates of the operator 2-norm.
inline double tuple_norm(const MatTuple<Cplx>& x) {
    double m = 0;
    for (int j = 0; j < x.d(); ++j) m = std::max(m, operator_norm(x[j]));
    return m;
}

}  // namespace freenc
