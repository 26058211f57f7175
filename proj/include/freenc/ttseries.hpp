#pragma once

#include <functional>
#include <map>
#include <vector>

#include "freenc/diffcalc.hpp"
#include "freenc/polynomial.hpp"
#include "freenc/tensor.hpp"

namespace freenc {

/// Multilinear map (K^{s x s})^l -> K^{s x s}, stored densely on matrix-unit
/// basis tuples. Indexing is mixed radix: the k-th digit in [0, s^2)
/// encodes the matrix unit E_{ab} with a = digit / s, b = digit % s. For
/// l = 0 the table holds the single constant value.
template <class K>
class CoeffTensor {
  public:
    CoeffTensor() = default;
    CoeffTensor(int s, int degree)
        : s_(s), degree_(degree), table_(table_size(s, degree), Matrix<K>(s, s)) {
        if (s < 1 || degree < 0) throw ArgumentError("CoeffTensor: bad shape");
    }

    static std::size_t table_size(int s, int degree) {
        std::size_t n = 1;
        for (int k = 0; k < degree; ++k) n *= static_cast<std::size_t>(s) * s;
        return n;
    }

    int s() const { return s_; }
    int degree() const { return degree_; }
    std::size_t size() const { return table_.size(); }

    Matrix<K>& at(std::size_t flat) { return table_[flat]; }
    const Matrix<K>& at(std::size_t flat) const { return table_[flat]; }

    friend bool operator==(const CoeffTensor& a, const CoeffTensor& b) {
        return a.s_ == b.s_ && a.degree_ == b.degree_ && a.table_ == b.table_;
    }

    bool is_zero() const {
        for (const auto& m : table_)
            if (!m.is_zero()) return false;
        return true;
    }

    /// For s = 1 the tensor is the single scalar coefficient.
    K scalar_value() const {
        if (s_ != 1) throw ArgumentError("CoeffTensor: scalar_value needs s = 1");
        return table_[0](0, 0);
    }

    /// Multilinear application: expand each argument over matrix units and
    /// contract against the table.
    Matrix<K> apply(std::span<const Matrix<K>> args) const {
        if (static_cast<int>(args.size()) != degree_)
            throw ArgumentError("CoeffTensor: wrong argument count");
        if (degree_ == 0) return table_[0];
        Matrix<K> acc(s_, s_);
        const int dim = s_ * s_;
        std::vector<int> idx(static_cast<std::size_t>(degree_), 0);
        std::size_t flat = 0;
        while (true) {
            K w = ScalarTraits<K>::one();
            bool zero = false;
            for (int k = 0; k < degree_; ++k) {
                const K& v = args[k](idx[k] / s_, idx[k] % s_);
                if (ScalarTraits<K>::is_zero(v)) {
                    zero = true;
                    break;
                }
                w = w * v;
            }
            if (!zero && !table_[flat].is_zero()) acc = acc + w * table_[flat];
            int pos = degree_ - 1;
            while (pos >= 0 && idx[pos] == dim - 1) {
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++idx[pos];
            // recompute flat index: digits are most-significant-first
            flat = 0;
            for (int k = 0; k < degree_; ++k) flat = flat * dim + idx[k];
        }
        return acc;
    }

    Matrix<K> apply_to_terms(const std::vector<TensorTerm<K>>& terms) const {
        Matrix<K> acc(s_, s_);
        for (const auto& t : terms) {
            if (t.degree() != degree_) throw ArgumentError("CoeffTensor: term degree mismatch");
            acc = acc + apply(std::span<const Matrix<K>>(t.factors));
        }
        return acc;
    }

  private:
    int s_ = 1, degree_ = 0;
    std::vector<Matrix<K>> table_;
};

/// Word-indexed nc power series around a matrix center: center size s,
/// center tuple Y, coefficient tensors per word (the stored tensor for key w
/// is the operator indexed by the transposed word, so that the series term
/// multiplies the w-th faux power exactly as written). An optional
/// generation rule extends the support lazily; "verified" records that the
/// coefficient compatibility conditions were checked (automatic at s = 1).
template <class K>
struct TTSeries {
    int d = 1;
    int s = 1;
    MatTuple<K> center;
    std::map<Word, CoeffTensor<K>> coeffs;
    std::function<CoeffTensor<K>(const Word&)> generator;
    bool verified = false;

    CoeffTensor<K> coefficient(const Word& w) const {
        auto it = coeffs.find(w);
        if (it != coeffs.end()) return it->second;
        if (generator) return generator(w);
        throw LookupError("TTSeries: no coefficient stored for word " + w.str());
    }
    bool has_coefficient(const Word& w) const {
        return coeffs.count(w) > 0 || static_cast<bool>(generator);
    }
};

/// TT coefficient of f at center Y for word w: the multilinear map obtained
/// by evaluating f on block bidiagonal matrices with all diagonal blocks Y
/// and matrix-unit directions along the letters of w.
template <class K>
CoeffTensor<K> tt_coefficient(const NcFunction<K>& f, const MatTuple<K>& Y, const Word& w) {
    const int s = Y.n();
    const int len = static_cast<int>(w.length());
    CoeffTensor<K> tensor(s, len);
    if (len == 0) {
        tensor.at(0) = f(Y);
        return tensor;
    }
    std::vector<MatTuple<K>> diags(static_cast<std::size_t>(len) + 1, Y);
    const int dim = s * s;
    std::vector<int> idx(static_cast<std::size_t>(len), 0);
    std::size_t flat = 0;
    while (true) {
        std::vector<Matrix<K>> args;
        args.reserve(static_cast<std::size_t>(len));
        for (int k = 0; k < len; ++k) args.push_back(Matrix<K>::unit(s, s, idx[k] / s, idx[k] % s));
        tensor.at(flat) = delta_R_word<K>(f, w, diags, args);
        int pos = len - 1;
        while (pos >= 0 && idx[pos] == dim - 1) {
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++idx[pos];
        flat = 0;
        for (int k = 0; k < len; ++k) flat = flat * dim + idx[k];
    }
    return tensor;
}

/// Coefficients for every word of length <= max_deg.
template <class K>
TTSeries<K> tt_expand(const NcFunction<K>& f, const MatTuple<K>& Y, int max_deg) {
    if (max_deg < 0) throw ArgumentError("tt_expand: max_deg must be >= 0");
    TTSeries<K> series;
    series.d = f.d();
    series.s = Y.n();
    series.center = Y;
    for (int len = 0; len <= max_deg; ++len)
        for (const Word& w : words_of_length(f.d(), len))
            series.coeffs.emplace(w, tt_coefficient(f, Y, w));
    series.verified = (series.s == 1);
    return series;
}

/// One series term: the coefficient tensor applied entrywise to the w-th
/// faux power of X - (+)Y. The empty word contributes the m-fold direct sum
/// of the constant coefficient.
template <class K>
Matrix<K> series_term(const TTSeries<K>& series, const Word& w, const MatTuple<K>& X) {
    if (X.d() != series.d) throw ArgumentError("series_term: mismatched d");
    if (X.n() % series.s != 0)
        throw ArgumentError("series_term: size must be a multiple of the center size");
    const int s = series.s;
    const int m = X.n() / s;
    CoeffTensor<K> tensor = series.coefficient(w);
    if (w.is_empty()) {
        Matrix<K> r(X.n(), X.n());
        for (int a = 0; a < m; ++a) r.set_block(a * s, a * s, tensor.at(0));
        return r;
    }
    if (tensor.is_zero()) return Matrix<K>(X.n(), X.n());
    const MatTuple<K> z = X - direct_sum_copies(series.center, m);
    FauxTensorMatrix<K> power = nc_power_word(z, s, w);
    Matrix<K> r(X.n(), X.n());
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < m; ++k)
            r.set_block(i * s, k * s, tensor.apply_to_terms(power.entry(i, k)));
    return r;
}

/// Partial sum over all words of length <= N.
template <class K>
Matrix<K> series_partial_sum(const TTSeries<K>& series, const MatTuple<K>& X, int N) {
    if (N < 0) throw ArgumentError("series_partial_sum: N must be >= 0");
    Matrix<K> acc(X.n(), X.n());
    for (int len = 0; len <= N; ++len)
        for (const Word& w : words_of_length(series.d, len)) acc = acc + series_term(series, w, X);
    return acc;
}

/// Exact power-expansion identity at a scalar center: partial sum to N plus
/// the order N+1 remainder (last diagonal block X, rows extracted against
/// the standard basis) reproduces f(X).
template <class K>
bool tt_identity_check(const NcFunction<K>& f, const K& mu, const MatTuple<K>& X, int N) {
    if (N < 0) throw ArgumentError("tt_identity_check: N must be >= 0");
    const int d = f.d();
    const int m = X.n();
    std::vector<K> center(static_cast<std::size_t>(d), mu);
    MatTuple<K> Y = MatTuple<K>::scalar_point(d, center);
    TTSeries<K> series = tt_expand(f, Y, N);
    Matrix<K> total = series_partial_sum(series, X, N);

    // remainder: diagonal blocks (mu, ..., mu, X), scalar 1 arguments and a
    // final basis-row argument per matrix row
    std::vector<MatTuple<K>> diags(static_cast<std::size_t>(N) + 2, Y);
    diags.back() = X;
    MatTuple<K> z = X - direct_sum_copies(Y, m);
    for (const Word& w : words_of_length(d, N + 1)) {
        Matrix<K> rem(m, m);
        for (int i = 0; i < m; ++i) {
            std::vector<Matrix<K>> args(static_cast<std::size_t>(N) + 1, Matrix<K>::identity(1));
            Matrix<K> row(1, m);
            row(0, i) = ScalarTraits<K>::one();
            args.back() = row;
            Matrix<K> value = delta_R_word<K>(f, w, diags, args);  // 1 x m
            rem.set_block(i, 0, value);
        }
        // ordinary word power of X - mu I times the remainder coefficient
        Matrix<K> powerw = Matrix<K>::identity(m);
        for (std::size_t k = 0; k < w.length(); ++k) powerw = powerw * z[w.letter(k) - 1];
        total = total + powerw * rem;
    }
    return total == f(X);
}

/// Exact evaluation on a jointly nilpotent point: the series truncates at
/// the nilpotency rank.
template <class K>
Matrix<K> eval_nilpotent(const TTSeries<K>& series, const MatTuple<K>& X) {
    auto kappa = is_jointly_nilpotent(X, series.s, series.center);
    if (!kappa)
        throw PreconditionError("eval_nilpotent: point is not jointly nilpotent about the center");
    return series_partial_sum(series, X, *kappa - 1);
}

/// Residual report for the coefficient compatibility conditions linking the
/// maps across word length. At s = 1 they hold for any coefficients.
struct ConditionReport {
    bool pass = true;
    bool all_checkable = true;
    double max_residual = 0.0;
    std::string worst;
};

namespace detail {

template <class K>
double residual_magnitude(const Matrix<K>& m) {
    return m.max_abs();
}

}  // namespace detail

template <class K>
ConditionReport check_conditions(const TTSeries<K>& series) {
    ConditionReport report;
    if (series.s == 1) return report;
    const int s = series.s;
    const int d = series.d;
    const int dim = s * s;
    auto have = [&](const Word& w) { return series.coeffs.count(w) > 0; };
    auto coeff = [&](const Word& w) -> const CoeffTensor<K>& { return series.coeffs.at(w); };
    auto note = [&](const Matrix<K>& residual, const Word& w, const char* which) {
        if (residual.is_zero()) return;
        report.pass = false;
        double mag = detail::residual_magnitude(residual);
        if (mag > report.max_residual) {
            report.max_residual = mag;
            report.worst = std::string(which) + " at word " + w.str();
        }
    };
    std::vector<Matrix<K>> units;
    for (int u = 0; u < dim; ++u) units.push_back(Matrix<K>::unit(s, s, u / s, u % s));

    for (const auto& [w, fw] : series.coeffs) {
        const int len = fw.degree();
        // all d extensions of w by one letter must be stored to test the
        // displays involving length len + 1
        bool extendable = true;
        for (int g = 1; g <= d && extendable; ++g) {
            for (std::size_t cut = 0; cut <= w.length() && extendable; ++cut) {
                std::vector<int> letters(w.letters().begin(), w.letters().begin() + cut);
                letters.push_back(g);
                letters.insert(letters.end(), w.letters().begin() + cut, w.letters().end());
                if (!have(Word(std::move(letters)))) extendable = false;
            }
        }
        if (!extendable) {
            report.all_checkable = false;
            continue;
        }
        auto inserted = [&](int g, std::size_t cut) {
            std::vector<int> letters(w.letters().begin(), w.letters().begin() + cut);
            letters.push_back(g);
            letters.insert(letters.end(), w.letters().begin() + cut, w.letters().end());
            return Word(std::move(letters));
        };
        // iterate over S and every argument tuple of matrix units
        for (int su = 0; su < dim; ++su) {
            const Matrix<K>& S = units[su];
            std::vector<Matrix<K>> comm;  // S Y_k - Y_k S per letter
            for (int g = 1; g <= d; ++g)
                comm.push_back(S * series.center[g - 1] - series.center[g - 1] * S);
            if (len == 0) {
                // S f_e - f_e S = sum_k f_{g_k}(S Y_k - Y_k S)
                Matrix<K> lhs = S * fw.at(0) - fw.at(0) * S;
                Matrix<K> rhs(s, s);
                for (int g = 1; g <= d; ++g) {
                    const Matrix<K> arg[1] = {comm[g - 1]};
                    rhs = rhs + coeff(inserted(g, 0)).apply(std::span<const Matrix<K>>(arg));
                }
                note(lhs - rhs, w, "head");
                continue;
            }
            std::vector<int> idx(static_cast<std::size_t>(len), 0);
            while (true) {
                std::vector<Matrix<K>> args;
                for (int k = 0; k < len; ++k) args.push_back(units[idx[k]]);
                // head: S f_w(A) - f_w(S A^1, ...) = sum_k f_{g_k w}(comm_k, A...)
                {
                    Matrix<K> lhs = S * fw.apply(std::span<const Matrix<K>>(args));
                    auto shifted = args;
                    shifted[0] = S * args[0];
                    lhs = lhs - fw.apply(std::span<const Matrix<K>>(shifted));
                    Matrix<K> rhs(s, s);
                    for (int g = 1; g <= d; ++g) {
                        std::vector<Matrix<K>> ext;
                        ext.push_back(comm[g - 1]);
                        ext.insert(ext.end(), args.begin(), args.end());
                        rhs = rhs + coeff(inserted(g, 0)).apply(std::span<const Matrix<K>>(ext));
                    }
                    note(lhs - rhs, w, "head");
                }
                // interior: for each cut j = 1..len-1
                for (int j = 1; j < len; ++j) {
                    auto left = args;
                    left[j - 1] = args[j - 1] * S;
                    auto right = args;
                    right[j] = S * args[j];
                    Matrix<K> lhs = fw.apply(std::span<const Matrix<K>>(left)) -
                                    fw.apply(std::span<const Matrix<K>>(right));
                    Matrix<K> rhs(s, s);
                    for (int g = 1; g <= d; ++g) {
                        std::vector<Matrix<K>> ext(args.begin(), args.begin() + j);
                        ext.push_back(comm[g - 1]);
                        ext.insert(ext.end(), args.begin() + j, args.end());
                        rhs = rhs +
                              coeff(inserted(g, static_cast<std::size_t>(j)))
                                  .apply(std::span<const Matrix<K>>(ext));
                    }
                    note(lhs - rhs, w, "interior");
                }
                // tail: f_w(..., A^l S) - f_w(A) S = sum_k f_{w g_k}(A..., comm_k)
                {
                    auto shifted = args;
                    shifted[len - 1] = args[len - 1] * S;
                    Matrix<K> lhs = fw.apply(std::span<const Matrix<K>>(shifted)) -
                                    fw.apply(std::span<const Matrix<K>>(args)) * S;
                    Matrix<K> rhs(s, s);
                    for (int g = 1; g <= d; ++g) {
                        std::vector<Matrix<K>> ext = args;
                        ext.push_back(comm[g - 1]);
                        rhs = rhs +
                              coeff(inserted(g, w.length())).apply(std::span<const Matrix<K>>(ext));
                    }
                    note(lhs - rhs, w, "tail");
                }
                int pos = len - 1;
                while (pos >= 0 && idx[pos] == dim - 1) {
                    idx[pos] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++idx[pos];
            }
        }
    }
    return report;
}

/// Runs check_conditions and records the outcome on the series.
template <class K>
ConditionReport verify_conditions(TTSeries<K>& series) {
    ConditionReport report = check_conditions(series);
    series.verified = report.pass;
    return report;
}

/// Packages a series as the nc function it sums to on jointly nilpotent
/// points about the center. At s > 1 the coefficients must be verified.
template <class K>
NcFunction<K> series_as_ncfunction(TTSeries<K> series) {
    if (series.s > 1 && !series.verified)
        throw PreconditionError("series_as_ncfunction: series is not verified");
    int d = series.d;
    return NcFunction<K>(d, [series = std::move(series)](const MatTuple<K>& x) {
        return eval_nilpotent(series, x);
    });
}

/// Reads the polynomial out of a nc function by extracting scalar-center
/// coefficients at 0 through word length L.
template <class K>
NcPolynomial<K> reconstruct_poly(const NcFunction<K>& f, int L) {
    if (L < 0) throw ArgumentError("reconstruct_poly: L must be >= 0");
    const int d = f.d();
    MatTuple<K> zero(d, 1);
    NcPolynomial<K> p(d);
    for (int len = 0; len <= L; ++len)
        for (const Word& w : words_of_length(d, len))
            p.add_term(w, tt_coefficient(f, zero, w).scalar_value());
    return p;
}

/// Homogeneous expansion at 0: the degree-j layers f_j, j = 0..L.
template <class K>
std::vector<NcPolynomial<K>> homogeneous_expansion(const NcFunction<K>& f, int L) {
    if (L < 0) throw ArgumentError("homogeneous_expansion: L must be >= 0");
    const int d = f.d();
    MatTuple<K> zero(d, 1);
    std::vector<NcPolynomial<K>> layers;
    for (int j = 0; j <= L; ++j) {
        NcPolynomial<K> layer(d);
        for (const Word& w : words_of_length(d, j))
            layer.add_term(w, tt_coefficient(f, zero, w).scalar_value());
        layers.push_back(std::move(layer));
    }
    return layers;
}

}  // namespace freenc
