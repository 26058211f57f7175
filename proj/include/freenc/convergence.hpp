#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "freenc/linalg.hpp"
#include "freenc/tuple.hpp"
#include "freenc/word.hpp"

namespace freenc {

/// Coefficient rule of an s = 1 nc power series centered at 0: a total,
/// deterministic map Word -> complex. Structured kinds carry enough shape
/// for the estimators to form degree sums without enumerating d^l words;
/// Finite holds an explicit table, Custom falls back to enumeration.
class CoeffRule {
  public:
    enum class Kind { Zero, Geometric, SingleLetter, WordPower, Finite, Custom };

    static CoeffRule zero(int d) { return CoeffRule(Kind::Zero, d); }
    /// f_w = 1 for every word.
    static CoeffRule geometric(int d) { return CoeffRule(Kind::Geometric, d); }
    /// f_w = 1 exactly on the powers of one letter.
    static CoeffRule single_letter(int d, int j) {
        if (j < 1 || j > d) throw ArgumentError("CoeffRule: letter out of range");
        CoeffRule r(Kind::SingleLetter, d);
        r.letter_ = j;
        return r;
    }
    /// f_w = 1 exactly on the powers of a fixed word u.
    static CoeffRule word_power(int d, Word u) {
        if (u.is_empty() || !u.letters_within(d))
            throw ArgumentError("CoeffRule: base word must be nonempty within d letters");
        CoeffRule r(Kind::WordPower, d);
        r.base_ = std::move(u);
        return r;
    }
    static CoeffRule finite(int d, std::map<Word, Cplx> table) {
        CoeffRule r(Kind::Finite, d);
        r.table_ = std::move(table);
        return r;
    }
    static CoeffRule custom(int d, std::function<Cplx(const Word&)> fn) {
        CoeffRule r(Kind::Custom, d);
        r.fn_ = std::move(fn);
        return r;
    }

    int d() const { return d_; }
    Kind kind() const { return kind_; }

    Cplx coeff(const Word& w) const {
        switch (kind_) {
            case Kind::Zero: return {0, 0};
            case Kind::Geometric: return {1, 0};
            case Kind::SingleLetter:
                for (std::size_t k = 0; k < w.length(); ++k)
                    if (w.letter(k) != letter_) return {0, 0};
                return {1, 0};
            case Kind::WordPower: {
                if (w.length() % base_.length() != 0) return {0, 0};
                for (std::size_t k = 0; k < w.length(); ++k)
                    if (w.letter(k) != base_.letter(k % base_.length())) return {0, 0};
                return {1, 0};
            }
            case Kind::Finite: {
                auto it = table_.find(w);
                return it == table_.end() ? Cplx(0, 0) : it->second;
            }
            case Kind::Custom: return fn_(w);
        }
        return {0, 0};
    }

    /// T_l(Z) = sum over |w| = l of Z^w f_w.
    Matrix<Cplx> degree_term(const MatTuple<Cplx>& z, int len) const {
        if (z.d() != d_) throw ArgumentError("CoeffRule: tuple has wrong d");
        const int n = z.n();
        if (len == 0) return Matrix<Cplx>::scalar(n, coeff(Word::empty()));
        switch (kind_) {
            case Kind::Zero: return Matrix<Cplx>(n, n);
            case Kind::Geometric: {
                Matrix<Cplx> sum(n, n);
                for (int j = 0; j < d_; ++j) sum = sum + z[j];
                return matrix_power(sum, len);
            }
            case Kind::SingleLetter: return matrix_power(z[letter_ - 1], len);
            case Kind::WordPower: {
                const int l = static_cast<int>(base_.length());
                if (len % l != 0) return Matrix<Cplx>(n, n);
                Matrix<Cplx> zu = Matrix<Cplx>::identity(n);
                for (std::size_t k = 0; k < base_.length(); ++k)
                    zu = zu * z[base_.letter(k) - 1];
                return matrix_power(zu, len / l);
            }
            case Kind::Finite: {
                Matrix<Cplx> acc(n, n);
                for (const auto& [w, c] : table_) {
                    if (static_cast<int>(w.length()) != len || (c.real() == 0 && c.imag() == 0))
                        continue;
                    acc = acc + c * word_value(z, w);
                }
                return acc;
            }
            case Kind::Custom: {
                Matrix<Cplx> acc(n, n);
                enumeration_guard(len);
                for (const Word& w : words_of_length(d_, len)) {
                    Cplx c = fn_(w);
                    if (c.real() == 0 && c.imag() == 0) continue;
                    acc = acc + c * word_value(z, w);
                }
                return acc;
            }
        }
        return Matrix<Cplx>(n, n);
    }

    /// sum over |w| = l of r^w |f_w| (the polydisk majorant).
    double degree_sum_abs(const std::vector<double>& r, int len) const {
        check_radii(r);
        if (len == 0) return std::abs(coeff(Word::empty()));
        switch (kind_) {
            case Kind::Zero: return 0;
            case Kind::Geometric: {
                double s = 0;
                for (double v : r) s += v;
                return std::pow(s, len);
            }
            case Kind::SingleLetter: return std::pow(r[letter_ - 1], len);
            case Kind::WordPower:
                return len % base_.length() == 0
                           ? std::pow(radius_word(r, base_),
                                      len / static_cast<int>(base_.length()))
                           : 0.0;
            case Kind::Finite: {
                double acc = 0;
                for (const auto& [w, c] : table_)
                    if (static_cast<int>(w.length()) == len) acc += radius_word(r, w) * std::abs(c);
                return acc;
            }
            case Kind::Custom: {
                double acc = 0;
                enumeration_guard(len);
                for (const Word& w : words_of_length(d_, len))
                    acc += radius_word(r, w) * std::abs(fn_(w));
                return acc;
            }
        }
        return 0;
    }

    /// max over |w| = l of r^w |f_w| (the diamond majorant).
    double degree_max_abs(const std::vector<double>& r, int len) const {
        check_radii(r);
        if (len == 0) return std::abs(coeff(Word::empty()));
        switch (kind_) {
            case Kind::Zero: return 0;
            case Kind::Geometric: {
                double m = 0;
                for (double v : r) m = std::max(m, v);
                return std::pow(m, len);
            }
            case Kind::SingleLetter: return std::pow(r[letter_ - 1], len);
            case Kind::WordPower:
                return len % base_.length() == 0
                           ? std::pow(radius_word(r, base_),
                                      len / static_cast<int>(base_.length()))
                           : 0.0;
            case Kind::Finite: {
                double acc = 0;
                for (const auto& [w, c] : table_)
                    if (static_cast<int>(w.length()) == len)
                        acc = std::max(acc, radius_word(r, w) * std::abs(c));
                return acc;
            }
            case Kind::Custom: {
                double acc = 0;
                enumeration_guard(len);
                for (const Word& w : words_of_length(d_, len))
                    acc = std::max(acc, radius_word(r, w) * std::abs(fn_(w)));
                return acc;
            }
        }
        return 0;
    }

    static Matrix<Cplx> word_value(const MatTuple<Cplx>& z, const Word& w) {
        Matrix<Cplx> acc = Matrix<Cplx>::identity(z.n());
        for (std::size_t k = 0; k < w.length(); ++k) acc = acc * z[w.letter(k) - 1];
        return acc;
    }

  private:
    CoeffRule(Kind k, int d) : kind_(k), d_(d) {
        if (d < 1) throw ArgumentError("CoeffRule: d must be >= 1");
    }

    static Matrix<Cplx> matrix_power(const Matrix<Cplx>& m, int p) {
        Matrix<Cplx> acc = Matrix<Cplx>::identity(m.rows());
        for (int k = 0; k < p; ++k) acc = acc * m;
        return acc;
    }
    static double radius_word(const std::vector<double>& r, const Word& w) {
        double acc = 1;
        for (std::size_t k = 0; k < w.length(); ++k) acc *= r[w.letter(k) - 1];
        return acc;
    }
    void check_radii(const std::vector<double>& r) const {
        if (static_cast<int>(r.size()) != d_)
            throw ArgumentError("CoeffRule: need one radius per letter");
    }
    void enumeration_guard(int len) const {
        double count = std::pow(static_cast<double>(d_), len);
        if (count > 4e6)
            throw ArgumentError("CoeffRule: custom rule would enumerate too many words");
    }

    Kind kind_;
    int d_;
    int letter_ = 1;
    Word base_;
    std::map<Word, Cplx> table_;
    std::function<Cplx(const Word&)> fn_;
};

/// One estimator invocation, for reports and the CLI.
struct ConvergenceReport {
    std::string estimator;
    std::string input;
    double estimate = 0;          // +infinity marker allowed
    int window_lo = 0, window_hi = 0;
    long long term_count = 0;
    std::uint64_t seed = 0;
};

/// Gelfand iteration ||Z^(2^k)||^(1/2^k), with per-step renormalization so
/// large powers cannot overflow. Stops when successive estimates differ by
/// less than tol or after 20 doublings.
inline double spectral_radius(const Matrix<Cplx>& z, double tol) {
    if (tol <= 0) throw ArgumentError("spectral_radius: tol must be positive");
    if (!z.is_square()) throw ArgumentError("spectral_radius: matrix must be square");
    Matrix<Cplx> m = z;
    double log_acc = 0;  // sum of 2^-j log ||M_j||
    double prev = std::numeric_limits<double>::infinity();
    // no early stop until the power 2^k reaches the matrix size: nilpotency
    // is only decided there, and the plateau before it is misleading
    int settle = 0;
    while ((1 << settle) < z.rows()) ++settle;
    for (int k = 0; k <= 20; ++k) {
        double norm = operator_norm(m);
        if (norm == 0.0) return 0.0;
        log_acc += std::ldexp(std::log(norm), -k);
        double estimate = std::exp(log_acc);
        if (k >= settle && std::abs(estimate - prev) < tol) return estimate;
        prev = estimate;
        Matrix<Cplx> scaled = Cplx(1.0 / norm, 0) * m;
        m = scaled * scaled;
    }
    return prev;
}

/// The limsup surrogate window [ceil(L/2), L]; estimators take the window
/// explicitly so callers can override it.
struct TailWindow {
    int lo = 0;
    int hi = 0;

    static TailWindow for_top(int L) { return TailWindow{(L + 1) / 2, L}; }
    void validate() const {
        if (lo < 1 || hi < lo) throw ArgumentError("tail window must satisfy 1 <= lo <= hi");
    }
};

/// Pointwise radius estimate at Z: 1 / max over the tail window of
/// ||T_l(Z)||^(1/l); +infinity when every tail term vanishes.
inline double rho_point(const CoeffRule& rule, const MatTuple<Cplx>& z, TailWindow window,
                        ConvergenceReport* report = nullptr) {
    window.validate();
    double mu = 0;
    long long terms = 0;
    for (int len = window.lo; len <= window.hi; ++len) {
        double norm = operator_norm(rule.degree_term(z, len));
        ++terms;
        if (norm > 0) mu = std::max(mu, std::pow(norm, 1.0 / len));
    }
    double estimate = mu == 0 ? std::numeric_limits<double>::infinity() : 1.0 / mu;
    if (report) {
        report->estimator = "rho_point";
        report->estimate = estimate;
        report->window_lo = window.lo;
        report->window_hi = window.hi;
        report->term_count = terms;
    }
    return estimate;
}

inline double rho_point(const CoeffRule& rule, const MatTuple<Cplx>& z, int L,
                        ConvergenceReport* report = nullptr) {
    if (L < 8) throw ArgumentError("rho_point: L must be >= 8");
    return rho_point(rule, z, TailWindow::for_top(L), report);
}

/// Sampled one-sided estimate of the size-m radius: maximizes the tail
/// window quantity over random normalized tuples, so the returned mu is a
/// lower bound witness and its reciprocal an upper estimate of rho_m.
inline double rho_m(const CoeffRule& rule, int m, int samples, TailWindow window,
                    std::uint64_t seed = 1, ConvergenceReport* report = nullptr) {
    if (samples < 1) throw ArgumentError("rho_m: samples must be >= 1");
    if (m < 1) throw ArgumentError("rho_m: m must be >= 1");
    window.validate();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    double mu = 0;
    long long terms = 0;
    for (int trial = 0; trial < samples; ++trial) {
        MatTuple<Cplx> z(rule.d(), m);
        // alternate fully complex samples with nonnegative real ones; the
        // sup is often attained on the positive orthant
        for (int j = 0; j < rule.d(); ++j)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    z[j](a, b) = trial % 2 == 0 ? Cplx(dist(rng), dist(rng))
                                                : Cplx(std::abs(dist(rng)), 0.0);
        double norm = tuple_norm(z);
        if (norm == 0.0) continue;
        z = Cplx(1.0 / norm, 0.0) * z;
        for (int len = window.lo; len <= window.hi; ++len) {
            double tn = operator_norm(rule.degree_term(z, len));
            ++terms;
            if (tn > 0) mu = std::max(mu, std::pow(tn, 1.0 / len));
        }
    }
    double estimate = mu == 0 ? std::numeric_limits<double>::infinity() : 1.0 / mu;
    if (report) {
        report->estimator = "rho_m";
        report->estimate = estimate;
        report->window_lo = window.lo;
        report->window_hi = window.hi;
        report->term_count = terms;
        report->seed = seed;
    }
    return estimate;
}

inline double rho_m(const CoeffRule& rule, int m, int samples, int L, std::uint64_t seed = 1,
                    ConvergenceReport* report = nullptr) {
    if (L < 8) throw ArgumentError("rho_m: L must be >= 8");
    return rho_m(rule, m, samples, TailWindow::for_top(L), seed, report);
}

/// Polydisk majorant growth: tail-window max of
/// (sum over |w| = l of r^w |f_w|)^(1/l).
inline double mu_r(const CoeffRule& rule, const std::vector<double>& r, TailWindow window,
                   ConvergenceReport* report = nullptr) {
    window.validate();
    double mu = 0;
    for (int len = window.lo; len <= window.hi; ++len) {
        double s = rule.degree_sum_abs(r, len);
        if (s > 0) mu = std::max(mu, std::pow(s, 1.0 / len));
    }
    if (report) {
        report->estimator = "mu_r";
        report->estimate = mu;
        report->window_lo = window.lo;
        report->window_hi = window.hi;
        report->term_count = window.hi - window.lo + 1;
    }
    return mu;
}

inline double mu_r(const CoeffRule& rule, const std::vector<double>& r, int L,
                   ConvergenceReport* report = nullptr) {
    if (L < 8) throw ArgumentError("mu_r: L must be >= 8");
    return mu_r(rule, r, TailWindow::for_top(L), report);
}

/// Diamond majorant growth: tail-window max of
/// (max over |w| = l of r^w |f_w|)^(1/l).
inline double mu_diamond(const CoeffRule& rule, const std::vector<double>& r, TailWindow window,
                         ConvergenceReport* report = nullptr) {
    window.validate();
    double mu = 0;
    for (int len = window.lo; len <= window.hi; ++len) {
        double s = rule.degree_max_abs(r, len);
        if (s > 0) mu = std::max(mu, std::pow(s, 1.0 / len));
    }
    if (report) {
        report->estimator = "mu_diamond";
        report->estimate = mu;
        report->window_lo = window.lo;
        report->window_hi = window.hi;
        report->term_count = window.hi - window.lo + 1;
    }
    return mu;
}

inline double mu_diamond(const CoeffRule& rule, const std::vector<double>& r, int L,
                         ConvergenceReport* report = nullptr) {
    if (L < 8) throw ArgumentError("mu_diamond: L must be >= 8");
    return mu_diamond(rule, r, TailWindow::for_top(L), report);
}

namespace detail {

inline std::vector<double> center_deviations(const MatTuple<Cplx>& x, const MatTuple<Cplx>& y) {
    if (x.d() != y.d()) throw ArgumentError("membership: mismatched d");
    if (y.n() < 1 || x.n() % y.n() != 0)
        throw ArgumentError("membership: size must be a multiple of the center size");
    const int m = x.n() / y.n();
    MatTuple<Cplx> diff = x - direct_sum_copies(y, m);
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(x.d()));
    for (int j = 0; j < x.d(); ++j) norms.push_back(operator_norm(diff[j]));
    return norms;
}

}  // namespace detail

/// max_j ||X_j - (+)Y_j|| < r
inline bool in_ball(const MatTuple<Cplx>& x, const MatTuple<Cplx>& y, double r) {
    auto norms = detail::center_deviations(x, y);
    double m = 0;
    for (double v : norms) m = std::max(m, v);
    return m < r;
}

/// ||X_j - (+)Y_j|| < r_j for every coordinate
inline bool in_polydisk(const MatTuple<Cplx>& x, const MatTuple<Cplx>& y,
                        const std::vector<double>& r) {
    auto norms = detail::center_deviations(x, y);
    if (r.size() != norms.size()) throw ArgumentError("in_polydisk: need one radius per letter");
    for (std::size_t j = 0; j < norms.size(); ++j)
        if (!(norms[j] < r[j])) return false;
    return true;
}

/// sum_j ||X_j - (+)Y_j|| < r
inline bool in_diamond(const MatTuple<Cplx>& x, const MatTuple<Cplx>& y, double r) {
    auto norms = detail::center_deviations(x, y);
    double s = 0;
    for (double v : norms) s += v;
    return s < r;
}

/// Membership in the similarity invariant envelope of the unit ball at 0
/// (single letter): spectral radius below 1.
inline bool envelope_ball_member(const Matrix<Cplx>& z) {
    return spectral_radius(z, 1e-9) < 1.0;
}

/// Partial sums of the geometric series against the resolvent:
/// || sum_{l <= L} (Z_1 + ... + Z_d)^l - (I - Z_1 - ... - Z_d)^{-1} || < tol.
inline bool geometric_resolvent_check(const MatTuple<Cplx>& z, int L, double tol) {
    if (L < 0) throw ArgumentError("geometric_resolvent_check: L must be >= 0");
    Matrix<Cplx> sum(z.n(), z.n());
    for (int j = 0; j < z.d(); ++j) sum = sum + z[j];
    if (!(spectral_radius(sum, 1e-9) < 1.0))
        throw PreconditionError("geometric_resolvent_check: spectral radius of the sum must be < 1");
    auto resolvent = try_invert(Matrix<Cplx>::identity(z.n()) - sum);
    if (!resolvent) throw DomainError("geometric_resolvent_check: resolvent is singular");
    Matrix<Cplx> partial(z.n(), z.n());
    Matrix<Cplx> power = Matrix<Cplx>::identity(z.n());
    for (int len = 0; len <= L; ++len) {
        partial = partial + power;
        power = power * sum;
    }
    return operator_norm(partial - *resolvent) < tol;
}

/// Abel-type check on a diamond: bounded mu-weighted terms force the term
/// norms t_l = sum_{|w|=l} ||X^w f_w|| under the geometric envelope
/// C sigma^l with sigma = sum_j ||X_j|| / |mu_j| < 1.
inline bool abel_diamond_check(const CoeffRule& rule, const std::vector<Cplx>& mu,
                               const MatTuple<Cplx>& x, int L) {
    if (static_cast<int>(mu.size()) != rule.d())
        throw ArgumentError("abel_diamond_check: need one mu per letter");
    if (x.d() != rule.d()) throw ArgumentError("abel_diamond_check: mismatched d");
    if (L < 1) throw ArgumentError("abel_diamond_check: L must be >= 1");
    for (const Cplx& m : mu)
        if (std::abs(m) == 0.0)
            throw PreconditionError("abel_diamond_check: mu coordinates must be nonzero");
    double sigma = 0;
    for (int j = 0; j < x.d(); ++j) sigma += operator_norm(x[j]) / std::abs(mu[j]);
    if (!(sigma < 1.0))
        throw PreconditionError("abel_diamond_check: point is not inside the mu-diamond");

    double count = std::pow(static_cast<double>(rule.d()), L);
    if (count > 4e6) throw ArgumentError("abel_diamond_check: L too large to enumerate");

    // bound constant: C = max over |w| <= L of |mu^w f_w|
    double c = 0;
    for (int len = 0; len <= L; ++len)
        for (const Word& w : words_of_length(rule.d(), len)) {
            Cplx mw(1, 0);
            for (std::size_t k = 0; k < w.length(); ++k) mw *= mu[w.letter(k) - 1];
            c = std::max(c, std::abs(mw * rule.coeff(w)));
        }
    const double slack = 1 + 1e-9;
    for (int len = 0; len <= L; ++len) {
        double tl = 0;
        for (const Word& w : words_of_length(rule.d(), len)) {
            Cplx cw = rule.coeff(w);
            if (cw.real() == 0 && cw.imag() == 0) continue;
            tl += std::abs(cw) * operator_norm(CoeffRule::word_value(x, w));
        }
        if (tl > c * std::pow(sigma, len) * slack + 1e-12) return false;
    }
    return true;
}

}  // namespace freenc
