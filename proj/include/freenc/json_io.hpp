#pragma once

#include <string>

#include <json.hpp>

#include "freenc/convergence.hpp"
#include "freenc/polynomial.hpp"
#include "freenc/ttseries.hpp"
#include "freenc/tuple.hpp"

namespace freenc {

using Json = nlohmann::ordered_json;

// Scalars: rationals travel as fraction strings "p/q"; complex doubles as
// {"re": x, "im": y}.

inline Json scalar_to_json(const Rational& v) { return v.to_string(); }
inline Json scalar_to_json(const Cplx& v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

template <class K>
K scalar_from_json(const Json& j);

template <>
inline Rational scalar_from_json<Rational>(const Json& j) {
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_object()) {
        Rational re = Rational::parse(j.at("re").get<std::string>());
        if (j.contains("im")) {
            Rational im = Rational::parse(j.at("im").get<std::string>());
            if (!im.is_zero())
                throw ArgumentError("rational field cannot carry a nonzero imaginary part");
        }
        return re;
    }
    throw ArgumentError("expected a rational scalar (fraction string)");
}

template <>
inline Cplx scalar_from_json<Cplx>(const Json& j) {
    if (j.is_number()) return Cplx(j.get<double>(), 0.0);
    if (j.is_string()) return Cplx(Rational::parse(j.get<std::string>()).to_double(), 0.0);
    if (j.is_object()) return Cplx(j.at("re").get<double>(), j.value("im", 0.0));
    throw ArgumentError("expected a complex scalar");
}

template <class K>
Json matrix_to_json(const Matrix<K>& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class K>
Matrix<K> matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ArgumentError("matrix JSON must be an array of rows");
    const int rows = static_cast<int>(j.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(j.at(0).size());
    Matrix<K> m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(j.at(i).size()) != cols)
            throw ArgumentError("matrix JSON rows have uneven lengths");
        for (int c = 0; c < cols; ++c) m(i, c) = scalar_from_json<K>(j.at(i).at(c));
    }
    return m;
}

template <class K>
Json mattuple_to_json(const MatTuple<K>& t) {
    Json j;
    j["d"] = t.d();
    j["n"] = t.n();
    j["field"] = ScalarTraits<K>::field_name();
    Json mats = Json::array();
    for (int k = 0; k < t.d(); ++k) mats.push_back(matrix_to_json(t[k]));
    j["matrices"] = std::move(mats);
    return j;
}

template <class K>
MatTuple<K> mattuple_from_json(const Json& j) {
    if (j.contains("field") && j.at("field").get<std::string>() != ScalarTraits<K>::field_name())
        throw ArgumentError("tuple field tag does not match the requested backend");
    const int d = j.at("d").get<int>();
    std::vector<Matrix<K>> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json<K>(m));
    MatTuple<K> t(d, std::move(mats));
    if (j.contains("n") && j.at("n").get<int>() != t.n())
        throw ArgumentError("tuple size tag does not match the matrices");
    return t;
}

template <class K>
Json recttuple_to_json(const RectTuple<K>& t) {
    Json j;
    j["d"] = t.d();
    j["rows"] = t.rows();
    j["cols"] = t.cols();
    j["field"] = ScalarTraits<K>::field_name();
    Json mats = Json::array();
    for (int k = 0; k < t.d(); ++k) mats.push_back(matrix_to_json(t[k]));
    j["matrices"] = std::move(mats);
    return j;
}

template <class K>
RectTuple<K> recttuple_from_json(const Json& j) {
    if (j.contains("field") && j.at("field").get<std::string>() != ScalarTraits<K>::field_name())
        throw ArgumentError("tuple field tag does not match the requested backend");
    const int d = j.at("d").get<int>();
    std::vector<Matrix<K>> mats;
    for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json<K>(m));
    return RectTuple<K>(d, std::move(mats));
}

// Polynomial terms: [{"word": "g1.g2", "re": ..., "im": ...}, ...] in graded
// lexicographic word order.
template <class K>
Json poly_to_json(const NcPolynomial<K>& p) {
    Json j;
    j["d"] = p.d();
    Json terms = Json::array();
    for (const auto& [w, c] : p.terms()) {
        Json term;
        term["word"] = w.str();
        if constexpr (ScalarTraits<K>::exact) {
            term["re"] = c.to_string();
            term["im"] = "0/1";
        } else {
            term["re"] = c.real();
            term["im"] = c.imag();
        }
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

template <class K>
NcPolynomial<K> poly_from_json(const Json& j) {
    NcPolynomial<K> p(j.at("d").get<int>());
    for (const auto& term : j.at("terms")) {
        Word w = Word::parse(term.at("word").get<std::string>(), p.d());
        K re, im;
        if constexpr (ScalarTraits<K>::exact) {
            re = Rational::parse(term.at("re").get<std::string>());
            if (term.contains("im") &&
                !Rational::parse(term.at("im").get<std::string>()).is_zero())
                throw ArgumentError("rational polynomial cannot carry imaginary coefficients");
            im = ScalarTraits<K>::zero();
        } else {
            re = Cplx(term.at("re").get<double>(), 0);
            im = Cplx(0, term.value("im", 0.0));
        }
        p.add_term(w, re + im);
    }
    return p;
}

template <class K>
Json coefftensor_to_json(const CoeffTensor<K>& t) {
    Json table = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) table.push_back(matrix_to_json(t.at(i)));
    return table;
}

template <class K>
CoeffTensor<K> coefftensor_from_json(const Json& j, int s, int degree) {
    CoeffTensor<K> t(s, degree);
    if (j.size() != t.size()) throw ArgumentError("coefficient table has the wrong size");
    for (std::size_t i = 0; i < t.size(); ++i) {
        Matrix<K> m = matrix_from_json<K>(j.at(i));
        if (m.rows() != s || m.cols() != s)
            throw ArgumentError("coefficient entries must be s x s");
        t.at(i) = std::move(m);
    }
    return t;
}

template <class K>
Json ttseries_to_json(const TTSeries<K>& series) {
    Json j;
    j["d"] = series.d;
    j["s"] = series.s;
    j["center"] = mattuple_to_json(series.center);
    Json coeffs = Json::object();
    for (const auto& [w, t] : series.coeffs) coeffs[w.str()] = coefftensor_to_json(t);
    j["coeffs"] = std::move(coeffs);
    j["verified"] = series.verified;
    return j;
}

template <class K>
TTSeries<K> ttseries_from_json(const Json& j) {
    TTSeries<K> series;
    series.d = j.at("d").get<int>();
    series.s = j.at("s").get<int>();
    series.center = mattuple_from_json<K>(j.at("center"));
    if (series.center.n() != series.s) throw ArgumentError("TT series center has the wrong size");
    for (const auto& [key, value] : j.at("coeffs").items()) {
        Word w = Word::parse(key, series.d);
        series.coeffs.emplace(w, coefftensor_from_json<K>(value, series.s,
                                                          static_cast<int>(w.length())));
    }
    series.verified = j.value("verified", series.s == 1);
    return series;
}

inline Json report_to_json(const ConvergenceReport& r) {
    Json j;
    j["estimator"] = r.estimator;
    j["input"] = r.input;
    if (std::isinf(r.estimate))
        j["estimate"] = "inf";
    else
        j["estimate"] = r.estimate;
    j["window"] = Json::array({r.window_lo, r.window_hi});
    j["terms"] = r.term_count;
    j["seed"] = r.seed;
    return j;
}

}  // namespace freenc
