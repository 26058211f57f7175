#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "freenc/errors.hpp"
#include "freenc/rational.hpp"

namespace freenc {

using Cplx = std::complex<double>;

/// The two scalar backends: exact rationals and complex doubles.
/// Template code goes through these traits for the few spots where the
/// backends genuinely differ (pivoting, literals, names).
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x.is_zero(); }
    static double to_double(const Rational& x) { return x.to_double(); }
    static double magnitude(const Rational& x) { return std::abs(x.to_double()); }
    static Rational parse_number(std::string_view s) { return Rational::parse(s); }
    static std::string to_string(const Rational& x) { return x.to_string(); }
    static Rational from_int(long long v) { return Rational(v); }
    /// Exact scaling by 2^-k used in the admissible-scaling retries.
    static Rational pow2_inv(int k) { return Rational(1, 1ll << k); }
    static const char* field_name() { return "rational"; }
};

template <>
struct ScalarTraits<Cplx> {
    static constexpr bool exact = false;
    static Cplx zero() { return Cplx(0.0, 0.0); }
    static Cplx one() { return Cplx(1.0, 0.0); }
    static bool is_zero(const Cplx& x) { return x.real() == 0.0 && x.imag() == 0.0; }
    static double to_double(const Cplx& x) { return x.real(); }
    static double magnitude(const Cplx& x) { return std::abs(x); }
    static Cplx parse_number(std::string_view s) {
        auto slash = s.find('/');
        if (slash != std::string_view::npos) {
            Rational q = Rational::parse(s);
            return Cplx(q.to_double(), 0.0);
        }
        return Cplx(std::stod(std::string(s)), 0.0);
    }
    static std::string to_string(const Cplx& x) {
        return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
    }
    static Cplx from_int(long long v) { return Cplx(static_cast<double>(v), 0.0); }
    static Cplx pow2_inv(int k) { return Cplx(std::ldexp(1.0, -k), 0.0); }
    static const char* field_name() { return "complex"; }
};

}  // namespace freenc
