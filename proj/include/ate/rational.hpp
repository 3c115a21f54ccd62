#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ate/errors.hpp"

namespace ate {

// Every certified quantity in the library is an exact rational; floating point
// is confined to display strings and cross-check oracles in the test suite.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline BigInt big_pow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline Rational rat_pow(const Rational& base, unsigned exp) {
    return Rational(big_pow(numerator(base), exp), big_pow(denominator(base), exp));
}

/// Canonical "num/den" form in lowest terms, e.g. "2/225", "0/1", "-1/3".
inline std::string to_frac_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

/// Accepts "p/q" or a bare integer "p". Used for --eps / --delta style flags.
inline Rational parse_frac(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in rational literal", slash + 1);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ParseError("malformed rational literal '" + text + "'", 0);
    }
}

/// Gaussian rational: enough complex arithmetic for exact signal bookkeeping.
struct RatComplex {
    Rational re;
    Rational im;

    RatComplex() = default;
    RatComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit RatComplex(Rational r) : re(std::move(r)), im(0) {}

    RatComplex conj() const { return {re, Rational(-im)}; }
    Rational norm_sq() const { return re * re + im * im; }

    RatComplex operator+(const RatComplex& o) const { return {re + o.re, im + o.im}; }
    RatComplex operator-(const RatComplex& o) const { return {re - o.re, im - o.im}; }
    RatComplex operator*(const RatComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RatComplex& operator+=(const RatComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool operator==(const RatComplex& o) const = default;
    bool is_real() const { return im == 0; }
};

} // namespace ate
