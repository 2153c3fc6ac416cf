#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

#include "nrs/errors.hpp"

namespace nrs {

// Exact scalar types.  Rational is GMP's canonical mpq (always reduced,
// denominator > 0), which matches the representation contract exactly.
using Integer  = mpz_class;
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
        throw InvalidInput("cannot parse rational: \"" + s + "\"");
    if (sgn(q.get_den()) == 0) throw InvalidInput("zero denominator in: \"" + s + "\"");
    q.canonicalize();
    return q;
}

/// Serialized form "p/q" ("p" when q = 1), matching mpq_get_str.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact rational from a finite double (every double is a dyadic rational).
inline Rational rational_from_double(double x) { return Rational(x); }

/// p/q in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline int sign(const Rational& q) { return sgn(q); }

// ---------------------------------------------------------------------------
// Gaussian rationals a + b i, the coefficient field for the complex spaces.

struct GaussRational {
    Rational re, im;

    GaussRational() : re(0), im(0) {}
    GaussRational(Rational r) : re(std::move(r)), im(0) {}
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRational(long r) : re(r), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator/(const GaussRational& a, const GaussRational& b) {
        if (b.is_zero()) throw InvalidInput("division by zero Gaussian rational");
        Rational n = b.norm();
        GaussRational t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    GaussRational& operator+=(const GaussRational& b) { *this = *this + b; return *this; }
    GaussRational& operator-=(const GaussRational& b) { *this = *this - b; return *this; }
    GaussRational& operator*=(const GaussRational& b) { *this = *this * b; return *this; }
    GaussRational& operator/=(const GaussRational& b) { *this = *this / b; return *this; }

    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
};

inline std::complex<double> to_complex(const GaussRational& g) {
    return {g.re.get_d(), g.im.get_d()};
}
inline std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }

// ---------------------------------------------------------------------------
// Gaussian integers, used as the coefficient domain of the subresultant
// remainder sequence after denominators are cleared.

struct GaussInt {
    Integer re, im;

    GaussInt() : re(0), im(0) {}
    GaussInt(Integer r) : re(std::move(r)), im(0) {}
    GaussInt(Integer r, Integer i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r) : re(r), im(0) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    GaussInt conj() const { return {re, -im}; }
    Integer norm() const { return re * re + im * im; }

    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussInt& a, const GaussInt& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussInt& a, const GaussInt& b) { return !(a == b); }
};

inline Integer divexact(const Integer& a, const Integer& b) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Exact quotient a/b in Z[i]; only valid when b | a.
inline GaussInt divexact(const GaussInt& a, const GaussInt& b) {
    Integer n = b.norm();
    GaussInt t = a * b.conj();
    return {divexact(t.re, n), divexact(t.im, n)};
}

}  // namespace nrs
