#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <ostream>
#include <sstream>
#include <string>

#include "bergman/error.hpp"

namespace bergman {

using Complex = std::complex<double>;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Element of Q(i): the exact counterpart of Complex.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        if (o.is_real()) {
            re *= o.re;
            im *= o.re;
            return *this;
        }
        Rational r = re * o.re - im * o.im;
        Rational i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw DomainError("division by zero in Q(i)");
        if (o.is_real()) {
            re /= o.re;
            im /= o.re;
            return *this;
        }
        Rational d = o.re * o.re + o.im * o.im;
        Rational r = (re * o.re + im * o.im) / d;
        Rational i = (im * o.re - re * o.im) / d;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

inline GaussianRational conj(const GaussianRational& z) { return {z.re, -z.im}; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const GaussianRational& z) {
    if (z.is_real()) return z.re.get_str();
    std::ostringstream os;
    if (sgn(z.re) != 0) os << z.re.get_str() << (sgn(z.im) > 0 ? "+" : "");
    os << z.im.get_str() << "i";
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << to_string(z); }

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";
    using norm_type = double;

    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
    static Complex from_ratio(long num, long den) { return {static_cast<double>(num) / den, 0.0}; }
    static Complex from_double(double re, double im = 0.0) { return {re, im}; }
    static Complex from_rational(const Rational& re, const Rational& im) { return {re.get_d(), im.get_d()}; }
    static Complex to_complex(const Complex& v) { return v; }
    static double norm(const Complex& v) { return std::norm(v); }
    static double magnitude(const Complex& v) { return std::abs(v); }
    static bool is_zero(const Complex& v) { return v == Complex{}; }
    static Complex conj(const Complex& v) { return std::conj(v); }
};

template <>
struct scalar_traits<GaussianRational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "exact";
    using norm_type = Rational;

    static GaussianRational from_int(long v) { return GaussianRational(v); }
    static GaussianRational from_ratio(long num, long den) { return GaussianRational(make_rational(num, den)); }
    /// Exact binary value of the doubles; 0.5 stays 1/2, 0.1 becomes its dyadic expansion.
    static GaussianRational from_double(double re, double im = 0.0) {
        if (!std::isfinite(re) || !std::isfinite(im)) throw BackendError("non-finite value in exact backend");
        return {Rational(re), Rational(im)};
    }
    static GaussianRational from_rational(const Rational& re, const Rational& im) { return {re, im}; }
    static Complex to_complex(const GaussianRational& v) { return {v.re.get_d(), v.im.get_d()}; }
    static Rational norm(const GaussianRational& v) { return v.re * v.re + v.im * v.im; }
    static double magnitude(const GaussianRational& v) { return std::sqrt(norm(v).get_d()); }
    static bool is_zero(const GaussianRational& v) { return v.is_zero(); }
    static GaussianRational conj(const GaussianRational& v) { return bergman::conj(v); }
};

template <class S>
concept Scalar = requires { scalar_traits<S>::exact; };

template <Scalar S>
inline constexpr bool is_exact_v = scalar_traits<S>::exact;

/// Integer power with non-negative exponent.
template <Scalar S>
S ipow(S base, unsigned e) {
    S result = scalar_traits<S>::from_int(1);
    while (e != 0) {
        if (e & 1u) result *= base;
        e >>= 1u;
        if (e != 0) base *= base;
    }
    return result;
}

inline std::string to_string(const Complex& z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) os << (z.imag() >= 0 ? "+" : "") << z.imag() << "i";
    return os.str();
}

}  // namespace bergman
