#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cusptorsion {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Input that violates a documented precondition (dominance, integrality,
/// malformed records, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A provable internal identity failed; signals a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

/// Numeric machinery did not reach the requested accuracy (quadrature
/// non-convergence, ambiguous eigenvalue clustering, ...).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two evaluation routes that must agree disagreed beyond tolerance.
class ConsistencyError : public std::runtime_error {
 public:
  explicit ConsistencyError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Parses "p/q" or "p" into a canonical rational. Throws ValidationError.
Rational parse_rational(const std::string& text);

/// Lowest-terms "p/q" (or "p" when the denominator is 1).
std::string format_rational(const Rational& q);

/// Canonicalized p/q. The raw two-argument mpq_class constructor skips
/// canonicalization, which breaks GMP arithmetic; always build through here.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}
inline Rational make_rational(long num, long den) { return make_rational(BigInt(num), BigInt(den)); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// True when 2q is an integer.
inline bool is_half_integer(const Rational& q) {
  return q.get_den() == 1 || q.get_den() == 2;
}

BigInt factorial(unsigned long n);
BigInt binomial(unsigned long n, unsigned long k);

/// Element of Q(i). Arithmetic is exact; division uses the conjugate.
struct GaussianRational {
  Rational re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(int v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }

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
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
  /// Lexicographic order; used only for canonical sorting of spectra.
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

using GQ = GaussianRational;

/// Parses "a/b", "a/b+c/d*i", "a/b-c/d*i" or "c/d*i" (integers allowed
/// wherever a rational is). Throws ValidationError on malformed input.
GQ parse_gaussian(const std::string& text);

/// Canonical form used by the bundle file format: real part omitted when the
/// value is purely imaginary, imaginary part omitted when real, "*i" suffix,
/// rationals in lowest terms, no whitespace.
std::string format_gaussian(const GQ& z);

}  // namespace cusptorsion
