#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include "zernike/rational.hpp"

namespace zernike {

/// Exact element of Q(i).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }
  /// i^k for any integer k.
  static GaussianRational i_pow(int k);

  [[nodiscard]] const Rational& re() const { return re_; }
  [[nodiscard]] const Rational& im() const { return im_; }
  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_one() const { return re_.is_one() && im_.is_zero(); }
  [[nodiscard]] bool is_real() const { return im_.is_zero(); }
  [[nodiscard]] GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2, exact.
  [[nodiscard]] Rational norm() const { return re_ * re_ + im_ * im_; }
  [[nodiscard]] std::complex<double> to_complex() const { return {re_.to_double(), im_.to_double()}; }

  /// Multiplication by i^k, exact and allocation-free on the fast path.
  [[nodiscard]] GaussianRational times_i_pow(int k) const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) = default;

  /// Canonical text form "(re)+(im)i", rationals as p or p/q.
  [[nodiscard]] std::string to_string() const;
  /// Inverse of to_string. Throws std::invalid_argument on malformed input.
  static GaussianRational parse(std::string_view text);
  /// Accepts the canonical form and friendly forms such as "2i", "-1", "3/7i", "1/2+3i".
  static GaussianRational parse_friendly(std::string_view text);

  [[nodiscard]] std::size_t hash() const { return re_.hash() * 31u + im_.hash(); }

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

GaussianRational pow(const GaussianRational& z, unsigned k);

}  // namespace zernike
