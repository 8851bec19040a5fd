#pragma once

#include <complex>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zernike/poly.hpp"

namespace zernike {

/// Exact square root in Q(i), or nullopt when z is not a square there.
std::optional<Rational> exact_sqrt(const Rational& q);
std::optional<GaussianRational> exact_sqrt(const GaussianRational& z);

/// numerator / prod factor^power. Factors are kept unexpanded, normalized to a
/// unit leading coefficient, and single-symbol monomial content is split into
/// its own factors, so vanishing of a denominator under a substitution can be
/// read off factor by factor.
class RationalFunction {
 public:
  using Factor = std::pair<Poly, unsigned>;

  RationalFunction() = default;
  RationalFunction(Poly numerator);  // NOLINT(google-explicit-constructor)
  RationalFunction(long long c) : RationalFunction(Poly(c)) {}  // NOLINT(google-explicit-constructor)
  /// Throws std::domain_error for a zero denominator.
  static RationalFunction quotient(const Poly& numerator, const Poly& denominator);

  [[nodiscard]] const Poly& numerator() const { return num_; }
  [[nodiscard]] const std::vector<Factor>& denominator() const { return den_; }
  [[nodiscard]] Poly denominator_product() const;
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return den_.empty(); }
  [[nodiscard]] bool depends_on(Var v) const;

  /// False when some denominator factor becomes identically zero once every
  /// symbol in `zero` is set to 0.
  [[nodiscard]] bool defined_when_zero(const std::set<Var>& zero) const;

  /// nullopt when the denominator vanishes at the point.
  [[nodiscard]] std::optional<RationalFunction> substitute(const std::map<Var, GaussianRational>& values) const;
  [[nodiscard]] RationalFunction substitute(Var v, const Poly& value) const;
  [[nodiscard]] std::optional<GaussianRational> evaluate_exact(const std::map<Var, GaussianRational>& values) const;
  [[nodiscard]] std::complex<double> evaluate(const std::map<Var, std::complex<double>>& values) const;

  RationalFunction operator-() const;
  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  /// Throws std::domain_error for a zero divisor.
  RationalFunction& operator/=(const RationalFunction& o);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  /// Equality as functions (cross-multiplied).
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

  /// "(num)" or "(num)/((f1)^2*(f2))".
  [[nodiscard]] std::string to_string() const;

 private:
  void add_factor(const Poly& f, unsigned power);
  void push_factor(const Poly& f, unsigned power);
  void cancel();

  Poly num_;
  std::vector<Factor> den_;
};

RationalFunction pow(const RationalFunction& r, unsigned k);

/// x + y * sqrt(D) with x, y rational functions and D a polynomial. sqrt is the
/// principal branch when evaluated numerically; the other branch is the same
/// value with y negated.
struct Surd {
  RationalFunction x, y;
  Poly radicand = Poly(1);

  Surd() = default;
  Surd(RationalFunction r) : x(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Surd(RationalFunction x_, RationalFunction y_, Poly d);

  [[nodiscard]] bool is_rational() const { return y.is_zero(); }
  [[nodiscard]] Surd conjugate() const { return {x, -y, radicand}; }
  [[nodiscard]] bool defined_when_zero(const std::set<Var>& zero) const;
  [[nodiscard]] std::optional<Surd> substitute(const std::map<Var, GaussianRational>& values) const;
  [[nodiscard]] Surd substitute(Var v, const Poly& value) const;
  [[nodiscard]] std::complex<double> evaluate(const std::map<Var, std::complex<double>>& values) const;
  /// Exact value when the surd part vanishes or its radicand is a square.
  [[nodiscard]] std::optional<GaussianRational> evaluate_exact(const std::map<Var, GaussianRational>& values) const;

  Surd operator-() const { return {-x, -y, radicand}; }
  /// Both operands must share the radicand unless one of them is rational.
  Surd& operator+=(const Surd& o);
  Surd& operator-=(const Surd& o);
  Surd& operator*=(const Surd& o);
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend bool operator==(const Surd& a, const Surd& b);

  [[nodiscard]] std::string to_string() const;

 private:
  void adopt_radicand(const Surd& o);
};

/// p(s) for a polynomial p in the symbol v.
Surd evaluate_at(const Poly& p, Var v, const Surd& s);

/// Roots of c2 t^2 + c1 t + c0 with c2 != 0: (-c1 +- sqrt(c1^2 - 4 c0 c2)) / (2 c2),
/// the radicand stripped of square constant and monomial content.
std::pair<Surd, Surd> quadratic_roots(const Poly& c0, const Poly& c1, const Poly& c2);

}  // namespace zernike
