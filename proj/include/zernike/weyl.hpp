#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "zernike/poly.hpp"

namespace zernike {

/// q1^a q2^b p1^c p2^d with every position factor to the left.
struct NormalMonomial {
  std::uint8_t a = 0, b = 0, c = 0, d = 0;

  [[nodiscard]] int grade() const { return int(a) + int(b) - int(c) - int(d); }
  [[nodiscard]] unsigned degree() const { return unsigned(a) + b + c + d; }
  [[nodiscard]] unsigned momentum_degree() const { return unsigned(c) + d; }
  [[nodiscard]] std::uint32_t packed() const {
    return std::uint32_t(a) << 24 | std::uint32_t(b) << 16 | std::uint32_t(c) << 8 | d;
  }
  static NormalMonomial unpack(std::uint32_t k) {
    return {std::uint8_t(k >> 24), std::uint8_t(k >> 16), std::uint8_t(k >> 8), std::uint8_t(k)};
  }
  friend bool operator==(const NormalMonomial&, const NormalMonomial&) = default;
  /// Graded lex on (a, b, c, d).
  friend std::strong_ordering operator<=>(const NormalMonomial& x, const NormalMonomial& y) {
    if (auto o = x.degree() <=> y.degree(); o != 0) return o;
    return std::tie(x.a, x.b, x.c, x.d) <=> std::tie(y.a, y.b, y.c, y.d);
  }
};

/// Exact element of the Weyl algebra generated by q1, q2, p1, p2, Id with
/// [q_i, p_j] = i delta_ij Id, stored in normal order with parameter-polynomial
/// coefficients. Two operators are equal iff their term maps are equal.
class WeylOperator {
 public:
  using TermMap = std::map<NormalMonomial, Poly, std::greater<>>;

  WeylOperator() = default;
  WeylOperator(Poly scalar);  // NOLINT(google-explicit-constructor)
  WeylOperator(long long scalar) : WeylOperator(Poly(scalar)) {}  // NOLINT(google-explicit-constructor)

  static WeylOperator identity() { return WeylOperator(Poly(1)); }
  static WeylOperator q1() { return monomial({1, 0, 0, 0}); }
  static WeylOperator q2() { return monomial({0, 1, 0, 0}); }
  static WeylOperator p1() { return monomial({0, 0, 1, 0}); }
  static WeylOperator p2() { return monomial({0, 0, 0, 1}); }
  static WeylOperator monomial(NormalMonomial m, Poly coeff = Poly(1));

  /// Terms in descending graded-lex order of the monomial.
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  /// Number of (monomial, parameter-monomial) pairs.
  [[nodiscard]] std::size_t flat_size() const;
  [[nodiscard]] Poly coefficient(const NormalMonomial& m) const;
  [[nodiscard]] unsigned max_momentum_degree() const;
  [[nodiscard]] unsigned max_degree() const;

  /// Adds coeff * m in place.
  void add_term(const NormalMonomial& m, const Poly& coeff);

  WeylOperator operator-() const;
  WeylOperator& operator+=(const WeylOperator& o);
  WeylOperator& operator-=(const WeylOperator& o);
  WeylOperator& operator*=(const Poly& scalar);

  friend WeylOperator operator+(WeylOperator x, const WeylOperator& y) { return x += y; }
  friend WeylOperator operator-(WeylOperator x, const WeylOperator& y) { return x -= y; }
  friend WeylOperator operator*(WeylOperator x, const Poly& s) { return x *= s; }
  friend WeylOperator operator*(const Poly& s, WeylOperator x) { return x *= s; }
  friend WeylOperator operator*(long long s, WeylOperator x) { return x *= Poly(s); }
  friend WeylOperator operator*(const WeylOperator& x, const WeylOperator& y);
  friend bool operator==(const WeylOperator&, const WeylOperator&) = default;

 private:
  TermMap terms_;
};

/// Exact normal-ordered product A*B.
WeylOperator normal_product(const WeylOperator& lhs, const WeylOperator& rhs);

/// AB - BA.
WeylOperator commutator(const WeylOperator& lhs, const WeylOperator& rhs);

WeylOperator pow(const WeylOperator& x, unsigned k);

/// Set of grades a+b-c-d among the terms; empty for the zero operator.
std::set<int> grade_spectrum(const WeylOperator& x);

class MissingParameter : public std::invalid_argument {
 public:
  explicit MissingParameter(int k)
      : std::invalid_argument("no value assigned to parameter g" + std::to_string(k)), index(k) {}
  int index;
};

/// Evaluates every coefficient at gamma_k = assignment[k]. Every gamma that
/// occurs in x must be assigned.
WeylOperator substitute_params(const WeylOperator& x, const std::map<int, GaussianRational>& assignment);

/// Relabels q1<->q2 and p1<->p2.
WeylOperator swap_indices(const WeylOperator& x);

/// Number of worker threads used for large products (env ZERNIKE_THREADS, default 1).
unsigned worker_threads();

/// Canonical text form: terms "coeff * q1^a q2^b p1^c p2^d" joined by " + ",
/// where coeff is "(re)+(im)i" optionally followed by "*g1^2*g3"; "0" for zero.
std::string to_string(const WeylOperator& x);
/// Inverse of to_string; throws std::invalid_argument.
WeylOperator parse_operator(std::string_view text);

}  // namespace zernike
