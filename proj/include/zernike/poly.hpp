#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zernike/gaussian_rational.hpp"

namespace zernike {

/// Formal commuting symbols used across the engine. g1..g8 are the
/// Hamiltonian coefficients; n, B, E, u are the representation symbols;
/// H and K stand for the commuting operators in structure functions.
enum class Var : std::uint8_t { g1 = 0, g2, g3, g4, g5, g6, g7, g8, n, B, E, u, H, K };

inline constexpr int kMaxVars = 14;
inline constexpr int kMaxGammas = 8;

inline constexpr Var gamma_var(int k) { return static_cast<Var>(k - 1); }  // k in 1..8
inline constexpr int var_index(Var v) { return static_cast<int>(v); }
std::string var_name(Var v);
std::optional<Var> parse_var(std::string_view name);

/// Exponent vector over the symbols above; ordered graded-lexicographically.
struct Exponents {
  std::array<std::uint8_t, kMaxVars> e{};

  [[nodiscard]] unsigned total() const {
    unsigned s = 0;
    for (auto x : e) s += x;
    return s;
  }
  std::uint8_t& operator[](Var v) { return e[var_index(v)]; }
  std::uint8_t operator[](Var v) const { return e[var_index(v)]; }
  friend bool operator==(const Exponents&, const Exponents&) = default;
  /// Graded lex: higher total degree first, then lexicographic on g1, g2, ...
  friend std::strong_ordering operator<=>(const Exponents& a, const Exponents& b);
  [[nodiscard]] std::size_t hash() const;
};

/// Sparse multivariate polynomial with Gaussian-rational coefficients.
/// Terms are kept sorted in descending graded-lex order; no zero coefficients.
class Poly {
 public:
  struct Term {
    Exponents exps;
    GaussianRational coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  Poly() = default;
  Poly(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Poly(long long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly var(Var v, unsigned power = 1);
  static Poly monomial(const Exponents& e, GaussianRational c);
  /// Builds from arbitrary (possibly repeated, unsorted) terms.
  static Poly from_terms(std::vector<Term> terms);

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] GaussianRational constant_term() const;
  [[nodiscard]] const Term& leading() const { return terms_.front(); }
  [[nodiscard]] unsigned total_degree() const;
  [[nodiscard]] unsigned degree_in(Var v) const;
  [[nodiscard]] bool depends_on(Var v) const { return degree_in(v) > 0; }

  /// Coefficients of v^0..v^deg as polynomials in the remaining symbols.
  [[nodiscard]] std::vector<Poly> coefficients_in(Var v) const;
  /// Inverse of coefficients_in.
  static Poly from_coefficients(Var v, const std::vector<Poly>& coeffs);

  [[nodiscard]] Poly substitute(Var v, const Poly& value) const;
  [[nodiscard]] Poly substitute(const std::map<Var, GaussianRational>& values) const;
  [[nodiscard]] std::complex<double> evaluate(const std::map<Var, std::complex<double>>& values) const;
  /// Value when every symbol is assigned. Throws if a symbol is missing.
  [[nodiscard]] GaussianRational evaluate_exact(const std::map<Var, GaussianRational>& values) const;

  /// q with *this == q * divisor, or nullopt when the division is not exact.
  [[nodiscard]] std::optional<Poly> divide_exact(const Poly& divisor) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const GaussianRational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const GaussianRational& c) { return a *= c; }
  friend Poly operator*(const GaussianRational& c, Poly a) { return a *= c; }
  friend Poly operator*(long long s, Poly a) { return a *= GaussianRational(Rational(s)); }
  friend bool operator==(const Poly&, const Poly&) = default;

  /// "(re)+(im)i*g1^2*n + ..." or "0". Round-trips through parse().
  [[nodiscard]] std::string to_string() const;
  static Poly parse(std::string_view text);

  [[nodiscard]] std::size_t hash() const;

 private:
  std::vector<Term> terms_;
};

Poly pow(const Poly& p, unsigned k);

/// Prints one term's monomial part as "g1^2*n" (empty for the unit monomial).
std::string monomial_string(const Exponents& e);

}  // namespace zernike
