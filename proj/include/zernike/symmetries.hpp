#pragma once

#include <stdexcept>
#include <vector>

#include "zernike/weyl.hpp"

namespace zernike {

/// Order N and the coefficients gamma_1..gamma_N, each either a symbol or a number.
struct HamiltonianSpec {
  int order = 0;
  std::vector<Poly> params;

  /// gamma_k = g_k as formal symbols.
  static HamiltonianSpec symbolic(int order);
  static HamiltonianSpec numeric(const std::vector<GaussianRational>& gammas);

  /// gamma_k for 1 <= k <= order, zero for k > order.
  [[nodiscard]] Poly gamma(int k) const;
  [[nodiscard]] bool is_numeric() const;
  /// Numeric values of gamma_1..gamma_N; throws if a coefficient is symbolic.
  [[nodiscard]] std::vector<GaussianRational> numeric_values() const;
  /// Throws std::invalid_argument when N < 1, the parameter count is wrong,
  /// or (numeric mode) gamma_N vanishes.
  void validate() const;
};

struct SymmetryPair {
  WeylOperator I;       ///< leading momentum part p2^2
  WeylOperator Iprime;  ///< leading momentum part p1^2
  int order = 0;
};

enum class Leading { p1_squared, p2_squared };

struct AnsatzSolutionSpace {
  Leading leading = Leading::p1_squared;
  /// Canonical member: the leading square plus a combination of grade-0 monomials.
  WeylOperator particular;
  /// Reduced basis of the gamma-free homogeneous solutions; each element's
  /// leading monomial is a pivot absent from every other element and from `particular`.
  std::vector<WeylOperator> homogeneous_basis;
  /// Number of grade-0 monomials (Id excluded) in the ansatz.
  std::size_t unknowns = 0;
};

class AnsatzInconsistent : public std::runtime_error {
 public:
  AnsatzInconsistent(int k, const std::string& what) : std::runtime_error(what), gamma_index(k) {}
  int gamma_index;
};

WeylOperator q_dot_p();
WeylOperator momentum_squared();
WeylOperator build_hamiltonian(const HamiltonianSpec& spec);
/// q1 p2 - q2 p1.
WeylOperator build_angular_momentum();

/// Replaces every formal g_k by spec.gamma(k).
WeylOperator specialize(const WeylOperator& x, const HamiltonianSpec& spec);

/// The explicit symmetries for N in 2..5 (the N = 5 member I is obtained from
/// the dependence relation). Throws std::invalid_argument for other N.
SymmetryPair explicit_symmetries(const HamiltonianSpec& spec);

/// Solves [p_i^2 + X, H_N] = 0 for X in the span of grade-0 monomials of degree <= 2N.
AnsatzSolutionSpace solve_symmetry_ansatz(const HamiltonianSpec& spec, Leading leading);

/// True iff candidate - particular lies in the span of the homogeneous basis
/// (coefficients may be polynomials in the parameters).
bool in_solution_space(const AnsatzSolutionSpace& space, const WeylOperator& candidate);

/// H - I - I' for N <= 3 and H - I - I' + 4 g4 C^2 - g4 C^4 for N >= 4.
WeylOperator dependence_residual(const HamiltonianSpec& spec, const SymmetryPair& pair);

}  // namespace zernike
