#pragma once

#include <cstdint>

#include "zernike/symmetries.hpp"

namespace zernike {

struct KTriple {
  WeylOperator K1, K2, K3;
};

struct LadderTriple {
  WeylOperator K, Kplus, Kminus;
};

/// Phi1 and Phi2 as commutative polynomials in the symbols H and K.
struct StructureFunctionPair {
  Poly phi1, phi2;
  [[nodiscard]] Poly product() const { return phi1 * phi2; }
};

/// (C, (I' - I)/2, [K1, K2]).
KTriple build_k_triple(const SymmetryPair& pair);

/// c_N in K± = K2 ± K3/2 - c_N K1^2: g2/2 for N = 2, 3 and g2/2 - 2 g4 for N = 4, 5.
Poly ladder_shift(const HamiltonianSpec& spec);

/// Throws std::invalid_argument unless 2 <= N <= 5.
LadderTriple build_ladder(const HamiltonianSpec& spec, const KTriple& triple);

/// Phi1 = (H - sum (2i)^k g_k K^k)/4 and Phi2 = H - sum (-2i)^k g_k (K-1)^k.
StructureFunctionPair structure_function(const HamiltonianSpec& spec);

/// p(H, K + shift).
Poly shift_k(const Poly& p, const GaussianRational& shift);

/// Replaces the commuting symbols H, K by the operators h, k.
WeylOperator evaluate_hk(const Poly& p, const WeylOperator& h, const WeylOperator& k);

struct LadderAlgebraReport {
  int order = 0;
  // (i)
  WeylOperator residual_I, residual_Iprime, residual_C, dependence;
  // (ii) rank of the Jacobian of the top-degree symbols of {H, C, I} and {H, C, I'}.
  int rank_with_I = 0, rank_with_Iprime = 0;
  // (iii)
  WeylOperator residual_Kplus;   ///< [K, K+] - K+
  WeylOperator residual_Kminus;  ///< [K, K-] + K-
  WeylOperator factorization;    ///< K+K- - Phi1 Phi2
  WeylOperator lowering;         ///< K-K+ - Phi(H, K+1)
  WeylOperator factors_commute;  ///< [Phi1, Phi2] as operators
  /// Degree in K of Phi(H, K+1) - Phi(H, K), the order of the polynomial algebra.
  unsigned algebra_order = 0;

  [[nodiscard]] bool symmetries_ok() const;
  [[nodiscard]] bool independence_ok() const { return rank_with_I == 3 && rank_with_Iprime == 3; }
  [[nodiscard]] bool structure_ok() const;
  [[nodiscard]] bool passed() const { return symmetries_ok() && independence_ok() && structure_ok(); }
};

/// End-to-end check with the explicit symmetries of order N (2..5) and symbolic parameters.
LadderAlgebraReport verify_ladder_algebra(int N, std::uint64_t seed = 1);
/// Same, for an arbitrary candidate pair.
LadderAlgebraReport verify_ladder_algebra(const HamiltonianSpec& spec, const SymmetryPair& pair, std::uint64_t seed = 1);

}  // namespace zernike
