#pragma once

#include <optional>
#include <vector>

#include "zernike/spectrum.hpp"
#include "zernike/symmetries.hpp"

namespace zernike {

/// Coefficients of a homogeneous polynomial of degree m in the basis
/// q1^a q2^(m-a), a = 0..m.
using HomogeneousVector = std::vector<GaussianRational>;
using Block = std::vector<std::vector<GaussianRational>>;  ///< row-major

/// H_N on polynomials in q1, q2 of degree <= D, with p_j = -i d/dq_j.
/// A degree-m monomial goes to degree m (diagonal block) and m-2 (lowering block).
struct GradedMatrix {
  int order = 0;
  unsigned max_degree = 0;
  std::vector<GaussianRational> params;
  std::vector<Block> diagonal;  ///< (m+1) x (m+1)
  std::vector<Block> lowering;  ///< (m-1) x (m+1); empty for m < 2

  [[nodiscard]] std::size_t dimension() const;
  /// The scalar of diagonal block m; nullopt when the block is not scalar.
  [[nodiscard]] std::optional<GaussianRational> diagonal_scalar(unsigned m) const;
  /// Every diagonal block is a multiple of the identity.
  [[nodiscard]] bool is_degree_triangular() const;
  /// H applied to a polynomial given by its homogeneous components (index = degree).
  [[nodiscard]] std::vector<HomogeneousVector> apply(const std::vector<HomogeneousVector>& v) const;
};

/// Built from the closed form: diagonal sum_k g_k (-i m)^k, lowering block from the Laplacian.
GradedMatrix build_matrix(const HamiltonianSpec& spec, unsigned max_degree);
/// Built by letting the normal-ordered operator act on each monomial. Throws
/// std::invalid_argument for symbolic coefficients and std::logic_error when a
/// term leaves the degrees m, m-2.
GradedMatrix build_matrix_from_operator(const WeylOperator& h, const std::vector<GaussianRational>& params,
                                        unsigned max_degree);

struct OracleLevel {
  unsigned degree = 0;
  GaussianRational eigenvalue;
  unsigned multiplicity = 0;
  /// Lower degrees of the same parity with the same diagonal entry.
  std::vector<unsigned> resonant_with;
  /// One eigenvector per degree-m basis monomial, stored by homogeneous
  /// component; omitted when back-substitution hits a resonance.
  std::optional<std::vector<std::vector<HomogeneousVector>>> eigenvectors;
};

struct OracleReport {
  int order = 0;
  unsigned max_degree = 0;
  std::vector<GaussianRational> params;
  std::vector<OracleLevel> levels;

  /// Distinct eigenvalues with total multiplicity, in order of first appearance.
  [[nodiscard]] std::vector<std::pair<GaussianRational, unsigned>> distinct_eigenvalues() const;
};

/// Throws std::logic_error when the matrix is not degree-triangular.
OracleReport oracle_spectrum(const GradedMatrix& m, bool eigenvectors = true);

enum class MatchStatus { match, mismatch, not_comparable };
std::string to_string(MatchStatus s);

struct FormulaMismatch {
  unsigned degree = 0;
  std::complex<double> oracle, formula;
};

struct FormulaMatch {
  MatchStatus status = MatchStatus::not_comparable;
  std::vector<unsigned> checked_degrees;
  std::vector<FormulaMismatch> mismatches;
};

/// Compares the oracle eigenvalue at each degree m with E(n = m) of a Type I
/// solution: exactly for closed forms (gamma symbols take the report's values),
/// to 1e-9 relative at n for numeric solutions. Any other type is not comparable.
/// Throws std::invalid_argument when a numeric solution was computed at other parameters.
FormulaMatch compare_with_formula(const OracleReport& report, const SpectrumSolution& solution);

}  // namespace zernike
