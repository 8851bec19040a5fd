#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zernike/ratfun.hpp"
#include "zernike/symmetries.hpp"

namespace zernike {

/// One factor of the representation structure function, a polynomial in B, E, u
/// (and the gamma symbols when the parameters are symbolic).
struct RepPolynomial {
  Poly expression;
  int factor_index = 1;
};

/// Phi1 = (E - sum (2i)^k g_k (B+u)^k)/4 and Phi2 = E - sum (-2i)^k g_k (B+u-1)^k.
std::pair<RepPolynomial, RepPolynomial> rep_structure_function(const HamiltonianSpec& spec);

/// Which factor vanishes at B = 0 and which at B = n+1.
struct Branch {
  int at_zero = 1;
  int at_top = 2;
  friend bool operator==(const Branch&, const Branch&) = default;
};

enum class SolutionType { I, II, III, IV, other };
std::string to_string(SolutionType t);

/// Value of E solving Phi_i(B) = 0, a polynomial in u, B and the parameters.
Poly energy_from_factor(const HamiltonianSpec& spec, int factor, const Poly& B);

/// E_i(B=0) - E_j(B=n+1), a polynomial in u, n and the parameters.
Poly branch_eliminant(const HamiltonianSpec& spec, const Branch& branch);

struct SpectrumSolution {
  int order = 0;
  std::vector<Branch> branches;  ///< every branch pair that produced this solution
  SolutionType type = SolutionType::other;
  /// Well-definedness of u(n), E(n) as g_k -> 0 for each k alone.
  std::map<int, bool> limit_valid;

  // Symbolic mode, closed form (root of a factor of degree <= 2).
  std::optional<Surd> u, E;
  /// Phi1(B, n) and Phi2(B, n) evaluated on the solution.
  std::optional<std::pair<Surd, Surd>> phi;

  // Symbolic mode, root of a factor of degree >= 3 in u: every root of
  // `root_polynomial` (coefficients in n and the parameters) is a solution,
  // with E = `energy_in_u` evaluated there.
  std::optional<Poly> root_polynomial;
  Poly energy_in_u;

  // Numeric mode.
  std::optional<std::complex<double>> u_value, E_value;
  std::vector<std::complex<double>> numeric_params;
  long long n_value = 0;
  double newton_step = 0;  ///< |u| correction applied by the Newton step
  double residual = 0;     ///< max |Phi_i(0)|, |Phi_j(n+1)| relative to term scale

  [[nodiscard]] bool is_closed_form() const { return u.has_value(); }
  [[nodiscard]] bool is_descriptor() const { return root_polynomial.has_value(); }
  [[nodiscard]] bool is_numeric() const { return u_value.has_value(); }
  /// Number of (u, E) pairs this entry stands for.
  [[nodiscard]] unsigned root_count() const;
  /// Phi(B, n) = Phi1 Phi2 for closed forms.
  [[nodiscard]] Surd phi_product() const;
};

unsigned total_root_count(const std::vector<SpectrumSolution>& solutions);

enum class SolveMode { symbolic, numeric };

struct SolveOptions {
  /// n = 0 (a one-state multiplet) is excluded unless requested.
  bool allow_ground_state = false;
  double dedup_tolerance = 1e-8;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, Branch b) : std::runtime_error(what), branch(b) {}
  Branch branch;
};

/// Symbolic mode: n stays a symbol; parameters may be symbolic or exact numbers.
std::vector<SpectrumSolution> solve_constraints_symbolic(const HamiltonianSpec& spec);
/// Numeric mode: concrete parameters with g_N != 0 and a concrete n.
std::vector<SpectrumSolution> solve_constraints_numeric(const HamiltonianSpec& spec, long long n,
                                                        const SolveOptions& options = {});
std::vector<SpectrumSolution> solve_constraints(const HamiltonianSpec& spec, std::optional<long long> n,
                                                SolveMode mode, const SolveOptions& options = {});

/// Independent Gaussian rationals with numerator and denominator at most 100 in
/// each part, resampled until the numeric solutions at `n` are pairwise
/// separated by more than 1e-6 relative.
HamiltonianSpec generic_parameters(int order, long long n, std::uint64_t seed);

/// Default vanishing set {k : 3 <= k <= N}.
std::set<int> default_vanish_set(int order);

/// Whether u(n) and E(n) stay finite as g_k -> 0 for all k in the set.
/// Closed forms: no denominator factor vanishes. Descriptors: the leading
/// coefficient in u does not vanish. Numeric solutions take the verdict of the
/// symbolic family they belong to, else limit_bounded_numerically.
bool well_defined_in_limit(const SpectrumSolution& s, const std::set<int>& vanish);
/// Tracks the numeric root along g_k -> eps g_k (k in the set) and accepts it when
/// |u| and |E| at eps = 1e-6 stay within 10 (1 + value at eps = 1e-2). A root that
/// stays finite is accepted even when its closed form has a vanishing denominator.
bool limit_bounded_numerically(const SpectrumSolution& s, const std::set<int>& vanish);
std::vector<SpectrumSolution> filter_well_defined(const std::vector<SpectrumSolution>& solutions,
                                                  const std::set<int>& vanish);

/// Closed-form energies of the named families.
Poly type_one_energy(const HamiltonianSpec& spec);  ///< sum (-i)^k g_k n^k
Poly type_two_energy(const HamiltonianSpec& spec);  ///< sum i^k g_k (n+2)^k
/// u = -(n - 1 + i g1/(2 g2))/2 (III) and -(n + 1 - i g1/(2 g2))/2 (IV), N = 2.
RationalFunction type_three_u(const HamiltonianSpec& spec);
RationalFunction type_four_u(const HamiltonianSpec& spec);
RationalFunction type_three_energy(const HamiltonianSpec& spec);  ///< -g1^2/(4 g2) - g2 (n+1)^2

SolutionType classify_type(const SpectrumSolution& s, const HamiltonianSpec& spec);

/// Closed product forms of Phi(B, n) for the surviving families at any order:
/// (1/4)(sum (-i)^k g_k (n^k - (n-2B)^k))(sum (-i)^k g_k (n^k - (2B-n-2)^k)) and
/// (1/4)(sum i^k g_k ((n+2)^k - (2B-n)^k))(sum i^k g_k ((n+2)^k - (n+2-2B)^k)).
Poly general_type_one_phi(const HamiltonianSpec& spec);
Poly general_type_two_phi(const HamiltonianSpec& spec);

struct SurvivorFamiliesReport {
  int order = 0;
  bool symbolic = false;  ///< full symbolic solve (N <= 5) or exact random points
  bool type_one_ok = false, type_two_ok = false;
  /// Phi1(0) = Phi2(n+1) = 0 for Type I and Phi2(0) = Phi1(n+1) = 0 for Type II.
  bool boundaries_ok = false;
  /// Symbolic mode: entries surviving the default vanishing set, all of Type I/II.
  std::size_t survivors = 0;
  bool survivors_ok = false;
  int points_checked = 0;
  [[nodiscard]] bool passed() const { return type_one_ok && type_two_ok && boundaries_ok && survivors_ok; }
};

/// N <= 5: solves symbolically and compares the Type I/II products with the
/// general forms. N >= 6: evaluates the factors on u = -n/2 and the Type I/II
/// energies at `points` random exact parameter points.
SurvivorFamiliesReport verify_survivor_families(int order, std::uint64_t seed = 1, int points = 20);

struct SpectrumRow {
  long long n = 0;
  std::complex<double> E;
  std::optional<GaussianRational> E_exact;
  std::vector<std::complex<double>> phi;  ///< B = 1..n
  std::vector<std::optional<GaussianRational>> phi_exact;
  bool unitary = false;
};

struct SpectrumTable {
  SolutionType type = SolutionType::other;
  std::vector<SpectrumRow> rows;
};

/// Evaluates a closed-form solution at concrete parameters over n in [n_first, n_last].
/// Throws std::invalid_argument for descriptors, for n = 0 without the flag, or
/// when the solution is undefined at the parameters.
SpectrumTable spectrum_table(const SpectrumSolution& s, const std::vector<GaussianRational>& params,
                             long long n_first, long long n_last, const SolveOptions& options = {});

/// Columns n,E,unitary; 17 significant digits, exact values where available.
std::string spectrum_table_csv(const SpectrumTable& table);

}  // namespace zernike
