#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zernike/gaussian_rational.hpp"
#include "zernike/symmetries.hpp"

namespace zernike {

/// Isotropic oscillator on the sphere (kappa > 0), plane or hyperbolic plane
/// (kappa < 0) with cubic (mu) and quartic (nu) perturbations. The energy is
/// the Type I spectrum -(beta n + alpha n^2 + mu n^3 + nu n^4) with alpha = -kappa.
/// T is double for decimal inputs and Rational for exact ones.
template <class T>
struct BasicOscillatorSpec {
  T kappa{};
  T beta = T(-2);
  T mu{};
  T nu{};
};
using OscillatorSpec = BasicOscillatorSpec<double>;
using ExactOscillatorSpec = BasicOscillatorSpec<Rational>;

/// g1 = -i beta, g2 = -kappa, g3 = i mu, g4 = -nu.
std::vector<GaussianRational> map_params(const ExactOscillatorSpec& spec);
std::vector<std::complex<double>> map_params(const OscillatorSpec& spec);
/// Inverse map for up to four couplings; throws std::invalid_argument when
/// odd couplings are not imaginary or even ones not real.
ExactOscillatorSpec unmap_params(const std::vector<GaussianRational>& gammas);
/// The Hamiltonian whose Type I spectrum this is, trailing zero couplings dropped.
HamiltonianSpec to_hamiltonian(const ExactOscillatorSpec& spec);

enum class Label { spherical, hyperbolic, none };
std::string to_string(Label l);

struct PerturbationClass {
  Label curvature = Label::none;  ///< kappa > 0 spherical, kappa < 0 hyperbolic
  Label cubic = Label::none;      ///< mu < 0 spherical, mu > 0 hyperbolic
  Label quartic = Label::none;    ///< nu < 0 spherical, nu > 0 hyperbolic
};
template <class T>
PerturbationClass classify(const BasicOscillatorSpec<T>& spec);

/// E(x) for any real x (the polynomial, not only at integers).
template <class T>
T energy(const BasicOscillatorSpec<T>& spec, const T& x);
/// Closed-form E(n+1) - E(n).
template <class T>
T spacing(const BasicOscillatorSpec<T>& spec, long long n);

class NoBoundStates : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Greatest n >= 1 with E(k) > 0 for k <= n and E(k) - E(k-1) > 0 for 2 <= k <= n;
/// nullopt when every n qualifies. Doubles count as positive above 1e-12 times
/// the scale of the terms. Throws NoBoundStates when E(1) <= 0.
template <class T>
std::optional<long long> n_max(const BasicOscillatorSpec<T>& spec);

template <class T>
struct LevelRow {
  long long n = 0;
  T E{};
  T dE{};  ///< E(n+1) - E(n) from consecutive energies
  bool bound = false;
};

template <class T>
struct LevelTable {
  std::vector<LevelRow<T>> rows;
};

template <class T>
LevelTable<T> energy_levels(const BasicOscillatorSpec<T>& spec, long long n_first, long long n_last);

enum class OscillatorClass { hyperbolic, flat_cubic, spherical_cubic };

template <class T>
struct Interval {
  T lo{}, hi{};  ///< [lo, hi)
  [[nodiscard]] bool contains(const T& x) const { return lo <= x && x < hi; }
};

/// Parameter range giving n_max = m at beta = -2: |kappa| for the hyperbolic
/// oscillator, mu for the flat and spherical cubic perturbations (the latter at
/// the given kappa > 0).
template <class T>
Interval<T> admissible_interval(OscillatorClass cls, long long m, const T& kappa = T(0));

template <class T>
struct PhiReport {
  bool all_positive = true;
  long long checked = 0;
  T min_value{};
  long long min_B = 0, min_n = 0;
};

/// Phi(B, n) = (E(n) - E(n-2B)) (E(n) - E(2B-n-2)) / 4 for 1 <= B <= n <= n_last.
template <class T>
T structure_value(const BasicOscillatorSpec<T>& spec, long long B, long long n);
template <class T>
PhiReport<T> phi_positivity(const BasicOscillatorSpec<T>& spec, long long n_last);

struct FigureRow {
  std::string series;
  long long n = 0;
  double E = 0;
};

struct FigureSeries {
  std::string label;
  OscillatorSpec spec;
  long long n_last = 0;
};

/// The plotted series of figures 1-5; finite spectra stop at their n_max,
/// unbounded ones at n = 10.
std::vector<FigureSeries> figure_series(int figure_id);
std::vector<FigureRow> figure_data(int figure_id);
/// Columns series,n,E with E to 17 significant digits.
std::string figure_csv(const std::vector<FigureRow>& rows);

}  // namespace zernike
