#include "zernike/oscillators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace zernike {

namespace {

double magnitude(double x) { return std::abs(x); }
double magnitude(const Rational& x) { return std::abs(x.to_double()); }

bool positive(double x, double scale) { return x > 1e-12 * std::max(1.0, scale); }
bool positive(const Rational& x, double) { return x.sign() > 0; }

template <class T>
T from_int(long long n) {
  return T(n);
}

template <class T>
Label label_of(const T& x, bool positive_is_spherical) {
  if (x == T(0)) return Label::none;
  return (x > T(0)) == positive_is_spherical ? Label::spherical : Label::hyperbolic;
}

// Coefficients (ascending) of E(n)/n and of E(n+1) - E(n).
template <class T>
std::pair<std::vector<T>, std::vector<T>> level_polynomials(const BasicOscillatorSpec<T>& s) {
  std::vector<T> e{-s.beta, s.kappa, -s.mu, -s.nu};
  std::vector<T> d{-s.beta + s.kappa - s.mu - s.nu, T(2) * s.kappa - T(3) * s.mu - T(4) * s.nu,
                   -(T(3) * s.mu) - T(6) * s.nu, -(T(4) * s.nu)};
  return {e, d};
}

// Beyond this n every nonzero polynomial has the sign of its leading coefficient.
template <class T>
double cauchy_bound(const std::vector<T>& c) {
  std::size_t lead = c.size();
  while (lead > 0 && c[lead - 1] == T(0)) --lead;
  if (lead <= 1) return 1;
  const double a = magnitude(c[lead - 1]);
  double m = 0;
  for (std::size_t k = 0; k + 1 < lead; ++k) m = std::max(m, magnitude(c[k]) / a);
  return 1 + m;
}

template <class T>
double energy_scale(const BasicOscillatorSpec<T>& s, double x) {
  x = std::abs(x);
  return magnitude(s.beta) * x + magnitude(s.kappa) * x * x + magnitude(s.mu) * x * x * x +
         magnitude(s.nu) * x * x * x * x;
}

template <class T>
double spacing_scale(const BasicOscillatorSpec<T>& s, long long n) {
  const double x = static_cast<double>(n);
  return magnitude(s.beta) + magnitude(s.kappa) * (2 * x + 1) + magnitude(s.mu) * (3 * x * x + 3 * x + 1) +
         magnitude(s.nu) * (4 * x * x * x + 6 * x * x + 4 * x + 1);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<GaussianRational> map_params(const ExactOscillatorSpec& s) {
  return {GaussianRational(Rational(0), -s.beta), GaussianRational(-s.kappa), GaussianRational(Rational(0), s.mu),
          GaussianRational(-s.nu)};
}

std::vector<std::complex<double>> map_params(const OscillatorSpec& s) {
  return {{0.0, -s.beta}, {-s.kappa, 0.0}, {0.0, s.mu}, {-s.nu, 0.0}};
}

ExactOscillatorSpec unmap_params(const std::vector<GaussianRational>& g) {
  if (g.empty() || g.size() > 4) throw std::invalid_argument("expected one to four couplings");
  for (std::size_t k = 0; k < g.size(); ++k) {
    const bool odd = k % 2 == 0;
    if (odd ? !g[k].re().is_zero() : !g[k].im().is_zero())
      throw std::invalid_argument("couplings do not respect the reality convention");
  }
  ExactOscillatorSpec s;
  s.beta = -g[0].im();
  if (g.size() > 1) s.kappa = -g[1].re();
  if (g.size() > 2) s.mu = g[2].im();
  if (g.size() > 3) s.nu = -g[3].re();
  return s;
}

HamiltonianSpec to_hamiltonian(const ExactOscillatorSpec& spec) {
  auto g = map_params(spec);
  while (g.size() > 1 && g.back().is_zero()) g.pop_back();
  return HamiltonianSpec::numeric(g);
}

std::string to_string(Label l) {
  switch (l) {
    case Label::spherical: return "spherical";
    case Label::hyperbolic: return "hyperbolic";
    case Label::none: return "none";
  }
  return "?";
}

template <class T>
PerturbationClass classify(const BasicOscillatorSpec<T>& s) {
  return {label_of(s.kappa, true), label_of(s.mu, false), label_of(s.nu, false)};
}

template <class T>
T energy(const BasicOscillatorSpec<T>& s, const T& x) {
  return x * (-s.beta + x * (s.kappa - x * (s.mu + x * s.nu)));
}

template <class T>
T spacing(const BasicOscillatorSpec<T>& s, long long n) {
  const T x = from_int<T>(n);
  return -s.beta + s.kappa * (T(2) * x + T(1)) - s.mu * (T(3) * x * x + T(3) * x + T(1)) -
         s.nu * (T(4) * x * x * x + T(6) * x * x + T(4) * x + T(1));
}

template <class T>
std::optional<long long> n_max(const BasicOscillatorSpec<T>& s) {
  if (!positive(energy(s, T(1)), energy_scale(s, 1)))
    throw NoBoundStates("E(1) <= 0: no bound states (needs |kappa| < 2, mu < 2, mu < 2 + kappa at beta = -2)");
  const auto [e, d] = level_polynomials(s);
  const double bound = std::ceil(std::max(cauchy_bound(e), cauchy_bound(d))) + 2;
  if (bound > 1e8) throw std::runtime_error("n_max scan range too large");
  const auto last = static_cast<long long>(bound);
  for (long long n = 2; n <= last; ++n) {
    const bool ok = positive(energy(s, from_int<T>(n)), energy_scale(s, static_cast<double>(n))) &&
                    positive(spacing(s, n - 1), spacing_scale(s, n - 1));
    if (!ok) return n - 1;
  }
  return std::nullopt;
}

template <class T>
LevelTable<T> energy_levels(const BasicOscillatorSpec<T>& s, long long n_first, long long n_last) {
  if (n_first < 0 || n_first > n_last) throw std::invalid_argument("invalid n range");
  std::optional<long long> top;
  bool any = true;
  try {
    top = n_max(s);
  } catch (const NoBoundStates&) {
    any = false;
  }
  LevelTable<T> t;
  for (long long n = n_first; n <= n_last; ++n) {
    LevelRow<T> r;
    r.n = n;
    r.E = energy(s, from_int<T>(n));
    r.dE = energy(s, from_int<T>(n + 1)) - r.E;
    r.bound = any && n >= 1 && (!top || n <= *top);
    t.rows.push_back(std::move(r));
  }
  return t;
}

template <class T>
Interval<T> admissible_interval(OscillatorClass cls, long long m, const T& kappa) {
  if (m < 1) throw std::invalid_argument("n_max must be >= 1");
  const T M = from_int<T>(m);
  switch (cls) {
    case OscillatorClass::hyperbolic:
      return {T(2) / (T(2) * M + T(1)), T(2) / (T(2) * M - T(1))};
    case OscillatorClass::flat_cubic:
      return {T(2) / (T(1) + T(3) * M * (M + T(1))), T(2) / (T(1) + T(3) * M * (M - T(1)))};
    case OscillatorClass::spherical_cubic:
      if (!(kappa > T(0))) throw std::invalid_argument("spherical cubic interval needs kappa > 0");
      return {(T(2) + kappa * (T(2) * M + T(1))) / (T(1) + T(3) * M * (M + T(1))),
              (T(2) + kappa * (T(2) * M - T(1))) / (T(1) + T(3) * M * (M - T(1)))};
  }
  throw std::invalid_argument("unknown oscillator class");
}

template <class T>
T structure_value(const BasicOscillatorSpec<T>& s, long long B, long long n) {
  const T en = energy(s, from_int<T>(n));
  return (en - energy(s, from_int<T>(n - 2 * B))) * (en - energy(s, from_int<T>(2 * B - n - 2))) / T(4);
}

template <class T>
PhiReport<T> phi_positivity(const BasicOscillatorSpec<T>& s, long long n_last) {
  PhiReport<T> r;
  for (long long n = 1; n <= n_last; ++n) {
    for (long long B = 1; B <= n; ++B) {
      const T v = structure_value(s, B, n);
      const double scale = (energy_scale(s, static_cast<double>(n)) + energy_scale(s, static_cast<double>(n - 2 * B))) *
                           (energy_scale(s, static_cast<double>(n)) + energy_scale(s, static_cast<double>(2 * B - n - 2)));
      if (r.checked == 0 || v < r.min_value) {
        r.min_value = v;
        r.min_B = B;
        r.min_n = n;
      }
      ++r.checked;
      if (!positive(v, scale / 4)) r.all_positive = false;
    }
  }
  return r;
}

std::vector<FigureSeries> figure_series(int id) {
  const auto flat = [](long long last) { return FigureSeries{"euclidean", OscillatorSpec{}, last}; };
  const auto curved = [](const char* label, double kappa, double mu) {
    OscillatorSpec s;
    s.kappa = kappa;
    s.mu = mu;
    const auto top = n_max(s);
    return FigureSeries{label, s, top ? *top : 10};
  };
  switch (id) {
    case 1: return {curved("kappa=0.5", 0.5, 0), curved("kappa=0.25", 0.25, 0), curved("kappa=0.15", 0.15, 0), flat(10)};
    case 2: return {curved("kappa=-0.25", -0.25, 0), curved("kappa=-0.16", -0.16, 0), curved("kappa=-0.12", -0.12, 0), flat(10)};
    case 3: return {curved("mu=-0.05", 0, -0.05), curved("mu=-0.025", 0, -0.025), curved("mu=-0.01", 0, -0.01), flat(10)};
    case 4: return {curved("mu=0.06", 0, 0.06), curved("mu=0.03", 0, 0.03), curved("mu=0.015", 0, 0.015), flat(10)};
    case 5:
      return {curved("mu=0.2", 1, 0.2), curved("mu=0.12", 1, 0.12), curved("mu=0.1", 1, 0.1), curved("mu=0.07", 1, 0.07)};
    default: throw std::invalid_argument("figure id must be 1..5");
  }
}

std::vector<FigureRow> figure_data(int id) {
  std::vector<FigureRow> rows;
  for (const auto& s : figure_series(id))
    for (long long n = 1; n <= s.n_last; ++n) rows.push_back({s.label, n, energy(s.spec, static_cast<double>(n))});
  return rows;
}

std::string figure_csv(const std::vector<FigureRow>& rows) {
  std::ostringstream os;
  os << "series,n,E\n";
  for (const auto& r : rows) os << r.series << ',' << r.n << ',' << format_double(r.E) << '\n';
  return os.str();
}

#define ZERNIKE_OSCILLATOR_INSTANCES(T)                                                        \
  template PerturbationClass classify(const BasicOscillatorSpec<T>&);                          \
  template T energy(const BasicOscillatorSpec<T>&, const T&);                                  \
  template T spacing(const BasicOscillatorSpec<T>&, long long);                                \
  template std::optional<long long> n_max(const BasicOscillatorSpec<T>&);                      \
  template LevelTable<T> energy_levels(const BasicOscillatorSpec<T>&, long long, long long);    \
  template Interval<T> admissible_interval(OscillatorClass, long long, const T&);               \
  template T structure_value(const BasicOscillatorSpec<T>&, long long, long long);             \
  template PhiReport<T> phi_positivity(const BasicOscillatorSpec<T>&, long long);

ZERNIKE_OSCILLATOR_INSTANCES(double)
ZERNIKE_OSCILLATOR_INSTANCES(Rational)

}  // namespace zernike
