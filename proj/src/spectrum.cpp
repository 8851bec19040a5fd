#include "zernike/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <random>
#include <sstream>

namespace zernike {

namespace {

const Poly kU = Poly::var(Var::u);
const Poly kN = Poly::var(Var::n);
const Poly kB = Poly::var(Var::B);
const Poly kE = Poly::var(Var::E);

const Branch kBranches[] = {{1, 2}, {2, 1}, {1, 1}, {2, 2}};

GaussianRational two_i(int sign) { return GaussianRational(Rational(0), Rational(2 * sign)); }

// sum_k c^k g_k x^k
Poly power_sum(const HamiltonianSpec& spec, const GaussianRational& c, const Poly& x) {
  Poly sum, xk(1);
  GaussianRational ck(1);
  for (int k = 1; k <= spec.order; ++k) {
    xk *= x;
    ck *= c;
    sum += spec.gamma(k) * ck * xk;
  }
  return sum;
}

using CVec = std::vector<std::complex<double>>;

std::map<Var, std::complex<double>> complex_point(const CVec& params, std::complex<double> n) {
  std::map<Var, std::complex<double>> m;
  for (std::size_t k = 0; k < params.size(); ++k) m[gamma_var(static_cast<int>(k) + 1)] = params[k];
  m[Var::n] = n;
  return m;
}

CVec to_complex(const std::vector<GaussianRational>& v) {
  CVec out;
  for (const auto& z : v) out.push_back(z.to_complex());
  return out;
}

// Coefficients in u of a polynomial in u, n and the gammas at a numeric point.
CVec numeric_coefficients(const Poly& p, const std::map<Var, std::complex<double>>& point) {
  CVec c;
  for (const auto& q : p.coefficients_in(Var::u)) c.push_back(q.evaluate(point));
  return c;
}

std::complex<double> horner(const CVec& c, std::complex<double> x) {
  std::complex<double> r = 0;
  for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

double term_scale(const CVec& c, std::complex<double> x) {
  double s = 0, xa = 1;
  for (const auto& a : c) {
    s += std::abs(a) * xa;
    xa *= std::abs(x);
  }
  return std::max(1.0, s);
}

// Roots of sum c_k x^k through the companion matrix, trailing zero coefficients
// having been checked exactly by the caller.
CVec companion_roots(CVec c) {
  while (!c.empty() && c.back() == std::complex<double>(0)) c.pop_back();
  const std::size_t d = c.empty() ? 0 : c.size() - 1;
  if (d == 0) return {};
  if (d == 1) return {-c[0] / c[1]};
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t r = 1; r < d; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r - 1)) = 1;
  for (std::size_t r = 0; r < d; ++r) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d - 1)) = -c[r] / c[d];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("companion eigenvalue solver did not converge");
  CVec roots;
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) roots.push_back(solver.eigenvalues()(k));
  return roots;
}

CVec derivative(const CVec& c) {
  CVec d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * static_cast<double>(k));
  return d;
}

bool close(std::complex<double> a, std::complex<double> b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

struct RawRoot {
  Branch branch;
  std::complex<double> u, E;
  double newton = 0, residual = 0;
};

// Symbolic eliminants and energies for symbolic parameters, shared by numeric
// solving and limit tracking.
struct SymbolicBranchData {
  Poly eliminant;
  Poly energy;
};

const SymbolicBranchData& symbolic_branch(int order, const Branch& b) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, SymbolicBranchData> cache;
  std::lock_guard lock(mu);
  auto key = std::make_tuple(order, b.at_zero, b.at_top);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto spec = HamiltonianSpec::symbolic(order);
    it = cache.emplace(key, SymbolicBranchData{branch_eliminant(spec, b), energy_from_factor(spec, b.at_zero, Poly())})
             .first;
  }
  return it->second;
}

std::vector<RawRoot> branch_roots(int order, const Branch& b, const CVec& params, long long n,
                                  const std::vector<GaussianRational>* exact) {
  const auto& data = symbolic_branch(order, b);
  const auto point = complex_point(params, std::complex<double>(static_cast<double>(n)));
  CVec c = numeric_coefficients(data.eliminant, point);
  if (exact) {
    // Exact degree detection at exact parameters.
    std::map<Var, GaussianRational> ep;
    for (std::size_t k = 0; k < exact->size(); ++k) ep[gamma_var(static_cast<int>(k) + 1)] = (*exact)[k];
    ep[Var::n] = GaussianRational(Rational(n));
    const auto cs = data.eliminant.coefficients_in(Var::u);
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (cs[k].evaluate_exact(ep).is_zero()) c[k] = 0;
  }
  const CVec energy = numeric_coefficients(data.energy, point);
  const CVec dc = derivative(c);
  std::vector<RawRoot> out;
  for (auto u : companion_roots(c)) {
    RawRoot r;
    r.branch = b;
    const auto slope = horner(dc, u);
    if (std::abs(slope) > 0) {
      const auto step = horner(c, u) / slope;
      u -= step;
      r.newton = std::abs(step);
    }
    r.u = u;
    r.E = horner(energy, u);
    r.residual = std::abs(horner(c, u)) / term_scale(c, u);
    out.push_back(r);
  }
  return out;
}

std::vector<RawRoot> all_roots(int order, const CVec& params, long long n, const std::vector<GaussianRational>* exact) {
  std::vector<RawRoot> all;
  for (const auto& b : kBranches) {
    auto r = branch_roots(order, b, params, n, exact);
    all.insert(all.end(), r.begin(), r.end());
  }
  return all;
}

std::set<Var> gamma_vars(const std::set<int>& ks) {
  std::set<Var> vs;
  for (int k : ks) vs.insert(gamma_var(k));
  return vs;
}

void fill_limits(SpectrumSolution& s) {
  for (int k = 1; k <= s.order; ++k) s.limit_valid[k] = well_defined_in_limit(s, {k});
}

bool descriptor_defined(const SpectrumSolution& s, const std::set<Var>& zero) {
  const auto c = s.root_polynomial->coefficients_in(Var::u);
  Poly lead = c.back();
  for (Var v : zero) lead = lead.substitute(v, Poly());
  return !lead.is_zero();
}

const std::vector<SpectrumSolution>& symbolic_solutions(int order) {
  static std::mutex mu;
  static std::map<int, std::vector<SpectrumSolution>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, solve_constraints_symbolic(HamiltonianSpec::symbolic(order))).first;
  return it->second;
}

// The symbolic family a numeric root belongs to, judged by its branch and value.
const SpectrumSolution* symbolic_family(const SpectrumSolution& s) {
  const auto& family = symbolic_solutions(s.order);
  const auto point = complex_point(s.numeric_params, std::complex<double>(static_cast<double>(s.n_value)));
  const SpectrumSolution* descriptor = nullptr;
  for (const auto& f : family) {
    if (std::find(f.branches.begin(), f.branches.end(), s.branches.front()) == f.branches.end()) continue;
    if (f.is_descriptor()) {
      descriptor = &f;
      continue;
    }
    if (close(f.u->evaluate(point), *s.u_value, 1e-6) && close(f.E->evaluate(point), *s.E_value, 1e-6)) return &f;
  }
  return descriptor;
}

}  // namespace

bool limit_bounded_numerically(const SpectrumSolution& s, const std::set<int>& vanish) {
  if (!s.is_numeric()) throw std::invalid_argument("path tracking needs a numeric solution");
  constexpr int kStepsPerDecade = 20;
  const Branch b = s.branches.front();
  std::complex<double> u = *s.u_value, E = *s.E_value;
  std::vector<std::pair<double, double>> samples;
  for (int step = 1; step <= 6 * kStepsPerDecade; ++step) {
    const double eps = std::pow(10.0, -static_cast<double>(step) / kStepsPerDecade);
    CVec params = s.numeric_params;
    for (int k : vanish) params[static_cast<std::size_t>(k - 1)] *= eps;
    const auto roots = branch_roots(s.order, b, params, s.n_value, nullptr);
    if (roots.empty()) return false;
    const auto best = std::min_element(roots.begin(), roots.end(), [&](const RawRoot& a, const RawRoot& c) {
      return std::abs(a.u - u) < std::abs(c.u - u);
    });
    u = best->u;
    E = best->E;
    if (step % (2 * kStepsPerDecade) == 0) samples.emplace_back(std::abs(u), std::abs(E));
  }
  const auto& first = samples.front();
  const auto& last = samples.back();
  return last.first <= 10 * (1 + first.first) && last.second <= 10 * (1 + first.second);
}

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_value(std::complex<double> z, const std::optional<GaussianRational>& exact) {
  if (exact) return exact->is_real() ? exact->re().to_string() : exact->to_string();
  if (z.imag() == 0) return format_double(z.real());
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

}  // namespace

std::string to_string(SolutionType t) {
  switch (t) {
    case SolutionType::I: return "I";
    case SolutionType::II: return "II";
    case SolutionType::III: return "III";
    case SolutionType::IV: return "IV";
    case SolutionType::other: return "other";
  }
  return "other";
}

std::pair<RepPolynomial, RepPolynomial> rep_structure_function(const HamiltonianSpec& spec) {
  spec.validate();
  RepPolynomial p1{Poly(GaussianRational(Rational(1, 4))) * (kE - power_sum(spec, two_i(1), kB + kU)), 1};
  RepPolynomial p2{kE - power_sum(spec, two_i(-1), kB + kU - Poly(1)), 2};
  return {p1, p2};
}

Poly energy_from_factor(const HamiltonianSpec& spec, int factor, const Poly& B) {
  if (factor == 1) return power_sum(spec, two_i(1), B + kU);
  return power_sum(spec, two_i(-1), B + kU - Poly(1));
}

Poly branch_eliminant(const HamiltonianSpec& spec, const Branch& branch) {
  return energy_from_factor(spec, branch.at_zero, Poly()) - energy_from_factor(spec, branch.at_top, kN + Poly(1));
}

unsigned SpectrumSolution::root_count() const {
  if (root_polynomial) return root_polynomial->degree_in(Var::u);
  return 1;
}

Surd SpectrumSolution::phi_product() const {
  if (!phi) throw std::logic_error("phi is only available for closed-form solutions");
  return phi->first * phi->second;
}

unsigned total_root_count(const std::vector<SpectrumSolution>& solutions) {
  unsigned n = 0;
  for (const auto& s : solutions) n += s.root_count();
  return n;
}

std::vector<SpectrumSolution> solve_constraints_symbolic(const HamiltonianSpec& spec) {
  spec.validate();
  std::vector<SpectrumSolution> out;
  const RationalFunction quarter = RationalFunction::quotient(Poly(1), Poly(4));

  auto add_closed = [&](const Branch& b, const Surd& u) {
    const Surd E = evaluate_at(energy_from_factor(spec, b.at_zero, Poly()), Var::u, u);
    if (!(E == evaluate_at(energy_from_factor(spec, b.at_top, kN + Poly(1)), Var::u, u)))
      throw std::logic_error("closed-form root does not satisfy the constraint at B = n+1");
    for (auto& s : out) {
      if (s.u && *s.u == u && *s.E == E) {
        s.branches.push_back(b);
        return;
      }
    }
    SpectrumSolution s;
    s.order = spec.order;
    s.branches = {b};
    s.u = u;
    s.E = E;
    const Surd phi1 = Surd(quarter) * (E - evaluate_at(energy_from_factor(spec, 1, kB), Var::u, u));
    const Surd phi2 = E - evaluate_at(energy_from_factor(spec, 2, kB), Var::u, u);
    s.phi = std::make_pair(phi1, phi2);
    out.push_back(std::move(s));
  };

  for (const auto& b : kBranches) {
    Poly r = branch_eliminant(spec, b);
    if (b.at_zero != b.at_top) {
      auto q = r.divide_exact(Poly(2) * kU + kN);
      if (!q) throw std::logic_error("eliminant lacks the factor 2u + n");
      r = std::move(*q);
      add_closed(b, Surd(RationalFunction::quotient(-kN, Poly(2))));
    } else {
      while (!r.is_zero()) {
        auto q = r.divide_exact(kN + Poly(1));
        if (!q) break;
        r = std::move(*q);
      }
    }
    if (r.is_zero()) throw std::domain_error("constraints are satisfied identically on a branch");
    const auto c = r.coefficients_in(Var::u);
    const std::size_t degree = c.size() - 1;
    if (degree == 1) {
      add_closed(b, Surd(RationalFunction::quotient(-c[0], c[1])));
    } else if (degree == 2) {
      const auto [plus, minus] = quadratic_roots(c[0], c[1], c[2]);
      add_closed(b, plus);
      add_closed(b, minus);
    } else if (degree >= 3) {
      SpectrumSolution s;
      s.order = spec.order;
      s.branches = {b};
      s.root_polynomial = r;
      s.energy_in_u = energy_from_factor(spec, b.at_zero, Poly());
      out.push_back(std::move(s));
    }
  }
  for (auto& s : out) {
    fill_limits(s);
    s.type = classify_type(s, spec);
  }
  return out;
}

std::vector<SpectrumSolution> solve_constraints_numeric(const HamiltonianSpec& spec, long long n,
                                                        const SolveOptions& options) {
  spec.validate();
  if (!spec.is_numeric()) throw std::invalid_argument("numeric mode requires concrete parameters");
  if (n < 0 || (n == 0 && !options.allow_ground_state))
    throw std::invalid_argument("n must be >= 1 (n = 0 requires the ground-state flag)");
  const auto exact = spec.numeric_values();
  const CVec params = to_complex(exact);
  std::vector<SpectrumSolution> out;
  for (const auto& b : kBranches) {
    for (const auto& r : branch_roots(spec.order, b, params, n, &exact)) {
      if (!(r.residual < 1e-9))
        throw RootFindingError("root did not converge (relative residual " + format_double(r.residual) + ")", b);
      auto dup = std::find_if(out.begin(), out.end(), [&](const SpectrumSolution& s) {
        return close(*s.u_value, r.u, options.dedup_tolerance) && close(*s.E_value, r.E, options.dedup_tolerance);
      });
      if (dup != out.end()) {
        dup->branches.push_back(b);
        continue;
      }
      SpectrumSolution s;
      s.order = spec.order;
      s.branches = {b};
      s.u_value = r.u;
      s.E_value = r.E;
      s.numeric_params = params;
      s.n_value = n;
      s.newton_step = r.newton;
      s.residual = r.residual;
      out.push_back(std::move(s));
    }
  }
  for (auto& s : out) {
    fill_limits(s);
    s.type = classify_type(s, spec);
  }
  return out;
}

std::vector<SpectrumSolution> solve_constraints(const HamiltonianSpec& spec, std::optional<long long> n,
                                                SolveMode mode, const SolveOptions& options) {
  if (mode == SolveMode::symbolic) return solve_constraints_symbolic(spec);
  if (!n) throw std::invalid_argument("numeric mode requires a concrete n");
  return solve_constraints_numeric(spec, *n, options);
}

HamiltonianSpec generic_parameters(int order, long long n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-100, 100), den(1, 100);
  auto part = [&] { return Rational(num(rng), den(rng)); };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<GaussianRational> g;
    for (int k = 1; k <= order; ++k) g.emplace_back(part(), part());
    if (g.back().is_zero()) continue;
    const auto roots = all_roots(order, to_complex(g), n, &g);
    bool separated = true;
    for (std::size_t a = 0; a < roots.size() && separated; ++a)
      for (std::size_t c = a + 1; c < roots.size() && separated; ++c)
        if (close(roots[a].u, roots[c].u, 1e-6) && close(roots[a].E, roots[c].E, 1e-6)) separated = false;
    if (separated) return HamiltonianSpec::numeric(g);
  }
  throw std::runtime_error("no generic parameter sample found");
}

std::set<int> default_vanish_set(int order) {
  std::set<int> s;
  for (int k = 3; k <= order; ++k) s.insert(k);
  return s;
}

bool well_defined_in_limit(const SpectrumSolution& s, const std::set<int>& vanish) {
  for (int k : vanish)
    if (k < 1 || k > s.order) throw std::invalid_argument("vanishing index outside 1..N");
  if (vanish.empty()) return true;
  const auto vars = gamma_vars(vanish);
  if (s.is_closed_form()) return s.u->defined_when_zero(vars) && s.E->defined_when_zero(vars);
  if (s.is_descriptor()) return descriptor_defined(s, vars);
  if (const SpectrumSolution* family = symbolic_family(s)) return well_defined_in_limit(*family, vanish);
  return limit_bounded_numerically(s, vanish);
}

std::vector<SpectrumSolution> filter_well_defined(const std::vector<SpectrumSolution>& solutions,
                                                  const std::set<int>& vanish) {
  std::vector<SpectrumSolution> kept;
  for (const auto& s : solutions)
    if (well_defined_in_limit(s, vanish)) kept.push_back(s);
  return kept;
}

Poly type_one_energy(const HamiltonianSpec& spec) { return power_sum(spec, GaussianRational(Rational(0), Rational(-1)), kN); }

Poly type_two_energy(const HamiltonianSpec& spec) {
  return power_sum(spec, GaussianRational::i(), kN + Poly(2));
}

namespace {

RationalFunction i_g1_over_2g2(const HamiltonianSpec& spec) {
  return RationalFunction::quotient(Poly(GaussianRational::i()) * spec.gamma(1), Poly(2) * spec.gamma(2));
}

}  // namespace

RationalFunction type_three_u(const HamiltonianSpec& spec) {
  return RationalFunction::quotient(Poly(-1), Poly(2)) * (RationalFunction(kN - Poly(1)) + i_g1_over_2g2(spec));
}

RationalFunction type_four_u(const HamiltonianSpec& spec) {
  return RationalFunction::quotient(Poly(-1), Poly(2)) * (RationalFunction(kN + Poly(1)) - i_g1_over_2g2(spec));
}

RationalFunction type_three_energy(const HamiltonianSpec& spec) {
  return RationalFunction::quotient(-(spec.gamma(1) * spec.gamma(1)), Poly(4) * spec.gamma(2)) -
         RationalFunction(spec.gamma(2) * pow(kN + Poly(1), 2));
}

SolutionType classify_type(const SpectrumSolution& s, const HamiltonianSpec& spec) {
  const bool has_three_four = spec.order == 2 && !spec.gamma(2).is_zero();
  if (s.is_closed_form()) {
    if (!s.u->is_rational() || !s.E->is_rational()) return SolutionType::other;
    const RationalFunction& u = s.u->x;
    const RationalFunction& E = s.E->x;
    const RationalFunction half_n = RationalFunction::quotient(-kN, Poly(2));
    if (u == half_n && E == RationalFunction(type_one_energy(spec))) return SolutionType::I;
    if (u == half_n && E == RationalFunction(type_two_energy(spec))) return SolutionType::II;
    if (has_three_four && E == type_three_energy(spec)) {
      if (u == type_three_u(spec)) return SolutionType::III;
      if (u == type_four_u(spec)) return SolutionType::IV;
    }
    return SolutionType::other;
  }
  if (!s.is_numeric()) return SolutionType::other;
  const auto point = complex_point(s.numeric_params, std::complex<double>(static_cast<double>(s.n_value)));
  constexpr double tol = 1e-8;
  const std::complex<double> half_n = -0.5 * static_cast<double>(s.n_value);
  const auto sym = HamiltonianSpec::symbolic(spec.order);
  if (close(*s.u_value, half_n, tol) && close(*s.E_value, type_one_energy(sym).evaluate(point), tol))
    return SolutionType::I;
  if (close(*s.u_value, half_n, tol) && close(*s.E_value, type_two_energy(sym).evaluate(point), tol))
    return SolutionType::II;
  if (has_three_four && close(*s.E_value, type_three_energy(sym).evaluate(point), tol)) {
    if (close(*s.u_value, type_three_u(sym).evaluate(point), tol)) return SolutionType::III;
    if (close(*s.u_value, type_four_u(sym).evaluate(point), tol)) return SolutionType::IV;
  }
  return SolutionType::other;
}

SpectrumTable spectrum_table(const SpectrumSolution& s, const std::vector<GaussianRational>& params,
                             long long n_first, long long n_last, const SolveOptions& options) {
  if (!s.is_closed_form()) throw std::invalid_argument("spectrum tables need a closed-form solution");
  if (n_first > n_last) throw std::invalid_argument("empty n range");
  if (n_first < 0 || (n_first == 0 && !options.allow_ground_state))
    throw std::invalid_argument("n must be >= 1 (n = 0 requires the ground-state flag)");
  if (static_cast<int>(params.size()) < s.order) throw std::invalid_argument("parameter list shorter than N");
  std::map<Var, GaussianRational> values;
  for (int k = 1; k <= s.order; ++k) values[gamma_var(k)] = params[static_cast<std::size_t>(k - 1)];
  const auto E = s.E->substitute(values);
  const auto phi = s.phi_product().substitute(values);
  if (!E || !phi) throw std::invalid_argument("solution is undefined at these parameters");

  SpectrumTable table;
  table.type = s.type;
  for (long long n = n_first; n <= n_last; ++n) {
    SpectrumRow row;
    row.n = n;
    std::map<Var, GaussianRational> at_n{{Var::n, GaussianRational(Rational(n))}};
    std::map<Var, std::complex<double>> c_at_n{{Var::n, static_cast<double>(n)}};
    row.E_exact = E->evaluate_exact(at_n);
    row.E = row.E_exact ? row.E_exact->to_complex() : E->evaluate(c_at_n);
    row.unitary = true;
    for (long long b = 1; b <= n; ++b) {
      at_n[Var::B] = GaussianRational(Rational(b));
      c_at_n[Var::B] = static_cast<double>(b);
      auto exact = phi->evaluate_exact(at_n);
      const std::complex<double> value = exact ? exact->to_complex() : phi->evaluate(c_at_n);
      const bool positive = exact ? (exact->is_real() && exact->re().sign() > 0)
                                  : (std::abs(value.imag()) <= 1e-12 * (1 + std::abs(value)) && value.real() > 0);
      row.unitary = row.unitary && positive;
      row.phi.push_back(value);
      row.phi_exact.push_back(std::move(exact));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string spectrum_table_csv(const SpectrumTable& table) {
  std::ostringstream os;
  os << "n,E,unitary\n";
  for (const auto& r : table.rows) os << r.n << ',' << format_value(r.E, r.E_exact) << ',' << (r.unitary ? "true" : "false") << '\n';
  return os.str();
}

Poly general_type_one_phi(const HamiltonianSpec& spec) {
  const GaussianRational mi(Rational(0), Rational(-1));
  const Poly a = power_sum(spec, mi, kN) - power_sum(spec, mi, kN - Poly(2) * kB);
  const Poly b = power_sum(spec, mi, kN) - power_sum(spec, mi, Poly(2) * kB - kN - Poly(2));
  return Poly(GaussianRational(Rational(1, 4))) * a * b;
}

Poly general_type_two_phi(const HamiltonianSpec& spec) {
  const GaussianRational pi = GaussianRational::i();
  const Poly top = kN + Poly(2);
  const Poly a = power_sum(spec, pi, top) - power_sum(spec, pi, Poly(2) * kB - kN);
  const Poly b = power_sum(spec, pi, top) - power_sum(spec, pi, top - Poly(2) * kB);
  return Poly(GaussianRational(Rational(1, 4))) * a * b;
}

SurvivorFamiliesReport verify_survivor_families(int order, std::uint64_t seed, int points) {
  if (order < 1) throw std::invalid_argument("N must be >= 1");
  SurvivorFamiliesReport r;
  r.order = order;
  const auto spec = HamiltonianSpec::symbolic(order);
  const Poly phi_one = general_type_one_phi(spec), phi_two = general_type_two_phi(spec);
  const Poly top = kN + Poly(1);
  if (order <= 5) {
    r.symbolic = true;
    const auto sols = solve_constraints_symbolic(spec);
    const SpectrumSolution *one = nullptr, *two = nullptr;
    for (const auto& s : sols) {
      if (s.type == SolutionType::I) one = &s;
      if (s.type == SolutionType::II) two = &s;
    }
    const auto matches = [](const SpectrumSolution* s, const Poly& phi) {
      if (!s) return false;
      const Surd p = s->phi_product();
      return p.is_rational() && p.x == RationalFunction(phi);
    };
    r.type_one_ok = matches(one, phi_one);
    r.type_two_ok = matches(two, phi_two);
    r.boundaries_ok = one && two && one->phi->first.substitute(Var::B, Poly()) == Surd() &&
                      one->phi->second.substitute(Var::B, top) == Surd() &&
                      two->phi->second.substitute(Var::B, Poly()) == Surd() &&
                      two->phi->first.substitute(Var::B, top) == Surd();
    const auto kept = filter_well_defined(sols, default_vanish_set(order));
    r.survivors = kept.size();
    r.survivors_ok = order == 2 || (kept.size() == 2 && std::all_of(kept.begin(), kept.end(), [](const auto& s) {
                       return s.type == SolutionType::I || s.type == SolutionType::II;
                     }));
    return r;
  }
  const auto [f1, f2] = rep_structure_function(spec);
  const Poly half_n = Poly(GaussianRational(Rational(-1, 2))) * kN;
  const auto on = [&](const Poly& f, const Poly& energy) {
    return f.substitute(Var::u, half_n).substitute(Var::E, energy);
  };
  const Poly e1 = type_one_energy(spec), e2 = type_two_energy(spec);
  const Poly a1 = on(f1.expression, e1), a2 = on(f2.expression, e1);
  const Poly b1 = on(f1.expression, e2), b2 = on(f2.expression, e2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9), nn(1, 30);
  r.type_one_ok = r.type_two_ok = r.boundaries_ok = r.survivors_ok = true;
  for (int t = 0; t < points; ++t) {
    std::map<Var, GaussianRational> pt;
    for (int k = 1; k <= order; ++k)
      pt[gamma_var(k)] = GaussianRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    const long long n = nn(rng);
    pt[Var::n] = GaussianRational(Rational(n));
    pt[Var::B] = GaussianRational(Rational(static_cast<long long>(rng() % static_cast<unsigned long long>(n + 2))));
    r.type_one_ok = r.type_one_ok && a1.evaluate_exact(pt) * a2.evaluate_exact(pt) == phi_one.evaluate_exact(pt);
    r.type_two_ok = r.type_two_ok && b1.evaluate_exact(pt) * b2.evaluate_exact(pt) == phi_two.evaluate_exact(pt);
    auto at = pt;
    at[Var::B] = GaussianRational(0);
    const bool low = a1.evaluate_exact(at).is_zero() && b2.evaluate_exact(at).is_zero();
    at[Var::B] = GaussianRational(Rational(n + 1));
    const bool high = a2.evaluate_exact(at).is_zero() && b1.evaluate_exact(at).is_zero();
    r.boundaries_ok = r.boundaries_ok && low && high;
    ++r.points_checked;
  }
  return r;
}

}  // namespace zernike
