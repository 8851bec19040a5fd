#include "zernike/symmetries.hpp"

#include <algorithm>

#include "zernike/linalg.hpp"

namespace zernike {

namespace {

const WeylOperator Q1 = WeylOperator::q1();
const WeylOperator Q2 = WeylOperator::q2();
const WeylOperator P1 = WeylOperator::p1();
const WeylOperator P2 = WeylOperator::p2();

Poly g(int k) { return Poly::var(gamma_var(k)); }
Poly im(long long k) { return Poly(GaussianRational(Rational(0), Rational(k))); }

// The momentum-p1 family, written with positions on the left exactly as published.
WeylOperator iprime_part(int k) {
  switch (k) {
    case 1:
      return Q1 * P1;
    case 2:
      return (pow(Q1, 2) + pow(Q2, 2)) * pow(P1, 2);
    case 3:
      return pow(Q1, 3) * (pow(P1, 3) - P1 * pow(P2, 2)) + (pow(Q2, 3) + 3 * pow(Q1, 2) * Q2) * pow(P1, 2) * P2 -
             im(3) * pow(Q1, 2) * pow(P1, 2) - im(3) * Q1 * Q2 * P1 * P2 - Q1 * P1;
    case 4:
      return (pow(Q1, 4) - pow(Q2, 4)) * (pow(P1, 4) - pow(P1, 2) * pow(P2, 2)) +
             4 * (Q1 * pow(Q2, 3) + pow(Q1, 3) * Q2) * pow(P1, 3) * P2 -
             im(6) * (pow(Q1, 3) + Q1 * pow(Q2, 2)) * pow(P1, 3) -
             im(6) * (pow(Q2, 3) + pow(Q1, 2) * Q2) * pow(P1, 2) * P2 - 4 * (pow(Q1, 2) + pow(Q2, 2)) * pow(P1, 2);
    case 5:
      return pow(Q1, 5) * (pow(P1, 5) + P1 * pow(P2, 4)) -
             (pow(Q2, 5) - 5 * pow(Q1, 4) * Q2) * (pow(P1, 4) * P2 - pow(P1, 2) * pow(P2, 3)) -
             (pow(Q1, 5) - 10 * pow(Q1, 3) * pow(Q2, 2) - 5 * Q1 * pow(Q2, 4)) * pow(P1, 3) * pow(P2, 2) -
             im(10) * pow(Q1, 4) * (pow(P1, 4) - pow(P1, 2) * pow(P2, 2)) -
             im(10) * (Q1 * pow(Q2, 3) + 4 * pow(Q1, 3) * Q2) * pow(P1, 3) * P2 -
             im(10) * (pow(Q2, 4) + 3 * pow(Q1, 2) * pow(Q2, 2)) * pow(P1, 2) * pow(P2, 2) +
             im(10) * pow(Q1, 3) * Q2 * P1 * pow(P2, 3) - 25 * pow(Q1, 3) * pow(P1, 3) -
             10 * (pow(Q2, 3) + 6 * pow(Q1, 2) * Q2) * pow(P1, 2) * P2 +
             5 * (2 * pow(Q1, 3) - 3 * Q1 * pow(Q2, 2)) * P1 * pow(P2, 2) + im(15) * pow(Q1, 2) * pow(P1, 2) +
             im(15) * Q1 * Q2 * P1 * P2 + Q1 * P1;
    default:
      return {};
  }
}

// The momentum-p2 family for k <= 4.
WeylOperator i_part(int k) {
  const WeylOperator C = build_angular_momentum();
  switch (k) {
    case 1:
      return Q2 * P2;
    case 2:
      return (pow(Q1, 2) + pow(Q2, 2)) * pow(P2, 2) - C * C;
    case 3:
      return pow(Q2, 3) * (pow(P2, 3) - pow(P1, 2) * P2) + (pow(Q1, 3) + 3 * Q1 * pow(Q2, 2)) * P1 * pow(P2, 2) -
             im(3) * pow(Q2, 2) * pow(P2, 2) - im(3) * Q1 * Q2 * P1 * P2 - Q2 * P2;
    case 4:
      return (pow(Q2, 4) - pow(Q1, 4)) * (pow(P2, 4) - pow(P1, 2) * pow(P2, 2)) +
             4 * (pow(Q1, 3) * Q2 + Q1 * pow(Q2, 3)) * P1 * pow(P2, 3) -
             im(6) * (pow(Q2, 3) + pow(Q1, 2) * Q2) * pow(P2, 3) -
             im(6) * (pow(Q1, 3) + Q1 * pow(Q2, 2)) * P1 * pow(P2, 2) - 4 * (pow(Q1, 2) + pow(Q2, 2)) * pow(P2, 2) +
             4 * C * C;
    default:
      return {};
  }
}

WeylOperator scaled(long long k, const WeylOperator& x) { return Poly(k) * x; }

}  // namespace

HamiltonianSpec HamiltonianSpec::symbolic(int order) {
  HamiltonianSpec s;
  s.order = order;
  for (int k = 1; k <= order; ++k) s.params.push_back(g(k));
  return s;
}

HamiltonianSpec HamiltonianSpec::numeric(const std::vector<GaussianRational>& gammas) {
  HamiltonianSpec s;
  s.order = static_cast<int>(gammas.size());
  for (const auto& v : gammas) s.params.emplace_back(v);
  return s;
}

Poly HamiltonianSpec::gamma(int k) const {
  if (k < 1 || k > order || k > static_cast<int>(params.size())) return {};
  return params[static_cast<std::size_t>(k - 1)];
}

bool HamiltonianSpec::is_numeric() const {
  return std::all_of(params.begin(), params.end(), [](const Poly& p) { return p.is_constant(); });
}

std::vector<GaussianRational> HamiltonianSpec::numeric_values() const {
  std::vector<GaussianRational> out;
  for (const auto& p : params) {
    if (!p.is_constant()) throw std::invalid_argument("parameter " + p.to_string() + " is not numeric");
    out.push_back(p.constant_term());
  }
  return out;
}

void HamiltonianSpec::validate() const {
  if (order < 1) throw std::invalid_argument("order N must be at least 1, got " + std::to_string(order));
  if (order > kMaxGammas) throw std::invalid_argument("order N is limited to " + std::to_string(kMaxGammas));
  if (static_cast<int>(params.size()) != order)
    throw std::invalid_argument("expected " + std::to_string(order) + " parameters, got " +
                                std::to_string(params.size()));
  if (is_numeric() && params.back().is_zero())
    throw std::invalid_argument("gamma_" + std::to_string(order) + " is zero; reduce the order instead");
}

WeylOperator q_dot_p() { return Q1 * P1 + Q2 * P2; }

WeylOperator momentum_squared() { return P1 * P1 + P2 * P2; }

WeylOperator build_hamiltonian(const HamiltonianSpec& spec) {
  spec.validate();
  WeylOperator h = momentum_squared();
  const WeylOperator qp = q_dot_p();
  WeylOperator power = WeylOperator::identity();
  for (int k = 1; k <= spec.order; ++k) {
    power = power * qp;
    h += spec.gamma(k) * power;
  }
  return h;
}

WeylOperator build_angular_momentum() { return Q1 * P2 - Q2 * P1; }

WeylOperator specialize(const WeylOperator& x, const HamiltonianSpec& spec) {
  WeylOperator out;
  for (const auto& [m, p] : x.terms()) {
    Poly c = p;
    for (int k = 1; k <= kMaxGammas; ++k)
      if (c.depends_on(gamma_var(k))) c = c.substitute(gamma_var(k), spec.gamma(k));
    out.add_term(m, c);
  }
  return out;
}

SymmetryPair explicit_symmetries(const HamiltonianSpec& spec) {
  const int N = spec.order;
  if (N < 2 || N > 5) throw std::invalid_argument("explicit symmetries are available for N = 2..5, got " + std::to_string(N));
  SymmetryPair pair;
  pair.order = N;
  pair.Iprime = P1 * P1;
  for (int k = 1; k <= N; ++k) pair.Iprime += g(k) * iprime_part(k);
  if (N <= 4) {
    pair.I = P2 * P2;
    for (int k = 1; k <= N; ++k) pair.I += g(k) * i_part(k);
  } else {
    const WeylOperator C2 = pow(build_angular_momentum(), 2);
    pair.I = build_hamiltonian(HamiltonianSpec::symbolic(5)) - pair.Iprime + g(4) * (scaled(4, C2) - C2 * C2);
  }
  bool symbolic = true;
  for (int k = 1; k <= N; ++k) symbolic = symbolic && spec.gamma(k) == g(k);
  if (!symbolic) {
    pair.I = specialize(pair.I, spec);
    pair.Iprime = specialize(pair.Iprime, spec);
  }
  return pair;
}

AnsatzSolutionSpace solve_symmetry_ansatz(const HamiltonianSpec& spec, Leading leading) {
  spec.validate();
  const int N = spec.order;
  const WeylOperator p2 = momentum_squared();
  const WeylOperator lead = leading == Leading::p1_squared ? P1 * P1 : P2 * P2;

  // Unknowns: grade-0 monomials q^(a,b) p^(c,d) with 1 <= a+b = c+d <= N, largest first.
  std::vector<NormalMonomial> monos;
  for (int j = 1; j <= N; ++j)
    for (int a = 0; a <= j; ++a)
      for (int c = 0; c <= j; ++c)
        monos.push_back({std::uint8_t(a), std::uint8_t(j - a), std::uint8_t(c), std::uint8_t(j - c)});
  std::sort(monos.begin(), monos.end(), std::greater<>());

  // Grade-0 operators commute with q.p, so [lead + X, H] = 0 reduces to
  // [X, p^2] = sum_k gamma_k [(q.p)^k, lead], a gamma-free system with N right-hand sides.
  std::vector<WeylOperator> columns;
  for (const auto& m : monos) columns.push_back(commutator(WeylOperator::monomial(m), p2));
  std::vector<WeylOperator> rhs;
  WeylOperator power = WeylOperator::identity();
  const WeylOperator qp = q_dot_p();
  for (int k = 1; k <= N; ++k) {
    power = power * qp;
    rhs.push_back(commutator(power, lead));
  }

  std::map<NormalMonomial, std::size_t> row_of;
  auto index_rows = [&](const WeylOperator& x) {
    for (const auto& [m, p] : x.terms()) row_of.try_emplace(m, row_of.size());
  };
  for (const auto& c : columns) index_rows(c);
  for (const auto& r : rhs) index_rows(r);

  const std::size_t n_unknowns = monos.size();
  DenseMatrix<GaussianRational> system(row_of.size(), n_unknowns + rhs.size());
  for (std::size_t j = 0; j < n_unknowns; ++j)
    for (const auto& [m, p] : columns[j].terms()) system(row_of.at(m), j) = p.constant_term();
  for (std::size_t k = 0; k < rhs.size(); ++k)
    for (const auto& [m, p] : rhs[k].terms()) system(row_of.at(m), n_unknowns + k) = p.constant_term();

  const auto pivots = rref(system, n_unknowns);
  for (std::size_t r = pivots.size(); r < system.rows(); ++r)
    for (std::size_t k = 0; k < rhs.size(); ++k)
      if (!system(r, n_unknowns + k).is_zero())
        throw AnsatzInconsistent(static_cast<int>(k + 1), "symmetry ansatz has no solution for the gamma_" +
                                                              std::to_string(k + 1) + " component at N = " +
                                                              std::to_string(N));

  // Homogeneous solutions, re-reduced so each has its pivot at its largest monomial.
  DenseMatrix<GaussianRational> homogeneous(0, n_unknowns);
  {
    DenseMatrix<GaussianRational> m(system.rows(), n_unknowns);
    for (std::size_t r = 0; r < system.rows(); ++r)
      for (std::size_t c = 0; c < n_unknowns; ++c) m(r, c) = system(r, c);
    const auto kernel = nullspace(m);
    homogeneous = DenseMatrix<GaussianRational>(kernel.size(), n_unknowns);
    for (std::size_t r = 0; r < kernel.size(); ++r)
      for (std::size_t c = 0; c < n_unknowns; ++c) homogeneous(r, c) = kernel[r][c];
  }
  const auto kernel_pivots = rref(homogeneous, n_unknowns);

  AnsatzSolutionSpace space;
  space.leading = leading;
  space.unknowns = n_unknowns;
  space.particular = lead;
  for (std::size_t k = 0; k < rhs.size(); ++k) {
    std::vector<GaussianRational> x(n_unknowns);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = system(r, n_unknowns + k);
    for (std::size_t r = 0; r < kernel_pivots.size(); ++r) {
      const GaussianRational f = x[kernel_pivots[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < n_unknowns; ++c) x[c] -= f * homogeneous(r, c);
    }
    WeylOperator xk;
    for (std::size_t c = 0; c < n_unknowns; ++c) xk.add_term(monos[c], Poly(x[c]));
    space.particular += spec.gamma(static_cast<int>(k + 1)) * xk;
  }
  for (std::size_t r = 0; r < kernel_pivots.size(); ++r) {
    WeylOperator b;
    for (std::size_t c = 0; c < n_unknowns; ++c) b.add_term(monos[c], Poly(homogeneous(r, c)));
    space.homogeneous_basis.push_back(std::move(b));
  }
  return space;
}

bool in_solution_space(const AnsatzSolutionSpace& space, const WeylOperator& candidate) {
  WeylOperator d = candidate - space.particular;
  for (const auto& b : space.homogeneous_basis) {
    const Poly c = d.coefficient(b.terms().begin()->first);
    if (!c.is_zero()) d -= c * b;
  }
  return d.is_zero();
}

WeylOperator dependence_residual(const HamiltonianSpec& spec, const SymmetryPair& pair) {
  WeylOperator r = build_hamiltonian(spec) - pair.I - pair.Iprime;
  if (spec.order >= 4) {
    const WeylOperator C2 = pow(build_angular_momentum(), 2);
    r += spec.gamma(4) * (scaled(4, C2) - C2 * C2);
  }
  return r;
}

}  // namespace zernike
