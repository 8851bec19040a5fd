#include "zernike/higgs.hpp"

#include <random>

#include "zernike/linalg.hpp"

namespace zernike {

namespace {

// sum_k c^k g_k X^k with X a polynomial in K.
Poly power_series(const HamiltonianSpec& spec, const GaussianRational& c, const Poly& x) {
  Poly sum, xk(1);
  GaussianRational ck(1);
  for (int k = 1; k <= spec.order; ++k) {
    xk *= x;
    ck *= c;
    sum += spec.gamma(k) * ck * xk;
  }
  return sum;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(1, 9), den(1, 9), sign(0, 1);
  return Rational(sign(rng) ? num(rng) : -num(rng), den(rng));
}

// Rank of the Jacobian, at a random rational point, of the top-degree commutative
// symbols of the given constant-coefficient operators.
int symbol_jacobian_rank(const std::vector<WeylOperator>& ops, std::mt19937_64& rng) {
  std::array<Rational, 4> x;
  for (auto& v : x) v = random_rational(rng);
  DenseMatrix<GaussianRational> jac(ops.size(), 4);
  for (std::size_t r = 0; r < ops.size(); ++r) {
    const unsigned top = ops[r].max_degree();
    for (const auto& [m, p] : ops[r].terms()) {
      if (m.degree() != top) continue;
      const std::array<unsigned, 4> e = {m.a, m.b, m.c, m.d};
      for (int v = 0; v < 4; ++v) {
        if (e[v] == 0) continue;
        GaussianRational d = p.constant_term() * GaussianRational(Rational(static_cast<long long>(e[v])));
        for (int w = 0; w < 4; ++w) d *= pow(GaussianRational(x[w]), e[w] - (w == v ? 1 : 0));
        jac(r, static_cast<std::size_t>(v)) += d;
      }
    }
  }
  return static_cast<int>(rank(jac));
}

}  // namespace

KTriple build_k_triple(const SymmetryPair& pair) {
  KTriple t;
  t.K1 = build_angular_momentum();
  t.K2 = Poly(GaussianRational(Rational(1, 2))) * (pair.Iprime - pair.I);
  t.K3 = commutator(t.K1, t.K2);
  return t;
}

Poly ladder_shift(const HamiltonianSpec& spec) {
  Poly c = Poly(GaussianRational(Rational(1, 2))) * spec.gamma(2);
  if (spec.order >= 4) c -= Poly(2) * spec.gamma(4);
  return c;
}

LadderTriple build_ladder(const HamiltonianSpec& spec, const KTriple& triple) {
  if (spec.order < 2 || spec.order > 5)
    throw std::invalid_argument("ladder operators are defined for N = 2..5, got " + std::to_string(spec.order));
  const Poly half(GaussianRational(Rational(1, 2)));
  const WeylOperator shift = ladder_shift(spec) * (triple.K1 * triple.K1);
  LadderTriple l;
  l.K = half * triple.K1;
  l.Kplus = triple.K2 + half * triple.K3 - shift;
  l.Kminus = triple.K2 - half * triple.K3 - shift;
  return l;
}

StructureFunctionPair structure_function(const HamiltonianSpec& spec) {
  const Poly H = Poly::var(Var::H), K = Poly::var(Var::K);
  const GaussianRational two_i(Rational(0), Rational(2));
  StructureFunctionPair s;
  s.phi1 = Poly(GaussianRational(Rational(1, 4))) * (H - power_series(spec, two_i, K));
  s.phi2 = H - power_series(spec, -two_i, K - Poly(1));
  return s;
}

Poly shift_k(const Poly& p, const GaussianRational& shift) {
  return p.substitute(Var::K, Poly::var(Var::K) + Poly(shift));
}

WeylOperator evaluate_hk(const Poly& p, const WeylOperator& h, const WeylOperator& k) {
  std::map<std::pair<unsigned, unsigned>, std::vector<Poly::Term>> grouped;
  for (const auto& t : p.terms()) {
    Poly::Term rest = t;
    rest.exps[Var::H] = 0;
    rest.exps[Var::K] = 0;
    grouped[{t.exps[Var::H], t.exps[Var::K]}].push_back(rest);
  }
  std::vector<WeylOperator> hp{WeylOperator::identity()}, kp{WeylOperator::identity()};
  WeylOperator out;
  for (auto& [ab, terms] : grouped) {
    while (hp.size() <= ab.first) hp.push_back(hp.back() * h);
    while (kp.size() <= ab.second) kp.push_back(kp.back() * k);
    out += Poly::from_terms(std::move(terms)) * (hp[ab.first] * kp[ab.second]);
  }
  return out;
}

bool LadderAlgebraReport::symmetries_ok() const {
  return residual_I.is_zero() && residual_Iprime.is_zero() && residual_C.is_zero() && dependence.is_zero();
}

bool LadderAlgebraReport::structure_ok() const {
  return residual_Kplus.is_zero() && residual_Kminus.is_zero() && factorization.is_zero() && lowering.is_zero() &&
         factors_commute.is_zero();
}

LadderAlgebraReport verify_ladder_algebra(const HamiltonianSpec& spec, const SymmetryPair& pair, std::uint64_t seed) {
  LadderAlgebraReport r;
  r.order = spec.order;
  const WeylOperator H = build_hamiltonian(spec);
  const WeylOperator C = build_angular_momentum();
  r.residual_I = commutator(pair.I, H);
  r.residual_Iprime = commutator(pair.Iprime, H);
  r.residual_C = commutator(C, H);
  r.dependence = dependence_residual(spec, pair);

  std::mt19937_64 rng(seed);
  HamiltonianSpec sample = spec;
  if (!spec.is_numeric()) {
    sample.params.clear();
    for (int k = 1; k <= spec.order; ++k) sample.params.emplace_back(GaussianRational(random_rational(rng), random_rational(rng)));
  }
  const WeylOperator Hs = specialize(H, sample);
  r.rank_with_I = symbol_jacobian_rank({Hs, C, specialize(pair.I, sample)}, rng);
  r.rank_with_Iprime = symbol_jacobian_rank({Hs, C, specialize(pair.Iprime, sample)}, rng);

  const KTriple triple = build_k_triple(pair);
  const LadderTriple ladder = build_ladder(spec, triple);
  r.residual_Kplus = commutator(ladder.K, ladder.Kplus) - ladder.Kplus;
  r.residual_Kminus = commutator(ladder.K, ladder.Kminus) + ladder.Kminus;

  const StructureFunctionPair phi = structure_function(spec);
  const Poly product = phi.product();
  const WeylOperator phi1 = evaluate_hk(phi.phi1, H, ladder.K);
  const WeylOperator phi2 = evaluate_hk(phi.phi2, H, ladder.K);
  r.factorization = ladder.Kplus * ladder.Kminus - phi1 * phi2;
  r.lowering = ladder.Kminus * ladder.Kplus - evaluate_hk(shift_k(product, 1), H, ladder.K);
  r.factors_commute = commutator(phi1, phi2);
  r.algebra_order = (shift_k(product, 1) - product).degree_in(Var::K);
  return r;
}

LadderAlgebraReport verify_ladder_algebra(int N, std::uint64_t seed) {
  const auto spec = HamiltonianSpec::symbolic(N);
  return verify_ladder_algebra(spec, explicit_symmetries(spec), seed);
}

}  // namespace zernike
