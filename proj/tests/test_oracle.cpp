#include <random>

#include "doctest.h"
#include "zernike/oracle.hpp"

using namespace zernike;

namespace {

GaussianRational gi(long long re, long long im) { return {Rational(re), Rational(im)}; }

std::vector<GaussianRational> random_params(std::mt19937_64& rng, int order, bool reality) {
  std::uniform_int_distribution<int> v(-30, 30), d(1, 8);
  std::vector<GaussianRational> g;
  for (int k = 1; k <= order; ++k) {
    const Rational a(v(rng), d(rng)), b(v(rng), d(rng));
    if (!reality)
      g.emplace_back(a, b);
    else
      g.push_back(k % 2 == 0 ? GaussianRational(a) : GaussianRational(Rational(0), a));
  }
  if (g.back().is_zero()) g.back() = GaussianRational(1);
  return g;
}

std::vector<GaussianRational> diagonal_of(const GradedMatrix& m) {
  std::vector<GaussianRational> d;
  for (unsigned k = 0; k <= m.max_degree; ++k) d.push_back(*m.diagonal_scalar(k));
  return d;
}

GaussianRational expected_diagonal(const std::vector<GaussianRational>& g, long long m) {
  GaussianRational d;
  for (std::size_t k = 0; k < g.size(); ++k) {
    GaussianRational t = g[k];
    for (std::size_t j = 0; j <= k; ++j) t *= gi(0, -m);
    d += t;
  }
  return d;
}

}  // namespace

TEST_CASE("pure Laplacian when all couplings vanish") {
  const auto m = build_matrix(HamiltonianSpec::numeric({0, 0}), 5);
  CHECK(m.dimension() == 21);
  for (auto d : diagonal_of(m)) CHECK(d.is_zero());
  CHECK(m.lowering[2][0][0] == GaussianRational(-2));  // -lap q2^2
  CHECK(m.lowering[2][0][2] == GaussianRational(-2));  // -lap q1^2
  CHECK(m.lowering[2][0][1].is_zero());
  const auto r = oracle_spectrum(m);
  const auto distinct = r.distinct_eigenvalues();
  REQUIRE(distinct.size() == 1);
  CHECK(distinct[0].first.is_zero());
  CHECK(distinct[0].second == 21);
  CHECK(r.levels[1].eigenvectors.has_value());
  CHECK_FALSE(r.levels[2].eigenvectors.has_value());
  CHECK(r.levels[4].resonant_with == std::vector<unsigned>{2, 0});
}

TEST_CASE("diagonal entries at known points") {
  const auto zern = build_matrix(HamiltonianSpec::numeric({gi(0, 2), -1}), 4);
  CHECK(diagonal_of(zern) == std::vector<GaussianRational>{0, 3, 8, 15, 24});
  const auto lin = build_matrix(HamiltonianSpec::numeric({gi(0, 2)}), 3);
  CHECK(diagonal_of(lin) == std::vector<GaussianRational>{0, 2, 4, 6});
  const auto cubic = build_matrix(HamiltonianSpec::numeric({gi(0, 2), -1, GaussianRational(Rational(0), Rational(1, 10))}), 8);
  // 2m + m^2 - m^3/10, the cubic Type I energy with mu = 1/10.
  for (long long k = 0; k <= 8; ++k)
    CHECK(*cubic.diagonal_scalar(static_cast<unsigned>(k)) == GaussianRational(Rational(20 * k + 10 * k * k - k * k * k, 10)));
}

TEST_CASE("Zernike oracle spectrum") {
  const auto r = oracle_spectrum(build_matrix(HamiltonianSpec::numeric({gi(0, 2), -1}), 6));
  const auto distinct = r.distinct_eigenvalues();
  REQUIRE(distinct.size() == 7);
  for (long long m = 0; m <= 6; ++m) {
    CHECK(distinct[static_cast<std::size_t>(m)].first == GaussianRational(m * (m + 2)));
    CHECK(distinct[static_cast<std::size_t>(m)].second == m + 1);
    CHECK(r.levels[static_cast<std::size_t>(m)].resonant_with.empty());
  }
}

TEST_CASE("closed-form matrix equals the operator acting on monomials") {
  std::mt19937_64 rng(41);
  for (int order = 1; order <= 5; ++order) {
    const WeylOperator h = build_hamiltonian(HamiltonianSpec::symbolic(order));
    for (int trial = 0; trial < 3; ++trial) {
      const auto g = random_params(rng, order, trial == 0);
      const auto a = build_matrix(HamiltonianSpec::numeric(g), 9);
      const auto b = build_matrix_from_operator(h, g, 9);
      CHECK(a.diagonal == b.diagonal);
      CHECK(a.lowering == b.lowering);
    }
  }
  // q1 p2 keeps the degree but is not scalar on it; q1^2 raises it.
  const auto rot = build_matrix_from_operator(WeylOperator::monomial({1, 0, 0, 1}), {}, 3);
  CHECK_FALSE(rot.is_degree_triangular());
  CHECK_THROWS_AS(oracle_spectrum(rot), std::logic_error);
  CHECK_THROWS_AS(build_matrix_from_operator(WeylOperator::monomial({2, 0, 0, 0}), {}, 3), std::logic_error);
  CHECK_THROWS_AS(build_matrix_from_operator(build_hamiltonian(HamiltonianSpec::symbolic(2)), {}, 3),
                  std::invalid_argument);
}

TEST_CASE("structure, degeneracy and eigenvectors at random parameters") {
  std::mt19937_64 rng(7);
  for (int order = 1; order <= 5; ++order) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto g = random_params(rng, order, trial % 2 == 0);
      const auto m = build_matrix(HamiltonianSpec::numeric(g), 8);
      REQUIRE(m.is_degree_triangular());
      const auto op = build_matrix_from_operator(build_hamiltonian(HamiltonianSpec::symbolic(order)), g, 8);
      const auto r = oracle_spectrum(m);
      for (const auto& lv : r.levels) {
        CHECK(lv.multiplicity == lv.degree + 1);
        CHECK(lv.eigenvalue == expected_diagonal(g, lv.degree));
        if (!lv.eigenvectors) {
          CHECK_FALSE(lv.resonant_with.empty());
          continue;
        }
        for (const auto& v : *lv.eigenvectors) {
          for (std::size_t d = 0; d < v.size(); ++d)
            if ((lv.degree - d) % 2 == 1) CHECK(std::all_of(v[d].begin(), v[d].end(), [](auto& x) { return x.is_zero(); }));
          auto hv = op.apply(v);
          for (std::size_t d = 0; d < v.size(); ++d)
            for (std::size_t c = 0; c < v[d].size(); ++c) CHECK(hv[d][c] == lv.eigenvalue * v[d][c]);
        }
      }
    }
  }
}

TEST_CASE("oracle agrees with the Type I formula") {
  const auto sym2 = solve_constraints_symbolic(HamiltonianSpec::symbolic(2));
  const auto type_one = [](const std::vector<SpectrumSolution>& v, SolutionType t) {
    return *std::find_if(v.begin(), v.end(), [t](const auto& s) { return s.type == t; });
  };
  const auto zern = oracle_spectrum(build_matrix(HamiltonianSpec::numeric({gi(0, 2), -1}), 16), false);
  const auto ok = compare_with_formula(zern, type_one(sym2, SolutionType::I));
  CHECK(ok.status == MatchStatus::match);
  CHECK(ok.checked_degrees.size() == 17);

  std::mt19937_64 rng(13);
  const auto sym4 = solve_constraints_symbolic(HamiltonianSpec::symbolic(4));
  for (int trial = 0; trial < 3; ++trial) {
    const auto g = random_params(rng, 4, true);
    const auto r = oracle_spectrum(build_matrix(HamiltonianSpec::numeric(g), 16), false);
    CHECK(compare_with_formula(r, type_one(sym4, SolutionType::I)).status == MatchStatus::match);
    const auto two = compare_with_formula(r, type_one(sym4, SolutionType::II));
    CHECK(two.status == MatchStatus::not_comparable);
    CHECK(two.mismatches.empty());
  }

  // A numeric root at one n.
  const auto spec = generic_parameters(3, 5, 3);
  const auto roots = solve_constraints_numeric(spec, 5);
  const auto r3 = oracle_spectrum(build_matrix(spec, 6), false);
  const auto num = compare_with_formula(r3, type_one(roots, SolutionType::I));
  CHECK(num.status == MatchStatus::match);
  CHECK(num.checked_degrees == std::vector<unsigned>{5});
  CHECK_THROWS_AS(compare_with_formula(zern, type_one(roots, SolutionType::I)), std::invalid_argument);

  // Negative control: a Type I label on the Type II energy. At the Zernike point
  // the two coincide, so use generic couplings.
  SpectrumSolution wrong = type_one(sym2, SolutionType::II);
  wrong.type = SolutionType::I;
  CHECK(compare_with_formula(zern, wrong).status == MatchStatus::match);
  const auto generic = oracle_spectrum(build_matrix(HamiltonianSpec::numeric({gi(1, 3), gi(-2, 1)}), 16), false);
  const auto bad = compare_with_formula(generic, wrong);
  CHECK(bad.status == MatchStatus::mismatch);
  CHECK(bad.mismatches.size() == 17);
}
