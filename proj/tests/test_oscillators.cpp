#include <cmath>
#include <random>

#include "doctest.h"
#include "zernike/oscillators.hpp"
#include "zernike/spectrum.hpp"

using namespace zernike;

namespace {

OscillatorSpec osc(double kappa, double mu = 0, double nu = 0) {
  OscillatorSpec s;
  s.kappa = kappa;
  s.mu = mu;
  s.nu = nu;
  return s;
}

ExactOscillatorSpec exact(Rational kappa, Rational mu = 0, Rational nu = 0, Rational beta = -2) {
  ExactOscillatorSpec s;
  s.kappa = std::move(kappa);
  s.mu = std::move(mu);
  s.nu = std::move(nu);
  s.beta = std::move(beta);
  return s;
}

bool close(double a, double b, double rel = 1e-12) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

Rational random_rational(std::mt19937_64& rng, int range, int den) {
  std::uniform_int_distribution<int> v(-range, range), d(1, den);
  return {v(rng), d(rng)};
}

}  // namespace

TEST_CASE("parameter map") {
  ExactOscillatorSpec zk = exact(1);  // alpha = -1, beta = -2
  const auto g = map_params(zk);
  CHECK(g[0] == GaussianRational(Rational(0), Rational(2)));
  CHECK(g[1] == GaussianRational(-1));
  CHECK(map_params(exact(0, Rational(3, 50)))[2] == GaussianRational(Rational(0), Rational(3, 50)));
  CHECK(map_params(exact(0))[3].is_zero());
  CHECK(map_params(osc(0, 0.06))[2] == std::complex<double>(0, 0.06));

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto s = exact(random_rational(rng, 9, 5), random_rational(rng, 9, 5), random_rational(rng, 9, 5),
                         random_rational(rng, 9, 5));
    const auto back = unmap_params(map_params(s));
    CHECK(back.kappa == s.kappa);
    CHECK(back.beta == s.beta);
    CHECK(back.mu == s.mu);
    CHECK(back.nu == s.nu);
  }
  CHECK_THROWS_AS(unmap_params({GaussianRational(1)}), std::invalid_argument);
  CHECK(to_hamiltonian(exact(1)).order == 2);
  CHECK(to_hamiltonian(exact(0, 1)).order == 3);
}

TEST_CASE("energies and spacings at the quoted points") {
  CHECK(energy(osc(1), 1.0) == doctest::Approx(3));
  CHECK(energy(osc(-0.25), 4.0) == doctest::Approx(4));
  CHECK(energy(osc(0, 0.06), 3.0) == doctest::Approx(4.38));
  CHECK(energy(exact(0, Rational(3, 50)), Rational(3)) == Rational(219, 50));
  CHECK(spacing(osc(1), 1) == doctest::Approx(5));
  CHECK(spacing(osc(-0.25), 3) == doctest::Approx(0.25));
  for (long long n = 0; n < 20; ++n) CHECK(spacing(exact(0), n) == Rational(2));
  // Zernike: alpha = -1 is kappa = 1, E = n(n+2).
  for (long long n = 0; n < 20; ++n) CHECK(energy(exact(1), Rational(n)) == Rational(n * (n + 2)));
}

TEST_CASE("spacing law equals first differences") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = exact(random_rational(rng, 20, 9), random_rational(rng, 20, 9), random_rational(rng, 20, 9),
                         random_rational(rng, 20, 9));
    for (long long n = 0; n <= 30; ++n)
      CHECK(spacing(s, n) == energy(s, Rational(n + 1)) - energy(s, Rational(n)));
    const auto table = energy_levels(s, 0, 10);
    for (const auto& r : table.rows) CHECK(r.dE == spacing(s, r.n));
  }
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = osc(u(rng), u(rng) * 0.1, u(rng) * 0.01);
    for (long long n = 0; n <= 30; ++n) {
      const double diff = energy(s, double(n + 1)) - energy(s, double(n));
      const double scale = std::abs(energy(s, double(n + 1))) + std::abs(energy(s, double(n)));
      CHECK(std::abs(spacing(s, n) - diff) <= 1e-12 * std::max(1.0, scale));
    }
  }
}

TEST_CASE("bound-state counts of the plotted series") {
  CHECK(n_max(osc(-0.25)) == 4);
  CHECK(n_max(osc(-0.16)) == 6);
  CHECK(n_max(osc(-0.12)) == 8);
  CHECK(n_max(osc(0, 0.06)) == 3);
  CHECK(n_max(osc(0, 0.03)) == 5);
  CHECK(n_max(osc(0, 0.015)) == 7);
  CHECK(n_max(osc(1, 0.2)) == 4);
  CHECK(n_max(osc(1, 0.12)) == 6);
  CHECK(n_max(osc(1, 0.1)) == 8);
  CHECK(n_max(osc(1, 0.07)) == 10);
  CHECK(n_max(exact(Rational(-1, 4))) == 4);
  CHECK(n_max(exact(0, Rational(3, 50))) == 3);

  CHECK_FALSE(n_max(osc(0)).has_value());
  CHECK_FALSE(n_max(osc(0.5)).has_value());
  CHECK_FALSE(n_max(osc(0, -0.05)).has_value());
  CHECK_FALSE(n_max(osc(1, -0.05)).has_value());

  CHECK_THROWS_AS(n_max(exact(-2)), NoBoundStates);
  CHECK(n_max(exact(Rational(-199, 100))) == 1);
  CHECK_THROWS_AS(n_max(exact(0, 2)), NoBoundStates);
  CHECK(n_max(exact(0, Rational(199, 100))) == 1);
  CHECK_THROWS_AS(n_max(exact(1, 3)), NoBoundStates);
  CHECK(n_max(exact(1, Rational(299, 100))) == 1);
}

TEST_CASE("n_max is maximal") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(1, 199);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = exact(-Rational(num(rng), 100), trial % 2 ? Rational(num(rng), 1000) : Rational(0));
    if (energy(s, Rational(1)).sign() <= 0) {
      CHECK_THROWS_AS(n_max(s), NoBoundStates);
      continue;
    }
    const auto top = n_max(s);
    REQUIRE(top.has_value());
    for (long long n = 1; n <= *top; ++n) {
      CHECK(energy(s, Rational(n)).sign() > 0);
      if (n >= 2) CHECK(spacing(s, n - 1).sign() > 0);
    }
    CHECK((energy(s, Rational(*top + 1)).sign() <= 0 || spacing(s, *top).sign() <= 0));
  }
}

TEST_CASE("n_max is monotone in the hyperbolic parameters") {
  long long prev = 1 << 30;
  for (int k = 1; k < 200; ++k) {
    const auto top = *n_max(exact(-Rational(k, 100)));
    CHECK(top <= prev);
    prev = top;
  }
  prev = 1 << 30;
  for (int k = 1; k < 200; ++k) {
    const auto top = *n_max(exact(0, Rational(k, 100)));
    CHECK(top <= prev);
    prev = top;
  }
  prev = 1 << 30;
  for (int k = 1; k < 300; ++k) {
    const auto top = *n_max(exact(1, Rational(k, 100)));
    CHECK(top <= prev);
    prev = top;
  }
}

TEST_CASE("flat limit of curved level tables") {
  const auto flat = energy_levels(osc(0), 1, 10);
  for (double k : {1e-6, -1e-6}) {
    const auto t = energy_levels(osc(k), 1, 10);
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(std::abs(t.rows[i].E - flat.rows[i].E) < 1e-4);
  }
  CHECK(n_max(osc(-1e-6)).value() > 100000);
}

TEST_CASE("admissible intervals") {
  const auto h2 = admissible_interval<Rational>(OscillatorClass::hyperbolic, 2);
  CHECK(h2.lo == Rational(2, 5));
  CHECK(h2.hi == Rational(2, 3));
  const auto h1 = admissible_interval<Rational>(OscillatorClass::hyperbolic, 1);
  CHECK(h1.lo == Rational(2, 3));
  CHECK(h1.hi == Rational(2));
  const auto f1 = admissible_interval<Rational>(OscillatorClass::flat_cubic, 1);
  CHECK(f1.lo == Rational(2, 7));
  CHECK(f1.hi == Rational(2));
  const auto s1 = admissible_interval<Rational>(OscillatorClass::spherical_cubic, 1, Rational(1));
  CHECK(s1.lo == Rational(5, 7));
  CHECK(s1.hi == Rational(3));
  CHECK_THROWS_AS(admissible_interval<Rational>(OscillatorClass::spherical_cubic, 1, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(admissible_interval<Rational>(OscillatorClass::flat_cubic, 0), std::invalid_argument);

  // Every grid point inside the interval for m gives back m.
  for (long long m = 1; m <= 10; ++m) {
    for (const Rational& kappa : {Rational(1, 2), Rational(1), Rational(2)}) {
      for (auto cls : {OscillatorClass::hyperbolic, OscillatorClass::flat_cubic, OscillatorClass::spherical_cubic}) {
        const auto iv = admissible_interval<Rational>(cls, m, kappa);
        for (long long j = 0; j <= 100; ++j) {
          const Rational p = iv.lo + (iv.hi - iv.lo) * Rational(j, 101);
          REQUIRE(iv.contains(p));
          ExactOscillatorSpec s;
          if (cls == OscillatorClass::hyperbolic) s.kappa = -p;
          if (cls == OscillatorClass::flat_cubic) s.mu = p;
          if (cls == OscillatorClass::spherical_cubic) {
            s.kappa = kappa;
            s.mu = p;
          }
          CHECK(n_max(s) == m);
        }
      }
    }
  }
}

TEST_CASE("structure function positivity") {
  CHECK(phi_positivity(osc(-0.25), 4).all_positive);
  CHECK(phi_positivity(exact(Rational(-1, 4)), 4).all_positive);
  CHECK(phi_positivity(osc(0.5), 10).all_positive);
  CHECK_FALSE(phi_positivity(exact(Rational(-1, 4)), 9).all_positive);
  const auto flat = exact(0);
  for (long long n = 1; n <= 12; ++n)
    for (long long b = 1; b <= n; ++b) CHECK(structure_value(flat, b, n) == Rational(4 * b * (n + 1 - b)));
  const auto sphere = exact(Rational(1, 3));
  for (long long n = 1; n <= 12; ++n)
    for (long long b = 1; b <= n; ++b)
      CHECK(structure_value(sphere, b, n) == Rational(4 * b * (n + 1 - b)) * (Rational(1) + Rational(1, 3) * Rational(b - 1)) *
                                                (Rational(1) + Rational(1, 3) * Rational(n - b)));
  const auto report = phi_positivity(exact(0), 6);
  CHECK(report.checked == 21);
  CHECK(report.min_value == Rational(4));
}

TEST_CASE("structure values agree with the spectrum module") {
  const auto family = solve_constraints_symbolic(HamiltonianSpec::symbolic(4));
  const SpectrumSolution* one = nullptr;
  for (const auto& s : family)
    if (s.type == SolutionType::I) one = &s;
  REQUIRE(one);
  const auto phi = one->phi_product();
  REQUIRE(phi.is_rational());
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = exact(random_rational(rng, 5, 7), random_rational(rng, 5, 7), random_rational(rng, 5, 7),
                         random_rational(rng, 5, 7));
    const auto g = map_params(s);
    std::map<Var, GaussianRational> at;
    for (int k = 1; k <= 4; ++k) at[gamma_var(k)] = g[static_cast<std::size_t>(k - 1)];
    for (long long n = 1; n <= 6; ++n) {
      at[Var::n] = GaussianRational(n);
      CHECK(one->E->x.evaluate_exact(at) == GaussianRational(energy(s, Rational(n))));
      for (long long b = 1; b <= n; ++b) {
        at[Var::B] = GaussianRational(b);
        CHECK(phi.x.evaluate_exact(at) == GaussianRational(structure_value(s, b, n)));
      }
    }
  }
}

TEST_CASE("perturbation labels") {
  const auto c = classify(osc(-0.1, 0.2, -0.3));
  CHECK(c.curvature == Label::hyperbolic);
  CHECK(c.cubic == Label::hyperbolic);
  CHECK(c.quartic == Label::spherical);
  const auto d = classify(exact(1, Rational(-1, 10)));
  CHECK(d.curvature == Label::spherical);
  CHECK(d.cubic == Label::spherical);
  CHECK(d.quartic == Label::none);
}

TEST_CASE("level tables") {
  const auto t = energy_levels(exact(Rational(-1, 4)), 1, 6);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[3].bound);
  CHECK_FALSE(t.rows[4].bound);
  CHECK(t.rows[3].E == Rational(4));
  const auto none = energy_levels(exact(-3), 1, 2);
  CHECK_FALSE(none.rows[0].bound);
  CHECK_THROWS_AS(energy_levels(exact(0), 3, 2), std::invalid_argument);
}

TEST_CASE("figure data") {
  const auto ends = [](int id) {
    std::map<std::string, long long> last;
    for (const auto& r : figure_data(id)) last[r.series] = r.n;
    return last;
  };
  auto f1 = figure_data(1);
  CHECK(f1.size() == 40);
  CHECK(f1[9].series == "kappa=0.5");
  CHECK(f1[9].n == 10);
  CHECK(close(f1[9].E, 70));
  const auto e2 = ends(2);
  CHECK(e2.at("kappa=-0.25") == 4);
  CHECK(e2.at("kappa=-0.16") == 6);
  CHECK(e2.at("kappa=-0.12") == 8);
  CHECK(e2.at("euclidean") == 10);
  const auto e3 = ends(3);
  CHECK(e3.at("mu=-0.05") == 10);
  const auto e4 = ends(4);
  CHECK(e4.at("mu=0.06") == 3);
  CHECK(e4.at("mu=0.03") == 5);
  CHECK(e4.at("mu=0.015") == 7);
  const auto e5 = ends(5);
  CHECK(e5.size() == 4);
  CHECK(e5.at("mu=0.2") == 4);
  CHECK(e5.at("mu=0.07") == 10);

  for (int id = 1; id <= 5; ++id)
    for (const auto& s : figure_series(id))
      for (const auto& r : figure_data(id))
        if (r.series == s.label) {
          const double n = static_cast<double>(r.n);
          CHECK(close(r.E, 2 * n + s.spec.kappa * n * n - s.spec.mu * n * n * n));
        }
  CHECK(figure_csv(figure_data(2)).rfind("series,n,E\nkappa=-0.25,1,1.75\n", 0) == 0);
  CHECK_THROWS_AS(figure_data(6), std::invalid_argument);
}
