#include <random>

#include "doctest.h"
#include "zernike/ratfun.hpp"

using namespace zernike;

namespace {

Poly random_poly(std::mt19937_64& rng, unsigned max_terms) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 2), terms(1, static_cast<int>(max_terms));
  const Var vars[] = {Var::g1, Var::g2, Var::n};
  std::vector<Poly::Term> t;
  for (int k = terms(rng); k > 0; --k) {
    Exponents e;
    for (Var v : vars) e[v] = static_cast<std::uint8_t>(deg(rng));
    t.push_back({e, GaussianRational(Rational(coef(rng)), Rational(coef(rng)))});
  }
  return Poly::from_terms(std::move(t));
}

Poly nonzero_poly(std::mt19937_64& rng, unsigned max_terms) {
  Poly p;
  while (p.is_zero()) p = random_poly(rng, max_terms);
  return p;
}

std::map<Var, GaussianRational> random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> v(-9, 9), d(1, 7);
  return {{Var::g1, GaussianRational(Rational(v(rng), d(rng)), Rational(v(rng), d(rng)))},
          {Var::g2, GaussianRational(Rational(v(rng), d(rng)))},
          {Var::n, GaussianRational(Rational(v(rng)))}};
}

}  // namespace

TEST_CASE("exact square roots in Q(i)") {
  CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2)).has_value());
  CHECK_FALSE(exact_sqrt(Rational(-4)).has_value());
  CHECK(*exact_sqrt(GaussianRational(-256)) == GaussianRational(Rational(0), Rational(16)));
  // (1 + 2i)^2 = -3 + 4i
  CHECK(*exact_sqrt(GaussianRational(Rational(-3), Rational(4))) == GaussianRational(Rational(1), Rational(2)));
  CHECK(*exact_sqrt(GaussianRational(Rational(0), Rational(2))) == GaussianRational(Rational(1), Rational(1)));
  CHECK_FALSE(exact_sqrt(GaussianRational(Rational(0), Rational(1))).has_value());
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(-30, 30), d(1, 12);
  for (int trial = 0; trial < 200; ++trial) {
    const GaussianRational z(Rational(v(rng), d(rng)), Rational(v(rng), d(rng)));
    const auto s = exact_sqrt(z * z);
    REQUIRE(s.has_value());
    CHECK((*s == z || *s == -z));
  }
}

TEST_CASE("rational function normalization") {
  const Poly g2 = Poly::var(Var::g2), n = Poly::var(Var::n);
  const auto r = RationalFunction::quotient(Poly(3), Poly(6) * g2 * g2 * (n + Poly(1)));
  REQUIRE(r.denominator().size() == 2);
  CHECK(r.denominator()[0] == RationalFunction::Factor{g2, 2});
  CHECK(r.denominator()[1] == RationalFunction::Factor{n + Poly(1), 1});
  CHECK(r.numerator() == Poly(GaussianRational(Rational(1, 2))));
  CHECK_FALSE(r.defined_when_zero({Var::g2}));
  CHECK(r.defined_when_zero({Var::g1}));
  CHECK(RationalFunction::quotient(g2 * (n + Poly(1)), Poly(2) * g2).is_polynomial());
  CHECK_THROWS_AS(RationalFunction::quotient(Poly(1), Poly()), std::domain_error);
  CHECK_FALSE(r.substitute({{Var::n, GaussianRational(-1)}}).has_value());
}

TEST_CASE("rational function field laws on random elements") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = RationalFunction::quotient(random_poly(rng, 3), nonzero_poly(rng, 2));
    const auto b = RationalFunction::quotient(random_poly(rng, 3), nonzero_poly(rng, 2));
    const auto c = RationalFunction::quotient(nonzero_poly(rng, 3), nonzero_poly(rng, 2));
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * c) / c == a);
    CHECK(a - a == RationalFunction());
    const auto point = random_point(rng);
    const auto va = a.evaluate_exact(point), vb = b.evaluate_exact(point);
    const auto vs = (a + b).evaluate_exact(point), vp = (a * b).evaluate_exact(point);
    if (va && vb && vs && vp) {
      CHECK(*vs == *va + *vb);
      CHECK(*vp == *va * *vb);
    }
  }
}

TEST_CASE("surd arithmetic") {
  const Poly g1 = Poly::var(Var::g1), n = Poly::var(Var::n);
  const Surd s(RationalFunction(n), RationalFunction::quotient(Poly(1), g1), g1 + n);
  // (x + y r)(x - y r) = x^2 - y^2 D
  const Surd norm = s * s.conjugate();
  CHECK(norm.is_rational());
  CHECK(norm.x == RationalFunction(n * n) - RationalFunction::quotient(g1 + n, g1 * g1));
  CHECK(Surd(RationalFunction(Poly(2)), RationalFunction(Poly(1)), Poly(9)).is_rational());
  CHECK(Surd(RationalFunction(Poly(2)), RationalFunction(Poly(1)), Poly(9)).x == RationalFunction(Poly(5)));
  const Surd other(RationalFunction(), RationalFunction(Poly(1)), n);
  CHECK_THROWS_AS(s + other, std::logic_error);

  const std::map<Var, std::complex<double>> point{{Var::g1, {2.0, 0.0}}, {Var::n, {3.0, 0.0}}};
  CHECK(std::abs(s.evaluate(point) - std::complex<double>(3.0 + std::sqrt(5.0) / 2, 0)) < 1e-14);
  CHECK_FALSE(s.defined_when_zero({Var::g1}));
}

TEST_CASE("quadratic roots satisfy their polynomial") {
  std::mt19937_64 rng(5);
  const Poly t = Poly::var(Var::u);
  for (int trial = 0; trial < 40; ++trial) {
    const Poly c0 = random_poly(rng, 3), c1 = random_poly(rng, 3), c2 = nonzero_poly(rng, 2);
    const Poly p = c2 * t * t + c1 * t + c0;
    const auto [r1, r2] = quadratic_roots(c0, c1, c2);
    CHECK(evaluate_at(p, Var::u, r1) == Surd());
    CHECK(evaluate_at(p, Var::u, r2) == Surd());
    CHECK(r1 + r2 == Surd(RationalFunction::quotient(-c1, c2)));
  }
  // Square constant and monomial content leave the radicand.
  const Poly g1 = Poly::var(Var::g1), g3 = Poly::var(Var::g3);
  const auto [a, b] = quadratic_roots(-Poly(4) * g1 * g3 * g3 * g3, Poly(), g3);
  CHECK(a.radicand == g1);
  CHECK((a.y == RationalFunction(Poly(2) * g3) || a.y == RationalFunction(Poly(-2) * g3)));
  CHECK(b == a.conjugate());
}
