#include <map>
#include <random>
#include <utility>

#include "doctest.h"
#include "zernike/weyl.hpp"

using namespace zernike;

namespace {

const GaussianRational I = GaussianRational::i();

WeylOperator q1() { return WeylOperator::q1(); }
WeylOperator q2() { return WeylOperator::q2(); }
WeylOperator p1() { return WeylOperator::p1(); }
WeylOperator p2() { return WeylOperator::p2(); }
WeylOperator id() { return WeylOperator::identity(); }
WeylOperator mono(int a, int b, int c, int d, GaussianRational k = 1) {
  return WeylOperator::monomial({std::uint8_t(a), std::uint8_t(b), std::uint8_t(c), std::uint8_t(d)}, Poly(k));
}
Poly g(int k) { return Poly::var(gamma_var(k)); }

// Independent check: the differential realization q_i -> multiply, p_i -> -i d/dq_i
// acting on polynomials in q1, q2 (map from (a, b) to coefficient).
using Fn = std::map<std::pair<int, int>, GaussianRational>;

Fn act(const WeylOperator& op, const Fn& f) {
  Fn out;
  for (const auto& [m, coeff] : op.terms()) {
    const GaussianRational c = coeff.constant_term();
    for (const auto& [ab, v] : f) {
      int a = ab.first, b = ab.second;
      if (a < m.c || b < m.d) continue;
      GaussianRational w = v * c;
      for (int j = 0; j < m.c; ++j) w *= GaussianRational(a - j);
      for (int j = 0; j < m.d; ++j) w *= GaussianRational(b - j);
      w = w.times_i_pow(-(m.c + m.d));
      out[{a - m.c + m.a, b - m.d + m.b}] += w;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

struct RandomOps {
  std::mt19937 rng;
  explicit RandomOps(unsigned seed) : rng(seed) {}

  GaussianRational scalar() {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
  }

  WeylOperator op(unsigned max_degree, bool with_params) {
    std::uniform_int_distribution<int> count(1, 5), e(0, 3), gk(1, 3), coin(0, 1);
    WeylOperator x;
    for (int t = count(rng); t > 0; --t) {
      NormalMonomial m;
      do {
        m = {std::uint8_t(e(rng)), std::uint8_t(e(rng)), std::uint8_t(e(rng)), std::uint8_t(e(rng))};
      } while (m.degree() > max_degree);
      Poly c = scalar();
      if (with_params && coin(rng)) c *= g(gk(rng));
      x.add_term(m, c);
    }
    return x;
  }
};

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6).to_string() == "-1/2");
  CHECK(Rational::parse("-10/4") == Rational(-5, 2));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  // Promotion past 64 bits and back.
  Rational big(1LL << 62);
  Rational sq = big * big;
  CHECK(sq.to_string() == "21267647932558653966460912964485513216");
  CHECK(sq / big == big);
  CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("Gaussian rationals") {
  CHECK(I * I == GaussianRational(-1));
  CHECK(GaussianRational(1) / I == -I);
  CHECK(GaussianRational::parse("(3/7)+(-1)i") == GaussianRational(Rational(3, 7), Rational(-1)));
  CHECK(GaussianRational::parse_friendly("2i") == GaussianRational(Rational(0), Rational(2)));
  CHECK(GaussianRational::parse_friendly("-1") == GaussianRational(-1));
  CHECK(GaussianRational::parse_friendly("3/7i") == GaussianRational(Rational(0), Rational(3, 7)));
  CHECK(GaussianRational::parse_friendly("1/2-3i") == GaussianRational(Rational(1, 2), Rational(-3)));
  CHECK(GaussianRational::parse_friendly("-i") == -I);
  CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), std::domain_error);
}

TEST_CASE("normal_product examples") {
  CHECK(q1() * p1() == mono(1, 0, 1, 0));
  CHECK(p1() * q1() == mono(1, 0, 1, 0) - WeylOperator(Poly(I)));

  const WeylOperator qp = q1() * p1() + q2() * p2();
  const WeylOperator expected =
      mono(2, 0, 2, 0) + mono(1, 1, 1, 1, 2) + mono(0, 2, 0, 2) - WeylOperator(Poly(I)) * (mono(1, 0, 1, 0) + mono(0, 1, 0, 1)) * id();
  CHECK(qp * qp == expected);

  // Oracle: the same product acting on monomials through the differential realization.
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      Fn f;
      f[{a, b}] = GaussianRational(1);
      CHECK(act(qp * qp, f) == act(qp, act(qp, f)));
    }
}

TEST_CASE("commutator examples and CCR") {
  CHECK(commutator(q1(), p1()) == WeylOperator(Poly(I)));
  CHECK(commutator(q1(), q2()).is_zero());
  CHECK(commutator(q1() * p1(), p1() * p1()) == mono(0, 0, 2, 0, GaussianRational(Rational(0), Rational(2))));

  const WeylOperator qs[] = {q1(), q2()};
  const WeylOperator ps[] = {p1(), p2()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CHECK(commutator(qs[i], ps[j]) == (i == j ? WeylOperator(Poly(I)) : WeylOperator()));
      CHECK(commutator(qs[i], qs[j]).is_zero());
      CHECK(commutator(ps[i], ps[j]).is_zero());
    }
}

TEST_CASE("grade_spectrum") {
  CHECK(grade_spectrum(q1() * p2()) == std::set<int>{0});
  CHECK(grade_spectrum(p1() * p1()) == std::set<int>{-2});
  CHECK(grade_spectrum(WeylOperator()).empty());
  const WeylOperator qp = q1() * p1() + q2() * p2();
  const WeylOperator h2 = p1() * p1() + p2() * p2() + g(1) * qp + g(2) * (qp * qp);
  CHECK(grade_spectrum(h2) == std::set<int>{-2, 0});
}

TEST_CASE("substitute_params") {
  const WeylOperator qp = q1() * p1() + q2() * p2();
  CHECK(substitute_params(Poly(I) * g(1) * qp, {{1, GaussianRational(Rational(0), Rational(2))}}) ==
        Poly(GaussianRational(-2)) * qp);
  CHECK(substitute_params(WeylOperator(), {}).is_zero());
  CHECK_THROWS_AS(substitute_params(g(3) * qp, {{1, GaussianRational(1)}}), MissingParameter);
  try {
    (void)substitute_params(g(3) * qp, {});
  } catch (const MissingParameter& e) {
    CHECK(e.index == 3);
    CHECK(std::string(e.what()).find("g3") != std::string::npos);
  }

  // Zernike point gamma1 = -i beta, gamma2 = alpha with beta = -2, alpha = -1.
  const WeylOperator h2 = p1() * p1() + p2() * p2() + g(1) * qp + g(2) * (qp * qp);
  const WeylOperator zk = substitute_params(h2, {{1, GaussianRational(Rational(0), Rational(2))}, {2, GaussianRational(-1)}});
  CHECK(zk == p1() * p1() + p2() * p2() + Poly(GaussianRational(Rational(0), Rational(2))) * qp - qp * qp);
}

TEST_CASE("text serialization") {
  const WeylOperator x = Poly(I) * g(1) * (q1() * p1()) - Poly(GaussianRational(Rational(3, 7))) * p2() + id();
  const std::string text = to_string(x);
  CHECK(text == "(0)+(1)i*g1 * q1^1 q2^0 p1^1 p2^0 + (-3/7)+(0)i * q1^0 q2^0 p1^0 p2^1 + (1)+(0)i * q1^0 q2^0 p1^0 p2^0");
  CHECK(parse_operator(text) == x);
  CHECK(to_string(WeylOperator()) == "0");
  CHECK(parse_operator("0").is_zero());
  CHECK_THROWS_AS(parse_operator("(1)+(0)i * q1^1 p1^0"), std::invalid_argument);

  RandomOps gen(7);
  for (int trial = 0; trial < 50; ++trial) {
    const WeylOperator y = gen.op(6, true);
    const std::string s = to_string(y);
    CHECK(parse_operator(s) == y);
    CHECK(to_string(parse_operator(s)) == s);
  }
}

TEST_CASE("algebraic properties on random operators") {
  RandomOps gen(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const WeylOperator a = gen.op(6, true), b = gen.op(6, true), c = gen.op(6, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * id() == a);
    CHECK(id() * a == a);
    CHECK(commutator(a, b) == -commutator(b, a));
    const WeylOperator jacobi =
        commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) + commutator(c, commutator(a, b));
    CHECK(jacobi.is_zero());
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("grading is additive under the product") {
  RandomOps gen(99);
  for (int trial = 0; trial < 100; ++trial) {
    const WeylOperator x = gen.op(6, false), y = gen.op(6, false);
    for (const auto& [mx, px] : x.terms())
      for (const auto& [my, py] : y.terms()) {
        const auto grades = grade_spectrum(WeylOperator::monomial(mx) * WeylOperator::monomial(my));
        CHECK(grades == std::set<int>{mx.grade() + my.grade()});
      }
  }
}

TEST_CASE("product agrees with the differential realization") {
  RandomOps gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const WeylOperator x = gen.op(5, false), y = gen.op(5, false);
    Fn f;
    f[{3, 2}] = GaussianRational(1);
    f[{1, 4}] = GaussianRational(Rational(2), Rational(1));
    f[{0, 0}] = GaussianRational(5);
    CHECK(act(x * y, f) == act(x, act(y, f)));
  }
}
