#include "zernike/ratfun.hpp"

#include <algorithm>
#include <stdexcept>

namespace zernike {

namespace {

Rational from_mpz_ratio(const mpz_class& p, const mpz_class& q) { return Rational(mpq_class(p, q)); }

// Positive rational c with every real and imaginary coefficient part an integer
// multiple of c and the multiples coprime.
Rational coefficient_content(const Poly& p) {
  mpz_class g = 0, l = 1;
  auto absorb = [&](const Rational& r) {
    if (r.is_zero()) return;
    const mpq_class q = r.to_mpq();
    mpz_class num = abs(q.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  };
  for (const auto& t : p.terms()) {
    absorb(t.coeff.re());
    absorb(t.coeff.im());
  }
  if (g == 0) return Rational(1);
  return from_mpz_ratio(g, l);
}

// Largest t with t^2 | m, found by trial division plus a final square test.
mpz_class square_part(mpz_class m) {
  mpz_class t = 1;
  for (unsigned long p = 2; p < 1000 && m > 1; ++p) {
    const unsigned long pp = p * p;
    while (mpz_divisible_ui_p(m.get_mpz_t(), pp)) {
      m /= pp;
      t *= p;
    }
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
  }
  if (m > 1 && mpz_perfect_square_p(m.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    t *= r;
  }
  return t;
}

Exponents monomial_content(const Poly& p) {
  Exponents e;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (first) {
      e = t.exps;
      first = false;
      continue;
    }
    for (int k = 0; k < kMaxVars; ++k) e.e[k] = std::min(e.e[k], t.exps.e[k]);
  }
  return e;
}

bool positive_direction(const GaussianRational& z) {
  return z.re().sign() > 0 || (z.re().is_zero() && z.im().sign() > 0);
}

std::map<Var, Poly> zero_map(const std::set<Var>& zero) {
  std::map<Var, Poly> m;
  for (Var v : zero) m.emplace(v, Poly());
  return m;
}

Poly substitute_all(Poly p, const std::map<Var, Poly>& values) {
  for (const auto& [v, value] : values) p = p.substitute(v, value);
  return p;
}

}  // namespace

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  const mpq_class v = q.to_mpq();
  if (!mpz_perfect_square_p(v.get_num().get_mpz_t()) || !mpz_perfect_square_p(v.get_den().get_mpz_t()))
    return std::nullopt;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), v.get_num().get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), v.get_den().get_mpz_t());
  return from_mpz_ratio(a, b);
}

std::optional<GaussianRational> exact_sqrt(const GaussianRational& z) {
  if (z.im().is_zero()) {
    if (z.re().sign() >= 0) {
      if (auto r = exact_sqrt(z.re())) return GaussianRational(*r);
      return std::nullopt;
    }
    if (auto r = exact_sqrt(-z.re())) return GaussianRational(Rational(0), *r);
    return std::nullopt;
  }
  const auto modulus = exact_sqrt(z.norm());
  if (!modulus) return std::nullopt;
  const auto x = exact_sqrt((*modulus + z.re()) / Rational(2));
  const auto y = exact_sqrt((*modulus - z.re()) / Rational(2));
  if (!x || !y) return std::nullopt;
  return GaussianRational(*x, z.im().sign() > 0 ? *y : -*y);
}

RationalFunction::RationalFunction(Poly numerator) : num_(std::move(numerator)) {}

RationalFunction RationalFunction::quotient(const Poly& numerator, const Poly& denominator) {
  if (denominator.is_zero()) throw std::domain_error("rational function with zero denominator");
  RationalFunction r(numerator);
  r.add_factor(denominator, 1);
  r.cancel();
  return r;
}

void RationalFunction::add_factor(const Poly& f, unsigned power) {
  if (power == 0) return;
  const GaussianRational lead = f.leading().coeff;
  num_ *= pow(GaussianRational(1) / lead, power);
  if (f.is_constant()) return;
  Poly rest = f * (GaussianRational(1) / lead);
  const Exponents mono = monomial_content(rest);
  if (mono.total() > 0) {
    rest = *rest.divide_exact(Poly::monomial(mono, 1));
    for (int k = 0; k < kMaxVars; ++k)
      if (mono.e[k] > 0) push_factor(Poly::var(static_cast<Var>(k)), power * mono.e[k]);
  }
  if (!rest.is_constant()) push_factor(rest, power);
}

void RationalFunction::push_factor(const Poly& f, unsigned power) {
  for (auto& [g, p] : den_) {
    if (g == f) {
      p += power;
      return;
    }
  }
  den_.emplace_back(f, power);
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto& [f, p] : den_) {
    while (p > 0) {
      auto q = num_.divide_exact(f);
      if (!q) break;
      num_ = std::move(*q);
      --p;
    }
  }
  std::erase_if(den_, [](const Factor& f) { return f.second == 0; });
}

Poly RationalFunction::denominator_product() const {
  Poly d(1);
  for (const auto& [f, p] : den_) d *= pow(f, p);
  return d;
}

bool RationalFunction::depends_on(Var v) const {
  if (num_.depends_on(v)) return true;
  return std::any_of(den_.begin(), den_.end(), [v](const Factor& f) { return f.first.depends_on(v); });
}

bool RationalFunction::defined_when_zero(const std::set<Var>& zero) const {
  const auto values = zero_map(zero);
  return std::none_of(den_.begin(), den_.end(),
                      [&](const Factor& f) { return substitute_all(f.first, values).is_zero(); });
}

std::optional<RationalFunction> RationalFunction::substitute(const std::map<Var, GaussianRational>& values) const {
  RationalFunction r(num_.substitute(values));
  for (const auto& [f, p] : den_) {
    const Poly g = f.substitute(values);
    if (g.is_zero()) return std::nullopt;
    r.add_factor(g, p);
  }
  r.cancel();
  return r;
}

RationalFunction RationalFunction::substitute(Var v, const Poly& value) const {
  RationalFunction r(num_.substitute(v, value));
  for (const auto& [f, p] : den_) {
    const Poly g = f.substitute(v, value);
    if (g.is_zero()) throw std::domain_error("substitution makes a denominator vanish");
    r.add_factor(g, p);
  }
  r.cancel();
  return r;
}

std::optional<GaussianRational> RationalFunction::evaluate_exact(const std::map<Var, GaussianRational>& values) const {
  GaussianRational d(1);
  for (const auto& [f, p] : den_) d *= pow(f.evaluate_exact(values), p);
  if (d.is_zero()) return std::nullopt;
  return num_.evaluate_exact(values) / d;
}

std::complex<double> RationalFunction::evaluate(const std::map<Var, std::complex<double>>& values) const {
  std::complex<double> d = 1;
  for (const auto& [f, p] : den_) d *= std::pow(f.evaluate(values), static_cast<int>(p));
  return num_.evaluate(values) / d;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::vector<Factor> lcm = den_;
  for (const auto& [f, p] : o.den_) {
    auto it = std::find_if(lcm.begin(), lcm.end(), [&](const Factor& g) { return g.first == f; });
    if (it == lcm.end())
      lcm.emplace_back(f, p);
    else
      it->second = std::max(it->second, p);
  }
  auto scaled = [&lcm](const RationalFunction& r) {
    Poly n = r.num_;
    for (const auto& [f, p] : lcm) {
      auto it = std::find_if(r.den_.begin(), r.den_.end(), [&](const Factor& g) { return g.first == f; });
      const unsigned have = it == r.den_.end() ? 0 : it->second;
      if (p > have) n *= pow(f, p - have);
    }
    return n;
  };
  num_ = scaled(*this) + scaled(o);
  den_ = std::move(lcm);
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (const auto& [f, p] : o.den_) add_factor(f, p);
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("rational function division by zero");
  for (const auto& [f, p] : o.den_) num_ *= pow(f, p);
  add_factor(o.num_, 1);
  cancel();
  return *this;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) { return (a - b).is_zero(); }

std::string RationalFunction::to_string() const {
  std::string s = "(" + num_.to_string() + ")";
  if (den_.empty()) return s;
  s += "/(";
  for (std::size_t k = 0; k < den_.size(); ++k) {
    if (k) s += "*";
    s += "(" + den_[k].first.to_string() + ")";
    if (den_[k].second > 1) s += "^" + std::to_string(den_[k].second);
  }
  return s + ")";
}

RationalFunction pow(const RationalFunction& r, unsigned k) {
  RationalFunction out(1);
  for (unsigned j = 0; j < k; ++j) out *= r;
  return out;
}

Surd::Surd(RationalFunction x_, RationalFunction y_, Poly d) : x(std::move(x_)), y(std::move(y_)), radicand(std::move(d)) {
  if (radicand.is_zero()) y = RationalFunction();
  if (!y.is_zero() && radicand.is_constant()) {
    if (auto s = exact_sqrt(radicand.constant_term())) {
      x += y * RationalFunction(Poly(*s));
      y = RationalFunction();
    }
  }
  if (y.is_zero()) radicand = Poly(1);
}

void Surd::adopt_radicand(const Surd& o) {
  if (o.is_rational()) return;
  if (is_rational()) {
    radicand = o.radicand;
    return;
  }
  if (!(radicand == o.radicand)) throw std::logic_error("surds with different radicands");
}

Surd& Surd::operator+=(const Surd& o) {
  adopt_radicand(o);
  x += o.x;
  y += o.y;
  if (y.is_zero()) radicand = Poly(1);
  return *this;
}

Surd& Surd::operator-=(const Surd& o) { return *this += -o; }

Surd& Surd::operator*=(const Surd& o) {
  if (o.is_rational()) {
    x *= o.x;
    y *= o.x;
  } else if (is_rational()) {
    y = x * o.y;
    x *= o.x;
    radicand = o.radicand;
  } else {
    adopt_radicand(o);
    RationalFunction nx = x * o.x + y * o.y * RationalFunction(radicand);
    y = x * o.y + y * o.x;
    x = std::move(nx);
  }
  if (y.is_zero()) radicand = Poly(1);
  return *this;
}

bool operator==(const Surd& a, const Surd& b) {
  if (!(a.x == b.x)) return false;
  if (a.is_rational() || b.is_rational()) return a.is_rational() && b.is_rational();
  return a.radicand == b.radicand && a.y == b.y;
}

bool Surd::defined_when_zero(const std::set<Var>& zero) const {
  return x.defined_when_zero(zero) && y.defined_when_zero(zero);
}

std::optional<Surd> Surd::substitute(const std::map<Var, GaussianRational>& values) const {
  auto nx = x.substitute(values);
  auto ny = y.substitute(values);
  if (!nx || !ny) return std::nullopt;
  return Surd(std::move(*nx), std::move(*ny), radicand.substitute(values));
}

Surd Surd::substitute(Var v, const Poly& value) const {
  return {x.substitute(v, value), y.substitute(v, value), radicand.substitute(v, value)};
}

std::complex<double> Surd::evaluate(const std::map<Var, std::complex<double>>& values) const {
  std::complex<double> r = x.evaluate(values);
  if (!is_rational()) r += y.evaluate(values) * std::sqrt(radicand.evaluate(values));
  return r;
}

std::optional<GaussianRational> Surd::evaluate_exact(const std::map<Var, GaussianRational>& values) const {
  auto vx = x.evaluate_exact(values);
  if (!vx) return std::nullopt;
  if (is_rational()) return vx;
  auto vy = y.evaluate_exact(values);
  if (!vy) return std::nullopt;
  if (vy->is_zero()) return vx;
  auto s = exact_sqrt(radicand.evaluate_exact(values));
  if (!s) return std::nullopt;
  return *vx + *vy * *s;
}

std::string Surd::to_string() const {
  if (is_rational()) return x.to_string();
  return x.to_string() + " + " + y.to_string() + "*sqrt(" + radicand.to_string() + ")";
}

Surd evaluate_at(const Poly& p, Var v, const Surd& s) {
  const auto c = p.coefficients_in(v);
  Surd r;
  for (std::size_t k = c.size(); k-- > 0;) {
    r *= s;
    r += Surd(RationalFunction(c[k]));
  }
  return r;
}

std::pair<Surd, Surd> quadratic_roots(const Poly& c0, const Poly& c1, const Poly& c2) {
  if (c2.is_zero()) throw std::invalid_argument("quadratic_roots: leading coefficient is zero");
  const RationalFunction x = RationalFunction::quotient(-c1, Poly(2) * c2);
  Poly disc = c1 * c1 - Poly(4) * c0 * c2;
  if (disc.is_zero()) return {Surd(x), Surd(x)};

  GaussianRational scale(1);
  // Square part of the constant content, with the sign chosen so the trailing
  // term of the remaining radicand points into the right half plane.
  const mpq_class content = coefficient_content(disc).to_mpq();
  const mpz_class m = content.get_num() * content.get_den();
  const mpz_class t = square_part(m);
  const Rational root = from_mpz_ratio(t, content.get_den());
  disc *= GaussianRational(Rational(1) / (root * root));
  scale *= GaussianRational(root);
  if (!positive_direction(disc.terms().back().coeff)) {
    disc = -disc;
    scale *= GaussianRational::i();
  }

  Poly y_mono(1);
  const Exponents mono = monomial_content(disc);
  Exponents half;
  for (int k = 0; k < kMaxVars; ++k) half.e[k] = static_cast<std::uint8_t>(mono.e[k] / 2);
  if (half.total() > 0) {
    Exponents twice;
    for (int k = 0; k < kMaxVars; ++k) twice.e[k] = static_cast<std::uint8_t>(2 * half.e[k]);
    disc = *disc.divide_exact(Poly::monomial(twice, 1));
    y_mono = Poly::monomial(half, 1);
  }

  const RationalFunction y = RationalFunction::quotient(y_mono * scale, Poly(2) * c2);
  return {Surd(x, y, disc), Surd(x, -y, disc)};
}

}  // namespace zernike
