#include "zernike/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace zernike {

namespace {

constexpr std::array<const char*, kMaxVars> kVarNames = {"g1", "g2", "g3", "g4", "g5", "g6", "g7",
                                                         "g8", "n",  "B",  "E",  "u",  "H",  "K"};

// Merges two descending-sorted term lists; sign = -1 subtracts b.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b, bool negate_b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exps > b[j].exps)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exps > a[i].exps) {
      out.push_back(b[j++]);
      if (negate_b) out.back().coeff = -out.back().coeff;
    } else {
      GaussianRational c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].exps, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::string var_name(Var v) { return kVarNames[var_index(v)]; }

std::optional<Var> parse_var(std::string_view name) {
  for (int k = 0; k < kMaxVars; ++k)
    if (name == kVarNames[k]) return static_cast<Var>(k);
  return std::nullopt;
}

std::strong_ordering operator<=>(const Exponents& a, const Exponents& b) {
  if (auto c = a.total() <=> b.total(); c != 0) return c;
  for (int k = 0; k < kMaxVars; ++k)
    if (auto c = a.e[k] <=> b.e[k]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t Exponents::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : e) h = (h ^ x) * 1099511628211ull;
  return h;
}

Poly::Poly(GaussianRational c) {
  if (!c.is_zero()) terms_.push_back({Exponents{}, std::move(c)});
}

Poly Poly::var(Var v, unsigned power) {
  Exponents e;
  e[v] = static_cast<std::uint8_t>(power);
  return monomial(e, GaussianRational(1));
}

Poly Poly::monomial(const Exponents& e, GaussianRational c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({e, std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.exps > y.exps; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].exps.total() == 0); }

GaussianRational Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().exps.total() == 0) return terms_.back().coeff;
  return {};
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().exps.total(); }

unsigned Poly::degree_in(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.exps[v]);
  return d;
}

std::vector<Poly> Poly::coefficients_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    Term s = t;
    s.exps[v] = 0;
    buckets[t.exps[v]].push_back(std::move(s));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(Var v, const std::vector<Poly>& coeffs) {
  std::vector<Term> all;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Term s = t;
      s.exps[v] = static_cast<std::uint8_t>(s.exps[v] + k);
      all.push_back(std::move(s));
    }
  return from_terms(std::move(all));
}

Poly Poly::substitute(Var v, const Poly& value) const {
  const auto cs = coefficients_in(v);
  // Horner
  Poly acc;
  for (std::size_t k = cs.size(); k-- > 0;) acc = acc * value + cs[k];
  return acc;
}

Poly Poly::substitute(const std::map<Var, GaussianRational>& values) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term s = t;
    for (const auto& [v, x] : values) {
      const unsigned k = s.exps[v];
      if (k == 0) continue;
      s.coeff *= pow(x, k);
      s.exps[v] = 0;
    }
    out.push_back(std::move(s));
  }
  return from_terms(std::move(out));
}

std::complex<double> Poly::evaluate(const std::map<Var, std::complex<double>>& values) const {
  std::complex<double> sum = 0;
  for (const auto& t : terms_) {
    std::complex<double> term = t.coeff.to_complex();
    for (int k = 0; k < kMaxVars; ++k) {
      if (t.exps.e[k] == 0) continue;
      auto it = values.find(static_cast<Var>(k));
      if (it == values.end()) throw std::invalid_argument("no value for symbol " + var_name(static_cast<Var>(k)));
      term *= std::pow(it->second, static_cast<int>(t.exps.e[k]));
    }
    sum += term;
  }
  return sum;
}

GaussianRational Poly::evaluate_exact(const std::map<Var, GaussianRational>& values) const {
  const Poly p = substitute(values);
  if (!p.is_constant()) throw std::invalid_argument("evaluate_exact: unassigned symbol in " + p.to_string());
  return p.constant_term();
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly remainder = *this;
  std::vector<Term> quotient;
  const Term& lead = divisor.leading();
  while (!remainder.is_zero()) {
    const Term& r = remainder.leading();
    Exponents q;
    for (int k = 0; k < kMaxVars; ++k) {
      if (r.exps.e[k] < lead.exps.e[k]) return std::nullopt;
      q.e[k] = static_cast<std::uint8_t>(r.exps.e[k] - lead.exps.e[k]);
    }
    const Poly step = monomial(q, r.coeff / lead.coeff);
    quotient.push_back(step.terms_.front());
    remainder -= step * divisor;
  }
  return from_terms(std::move(quotient));
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (b.terms_.size() == 1 && b.terms_[0].exps.total() == 0) return a * b.terms_[0].coeff;
  if (a.terms_.size() == 1 && a.terms_[0].exps.total() == 0) return b * a.terms_[0].coeff;
  std::vector<Poly::Term> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      Exponents e;
      for (int k = 0; k < kMaxVars; ++k) e.e[k] = static_cast<std::uint8_t>(x.exps.e[k] + y.exps.e[k]);
      prods.push_back({e, x.coeff * y.coeff});
    }
  return Poly::from_terms(std::move(prods));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  if (c.is_one()) return *this;
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

std::string monomial_string(const Exponents& e) {
  std::string s;
  for (int k = 0; k < kMaxVars; ++k) {
    if (e.e[k] == 0) continue;
    if (!s.empty()) s += "*";
    s += kVarNames[k];
    if (e.e[k] > 1) s += "^" + std::to_string(e.e[k]);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) {
    if (!s.empty()) s += " + ";
    s += t.coeff.to_string();
    const auto m = monomial_string(t.exps);
    if (!m.empty()) s += "*" + m;
  }
  return s;
}

Poly Poly::parse(std::string_view text) {
  if (text == "0") return {};
  std::vector<Term> terms;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(" + ", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto piece = text.substr(pos, end - pos);
    const auto close = piece.find(")i");
    if (close == std::string_view::npos) throw std::invalid_argument("malformed polynomial term '" + std::string(piece) + "'");
    Term t;
    t.coeff = GaussianRational::parse(piece.substr(0, close + 2));
    auto rest = piece.substr(close + 2);
    while (!rest.empty()) {
      if (rest.front() != '*') throw std::invalid_argument("malformed monomial '" + std::string(piece) + "'");
      rest.remove_prefix(1);
      auto next = rest.find('*');
      auto factor = rest.substr(0, next);
      rest = next == std::string_view::npos ? std::string_view{} : rest.substr(next);
      unsigned power = 1;
      if (auto caret = factor.find('^'); caret != std::string_view::npos) {
        power = static_cast<unsigned>(std::stoul(std::string(factor.substr(caret + 1))));
        factor = factor.substr(0, caret);
      }
      auto v = parse_var(factor);
      if (!v) throw std::invalid_argument("unknown symbol '" + std::string(factor) + "'");
      t.exps[*v] = static_cast<std::uint8_t>(t.exps[*v] + power);
    }
    terms.push_back(std::move(t));
    if (end == text.size()) break;
    pos = end + 3;
  }
  return from_terms(std::move(terms));
}

std::size_t Poly::hash() const {
  std::size_t h = 0;
  for (const auto& t : terms_) h = h * 1000003u ^ (t.exps.hash() + 31u * t.coeff.hash());
  return h;
}

Poly pow(const Poly& p, unsigned k) {
  Poly result(1), base = p;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

}  // namespace zernike
