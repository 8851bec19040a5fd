#include "zernike/weyl.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <unordered_map>

namespace zernike {

namespace {

struct FlatKey {
  std::uint32_t mono;
  Exponents exps;
  friend bool operator==(const FlatKey&, const FlatKey&) = default;
};

struct FlatKeyHash {
  std::size_t operator()(const FlatKey& k) const { return k.exps.hash() * 0x9E3779B97F4A7C15ull ^ k.mono; }
};

using FlatMap = std::unordered_map<FlatKey, GaussianRational, FlatKeyHash>;

// k! * C(c, k) * C(b, k): the multiplicity of k contractions when p^c moves past q^b.
Rational contraction_weight(unsigned c, unsigned b, unsigned k) {
  Rational w(1);
  for (unsigned j = 0; j < k; ++j) w *= Rational(static_cast<long long>((c - j) * (b - j)));
  for (unsigned j = 2; j <= k; ++j) w /= Rational(static_cast<long long>(j));
  return w;
}

struct Contraction {
  NormalMonomial mono;
  GaussianRational weight;
};

// p1^c p2^d (from the left factor) moved past q1^a q2^b (from the right factor):
// p^c q^b = sum_k k! C(c,k) C(b,k) (-i)^k q^(b-k) p^(c-k), independently per index.
std::vector<Contraction> expand_pair(const NormalMonomial& x, const NormalMonomial& y) {
  std::vector<Contraction> out;
  const unsigned k1max = std::min(x.c, y.a);
  const unsigned k2max = std::min(x.d, y.b);
  for (unsigned k1 = 0; k1 <= k1max; ++k1) {
    const Rational w1 = contraction_weight(x.c, y.a, k1);
    for (unsigned k2 = 0; k2 <= k2max; ++k2) {
      const Rational w = w1 * contraction_weight(x.d, y.b, k2);
      NormalMonomial m{static_cast<std::uint8_t>(x.a + y.a - k1), static_cast<std::uint8_t>(x.b + y.b - k2),
                       static_cast<std::uint8_t>(x.c + y.c - k1), static_cast<std::uint8_t>(x.d + y.d - k2)};
      out.push_back({m, GaussianRational(w).times_i_pow(-static_cast<int>(k1 + k2))});
    }
  }
  return out;
}

using TermList = std::vector<std::pair<NormalMonomial, const Poly*>>;

void accumulate(const TermList& left, const WeylOperator::TermMap& right, FlatMap& acc) {
  for (const auto& [mx, px] : left) {
    for (const auto& [my, py] : right) {
      const Poly coeff = (*px) * py;
      for (const auto& [m, w] : expand_pair(mx, my)) {
        const std::uint32_t key = m.packed();
        for (const auto& t : coeff.terms()) {
          auto [it, inserted] = acc.try_emplace(FlatKey{key, t.exps}, t.coeff * w);
          if (!inserted) it->second += t.coeff * w;
        }
      }
    }
  }
}

WeylOperator from_flat(const FlatMap& acc) {
  std::map<std::uint32_t, std::vector<Poly::Term>> grouped;
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) grouped[k.mono].push_back({k.exps, c});
  WeylOperator out;
  for (auto& [mono, terms] : grouped) out.add_term(NormalMonomial::unpack(mono), Poly::from_terms(std::move(terms)));
  return out;
}

}  // namespace

WeylOperator::WeylOperator(Poly scalar) {
  if (!scalar.is_zero()) terms_.emplace(NormalMonomial{}, std::move(scalar));
}

WeylOperator WeylOperator::monomial(NormalMonomial m, Poly coeff) {
  WeylOperator x;
  if (!coeff.is_zero()) x.terms_.emplace(m, std::move(coeff));
  return x;
}

std::size_t WeylOperator::flat_size() const {
  std::size_t n = 0;
  for (const auto& [m, p] : terms_) n += p.terms().size();
  return n;
}

Poly WeylOperator::coefficient(const NormalMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Poly{} : it->second;
}

unsigned WeylOperator::max_momentum_degree() const {
  unsigned d = 0;
  for (const auto& [m, p] : terms_) d = std::max(d, m.momentum_degree());
  return d;
}

unsigned WeylOperator::max_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

void WeylOperator::add_term(const NormalMonomial& m, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeylOperator WeylOperator::operator-() const {
  WeylOperator x = *this;
  for (auto& [m, p] : x.terms_) p = -p;
  return x;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o) {
  for (const auto& [m, p] : o.terms_) add_term(m, p);
  return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o) {
  for (const auto& [m, p] : o.terms_) add_term(m, -p);
  return *this;
}

WeylOperator& WeylOperator::operator*=(const Poly& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second *= scalar;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

unsigned worker_threads() {
  static const unsigned threads = [] {
    const char* env = std::getenv("ZERNIKE_THREADS");
    if (!env) return 1u;
    const long v = std::strtol(env, nullptr, 10);
    return v >= 1 && v <= 256 ? static_cast<unsigned>(v) : 1u;
  }();
  return threads;
}

WeylOperator normal_product(const WeylOperator& lhs, const WeylOperator& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  TermList left;
  left.reserve(lhs.size());
  for (const auto& [m, p] : lhs.terms()) left.emplace_back(m, &p);

  const unsigned threads = std::min<std::size_t>(worker_threads(), left.size());
  if (threads <= 1 || lhs.size() * rhs.size() < 2048) {
    FlatMap acc;
    accumulate(left, rhs.terms(), acc);
    return from_flat(acc);
  }
  // Exact partial sums are merged in chunk order; the result does not depend on scheduling.
  std::vector<std::future<WeylOperator>> parts;
  const std::size_t chunk = (left.size() + threads - 1) / threads;
  for (std::size_t start = 0; start < left.size(); start += chunk) {
    TermList slice(left.begin() + static_cast<std::ptrdiff_t>(start),
                   left.begin() + static_cast<std::ptrdiff_t>(std::min(left.size(), start + chunk)));
    parts.push_back(std::async(std::launch::async, [slice = std::move(slice), &rhs] {
      FlatMap acc;
      accumulate(slice, rhs.terms(), acc);
      return from_flat(acc);
    }));
  }
  WeylOperator out;
  for (auto& f : parts) out += f.get();
  return out;
}

WeylOperator operator*(const WeylOperator& x, const WeylOperator& y) { return normal_product(x, y); }

WeylOperator commutator(const WeylOperator& lhs, const WeylOperator& rhs) {
  return normal_product(lhs, rhs) - normal_product(rhs, lhs);
}

WeylOperator pow(const WeylOperator& x, unsigned k) {
  WeylOperator result = WeylOperator::identity();
  for (unsigned j = 0; j < k; ++j) result = normal_product(result, x);
  return result;
}

std::set<int> grade_spectrum(const WeylOperator& x) {
  std::set<int> grades;
  for (const auto& [m, p] : x.terms()) grades.insert(m.grade());
  return grades;
}

WeylOperator substitute_params(const WeylOperator& x, const std::map<int, GaussianRational>& assignment) {
  std::map<Var, GaussianRational> values;
  for (const auto& [k, v] : assignment) {
    if (k < 1 || k > kMaxGammas) throw std::invalid_argument("parameter index out of range: " + std::to_string(k));
    values.emplace(gamma_var(k), v);
  }
  WeylOperator out;
  for (const auto& [m, p] : x.terms()) {
    for (int k = 1; k <= kMaxGammas; ++k)
      if (p.depends_on(gamma_var(k)) && !assignment.contains(k)) throw MissingParameter(k);
    out.add_term(m, p.substitute(values));
  }
  return out;
}

WeylOperator swap_indices(const WeylOperator& x) {
  WeylOperator out;
  for (const auto& [m, p] : x.terms()) out.add_term({m.b, m.a, m.d, m.c}, p);
  return out;
}

}  // namespace zernike
