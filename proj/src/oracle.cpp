#include "zernike/oracle.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace zernike {

namespace {

Block zero_block(std::size_t rows, std::size_t cols) {
  return Block(rows, std::vector<GaussianRational>(cols));
}

GaussianRational falling(unsigned x, unsigned k) {
  long long r = 1;
  for (unsigned j = 0; j < k; ++j) r *= static_cast<long long>(x - j);
  return GaussianRational(Rational(r));
}

GradedMatrix empty_matrix(int order, const std::vector<GaussianRational>& params, unsigned max_degree) {
  GradedMatrix g;
  g.order = order;
  g.max_degree = max_degree;
  g.params = params;
  for (unsigned m = 0; m <= max_degree; ++m) {
    g.diagonal.push_back(zero_block(m + 1, m + 1));
    g.lowering.push_back(m >= 2 ? zero_block(m - 1, m + 1) : Block{});
  }
  return g;
}

HomogeneousVector times(const Block& b, const HomogeneousVector& v) {
  HomogeneousVector out(b.size());
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!b[r][c].is_zero() && !v[c].is_zero()) out[r] += b[r][c] * v[c];
  return out;
}

// Back-substitution from q1^a q2^(m-a) down the degree ladder:
// (lambda - d_t) v_t = L_{t+2} v_{t+2}.
std::vector<HomogeneousVector> eigenvector(const GradedMatrix& g, unsigned m, unsigned a) {
  std::vector<HomogeneousVector> v(m + 1);
  v[m] = HomogeneousVector(m + 1);
  v[m][a] = GaussianRational(1);
  const GaussianRational lambda = *g.diagonal_scalar(m);
  for (int t = static_cast<int>(m) - 2; t >= 0; t -= 2) {
    const auto ut = static_cast<unsigned>(t);
    HomogeneousVector rhs = times(g.lowering[ut + 2], v[ut + 2]);
    const GaussianRational gap = lambda - *g.diagonal_scalar(ut);
    for (auto& x : rhs) x /= gap;
    v[ut] = std::move(rhs);
  }
  return v;
}

OracleLevel level(const GradedMatrix& g, unsigned m, bool with_vectors) {
  OracleLevel lv;
  lv.degree = m;
  lv.eigenvalue = *g.diagonal_scalar(m);
  lv.multiplicity = m + 1;
  for (int t = static_cast<int>(m) - 2; t >= 0; t -= 2)
    if (*g.diagonal_scalar(static_cast<unsigned>(t)) == lv.eigenvalue) lv.resonant_with.push_back(static_cast<unsigned>(t));
  if (with_vectors && lv.resonant_with.empty()) {
    std::vector<std::vector<HomogeneousVector>> vs;
    for (unsigned a = 0; a <= m; ++a) vs.push_back(eigenvector(g, m, a));
    lv.eigenvectors = std::move(vs);
  }
  return lv;
}

}  // namespace

std::size_t GradedMatrix::dimension() const {
  return static_cast<std::size_t>(max_degree + 1) * (max_degree + 2) / 2;
}

std::optional<GaussianRational> GradedMatrix::diagonal_scalar(unsigned m) const {
  const Block& b = diagonal.at(m);
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c)
      if (r == c ? b[r][c] != b[0][0] : !b[r][c].is_zero()) return std::nullopt;
  return b[0][0];
}

bool GradedMatrix::is_degree_triangular() const {
  for (unsigned m = 0; m <= max_degree; ++m)
    if (!diagonal_scalar(m)) return false;
  return true;
}

std::vector<HomogeneousVector> GradedMatrix::apply(const std::vector<HomogeneousVector>& v) const {
  if (v.size() > max_degree + 1) throw std::invalid_argument("vector exceeds the degree cutoff");
  std::vector<HomogeneousVector> out(v.size());
  for (std::size_t m = 0; m < v.size(); ++m) out[m] = HomogeneousVector(m + 1);
  for (std::size_t m = 0; m < v.size(); ++m) {
    if (v[m].empty()) continue;
    if (v[m].size() != m + 1) throw std::invalid_argument("component size does not match its degree");
    const auto d = times(diagonal[m], v[m]);
    for (std::size_t r = 0; r <= m; ++r) out[m][r] += d[r];
    if (m >= 2) {
      const auto l = times(lowering[m], v[m]);
      for (std::size_t r = 0; r + 1 < m; ++r) out[m - 2][r] += l[r];
    }
  }
  return out;
}

GradedMatrix build_matrix(const HamiltonianSpec& spec, unsigned max_degree) {
  // Vanishing gamma_N is allowed here: the matrix is still well defined.
  if (spec.order < 1 || static_cast<int>(spec.params.size()) != spec.order)
    throw std::invalid_argument("parameter count must equal N >= 1");
  const auto params = spec.numeric_values();
  GradedMatrix g = empty_matrix(spec.order, params, max_degree);
  for (unsigned m = 0; m <= max_degree; ++m) {
    // (q.p)^k multiplies a degree-m monomial by (-i m)^k.
    GaussianRational d;
    const GaussianRational step(Rational(0), Rational(-static_cast<long long>(m)));
    GaussianRational power(1);
    for (const auto& gk : params) {
      power *= step;
      d += gk * power;
    }
    for (unsigned a = 0; a <= m; ++a) g.diagonal[m][a][a] = d;
    if (m < 2) continue;
    for (unsigned a = 0; a <= m; ++a) {
      const unsigned b = m - a;
      if (a >= 2) g.lowering[m][a - 2][a] -= GaussianRational(Rational(static_cast<long long>(a) * (a - 1)));
      if (b >= 2) g.lowering[m][a][a] -= GaussianRational(Rational(static_cast<long long>(b) * (b - 1)));
    }
  }
  return g;
}

GradedMatrix build_matrix_from_operator(const WeylOperator& h, const std::vector<GaussianRational>& params,
                                        unsigned max_degree) {
  std::map<int, GaussianRational> assignment;
  for (std::size_t k = 0; k < params.size(); ++k) assignment[static_cast<int>(k) + 1] = params[k];
  const WeylOperator op = substitute_params(h, assignment);
  GradedMatrix g = empty_matrix(static_cast<int>(params.size()), params, max_degree);
  for (const auto& [mono, coeff] : op.terms()) {
    if (!coeff.is_constant()) throw std::invalid_argument("operator has symbolic coefficients");
    const GaussianRational c = coeff.constant_term() * GaussianRational::i_pow(-static_cast<int>(mono.momentum_degree()));
    for (unsigned m = 0; m <= max_degree; ++m) {
      for (unsigned x = 0; x <= m; ++x) {
        const unsigned y = m - x;
        if (mono.c > x || mono.d > y) continue;
        const unsigned tx = x - mono.c + mono.a, ty = y - mono.d + mono.b;
        const GaussianRational value = c * falling(x, mono.c) * falling(y, mono.d);
        if (tx + ty == m) {
          g.diagonal[m][tx][x] += value;
        } else if (tx + ty + 2 == m) {
          g.lowering[m][tx][x] += value;
        } else {
          throw std::logic_error("operator term leaves the degrees m and m-2");
        }
      }
    }
  }
  return g;
}

std::vector<std::pair<GaussianRational, unsigned>> OracleReport::distinct_eigenvalues() const {
  std::vector<std::pair<GaussianRational, unsigned>> out;
  for (const auto& lv : levels) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == lv.eigenvalue; });
    if (it == out.end())
      out.emplace_back(lv.eigenvalue, lv.multiplicity);
    else
      it->second += lv.multiplicity;
  }
  return out;
}

OracleReport oracle_spectrum(const GradedMatrix& m, bool eigenvectors) {
  if (!m.is_degree_triangular()) throw std::logic_error("matrix is not triangular in the degree grading");
  OracleReport r;
  r.order = m.order;
  r.max_degree = m.max_degree;
  r.params = m.params;
  r.levels.resize(m.max_degree + 1);
  const unsigned threads = std::min(worker_threads(), m.max_degree + 1);
  if (threads <= 1) {
    for (unsigned d = 0; d <= m.max_degree; ++d) r.levels[d] = level(m, d, eigenvectors);
    return r;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t)
    jobs.push_back(std::async(std::launch::async, [&, t] {
      for (unsigned d = t; d <= m.max_degree; d += threads) r.levels[d] = level(m, d, eigenvectors);
    }));
  for (auto& j : jobs) j.get();
  return r;
}

std::string to_string(MatchStatus s) {
  switch (s) {
    case MatchStatus::match: return "match";
    case MatchStatus::mismatch: return "mismatch";
    case MatchStatus::not_comparable: return "not-oracle-comparable";
  }
  return "?";
}

FormulaMatch compare_with_formula(const OracleReport& report, const SpectrumSolution& solution) {
  FormulaMatch out;
  if (solution.type != SolutionType::I) return out;
  if (solution.is_numeric()) {
    if (solution.numeric_params.size() != report.params.size()) throw std::invalid_argument("parameter count differs");
    for (std::size_t k = 0; k < report.params.size(); ++k)
      if (std::abs(solution.numeric_params[k] - report.params[k].to_complex()) > 1e-12 * (1 + std::abs(solution.numeric_params[k])))
        throw std::invalid_argument("solution was computed at other parameters");
    if (solution.n_value < 0 || static_cast<unsigned long long>(solution.n_value) > report.max_degree) return out;
    const auto& lv = report.levels[static_cast<std::size_t>(solution.n_value)];
    const auto oracle = lv.eigenvalue.to_complex();
    const auto formula = *solution.E_value;
    out.checked_degrees.push_back(lv.degree);
    if (std::abs(oracle - formula) > 1e-9 * (1 + std::abs(oracle))) out.mismatches.push_back({lv.degree, oracle, formula});
  } else if (solution.is_closed_form() && solution.E->is_rational()) {
    std::map<Var, GaussianRational> values;
    for (std::size_t k = 0; k < report.params.size(); ++k) values[gamma_var(static_cast<int>(k) + 1)] = report.params[k];
    for (const auto& lv : report.levels) {
      values[Var::n] = GaussianRational(Rational(static_cast<long long>(lv.degree)));
      const auto e = solution.E->x.evaluate_exact(values);
      if (!e) throw std::invalid_argument("formula is undefined at the report's parameters");
      out.checked_degrees.push_back(lv.degree);
      if (*e != lv.eigenvalue) out.mismatches.push_back({lv.degree, lv.eigenvalue.to_complex(), e->to_complex()});
    }
  } else {
    return out;
  }
  out.status = out.mismatches.empty() ? MatchStatus::match : MatchStatus::mismatch;
  return out;
}

}  // namespace zernike
