#include "zernike/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zernike/higgs.hpp"
#include "zernike/oracle.hpp"
#include "zernike/oscillators.hpp"
#include "zernike/spectrum.hpp"
#include "zernike/symmetries.hpp"

namespace zernike::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  int order = 0;
  std::string gammas;
  std::string n_range;
  unsigned max_degree = 0;
  std::string out_path;
  std::string format = "json";
  std::string leading = "both";
  std::string emit = "relations";
  std::string vanish;
  std::string type;
  std::string kappa, beta = "-2", mu = "0", nu = "0";
  int figure_id = 0;
  std::uint64_t seed = 1;
  int points = 20;
  bool symbolic = false;
  bool allow_ground_state = false;
  bool eigenvectors = false;
  bool operators = false;
};

struct Outcome {
  json inputs = json::object();
  json results = json::object();
  std::string csv;  ///< used instead of the JSON document when non-empty
  bool passed = true;
};

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json value_json(double x) { return x; }
json value_json(const Rational& x) { return x.to_string(); }

std::string csv_value(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}
std::string csv_value(const Rational& x) { return x.to_string(); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    parts.push_back(cur);
  }
  return parts;
}

bool has_decimal(const std::string& s) { return s.find('.') != std::string::npos; }

std::vector<GaussianRational> parse_gammas(const std::string& text, int order, bool allow_decimals) {
  std::vector<GaussianRational> g;
  for (const auto& part : split(text, ',')) {
    if (part.empty()) throw UsageError("empty entry in --gammas");
    if (has_decimal(part) && !allow_decimals)
      throw UsageError("decimal coupling '" + part + "' needs exact input here (e.g. 1/4 or 3/7i)");
    try {
      g.push_back(GaussianRational::parse_friendly(decimals_to_fractions(part)));
    } catch (const std::invalid_argument& e) {
      throw UsageError("cannot parse coupling '" + part + "': " + e.what());
    }
  }
  if (static_cast<int>(g.size()) != order)
    throw UsageError("--gammas has " + std::to_string(g.size()) + " entries, expected N = " + std::to_string(order));
  return g;
}

json gamma_strings(const std::vector<GaussianRational>& g) {
  json a = json::array();
  for (const auto& x : g) a.push_back(x.to_string());
  return a;
}

std::pair<long long, long long> parse_range(const std::string& text) {
  static const std::regex pat(R"(^\s*(-?\d+)\s*(?:(?::|\.\.)\s*(-?\d+)\s*)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, pat)) throw UsageError("--n expects a, a:b or a..b, got '" + text + "'");
  const long long a = std::stoll(m[1]);
  const long long b = m[2].matched ? std::stoll(m[2]) : a;
  if (a < 0 || b < a) throw UsageError("invalid n range '" + text + "'");
  return {a, b};
}

std::set<int> parse_vanish(const std::string& text, int order) {
  if (text == "default") return default_vanish_set(order);
  std::set<int> s;
  if (text == "none") return s;
  for (const auto& part : split(text, ',')) {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw UsageError("--vanish expects 'default', 'none' or a list of indices, got '" + text + "'");
    }
    if (k < 1 || k > order) throw UsageError("--vanish index " + part + " is outside 1..N");
    s.insert(k);
  }
  return s;
}

std::optional<SolutionType> parse_type(const std::string& text) {
  if (text.empty()) return std::nullopt;
  for (auto t : {SolutionType::I, SolutionType::II, SolutionType::III, SolutionType::IV, SolutionType::other})
    if (to_string(t) == text) return t;
  throw UsageError("--type expects I, II, III, IV or other");
}

/// Terms of a polynomial in H and K grouped by (H power, K power); the
/// coefficient keeps any parameter symbols.
json hk_terms(const Poly& p) {
  std::map<std::pair<int, int>, Poly, std::greater<>> grouped;
  for (const auto& t : p.terms()) {
    Exponents rest = t.exps;
    const int h = rest[Var::H], k = rest[Var::K];
    rest[Var::H] = 0;
    rest[Var::K] = 0;
    grouped[{h, k}] += Poly::monomial(rest, t.coeff);
  }
  json a = json::array();
  for (const auto& [powers, c] : grouped)
    a.push_back(json{{"H", powers.first}, {"K", powers.second}, {"coefficient", c.to_string()}});
  return a;
}

json operator_check(const std::string& name, const WeylOperator& x) {
  return json{{"relation", name}, {"zero", x.is_zero()}, {"residual_terms", x.size()}};
}

// verify ------------------------------------------------------------------

Outcome cmd_verify(const Config& c) {
  Outcome o;
  o.inputs = {{"N", c.order}};
  const auto spec = HamiltonianSpec::symbolic(c.order);
  const auto pair = explicit_symmetries(spec);
  const auto h = build_hamiltonian(spec);
  const auto checks = json::array({operator_check("[I,H]", commutator(pair.I, h)),
                                   operator_check("[I',H]", commutator(pair.Iprime, h)),
                                   operator_check("[C,H]", commutator(build_angular_momentum(), h))});
  const auto dep = dependence_residual(spec, pair);
  o.results["commutators"] = checks;
  o.results["dependence"] = operator_check(c.order <= 3 ? "H = I + I'" : "H = I + I' - 4 g4 C^2 + g4 C^4", dep);
  if (c.operators)
    o.results["operators"] = {{"H", to_string(h)}, {"I", to_string(pair.I)}, {"I'", to_string(pair.Iprime)}};
  o.passed = dep.is_zero() && std::all_of(checks.begin(), checks.end(), [](const json& j) { return j["zero"].get<bool>(); });
  o.results["passed"] = o.passed;
  return o;
}

// derive ------------------------------------------------------------------

Outcome cmd_derive(const Config& c) {
  Outcome o;
  o.inputs = {{"N", c.order}, {"leading", c.leading}};
  const auto spec = HamiltonianSpec::symbolic(c.order);
  const auto pair = explicit_symmetries(spec);
  std::vector<Leading> which;
  if (c.leading == "p1" || c.leading == "both") which.push_back(Leading::p1_squared);
  if (c.leading == "p2" || c.leading == "both") which.push_back(Leading::p2_squared);
  json spaces = json::array();
  for (auto l : which) {
    const auto space = solve_symmetry_ansatz(spec, l);
    json basis = json::array();
    for (const auto& b : space.homogeneous_basis) basis.push_back(to_string(b));
    const bool p1 = l == Leading::p1_squared;
    const bool member = in_solution_space(space, p1 ? pair.Iprime : pair.I);
    o.passed = o.passed && member;
    spaces.push_back(json{{"leading", p1 ? "p1^2" : "p2^2"},
                          {"unknowns", space.unknowns},
                          {"particular", to_string(space.particular)},
                          {"homogeneous_basis", basis},
                          {"homogeneous_dimension", space.homogeneous_basis.size()},
                          {"contains_explicit_symmetry", member}});
  }
  o.results["solution_spaces"] = spaces;
  o.results["passed"] = o.passed;
  return o;
}

// higgs -------------------------------------------------------------------

Outcome cmd_higgs(const Config& c) {
  Outcome o;
  o.inputs = {{"N", c.order}, {"emit", c.emit}};
  const auto spec = HamiltonianSpec::symbolic(c.order);
  const auto phi = structure_function(spec);
  if (c.emit == "phi") {
    o.results["phi1"] = hk_terms(phi.phi1);
    o.results["phi2"] = hk_terms(phi.phi2);
    o.results["phi"] = hk_terms(phi.product());
    return o;
  }
  if (c.order > 5) throw UsageError("--emit relations needs N <= 5");
  const auto r = verify_ladder_algebra(c.order);
  const Poly product = phi.product();
  o.results["relations"] = json::array({
      operator_check("[I,H]", r.residual_I),
      operator_check("[I',H]", r.residual_Iprime),
      operator_check("[C,H]", r.residual_C),
      operator_check("dependence", r.dependence),
      operator_check("[K,K+] = K+", r.residual_Kplus),
      operator_check("[K,K-] = -K-", r.residual_Kminus),
      operator_check("K+ K- = Phi1(H,K) Phi2(H,K)", r.factorization),
      operator_check("K- K+ = Phi(H,K+1)", r.lowering),
      operator_check("[Phi1,Phi2] = 0", r.factors_commute),
  });
  o.results["commutator_K-_K+"] = hk_terms(shift_k(product, GaussianRational(1)) - product);
  o.results["algebra_order"] = r.algebra_order;
  o.results["jacobian_ranks"] = {r.rank_with_I, r.rank_with_Iprime};
  o.passed = r.passed();
  o.results["passed"] = o.passed;
  return o;
}

// spectrum ----------------------------------------------------------------

json branches_json(const SpectrumSolution& s) {
  json a = json::array();
  for (const auto& b : s.branches) a.push_back({b.at_zero, b.at_top});
  return a;
}

json symbolic_solution_json(const SpectrumSolution& s) {
  json j{{"type", to_string(s.type)}, {"branches", branches_json(s)}, {"root_count", s.root_count()}};
  json limits = json::object();
  for (const auto& [k, ok] : s.limit_valid) limits["g" + std::to_string(k)] = ok;
  j["limit_valid"] = limits;
  if (s.is_closed_form()) {
    j["u"] = s.u->to_string();
    j["E"] = s.E->to_string();
    if (s.phi) {
      j["phi1"] = s.phi->first.to_string();
      j["phi2"] = s.phi->second.to_string();
      j["phi"] = s.phi_product().to_string();
    }
  } else if (s.is_descriptor()) {
    j["root_polynomial"] = s.root_polynomial->to_string();
    j["energy_in_u"] = s.energy_in_u.to_string();
  }
  return j;
}

json table_json(const SpectrumTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json phi = json::array();
    for (std::size_t b = 0; b < r.phi.size(); ++b)
      phi.push_back(r.phi_exact[b] ? json(r.phi_exact[b]->to_string()) : complex_json(r.phi[b]));
    rows.push_back({{"n", r.n},
                    {"E", r.E_exact ? json(r.E_exact->to_string()) : complex_json(r.E)},
                    {"unitary", r.unitary},
                    {"phi", phi}});
  }
  return rows;
}

json numeric_solution_json(const SpectrumSolution& s) {
  return {{"type", to_string(s.type)},
          {"branches", branches_json(s)},
          {"u", complex_json(*s.u_value)},
          {"E", complex_json(*s.E_value)},
          {"residual", s.residual}};
}

Outcome cmd_spectrum(const Config& c) {
  Outcome o;
  const auto type = parse_type(c.type);
  const std::optional<std::set<int>> vanish =
      c.vanish.empty() ? std::nullopt : std::optional(parse_vanish(c.vanish, c.order));
  SolveOptions opts;
  opts.allow_ground_state = c.allow_ground_state;
  o.inputs = {{"N", c.order}, {"mode", c.symbolic ? "symbolic" : "numeric"}};
  const auto keep = [&](std::vector<SpectrumSolution> v) {
    if (vanish) v = filter_well_defined(v, *vanish);
    if (type) std::erase_if(v, [&](const SpectrumSolution& s) { return s.type != *type; });
    return v;
  };

  if (c.symbolic) {
    std::optional<std::vector<GaussianRational>> g;
    if (!c.gammas.empty()) g = parse_gammas(c.gammas, c.order, false);
    o.inputs["gammas"] = g ? gamma_strings(*g) : json("symbolic");
    const auto spec = g ? HamiltonianSpec::numeric(*g) : HamiltonianSpec::symbolic(c.order);
    const auto all = solve_constraints_symbolic(spec);
    const auto sols = keep(all);
    std::optional<std::pair<long long, long long>> range;
    if (!c.n_range.empty()) {
      if (!g) throw UsageError("--n in symbolic mode needs --gammas to tabulate the spectrum");
      range = parse_range(c.n_range);
      o.inputs["n"] = {range->first, range->second};
    }
    if (vanish) o.inputs["vanish"] = *vanish;
    if (type) o.inputs["type"] = to_string(*type);
    o.results["total_roots"] = total_root_count(all);
    o.results["entries"] = all.size();
    json list = json::array();
    std::vector<SpectrumTable> tables;
    for (const auto& s : sols) {
      json j = symbolic_solution_json(s);
      if (range) {
        if (!s.is_closed_form()) {
          j["table_error"] = "no closed form to tabulate";
        } else {
          try {
            tables.push_back(spectrum_table(s, *g, range->first, range->second, opts));
            j["table"] = table_json(tables.back());
          } catch (const std::invalid_argument& e) {
            j["table_error"] = e.what();
          }
        }
      }
      list.push_back(std::move(j));
    }
    o.results["solutions"] = list;
    if (c.format == "csv") {
      if (tables.size() != 1) throw UsageError("--format csv needs exactly one tabulated solution; select one with --type");
      o.csv = spectrum_table_csv(tables.front());
    }
    return o;
  }

  if (c.gammas.empty()) throw UsageError("numeric mode needs --gammas (or pass --symbolic)");
  if (c.n_range.empty()) throw UsageError("numeric mode needs --n");
  const auto g = parse_gammas(c.gammas, c.order, true);
  const auto [first, last] = parse_range(c.n_range);
  o.inputs["gammas"] = gamma_strings(g);
  o.inputs["n"] = {first, last};
  if (vanish) o.inputs["vanish"] = *vanish;
  if (type) o.inputs["type"] = to_string(*type);
  const auto spec = HamiltonianSpec::numeric(g);
  spec.validate();
  const auto count = static_cast<std::size_t>(last - first + 1);
  std::vector<std::vector<SpectrumSolution>> per_n(count);
  const auto solve_at = [&](std::size_t i) {
    per_n[i] = keep(solve_constraints_numeric(spec, first + static_cast<long long>(i), opts));
  };
  const auto threads = static_cast<std::size_t>(std::max(1u, worker_threads()));
  if (threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) solve_at(i);
  } else {
    std::vector<std::future<void>> jobs;
    for (std::size_t t = 0; t < std::min(threads, count); ++t)
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t i = t; i < count; i += threads) solve_at(i);
      }));
    for (auto& j : jobs) j.get();
  }
  json levels = json::array();
  std::ostringstream csv;
  csv << "n,type,u_re,u_im,E_re,E_im\n";
  for (std::size_t i = 0; i < count; ++i) {
    json list = json::array();
    for (const auto& s : per_n[i]) {
      list.push_back(numeric_solution_json(s));
      csv << s.n_value << ',' << to_string(s.type) << ',' << csv_value(s.u_value->real()) << ','
          << csv_value(s.u_value->imag()) << ',' << csv_value(s.E_value->real()) << ','
          << csv_value(s.E_value->imag()) << '\n';
    }
    levels.push_back({{"n", first + static_cast<long long>(i)}, {"count", per_n[i].size()}, {"solutions", list}});
  }
  o.results["levels"] = levels;
  if (c.format == "csv") o.csv = csv.str();
  return o;
}

// oracle ------------------------------------------------------------------

SpectrumSolution type_one_formula(int order) {
  SpectrumSolution s;
  s.order = order;
  s.type = SolutionType::I;
  s.u = Surd(RationalFunction(Poly(GaussianRational(Rational(-1, 2))) * Poly::var(Var::n)));
  s.E = Surd(RationalFunction(type_one_energy(HamiltonianSpec::symbolic(order))));
  return s;
}

Outcome cmd_oracle(const Config& c) {
  Outcome o;
  if (c.gammas.empty()) throw UsageError("oracle needs --gammas");
  const auto g = parse_gammas(c.gammas, c.order, false);
  o.inputs = {{"N", c.order}, {"gammas", gamma_strings(g)}, {"max_degree", c.max_degree}, {"eigenvectors", c.eigenvectors}};
  const auto report = oracle_spectrum(build_matrix(HamiltonianSpec::numeric(g), c.max_degree), c.eigenvectors);
  json levels = json::array();
  for (const auto& lv : report.levels) {
    json j{{"degree", lv.degree},
           {"eigenvalue", lv.eigenvalue.to_string()},
           {"multiplicity", lv.multiplicity},
           {"resonant_with", lv.resonant_with}};
    if (c.eigenvectors) {
      if (!lv.eigenvectors) {
        j["eigenvectors"] = nullptr;
      } else {
        json vs = json::array();
        for (const auto& v : *lv.eigenvectors) {
          json comps = json::array();
          for (const auto& part : v) comps.push_back(gamma_strings(part));
          vs.push_back(comps);
        }
        j["eigenvectors"] = vs;
      }
    }
    levels.push_back(std::move(j));
  }
  json distinct = json::array();
  for (const auto& [value, mult] : report.distinct_eigenvalues())
    distinct.push_back({{"eigenvalue", value.to_string()}, {"multiplicity", mult}});
  const auto cmp = compare_with_formula(report, type_one_formula(c.order));
  json mismatches = json::array();
  for (const auto& m : cmp.mismatches)
    mismatches.push_back({{"degree", m.degree}, {"oracle", complex_json(m.oracle)}, {"formula", complex_json(m.formula)}});
  o.results["dimension"] = (c.max_degree + 1) * (c.max_degree + 2) / 2;
  o.results["levels"] = levels;
  o.results["distinct_eigenvalues"] = distinct;
  o.results["type_one_comparison"] = {{"status", to_string(cmp.status)},
                                      {"checked_degrees", cmp.checked_degrees.size()},
                                      {"mismatches", mismatches}};
  o.passed = cmp.status != MatchStatus::mismatch;
  o.results["passed"] = o.passed;
  return o;
}

// oscillator --------------------------------------------------------------

Rational parse_exact_real(const std::string& s, const char* name) {
  try {
    return Rational::parse(s);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string("cannot parse --") + name + " '" + s + "'");
  }
}

double parse_real(const std::string& s, const char* name) {
  if (s.find('/') != std::string::npos) return parse_exact_real(s, name).to_double();
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("cannot parse --") + name + " '" + s + "'");
}

json gammas_json(const std::vector<GaussianRational>& g) { return gamma_strings(g); }
json gammas_json(const std::vector<std::complex<double>>& g) {
  json a = json::array();
  for (auto z : g) a.push_back(complex_json(z));
  return a;
}

template <class T>
void oscillator_results(const BasicOscillatorSpec<T>& s, long long first, long long last, Outcome& o) {
  const auto cls = classify(s);
  o.results["gammas"] = gammas_json(map_params(s));
  o.results["classification"] = {{"curvature", to_string(cls.curvature)},
                                 {"cubic", to_string(cls.cubic)},
                                 {"quartic", to_string(cls.quartic)}};
  std::optional<long long> top;
  bool bound = true;
  try {
    top = n_max(s);
  } catch (const NoBoundStates& e) {
    bound = false;
    o.results["bound_states_error"] = e.what();
  }
  o.results["bound_states"] = bound;
  o.results["n_max"] = !bound ? json(nullptr) : top ? json(*top) : json("unbounded");
  const auto table = energy_levels(s, first, last);
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,E,dE,bound\n";
  for (const auto& r : table.rows) {
    rows.push_back({{"n", r.n},
                    {"E", value_json(r.E)},
                    {"dE", value_json(r.dE)},
                    {"spacing", value_json(spacing(s, r.n))},
                    {"bound", r.bound}});
    csv << r.n << ',' << csv_value(r.E) << ',' << csv_value(r.dE) << ',' << (r.bound ? "true" : "false") << '\n';
  }
  o.results["levels"] = rows;
  if (bound) {
    const long long upto = top ? std::min(*top, last) : last;
    const auto phi = phi_positivity(s, upto);
    o.results["phi"] = {{"checked_up_to", upto},
                        {"values_checked", phi.checked},
                        {"all_positive", phi.all_positive},
                        {"min_value", value_json(phi.min_value)},
                        {"min_B", phi.min_B},
                        {"min_n", phi.min_n}};
  }
  o.csv = csv.str();
}

Outcome cmd_oscillator(const Config& c) {
  Outcome o;
  const auto [first, last] = parse_range(c.n_range.empty() ? "1:10" : c.n_range);
  const bool decimal = has_decimal(c.kappa) || has_decimal(c.beta) || has_decimal(c.mu) || has_decimal(c.nu);
  o.inputs = {{"kappa", c.kappa}, {"beta", c.beta}, {"mu", c.mu}, {"nu", c.nu}, {"n", {first, last}}};
  o.results["arithmetic"] = decimal ? "double" : "exact";
  if (decimal) {
    OscillatorSpec s{parse_real(c.kappa, "kappa"), parse_real(c.beta, "beta"), parse_real(c.mu, "mu"),
                     parse_real(c.nu, "nu")};
    oscillator_results(s, first, last, o);
  } else {
    ExactOscillatorSpec s{parse_exact_real(c.kappa, "kappa"), parse_exact_real(c.beta, "beta"),
                          parse_exact_real(c.mu, "mu"), parse_exact_real(c.nu, "nu")};
    oscillator_results(s, first, last, o);
  }
  if (c.format != "csv") o.csv.clear();
  return o;
}

// figure ------------------------------------------------------------------

Outcome cmd_figure(const Config& c) {
  Outcome o;
  o.inputs = {{"id", c.figure_id}};
  const auto series = figure_series(c.figure_id);
  if (c.format != "json") {
    o.csv = figure_csv(figure_data(c.figure_id));
    return o;
  }
  json list = json::array();
  for (const auto& s : series) {
    json pts = json::array();
    for (long long n = 1; n <= s.n_last; ++n) pts.push_back({{"n", n}, {"E", energy(s.spec, static_cast<double>(n))}});
    list.push_back({{"label", s.label},
                    {"kappa", s.spec.kappa},
                    {"beta", s.spec.beta},
                    {"mu", s.spec.mu},
                    {"nu", s.spec.nu},
                    {"n_last", s.n_last},
                    {"points", pts}});
  }
  o.results["series"] = list;
  return o;
}

// conjecture-check --------------------------------------------------------

Outcome cmd_conjectures(const Config& c) {
  Outcome o;
  o.inputs = {{"N", c.order}, {"seed", c.seed}, {"points", c.points}};
  if (c.order <= 5) {
    const auto r = verify_ladder_algebra(c.order, c.seed);
    o.results["structure_algebra"] = {{"symmetries", r.symmetries_ok()},
                                      {"independence", r.independence_ok()},
                                      {"jacobian_ranks", {r.rank_with_I, r.rank_with_Iprime}},
                                      {"ladder_relations", r.structure_ok()},
                                      {"algebra_order", r.algebra_order},
                                      {"passed", r.passed()}};
    o.passed = r.passed();
  } else {
    o.results["structure_algebra"] = nullptr;
  }
  const auto r2 = verify_survivor_families(c.order, c.seed, c.points);
  o.results["spectrum_families"] = {{"method", r2.symbolic ? "symbolic" : "exact random points"},
                                     {"type_I", r2.type_one_ok},
                                     {"type_II", r2.type_two_ok},
                                     {"boundaries", r2.boundaries_ok},
                                     {"survivors", r2.symbolic ? json(r2.survivors) : json(nullptr)},
                                     {"points_checked", r2.points_checked},
                                     {"passed", r2.passed()}};
  o.passed = o.passed && r2.passed();
  o.results["passed"] = o.passed;
  return o;
}

json document(const std::string& command) {
  json d;
  d["schema_version"] = report_schema_version();
  d["command"] = command;
  return d;
}

int emit(const std::string& text, const Config& c, std::ostream& out, std::ostream& err) {
  if (c.out_path.empty()) {
    out << text;
    return ok;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f || !(f << text)) {
    err << "error: cannot write " << c.out_path << '\n';
    return module_error;
  }
  return ok;
}

int fail(const std::string& command, const std::string& kind, const std::string& message, int code,
         std::ostream& out, std::ostream& err) {
  json d = document(command);
  d["error"] = {{"kind", kind}, {"message", message}};
  out << d.dump(2) << '\n';
  err << "error: " << message << '\n';
  return code;
}

}  // namespace

std::string report_schema_version() { return "1.0.0"; }

std::string decimals_to_fractions(const std::string& text) {
  static const std::regex decimal(R"((\d*)\.(\d*))");
  std::string out;
  auto it = std::sregex_iterator(text.begin(), text.end(), decimal);
  std::size_t pos = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    const std::string whole = m[1], frac = m[2];
    if (whole.empty() && frac.empty()) throw std::invalid_argument("stray '.' in '" + text + "'");
    out += text.substr(pos, static_cast<std::size_t>(m.position()) - pos);
    const Rational q = Rational::parse((whole.empty() ? "0" : whole) + frac) / Rational::parse("1" + std::string(frac.size(), '0'));
    out += q.to_string();
    pos = static_cast<std::size_t>(m.position() + m.length());
  }
  return out + text.substr(pos);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact engine for generalized Zernike Hamiltonians", "zernike"};
  app.require_subcommand(1);
  const auto add_out = [&](CLI::App* s) { s->add_option("--out", c.out_path, "Write the document to this file"); };
  const auto add_order = [&](CLI::App* s, int lo, int hi) {
    s->add_option("--N", c.order, "Order N of the Hamiltonian")->required()->check(CLI::Range(lo, hi));
  };

  auto* verify = app.add_subcommand("verify", "Check [I,H] = [I',H] = [C,H] = 0 and the dependence relation");
  add_order(verify, 2, 5);
  verify->add_flag("--operators", c.operators, "Also print H, I and I'");
  add_out(verify);

  auto* derive = app.add_subcommand("derive", "Solve the symmetry ansatz");
  add_order(derive, 2, 5);
  derive->add_option("--leading", c.leading, "p1, p2 or both")->check(CLI::IsMember({"p1", "p2", "both"}));
  add_out(derive);

  auto* higgs = app.add_subcommand("higgs", "Polynomial algebra relations or the structure function");
  add_order(higgs, 1, kMaxGammas);
  higgs->add_option("--emit", c.emit, "relations or phi")->check(CLI::IsMember({"relations", "phi"}));
  add_out(higgs);

  auto* spectrum = app.add_subcommand("spectrum", "Solve the representation constraints");
  add_order(spectrum, 1, kMaxGammas);
  spectrum->add_option("--gammas", c.gammas, "Comma-separated couplings, e.g. 2i,-1");
  spectrum->add_option("--n", c.n_range, "n, a:b or a..b");
  spectrum->add_flag("--symbolic", c.symbolic, "Keep n symbolic");
  spectrum->add_option("--vanish", c.vanish, "default, none or indices k for the g_k -> 0 filter");
  spectrum->add_option("--type", c.type, "Keep only this family (I, II, III, IV, other)");
  spectrum->add_flag("--allow-ground-state", c.allow_ground_state, "Accept n = 0");
  spectrum->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  add_out(spectrum);

  auto* oracle = app.add_subcommand("oracle", "Graded-matrix spectrum compared with the Type I formula");
  add_order(oracle, 1, kMaxGammas);
  oracle->add_option("--gammas", c.gammas, "Comma-separated exact couplings")->required();
  oracle->add_option("--max-degree", c.max_degree, "Degree cutoff D")->required()->check(CLI::Range(0u, 200u));
  oracle->add_flag("--eigenvectors", c.eigenvectors, "Include eigenvectors");
  add_out(oracle);

  auto* osc = app.add_subcommand("oscillator", "Curved oscillator spectrum, n_max and Phi positivity");
  osc->add_option("--kappa", c.kappa, "Curvature")->required();
  osc->add_option("--beta", c.beta, "Linear coefficient (default -2)");
  osc->add_option("--mu", c.mu, "Cubic perturbation");
  osc->add_option("--nu", c.nu, "Quartic perturbation");
  osc->add_option("--n", c.n_range, "n range (default 1:10)");
  osc->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
  add_out(osc);

  auto* figure = app.add_subcommand("figure", "Energy levels plotted in figures 1-5");
  figure->add_option("--id", c.figure_id, "Figure number")->required()->check(CLI::Range(1, 5));
  std::string figure_format = "csv";
  figure->add_option("--format", figure_format)->check(CLI::IsMember({"json", "csv"}));
  add_out(figure);

  auto* conj = app.add_subcommand("conjecture-check", "Ladder algebra and Type I/II structure functions");
  add_order(conj, 2, kMaxGammas);
  conj->add_option("--seed", c.seed, "Seed for the random points");
  conj->add_option("--points", c.points, "Random points for N >= 6")->check(CLI::Range(1, 100000));
  add_out(conj);

  std::string command;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    const auto subs = app.get_subcommands();
    return fail(subs.empty() ? "" : subs.front()->get_name(), "usage", e.what(), usage_error, out, err);
  }
  command = app.get_subcommands().front()->get_name();
  if (command == "figure") c.format = figure_format;

  Outcome o;
  try {
    if (command == "verify") o = cmd_verify(c);
    else if (command == "derive") o = cmd_derive(c);
    else if (command == "higgs") o = cmd_higgs(c);
    else if (command == "spectrum") o = cmd_spectrum(c);
    else if (command == "oracle") o = cmd_oracle(c);
    else if (command == "oscillator") o = cmd_oscillator(c);
    else if (command == "figure") o = cmd_figure(c);
    else o = cmd_conjectures(c);
  } catch (const UsageError& e) {
    return fail(command, "usage", e.what(), usage_error, out, err);
  } catch (const std::invalid_argument& e) {
    return fail(command, "invalid-input", e.what(), module_error, out, err);
  } catch (const std::exception& e) {
    return fail(command, "module", e.what(), module_error, out, err);
  }

  int code = ok;
  if (!o.csv.empty()) {
    code = emit(o.csv, c, out, err);
  } else {
    json d = document(command);
    d["inputs"] = o.inputs;
    d["results"] = o.results;
    code = emit(d.dump(2) + "\n", c, out, err);
  }
  if (code != ok) return code;
  return o.passed ? ok : check_failed;
}

}  // namespace zernike::cli
