#include <stdexcept>

#include "zernike/weyl.hpp"

namespace zernike {

namespace {

std::string monomial_text(const NormalMonomial& m) {
  return "q1^" + std::to_string(m.a) + " q2^" + std::to_string(m.b) + " p1^" + std::to_string(m.c) + " p2^" +
         std::to_string(m.d);
}

std::uint8_t parse_exponent(std::string_view field, std::string_view prefix) {
  if (field.substr(0, prefix.size()) != prefix) {
    throw std::invalid_argument("expected '" + std::string(prefix) + "' in '" + std::string(field) + "'");
  }
  const auto digits = field.substr(prefix.size());
  if (digits.empty() || digits.size() > 3) throw std::invalid_argument("bad exponent in '" + std::string(field) + "'");
  unsigned v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad exponent in '" + std::string(field) + "'");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  if (v > 255) throw std::invalid_argument("exponent too large");
  return static_cast<std::uint8_t>(v);
}

NormalMonomial parse_monomial(std::string_view text) {
  NormalMonomial m;
  std::uint8_t* slots[] = {&m.a, &m.b, &m.c, &m.d};
  const char* prefixes[] = {"q1^", "q2^", "p1^", "p2^"};
  std::size_t pos = 0;
  for (int k = 0; k < 4; ++k) {
    auto end = text.find(' ', pos);
    if ((k < 3) == (end == std::string_view::npos)) throw std::invalid_argument("malformed monomial '" + std::string(text) + "'");
    if (end == std::string_view::npos) end = text.size();
    *slots[k] = parse_exponent(text.substr(pos, end - pos), prefixes[k]);
    pos = end + 1;
  }
  return m;
}

}  // namespace

std::string to_string(const WeylOperator& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [m, p] : x.terms()) {
    const auto mono = monomial_text(m);
    for (const auto& t : p.terms()) {
      if (!s.empty()) s += " + ";
      s += t.coeff.to_string();
      const auto g = monomial_string(t.exps);
      if (!g.empty()) s += "*" + g;
      s += " * " + mono;
    }
  }
  return s;
}

WeylOperator parse_operator(std::string_view text) {
  if (text == "0") return {};
  WeylOperator out;
  std::size_t pos = 0;
  while (true) {
    auto end = text.find(" + ", pos);
    if (end == std::string_view::npos) end = text.size();
    const auto piece = text.substr(pos, end - pos);
    const auto star = piece.find(" * ");
    if (star == std::string_view::npos) throw std::invalid_argument("malformed operator term '" + std::string(piece) + "'");
    const Poly coeff = Poly::parse(piece.substr(0, star));
    if (coeff.terms().size() != 1) throw std::invalid_argument("malformed coefficient in '" + std::string(piece) + "'");
    out.add_term(parse_monomial(piece.substr(star + 3)), coeff);
    if (end == text.size()) break;
    pos = end + 3;
  }
  return out;
}

}  // namespace zernike
