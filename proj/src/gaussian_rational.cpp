#include "zernike/gaussian_rational.hpp"

#include <ostream>
#include <stdexcept>

namespace zernike {

GaussianRational GaussianRational::i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1};
    case 1: return {Rational(0), Rational(1)};
    case 2: return {-1};
    default: return {Rational(0), Rational(-1)};
  }
}

GaussianRational GaussianRational::times_i_pow(int k) const {
  switch (((k % 4) + 4) % 4) {
    case 0: return *this;
    case 1: return {-im_, re_};
    case 2: return {-re_, -im_};
    default: return {im_, -re_};
  }
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.im_.is_zero()) {
    re_ *= o.re_;
    im_ *= o.re_;
    return *this;
  }
  if (im_.is_zero()) {
    im_ = re_ * o.im_;
    re_ *= o.re_;
    return *this;
  }
  Rational r = re_ * o.re_ - im_ * o.im_;
  Rational i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero Gaussian rational");
  if (o.im_.is_zero()) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

std::string GaussianRational::to_string() const {
  return "(" + re_.to_string() + ")+(" + im_.to_string() + ")i";
}

GaussianRational GaussianRational::parse(std::string_view text) {
  // (re)+(im)i
  const auto bad = [&] { return std::invalid_argument("malformed Gaussian rational '" + std::string(text) + "'"); };
  if (text.size() < 7 || text.front() != '(' || text.substr(text.size() - 2) != ")i") throw bad();
  const auto mid = text.find(")+(");
  if (mid == std::string_view::npos) throw bad();
  const auto re = text.substr(1, mid - 1);
  const auto im = text.substr(mid + 3, text.size() - 2 - (mid + 3));
  return {Rational::parse(re), Rational::parse(im)};
}

GaussianRational GaussianRational::parse_friendly(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '*') s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty scalar");
  if (s.front() == '(') return parse(s);
  // Split at the last sign that is not leading and not after '/'.
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') split = k;
  const auto parse_part = [](std::string part) -> GaussianRational {
    if (!part.empty() && part.back() == 'i') {
      part.pop_back();
      if (part.empty() || part == "+") part = "1";
      if (part == "-") part = "-1";
      // allow "3/7i" and "3i/7"
      return {Rational(0), Rational::parse(part)};
    }
    const auto ipos = part.find('i');
    if (ipos != std::string::npos) {
      std::string p = part;
      p.erase(ipos, 1);
      if (p.empty() || p == "+" || p.front() == '/') p = "1" + (p == "+" ? std::string() : p);
      if (p.rfind("-/", 0) == 0) p = "-1" + p.substr(1);
      return {Rational(0), Rational::parse(p)};
    }
    return {Rational::parse(part), Rational(0)};
  };
  if (split == std::string::npos) return parse_part(s);
  return parse_part(s.substr(0, split)) + parse_part(s.substr(split));
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

GaussianRational pow(const GaussianRational& z, unsigned k) {
  GaussianRational result(1), base = z;
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return result;
}

}  // namespace zernike
