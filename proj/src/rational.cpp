#include "zernike/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace zernike {

namespace {

bool fits(const mpz_class& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

// Reduces n/d with d != 0 into canonical form; false on overflow (only when
// n or d is INT64_MIN).
bool normalize(std::int64_t& n, std::int64_t& d) {
  if (d < 0) {
    if (n == INT64_MIN || d == INT64_MIN) return false;
    n = -n;
    d = -d;
  }
  if (n == 0) {
    d = 1;
    return true;
  }
  if (n == INT64_MIN) return false;
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  n /= g;
  d /= g;
  return true;
}

}  // namespace

Rational::Rational(long long n) : num_(n) {
  if (n == INT64_MIN) assign(mpq_class(mpz_class(static_cast<signed long>(n))));
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  num_ = n;
  den_ = d;
  if (!normalize(num_, den_)) {
    mpq_class q{mpz_class(static_cast<signed long>(n)), mpz_class(static_cast<signed long>(d))};
    q.canonicalize();
    assign(q);
  }
}

Rational::Rational(const mpq_class& q) { assign(q); }

void Rational::assign(const mpq_class& q) {
  if (fits(q.get_num()) && fits(q.get_den())) {
    num_ = q.get_num().get_si();
    den_ = q.get_den().get_si();
    if (num_ != INT64_MIN) {
      big_.reset();
      return;
    }
  }
  num_ = 0;
  den_ = 1;
  big_ = std::make_shared<const mpq_class>(q);
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const std::string s(text);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const bool ok = (c >= '0' && c <= '9') || c == '/' || (i == 0 && (c == '-' || c == '+'));
    if (!ok) throw std::invalid_argument("malformed rational '" + s + "'");
  }
  mpq_class q;
  const std::string body = (s[0] == '+') ? s.substr(1) : s;
  if (q.set_str(body, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
  q.canonicalize();
  return Rational(q);
}

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<signed long>(num_)), mpz_class(static_cast<signed long>(den_)));
}

std::string Rational::to_string() const {
  if (big_) return big_->get_str(10);
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator-() const {
  if (!big_) return Rational(-num_, den_);
  return Rational(mpq_class(-*big_));
}

Rational& Rational::operator+=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (o.num_ == 0) return *this;
    if (num_ == 0) return *this = o;
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != INT64_MIN) {
        num_ = s;
        return *this;
      }
    } else {
      std::int64_t a, b, n, d;
      if (!__builtin_mul_overflow(num_, o.den_, &a) && !__builtin_mul_overflow(o.num_, den_, &b) &&
          !__builtin_add_overflow(a, b, &n) && !__builtin_mul_overflow(den_, o.den_, &d) &&
          normalize(n, d)) {
        num_ = n;
        den_ = d;
        return *this;
      }
    }
  }
  assign(to_mpq() + o.to_mpq());
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  if (!big_ && !o.big_) {
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    // Cross-reduce first to keep products small.
    const std::int64_t g1 = std::gcd(num_, o.den_);
    const std::int64_t g2 = std::gcd(o.num_, den_);
    std::int64_t n, d;
    if (!__builtin_mul_overflow(num_ / g1, o.num_ / g2, &n) &&
        !__builtin_mul_overflow(den_ / g2, o.den_ / g1, &d) && n != INT64_MIN) {
      num_ = n;
      den_ = d;
      return *this;
    }
  }
  assign(to_mpq() * o.to_mpq());
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero rational");
  if (!o.big_) {
    Rational inv;
    inv.num_ = o.den_;
    inv.den_ = o.num_;
    if (normalize(inv.num_, inv.den_)) return *this *= inv;
  }
  assign(to_mpq() / o.to_mpq());
  return *this;
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (static_cast<bool>(a.big_) != static_cast<bool>(b.big_)) return false;  // canonical forms differ
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    __int128 l = static_cast<__int128>(a.num_) * b.den_;
    __int128 r = static_cast<__int128>(b.num_) * a.den_;
    return l <=> r;
  }
  const int c = cmp(a.to_mpq(), b.to_mpq());
  return c <=> 0;
}

std::size_t Rational::hash() const {
  if (big_) return std::hash<std::string>{}(big_->get_str());
  return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<std::int64_t>{}(den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

}  // namespace zernike
