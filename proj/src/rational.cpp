#include "isogroup/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>

namespace isogroup {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow(__int128 v) {
  if (v > std::numeric_limits<long long>::max() ||
      v < std::numeric_limits<long long>::min()) {
    fail(errc::overflow, "rational arithmetic exceeds 64-bit range");
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::make_reduced(__int128 n, __int128 d) {
  if (d == 0) fail(errc::zero_denominator, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rational::Rational(long long n, long long d) {
  *this = make_reduced(n, d);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s, errc code) -> long long {
    if (s.empty()) fail(code, "empty number");
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-') {
      neg = true;
      pos = 1;
      if (pos == s.size()) fail(code, "bare sign");
    }
    __int128 value = 0;
    for (; pos < s.size(); ++pos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos]))) {
        fail(code, "malformed fraction: '" + std::string(s) + "'");
      }
      value = value * 10 + (s[pos] - '0');
      if (value > std::numeric_limits<long long>::max()) {
        fail(errc::overflow, "number too large: '" + std::string(s) + "'");
      }
    }
    return neg ? -static_cast<long long>(value)
               : static_cast<long long>(value);
  };

  std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text, errc::parse_error));
  }
  long long n = parse_int(text.substr(0, slash), errc::parse_error);
  std::string_view den_part = text.substr(slash + 1);
  if (!den_part.empty() && den_part[0] == '-') {
    fail(errc::parse_error, "negative denominator: '" + std::string(text) + "'");
  }
  long long d = parse_int(den_part, errc::parse_error);
  if (d == 0) fail(errc::parse_error, "zero denominator: '" + std::string(text) + "'");
  return Rational(n, d);
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::operator+(const Rational& o) const {
  __int128 n = static_cast<__int128>(num_) * o.den_ +
               static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rational Rational::operator-(const Rational& o) const {
  __int128 n = static_cast<__int128>(num_) * o.den_ -
               static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rational Rational::operator*(const Rational& o) const {
  __int128 n = static_cast<__int128>(num_) * o.num_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  return make_reduced(n, d);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) fail(errc::zero_denominator, "division by zero");
  __int128 n = static_cast<__int128>(num_) * o.den_;
  __int128 d = static_cast<__int128>(den_) * o.num_;
  return make_reduced(n, d);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-static_cast<__int128>(num_));
  r.den_ = den_;
  return r;
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 lhs = static_cast<__int128>(num_) * o.den_;
  __int128 rhs = static_cast<__int128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace isogroup
