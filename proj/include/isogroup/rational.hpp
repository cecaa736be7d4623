#ifndef ISOGROUP_RATIONAL_HPP
#define ISOGROUP_RATIONAL_HPP

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic; every distance in the project is one of these.
 */

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "isogroup/errors.hpp"

namespace isogroup {

/// Reduced fraction num/den with den > 0.  All operations are exact;
/// intermediate products run in 128 bits and narrowing failures throw
/// Error(errc::overflow) instead of wrapping.
class Rational {
public:
  constexpr Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  /// Strict parser for "p" and "p/q" (optional leading '-'); anything
  /// else, including "p/0" and empty input, is a parse_error.
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }

  /// Canonical serialization: "p" when den == 1, else "p/q".
  std::string str() const;

  Rational operator+(const Rational& other) const;
  Rational operator-(const Rational& other) const;
  Rational operator*(const Rational& other) const;
  Rational operator/(const Rational& other) const;
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  std::strong_ordering operator<=>(const Rational& other) const;
  bool operator==(const Rational& other) const {
    return num_ == other.num_ && den_ == other.den_;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

private:
  long long num_;
  long long den_;

  static Rational make_reduced(__int128 n, __int128 d);
};

inline const Rational& min(const Rational& a, const Rational& b) {
  return b < a ? b : a;
}
inline const Rational& max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace isogroup

#endif
