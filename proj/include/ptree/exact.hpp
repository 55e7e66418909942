#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptree {

using BigInt = boost::multiprecision::cpp_int;
using i128 = __int128;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown for malformed input (CLI maps it to exit code 2).
struct InputError : Error {
  using Error::Error;
};

// Exact integer. Values with |v| < 2^126 live inline, larger ones in a
// shared immutable cpp_int.
class Integer {
 public:
  Integer() = default;
  Integer(int v) : small_(v) {}
  Integer(long v) : small_(v) {}
  Integer(long long v) : small_(v) {}
  explicit Integer(const BigInt& v);

  static Integer from_i128(i128 v);
  static Integer parse(std::string_view s);

  bool is_small() const noexcept { return !big_; }
  i128 small_value() const noexcept { return small_; }
  BigInt to_big() const;
  bool fits_i64() const noexcept;
  std::int64_t to_i64() const;
  double to_double() const;

  int sign() const noexcept;
  bool is_zero() const noexcept { return !big_ && small_ == 0; }
  std::size_t bit_length() const;  // of |v|
  std::string str() const;

  Integer operator-() const;
  Integer abs() const { return sign() < 0 ? -*this : *this; }

  friend Integer operator+(const Integer& a, const Integer& b);
  friend Integer operator-(const Integer& a, const Integer& b);
  friend Integer operator*(const Integer& a, const Integer& b);
  Integer& operator+=(const Integer& o) { return *this = *this + o; }
  Integer& operator-=(const Integer& o) { return *this = *this - o; }
  Integer& operator*=(const Integer& o) { return *this = *this * o; }

  friend bool operator==(const Integer& a, const Integer& b);
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b);

  // Truncating quotient; the division must be exact.
  static Integer exact_div(const Integer& a, const Integer& b);
  static Integer floor_div(const Integer& a, const Integer& b);
  static Integer gcd(const Integer& a, const Integer& b);
  static Integer pow2(int e);
  Integer shifted(int e) const;  // multiply by 2^e (e >= 0)

 private:
  i128 small_ = 0;
  std::shared_ptr<const BigInt> big_;
};

// sign(a*b - c*d)
int sign_det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d);
// sign(a*x + b*y + c*w)
int sign_dot3(const Integer& a, const Integer& b, const Integer& c,
              const Integer& x, const Integer& y, const Integer& w);
Integer dot3(const Integer& a, const Integer& b, const Integer& c,
             const Integer& x, const Integer& y, const Integer& w);
Integer det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d);

// Rational with positive denominator in lowest terms.
class Scalar {
 public:
  Scalar() : num_(0), den_(1) {}
  Scalar(int v) : num_(v), den_(1) {}
  Scalar(long long v) : num_(v), den_(1) {}
  Scalar(Integer v) : num_(std::move(v)), den_(1) {}
  Scalar(Integer num, Integer den);

  // "n" or "n/d"
  static Scalar parse(std::string_view s);

  const Integer& num() const { return num_; }
  const Integer& den() const { return den_; }
  int sign() const { return num_.sign(); }
  bool is_integer() const { return den_ == Integer(1); }
  std::string str() const;
  double to_double() const;
  Integer floor() const;
  Integer ceil() const;

  Scalar operator-() const { return Scalar(-num_, den_, raw_tag{}); }
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

 private:
  struct raw_tag {};
  Scalar(Integer n, Integer d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}
  Integer num_, den_;
};

}  // namespace ptree
