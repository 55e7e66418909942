#include "ptree/exact.hpp"

#include <cmath>

namespace ptree {

namespace {

constexpr i128 kLimit = i128(1) << 126;

inline bool in_range(i128 v) { return v < kLimit && v > -kLimit; }

BigInt big_of(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
  BigInt r = BigInt(std::uint64_t(u >> 64));
  r <<= 64;
  r += BigInt(std::uint64_t(u));
  return neg ? BigInt(-r) : r;
}

unsigned __int128 ugcd(unsigned __int128 a, unsigned __int128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  do {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

}  // namespace

Integer::Integer(const BigInt& v) {
  if (v == 0) return;
  BigInt a = boost::multiprecision::abs(v);
  if (boost::multiprecision::msb(a) < 126) {
    BigInt hi = a >> 64;
    BigInt lo = a & BigInt(0xFFFFFFFFFFFFFFFFull);
    unsigned __int128 u = (unsigned __int128)hi.convert_to<std::uint64_t>() << 64;
    u |= lo.convert_to<std::uint64_t>();
    small_ = v < 0 ? -(i128)u : (i128)u;
  } else {
    big_ = std::make_shared<const BigInt>(v);
  }
}

Integer Integer::from_i128(i128 v) {
  Integer r;
  if (in_range(v)) {
    r.small_ = v;
  } else {
    r.big_ = std::make_shared<const BigInt>(big_of(v));
  }
  return r;
}

Integer Integer::parse(std::string_view s) {
  if (s.empty()) throw InputError("empty integer");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw InputError("malformed integer '" + std::string(s) + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (s[j] < '0' || s[j] > '9') throw InputError("malformed integer '" + std::string(s) + "'");
  if (s.size() - i <= 36) {
    i128 v = 0;
    for (std::size_t j = i; j < s.size(); ++j) v = v * 10 + (s[j] - '0');
    return from_i128(s[0] == '-' ? -v : v);
  }
  BigInt v(std::string(s[0] == '+' ? s.substr(1) : s));
  return Integer(v);
}

BigInt Integer::to_big() const { return big_ ? *big_ : big_of(small_); }

bool Integer::fits_i64() const noexcept {
  return !big_ && small_ >= INT64_MIN && small_ <= INT64_MAX;
}

std::int64_t Integer::to_i64() const {
  if (!fits_i64()) throw Error("integer does not fit in 64 bits");
  return (std::int64_t)small_;
}

double Integer::to_double() const {
  return big_ ? big_->convert_to<double>() : (double)small_;
}

int Integer::sign() const noexcept {
  if (big_) return big_->sign();
  return small_ > 0 ? 1 : (small_ < 0 ? -1 : 0);
}

std::size_t Integer::bit_length() const {
  if (big_) return boost::multiprecision::msb(boost::multiprecision::abs(*big_)) + 1;
  unsigned __int128 u = small_ < 0 ? (unsigned __int128)(-small_) : (unsigned __int128)small_;
  std::size_t n = 0;
  while (u) {
    ++n;
    u >>= 1;
  }
  return n;
}

std::string Integer::str() const {
  if (big_) return big_->str();
  if (small_ == 0) return "0";
  bool neg = small_ < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-small_) : (unsigned __int128)small_;
  std::string s;
  while (u) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return std::string(s.rbegin(), s.rend());
}

Integer Integer::operator-() const {
  if (!big_) return from_i128(-small_);
  return Integer(BigInt(-*big_));
}

Integer operator+(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return Integer::from_i128(a.small_ + b.small_);
  return Integer(BigInt(a.to_big() + b.to_big()));
}

Integer operator-(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return Integer::from_i128(a.small_ - b.small_);
  return Integer(BigInt(a.to_big() - b.to_big()));
}

Integer operator*(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    i128 r;
    if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Integer::from_i128(r);
  }
  return Integer(BigInt(a.to_big() * b.to_big()));
}

bool operator==(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (!a.big_ || !b.big_) return false;  // big values are always out of small range
  return *a.big_ == *b.big_;
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

Integer Integer::exact_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw Error("division by zero");
  if (!a.big_ && !b.big_) return from_i128(a.small_ / b.small_);
  return Integer(BigInt(a.to_big() / b.to_big()));
}

Integer Integer::floor_div(const Integer& a, const Integer& b) {
  if (b.is_zero()) throw Error("division by zero");
  if (!a.big_ && !b.big_) {
    i128 q = a.small_ / b.small_;
    if ((a.small_ % b.small_ != 0) && ((a.small_ < 0) != (b.small_ < 0))) --q;
    return from_i128(q);
  }
  BigInt x = a.to_big(), y = b.to_big();
  BigInt q = x / y;
  if (q * y != x && ((x < 0) != (y < 0))) q -= 1;
  return Integer(q);
}

Integer Integer::gcd(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) {
    auto ua = (unsigned __int128)(a.small_ < 0 ? -a.small_ : a.small_);
    auto ub = (unsigned __int128)(b.small_ < 0 ? -b.small_ : b.small_);
    return from_i128((i128)ugcd(ua, ub));
  }
  return Integer(BigInt(boost::multiprecision::gcd(a.to_big(), b.to_big())));
}

Integer Integer::pow2(int e) {
  if (e < 0) throw Error("negative exponent");
  if (e < 126) return from_i128(i128(1) << e);
  return Integer(BigInt(BigInt(1) << e));
}

Integer Integer::shifted(int e) const { return *this * pow2(e); }

int sign_det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  if (a.fits_i64() && b.fits_i64() && c.fits_i64() && d.fits_i64()) {
    i128 x = a.small_value() * b.small_value();
    i128 y = c.small_value() * d.small_value();
    return x > y ? 1 : (x < y ? -1 : 0);
  }
  return (a * b - c * d).sign();
}

Integer det2(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return a * b - c * d;
}

Integer dot3(const Integer& a, const Integer& b, const Integer& c,
             const Integer& x, const Integer& y, const Integer& w) {
  return a * x + b * y + c * w;
}

int sign_dot3(const Integer& a, const Integer& b, const Integer& c,
              const Integer& x, const Integer& y, const Integer& w) {
  if (a.is_small() && b.is_small() && c.is_small() && x.is_small() && y.is_small() &&
      w.is_small()) {
    // 62-bit operands: three products of 64-bit values cannot overflow
    constexpr i128 lim = i128(1) << 62;
    auto fits = [&](const Integer& v) { return v.small_value() < lim && v.small_value() > -lim; };
    if (fits(a) && fits(b) && fits(c) && fits(x) && fits(y) && fits(w)) {
      i128 s = i128(std::int64_t(a.small_value())) * std::int64_t(x.small_value()) +
               i128(std::int64_t(b.small_value())) * std::int64_t(y.small_value()) +
               i128(std::int64_t(c.small_value())) * std::int64_t(w.small_value());
      return s > 0 ? 1 : (s < 0 ? -1 : 0);
    }
    i128 p, q, r, s;
    if (!__builtin_mul_overflow(a.small_value(), x.small_value(), &p) &&
        !__builtin_mul_overflow(b.small_value(), y.small_value(), &q) &&
        !__builtin_mul_overflow(c.small_value(), w.small_value(), &r) &&
        !__builtin_add_overflow(p, q, &s) && !__builtin_add_overflow(s, r, &s))
      return s > 0 ? 1 : (s < 0 ? -1 : 0);
  }
  return dot3(a, b, c, x, y, w).sign();
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Integer num, Integer den) {
  if (den.is_zero()) throw Error("zero denominator");
  if (den.sign() < 0) {
    num = -num;
    den = -den;
  }
  Integer g = Integer::gcd(num, den);
  if (!(g == Integer(1)) && !g.is_zero()) {
    num = Integer::exact_div(num, g);
    den = Integer::exact_div(den, g);
  }
  if (num.is_zero()) den = Integer(1);
  num_ = std::move(num);
  den_ = std::move(den);
}

Scalar Scalar::parse(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Scalar(Integer::parse(s));
  Integer d = Integer::parse(s.substr(slash + 1));
  if (d.is_zero()) throw InputError("zero denominator in '" + std::string(s) + "'");
  return Scalar(Integer::parse(s.substr(0, slash)), d);
}

std::string Scalar::str() const {
  if (is_integer()) return num_.str();
  return num_.str() + "/" + den_.str();
}

double Scalar::to_double() const {
  if (num_.is_small() && den_.is_small()) return (double)num_.small_value() / (double)den_.small_value();
  using boost::multiprecision::cpp_rational;
  return cpp_rational(num_.to_big(), den_.to_big()).convert_to<double>();
}

Integer Scalar::floor() const { return Integer::floor_div(num_, den_); }
Integer Scalar::ceil() const { return -Integer::floor_div(-num_, den_); }

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  return Scalar(a.num_ * b.num_, a.den_ * b.den_);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.num_.is_zero()) throw Error("division by zero");
  return Scalar(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
  int s = sign_det2(a.num_, b.den_, b.num_, a.den_);
  return s < 0 ? std::strong_ordering::less
               : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace ptree
