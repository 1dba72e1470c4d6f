#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace oddhg {

using int128 = __int128;

namespace detail {

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline int128 add128(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("rational overflow (add)");
  return r;
}

inline int128 mul128(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("rational overflow (mul)");
  return r;
}

std::string i128_to_string(int128 v);

}  // namespace detail

/// Exact rational on 128-bit integers. Invariant: den > 0 and gcd(|num|, den) = 1.
/// Operations throw std::overflow_error if an intermediate exceeds 128 bits;
/// inputs here stay far below that.
class Rat {
 public:
  Rat() = default;
  Rat(long long v) : num_(v), den_(1) {}  // NOLINT: implicit by design
  Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }
  static Rat make(int128 n, int128 d) {
    Rat r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  int128 num() const { return num_; }
  int128 den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    using namespace detail;
    int128 g = gcd128(a.den_, b.den_);
    int128 da = a.den_ / g;
    int128 db = b.den_ / g;
    int128 n = add128(mul128(a.num_, db), mul128(b.num_, da));
    int128 d = mul128(mul128(da, g), db);
    return make(n, d);
  }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator-(const Rat& a) { return make(-a.num_, a.den_); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    using namespace detail;
    int128 g1 = gcd128(a.num_, b.den_);
    int128 g2 = gcd128(b.num_, a.den_);
    int128 n = mul128(a.num_ / g1, b.num_ / g2);
    int128 d = mul128(a.den_ / g2, b.den_ / g1);
    return make(n, d);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * make(b.den_, b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    using namespace detail;
    return mul128(a.num_, b.den_) < mul128(b.num_, a.den_);
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator>=(const Rat& a, const Rat& b) { return b <= a; }

  double to_double() const { return static_cast<double>(static_cast<long double>(num_) / static_cast<long double>(den_)); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  /// Accepts "p", "p/q", and plain decimals like "-1.25" (converted exactly).
  static Rat parse(const std::string& text);

 private:
  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    int128 g = detail::gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  int128 num_ = 0;
  int128 den_ = 1;
};

}  // namespace oddhg
