#ifndef NEWTONSCOPE_RATIONAL_HPP
#define NEWTONSCOPE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace newtonscope {

/// Exact rational with 64-bit numerator/denominator. Directions, support
/// values and face gaps stay tiny in this toolkit, so any overflow is a
/// logic error and throws.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  static Rational fromChecked(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 an = n < 0 ? -n : n;
    __int128 g = gcd128(an, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    const __int128 lim = static_cast<__int128>(INT64_MAX);
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("rational overflow");
    Rational r;
    r.num = static_cast<long long>(n);
    r.den = n == 0 ? 1 : static_cast<long long>(d);
    if (r.den == 0) throw std::domain_error("rational with zero denominator");
    return r;
  }

  double toDouble() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool isZero() const { return num == 0; }
  bool isInteger() const { return den == 1; }

  Rational operator-() const {
    Rational r = *this;
    r.num = -r.num;
    return r;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return fromChecked(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return fromChecked(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("rational division by zero");
    return fromChecked(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  /// Parses "3", "-2", "3/2", "-7/4".
  static Rational parse(const std::string& text) {
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) return Rational(std::stoll(text));
      return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("bad rational literal: '" + text + "'");
    }
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }
};

using RationalVector = std::vector<Rational>;

inline Rational dot(const RationalVector& w, const std::vector<int>& alpha) {
  if (w.size() != alpha.size()) throw std::invalid_argument("rational dot: length mismatch");
  Rational acc(0);
  for (size_t i = 0; i < w.size(); ++i) acc = acc + w[i] * Rational(alpha[i]);
  return acc;
}

inline Rational dot(const RationalVector& w, const std::vector<long long>& alpha) {
  if (w.size() != alpha.size()) throw std::invalid_argument("rational dot: length mismatch");
  Rational acc(0);
  for (size_t i = 0; i < w.size(); ++i) acc = acc + w[i] * Rational(alpha[i]);
  return acc;
}

}  // namespace newtonscope

#endif
