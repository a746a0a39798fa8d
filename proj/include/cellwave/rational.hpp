#ifndef CELLWAVE_RATIONAL_HPP
#define CELLWAVE_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cellwave {

// Exact rational arithmetic for the parameter plane (s, 1/p). The
// critical/non-critical dichotomy is discontinuous, so these decisions
// must never be made through floating-point fuzz when the inputs are
// rational.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend Rational operator/(Rational a, Rational b) {
    if (b.num == 0) throw std::invalid_argument("rational division by zero");
    return {a.num * b.den, a.den * b.num};
  }
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.num * b.den <= b.num * a.den; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  bool is_nonneg_integer() const { return den == 1 && num >= 0; }
  bool is_positive_integer() const { return den == 1 && num >= 1; }
  double to_double() const { return double(num) / double(den); }

  // Largest integer <= value.
  std::int64_t floor() const {
    std::int64_t q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Parses "3", "-3", "3/2", "0.75"-style decimals with up to 9 fractional digits.
  static Rational parse(const std::string& text);
};

inline Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  }
  auto dot = text.find('.');
  if (dot != std::string::npos) {
    std::string frac = text.substr(dot + 1);
    if (frac.size() > 9) throw std::invalid_argument("too many decimal digits: " + text);
    std::int64_t scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string ip = text.substr(0, dot);
    bool neg = !ip.empty() && ip[0] == '-';
    std::int64_t whole = ip.empty() || ip == "-" ? 0 : std::stoll(ip);
    std::int64_t f = frac.empty() ? 0 : std::stoll(frac);
    std::int64_t n = whole * scale + (neg ? -f : f);
    return Rational(n, scale);
  }
  return Rational(std::stoll(text), 1);
}

}  // namespace cellwave

#endif
