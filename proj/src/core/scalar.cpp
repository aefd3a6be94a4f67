#include "gnch/scalar.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

#include "gnch/errors.hpp"

namespace gnch {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::string digits(s);
  if (!digits.empty() && digits.front() == '+') digits.erase(0, 1);
  bool ok = !digits.empty();
  for (std::size_t i = 0; i < digits.size() && ok; ++i) {
    const char c = digits[i];
    ok = std::isdigit(static_cast<unsigned char>(c)) || (i == 0 && c == '-' && digits.size() > 1);
  }
  if (!ok) throw ParseError("not a rational number: '" + std::string(whole) + "'");
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(trim(s.substr(0, slash)), s);
    mpz_class den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal literal: [sign] digits [. digits] [(e|E) [sign] digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string mantissa;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (mantissa.empty()) throw ParseError("not a rational number: '" + std::string(s) + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw ParseError("not a rational number: '" + std::string(s) + "'");
    const std::string_view rest = s.substr(i + 1);
    const char* first = rest.data();
    if (!rest.empty() && rest.front() == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size() || first == rest.data() + rest.size()) {
      throw ParseError("bad exponent in '" + std::string(s) + "'");
    }
  }
  mpz_class num(mantissa, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_digits;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational q = shift < 0 ? Rational(num, scale) : Rational(num * scale);
  q.canonicalize();
  return q;
}

double to_double(const Rational& v) {
  const double q = v.get_d();
  if (!std::isfinite(q) || sgn(v) == 0) return q;
  const double away = std::nextafter(q, sgn(v) > 0 ? HUGE_VAL : -HUGE_VAL);
  if (!std::isfinite(away)) return q;
  return abs(Rational(away) - v) < abs(v - Rational(q)) ? away : q;
}

double ScalarTraits<Rational>::to_double(const Rational& v) { return gnch::to_double(v); }

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw DomainError("cannot represent a non-finite value exactly");
  return Rational(v);
}

std::string format_rational(const Rational& v) { return v.get_str(10); }

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace gnch
