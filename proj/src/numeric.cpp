#include "diskop/numeric.hpp"

#include "diskop/error.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <gmpxx.h>
#include <string>

namespace diskop {

namespace {

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  return std::string(text.substr(b, e - b));
}

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Decimal literal with optional sign, fraction and exponent, read exactly.
std::optional<Rational> parse_decimal(const std::string& s) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) negative = s[pos++] == '-';
  std::string digits;
  std::size_t int_len = 0, frac_len = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++], ++int_len;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) digits += s[pos++], ++frac_len;
  }
  if (digits.empty()) return std::nullopt;
  long exponent = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    std::string exp_text;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) exp_text += s[pos++];
    std::string_view rest(s.data() + pos, s.size() - pos);
    if (!is_digits(rest) || rest.size() > 6) return std::nullopt;
    exp_text += rest;
    pos = s.size();
    exponent = std::strtol(exp_text.c_str(), nullptr, 10);
  }
  if (pos != s.size()) return std::nullopt;
  mpz_class numerator(digits, 10);
  exponent -= static_cast<long>(frac_len);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  mpq_class q = exponent < 0 ? mpq_class(numerator, power) : mpq_class(numerator * power);
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q.get_mpq_t());
}

std::optional<Rational> parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  std::string_view num_body = num;
  if (!num_body.empty() && (num_body[0] == '-' || num_body[0] == '+')) num_body.remove_prefix(1);
  if (!is_digits(num_body) || !is_digits(den)) return std::nullopt;
  mpz_class n(num_body.data(), 10), d(den, 10);
  if (d == 0) throw DomainError("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  if (num[0] == '-') q = -q;
  return Rational(q.get_mpq_t());
}

}  // namespace

template <>
Rational parse_scalar<Rational>(std::string_view text) {
  const std::string s = trim(text);
  if (auto q = parse_rational(s)) return *q;
  throw UsageError("not a number: '" + s + "'");
}

template <>
double parse_scalar<double>(std::string_view text) {
  const std::string s = trim(text);
  if (s.find('/') != std::string::npos) {
    if (auto q = parse_rational(s)) return to_double(*q);
    throw UsageError("not a number: '" + s + "'");
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw UsageError("not a number: '" + s + "'");
  return v;
}

std::string format_scalar(const Rational& v) { return v.str(); }

std::string format_scalar(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return std::to_string(v);
  return std::string(buf, ptr);
}

std::optional<Rational> exact_sqrt(const Rational& v) {
  if (v < 0) return std::nullopt;
  mpq_class q(v.backend().data());
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return Rational(r.get_mpq_t());
}

Rational sqrt_upper(const Rational& v) {
  if (v <= 0) return Rational(0);
  if (auto r = exact_sqrt(v)) return *r;
  // ceil(sqrt(n * K^2 / d)) / K with K = 2^32 bounds sqrt(v) from above.
  mpq_class q(v.backend().data());
  mpz_class scale = mpz_class(1) << 64;
  mpz_class scaled = q.get_num() * scale;
  mpz_class quotient;
  mpz_cdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), quotient.get_mpz_t());
  if (root * root < quotient) root += 1;
  mpq_class r(root, mpz_class(1) << 32);
  r.canonicalize();
  return Rational(r.get_mpq_t());
}

}  // namespace diskop
