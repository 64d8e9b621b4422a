#include "tunnelmeet/rational.hpp"

#include <functional>
#include <stdexcept>

namespace tunnelmeet {

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  const Natural n{std::string(num)}, d{std::string(den)};
  if (d == 0) {
    throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(n, d);
  return negative ? Rational(-q) : q;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool exact_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  const Natural n = numerator(q), d = denominator(q);
  const Natural rn = sqrt(n), rd = sqrt(d);
  if (rn * rn != n || rd * rd != d) return false;
  root = Rational(rn, rd);
  return true;
}

std::size_t hash_value(const Rational& q) {
  const std::hash<std::string> h;
  const std::size_t a = h(numerator(q).str(16));
  const std::size_t b = h(denominator(q).str(16));
  return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
}

}  // namespace tunnelmeet
