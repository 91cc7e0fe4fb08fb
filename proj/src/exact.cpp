#include "tipsy/exact.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace tipsy {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  bool negative = false;
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction: " + s);
    mpz_class d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    out = Rational(mpz_class(std::string(num)), d);
  } else {
    auto dot = body.find('.');
    std::string_view whole = body.substr(0, dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw std::invalid_argument("malformed number: " + s);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) {
      throw std::invalid_argument("malformed number: " + s);
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string digits = std::string(whole) + std::string(frac);
    out = Rational(mpz_class(digits.empty() ? "0" : digits), scale);
  }
  out.canonicalize();
  return negative ? Rational(-out) : out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace tipsy
