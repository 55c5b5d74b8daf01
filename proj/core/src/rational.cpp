#include "usflab/rational.hpp"

#include <cctype>

#include "usflab/errors.hpp"

namespace usflab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  if (!all_digits(s)) raise(Errc::parse_error, "malformed integer literal");
  BigInt value{std::string(s)};
  return negative ? -value : value;
}

}  // namespace

std::string format_rational(const Rational& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  BigInt num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) raise(Errc::parse_error, "malformed denominator");
  BigInt den{std::string(den_text)};
  if (den == 0) raise(Errc::parse_error, "zero denominator");
  return Rational(num, den);
}

}  // namespace usflab
