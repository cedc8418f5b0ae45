#include "poolhire/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace poolhire {

std::int64_t floor(const Rational& r) {
  // boost::rational keeps the denominator positive.
  const auto n = r.numerator();
  const auto d = r.denominator();
  auto q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

std::int64_t ceil(const Rational& r) {
  const auto n = r.numerator();
  const auto d = r.denominator();
  auto q = n / d;
  if (n % d != 0 && n > 0) ++q;
  return q;
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = parse_int(text.substr(0, slash), text);
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto int_part = text.substr(0, dot);
    const auto frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15) {
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    }
    const bool negative = !int_part.empty() && int_part.front() == '-';
    const std::int64_t whole =
        (int_part.empty() || int_part == "-" || int_part == "+") ? 0 : parse_int(int_part, text);
    const std::int64_t frac = parse_int(frac_part, text);
    if (frac < 0) throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    Rational r(whole);
    r += Rational(negative ? -frac : frac, scale);
    return r;
  }
  return Rational(parse_int(text, text));
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace poolhire
