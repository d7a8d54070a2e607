#include "ltlsn/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace ltlsn {

namespace {

std::int64_t parse_integer(std::string_view digits, std::string_view whole)
{
  if (digits.empty())
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  std::int64_t value = 0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw std::invalid_argument("number out of range '" + std::string(whole) + "'");
  if (ec != std::errc() || end != digits.data() + digits.size() || digits.front() == '-' ||
      digits.front() == '+')
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
  bool negative = false;
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_integer(body.substr(0, slash), text);
    std::int64_t den = parse_integer(body.substr(slash + 1), text);
    if (den == 0)
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(num, den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = body.substr(0, dot);
    std::string_view frac_part = body.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    if (frac_part.size() > 18)
      throw std::invalid_argument("too many decimal places in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i)
      scale *= 10;
    std::int64_t whole = int_part.empty() ? 0 : parse_integer(int_part, text);
    std::int64_t frac = frac_part.empty() ? 0 : parse_integer(frac_part, text);
    if (whole > (std::numeric_limits<std::int64_t>::max() - frac) / scale)
      throw std::invalid_argument("number out of range '" + std::string(text) + "'");
    result = Rational(whole * scale + frac, scale);
  } else {
    result = Rational(parse_integer(body, text));
  }
  return negative ? -result : result;
}

std::string to_string(const Rational& r)
{
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace ltlsn
