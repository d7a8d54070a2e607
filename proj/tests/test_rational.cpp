#include <doctest.h>

#include "ltlsn/rational.hpp"

using namespace ltlsn;

TEST_SUITE("rational") {

TEST_CASE("fractions are reduced to lowest terms")
{
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("2/6") == Rational(1, 3));
  CHECK(parse_rational("2/6").numerator() == 1);
  CHECK(parse_rational("4/4") == Rational(1));
  CHECK(parse_rational("0/7") == Rational(0));
}

TEST_CASE("decimals convert exactly")
{
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK(parse_rational("1.") == Rational(1));
  CHECK(parse_rational("0.333") == Rational(333, 1000));
  CHECK(parse_rational("0.333") != Rational(1, 3));
  CHECK(parse_rational("1") == Rational(1));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
}

TEST_CASE("malformed input is rejected")
{
  for (const char* bad : {"", "abc", "1/0", "1/", "/2", ".", "1.2.3", "1/-3", "0.1234567890123456789",
                          "99999999999999999999", "1/3x", "+1"})
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
}

TEST_CASE("canonical text form")
{
  CHECK(to_string(Rational(2, 6)) == "1/3");
  CHECK(to_string(Rational(1)) == "1");
  CHECK(to_string(Rational(0)) == "0");
}

}
