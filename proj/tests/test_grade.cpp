#include <doctest.h>

#include "fsp/error.hpp"
#include "fsp/grade.hpp"
#include "fsp/rational.hpp"

using fsp::ErrorCode;
using fsp::Grade;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const fsp::Error& e) {
    return e.code();
  }
  FAIL("expected an fsp::Error");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("grades parse exactly to 1/10000 units") {
  CHECK(Grade::parse("0").units() == 0);
  CHECK(Grade::parse("1").units() == 10000);
  CHECK(Grade::parse("1.0").units() == 10000);
  CHECK(Grade::parse("0.7").units() == 7000);
  CHECK(Grade::parse("0.25").units() == 2500);
  CHECK(Grade::parse("0.0001").units() == 1);
  CHECK(Grade::parse(".5").units() == 5000);
  CHECK(Grade::parse("0.").units() == 0);
  CHECK(Grade::parse("-0.0").units() == 0);
  CHECK(Grade::parse("0.1") == Grade::parse("0.1000"));
  CHECK(Grade::parse("0.3") < Grade::parse("0.3001"));
}

TEST_CASE("grade range and precision errors") {
  CHECK(code_of([] { Grade::parse("1.2"); }) == ErrorCode::GradeOutOfRange);
  CHECK(code_of([] { Grade::parse("1.0001"); }) == ErrorCode::GradeOutOfRange);
  CHECK(code_of([] { Grade::parse("-0.1"); }) == ErrorCode::GradeOutOfRange);
  CHECK(code_of([] { Grade::parse("12"); }) == ErrorCode::GradeOutOfRange);
  CHECK(code_of([] { Grade::parse("0.12345"); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::parse(""); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::parse("."); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::parse("abc"); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::parse("0.5x"); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::parse("1e-1"); }) == ErrorCode::InvalidGrade);
  CHECK(code_of([] { Grade::from_units(10001); }) == ErrorCode::GradeOutOfRange);
  CHECK(code_of([] { Grade::from_units(-1); }) == ErrorCode::GradeOutOfRange);
}

TEST_CASE("grade text is the shortest form with one fractional digit") {
  CHECK(Grade::parse("0").to_string() == "0.0");
  CHECK(Grade::parse("1").to_string() == "1.0");
  CHECK(Grade::parse("0.70").to_string() == "0.7");
  CHECK(Grade::parse("0.25").to_string() == "0.25");
  CHECK(Grade::parse("0.0001").to_string() == "0.0001");
  for (int u = 0; u <= Grade::kScale; u += 7) {
    const Grade g = Grade::from_units(u);
    CHECK(Grade::parse(g.to_string()) == g);
  }
}

TEST_CASE("rational rendering") {
  using fsp::Rational;
  CHECK(fsp::to_fraction_string(Rational(192, 10)) == "96/5");
  CHECK(fsp::to_fraction_string(Rational(6)) == "6/1");
  CHECK(fsp::to_fraction_string(Rational(-3, 6)) == "-1/2");
  CHECK(fsp::to_decimal_string(Rational(96, 5), 4) == "19.2000");
  CHECK(fsp::to_decimal_string(Rational(33, 8), 4) == "4.1250");
  CHECK(fsp::to_decimal_string(Rational(63, 13), 4) == "4.8462");
  CHECK(fsp::to_decimal_string(Rational(130, 11), 4) == "11.8182");
  CHECK(fsp::to_decimal_string(Rational(-1, 3), 4) == "-0.3333");
  CHECK(fsp::to_decimal_string(Rational(-1, 2), 0) == "-1");
  CHECK(fsp::to_decimal_string(Rational(1, 20000), 4) == "0.0001");
  CHECK(fsp::to_decimal_string(Rational(-6), 4) == "-6.0000");
  CHECK(fsp::round_to_places(Rational(33, 8), 2) == Rational(413, 100));
  CHECK(fsp::parse_fraction("96/5") == Rational(96, 5));
  CHECK(fsp::parse_fraction("-3") == Rational(-3));
  CHECK_THROWS_AS(fsp::parse_fraction("1/0"), fsp::Error);
  CHECK_THROWS_AS(fsp::parse_fraction("x/2"), fsp::Error);
}
