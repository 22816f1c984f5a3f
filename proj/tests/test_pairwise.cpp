#include <doctest.h>

#include <random>

#include "fsp/error.hpp"
#include "fsp/fuzzy_soft_set.hpp"
#include "fsp/pairwise.hpp"
#include "support/convert.hpp"

using namespace testsupport;
using fsp::ErrorCode;

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

std::vector<std::string> ids(std::initializer_list<const char*> list) { return {list.begin(), list.end()}; }

}  // namespace

TEST_CASE("new_fuzzy_soft_set validates the worked example") {
  const std::vector<std::vector<std::string>> text{
      {"0.7", "1.0", "0.6", "0.2", "0.4", "0.6", "0.5", "0.1", "0.8", "0.5"},
      {"1.0", "0.2", "0.2", "0.4", "0.8", "0.3", "0.9", "1.0", "0.2", "0.8"},
      {"1.0", "0.9", "0.1", "0.6", "0.7", "0.7", "0.3", "0.3", "0.5", "0.3"},
      {"0.8", "1.0", "0.3", "0.1", "0.1", "0.3", "0.5", "0.5", "1.0", "1.0"},
      {"1.0", "0.2", "0.8", "0.4", "0.2", "0.9", "0.5", "0.9", "0.7", "0.4"}};
  std::vector<std::string> alts;
  std::vector<fsp::Attribute> attrs;
  for (std::size_t i = 0; i < 5; ++i) alts.push_back(golden::alternative_id(i));
  for (int e = 1; e <= 10; ++e) attrs.push_back({golden::attribute_id(e), ""});

  const auto fss = fsp::new_fuzzy_soft_set(alts, attrs, text);
  CHECK(fss == golden_fss());
  CHECK(fss.alternative_count() == 5);
  CHECK(fss.attribute_count() == 10);
  CHECK(fss.grade(0, 0) == fsp::Grade::parse("0.7"));
}

TEST_CASE("new_fuzzy_soft_set edge cases and errors") {
  SUBCASE("minimal instance") {
    const auto fss = fsp::new_fuzzy_soft_set({"x"}, {{"e", ""}}, {{"0.0"}});
    CHECK(fss.grade(0, 0).units() == 0);
  }
  SUBCASE("grade out of range is located") {
    try {
      fsp::new_fuzzy_soft_set({"x", "y"}, {{"e", ""}, {"f", ""}}, {{"0.1", "0.2"}, {"1.2", "0.3"}});
      FAIL("expected GradeOutOfRange");
    } catch (const fsp::Error& e) {
      CHECK(e.code() == ErrorCode::GradeOutOfRange);
      CHECK(e.location() == "grades[1][0]");
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({"x", "y"}, {{"e", ""}}, {{"0.1"}}); }) ==
          ErrorCode::DimensionMismatch);
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({"x"}, {{"e", ""}, {"f", ""}}, {{"0.1"}}); }) ==
          ErrorCode::DimensionMismatch);
  }
  SUBCASE("duplicate and empty ids") {
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({"x", "x"}, {{"e", ""}}, {{"0.1"}, {"0.2"}}); }) ==
          ErrorCode::DuplicateId);
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({"x"}, {{"e", ""}, {"e", "again"}}, {{"0.1", "0.2"}}); }) ==
          ErrorCode::DuplicateId);
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({""}, {{"e", ""}}, {{"0.1"}}); }) == ErrorCode::InvalidId);
  }
  SUBCASE("empty universe and attribute set") {
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({}, {{"e", ""}}, {}); }) == ErrorCode::EmptyUniverse);
    CHECK(code_of([] { fsp::new_fuzzy_soft_set({"x"}, {}, {{}}); }) == ErrorCode::EmptyAttributeSet);
  }
}

TEST_CASE("restrict_attributes") {
  const auto fss = golden_fss();
  SUBCASE("identity") {
    std::vector<std::string> all;
    for (int e = 1; e <= 10; ++e) all.push_back(golden::attribute_id(e));
    CHECK(fss.restrict_attributes(all) == fss);
  }
  SUBCASE("single column keeps the original grades") {
    const auto one = fss.restrict_attributes(ids({"ε1"}));
    REQUIRE(one.attribute_count() == 1);
    REQUIRE(one.alternative_count() == 5);
    const int expected[] = {7000, 10000, 10000, 8000, 10000};
    for (std::size_t i = 0; i < 5; ++i) CHECK(one.grade(i, 0).units() == expected[i]);
  }
  SUBCASE("column order follows the source, not the request") {
    const auto two = fss.restrict_attributes(ids({"ε9", "ε2"}));
    CHECK(two.attributes()[0].id == "ε2");
    CHECK(two.attributes()[1].id == "ε9");
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { fss.restrict_attributes({}); }) == ErrorCode::EmptyAttributeSet);
    CHECK(code_of([&] { fss.restrict_attributes(ids({"ε11"})); }) == ErrorCode::UnknownAttribute);
    CHECK(code_of([&] {
            std::vector<std::string> all;
            for (int e = 1; e <= 10; ++e) all.push_back(golden::attribute_id(e));
            fss.eliminate_attributes(all);
          }) == ErrorCode::EmptyAttributeSet);
  }
}

TEST_CASE("digest tracks content") {
  const auto a = golden_fss();
  CHECK(a.digest() == golden_fss().digest());
  CHECK(a.digest().rfind("sha256:", 0) == 0);
  CHECK(a.digest().size() == 7 + 64);
  CHECK(a.with_grade(0, 0, fsp::Grade::parse("0.8")).digest() != a.digest());
  CHECK(a.restrict_attributes(ids({"ε1"})).digest() != a.digest());
}

TEST_CASE("compare reproduces the published pair (ψ1, ψ2)") {
  const auto cell = fsp::compare(golden_fss(), "ψ1", "ψ2");
  CHECK(numbered(cell.rho) == golden::Set{2, 3, 6, 9});
  CHECK(numbered(cell.chi) == golden::Set{1, 4, 5, 7, 8, 10});
  CHECK(cell.eq.empty());
  CHECK(code_of([] { fsp::compare(golden_fss(), "ψ1", "ψ9"); }) == ErrorCode::UnknownAlternative);
}

TEST_CASE("compare on the diagonal is the full attribute set") {
  const auto fss = golden_fss();
  for (std::size_t i = 0; i < fss.alternative_count(); ++i) {
    const auto cell = fsp::compare(fss, i, i);
    CHECK(numbered(cell.rho) == golden::kAll);
    CHECK(cell.rho == cell.chi);
    CHECK(cell.rho == cell.eq);
  }
}

TEST_CASE("compare matches the brute-force oracle on random 3x4 instances") {
  std::mt19937_64 rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const auto g = oracle::random_matrix(rng, 3, 4);
    const auto fss = to_fss(g);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        const auto expected = oracle::compare(g, i, j);
        const auto cell = fsp::compare(fss, i, j);
        CHECK(as_set(cell.rho) == expected.rho);
        CHECK(as_set(cell.chi) == expected.chi);
        CHECK(as_set(cell.eq) == expected.eq);
      }
    }
  }
}

TEST_CASE("comparison matrix reproduces the domination and subjection tables") {
  const auto matrix = fsp::comparison_matrix(golden_fss());
  REQUIRE(matrix.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(numbered(matrix.at(i, j).rho) == golden::kRho[i][j]);
      CHECK(numbered(matrix.at(i, j).chi) == golden::kChi[i][j]);
      CHECK(matrix.at(i, j).rho == matrix.at(j, i).chi);
    }
  }
  const auto single = fsp::comparison_matrix(fsp::new_fuzzy_soft_set({"x"}, {{"e", ""}, {"f", ""}}, {{"0.1", "0.9"}}));
  CHECK(single.size() == 1);
  CHECK(single.at(0, 0).eq.size() == 2);
}

TEST_CASE("cumulative scores") {
  SUBCASE("worked example totals") {
    const auto scores = fsp::cumulative_scores(golden_fss());
    REQUIRE(scores.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
      CAPTURE(i);
      CHECK(scores[i].alternative == i);
      CHECK(scores[i].dom == golden::kTotals[i].dom);
      CHECK(scores[i].sub == golden::kTotals[i].sub);
      CHECK(scores[i].equity == golden::kTotals[i].equity);
    }
  }
  SUBCASE("single alternative sees only the diagonal") {
    const auto scores =
        fsp::cumulative_scores(fsp::new_fuzzy_soft_set({"x"}, {{"a", ""}, {"b", ""}, {"c", ""}}, {{"0", "0.5", "1"}}));
    CHECK(scores[0].dom == 3);
    CHECK(scores[0].sub == 3);
    CHECK(scores[0].equity == 3);
  }
  SUBCASE("random 4x6 instances match summed oracle set sizes") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 200; ++trial) {
      const auto g = oracle::random_matrix(rng, 4, 6);
      const auto expected = oracle::totals(g);
      const auto scores = fsp::cumulative_scores(to_fss(g));
      for (std::size_t i = 0; i < 4; ++i) {
        CHECK(scores[i].dom == expected[i].dom);
        CHECK(scores[i].sub == expected[i].sub);
        CHECK(scores[i].equity == expected[i].equity);
      }
    }
  }
}
