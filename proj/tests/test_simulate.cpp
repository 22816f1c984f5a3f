#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fsp/error.hpp"
#include "fsp/simulate.hpp"
#include "support/convert.hpp"

using namespace testsupport;
using fsp::ErrorCode;
using fsp::Measure;
using fsp::sim::SimulationConfig;

namespace {

// Reference splitmix64 finaliser (Steele, Lea, Flood).
std::uint64_t ref_splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Grid matrix for scenario k, drawn with the documented stream scheme but
// without touching the library.
oracle::Matrix ref_scenario(std::uint64_t seed, std::uint64_t k, std::size_t n, std::size_t m, int steps) {
  std::mt19937_64 engine(ref_splitmix64(seed + (k + 1) * 0x9E3779B97F4A7C15ULL));
  const std::uint64_t range = static_cast<std::uint64_t>(steps) + 1;
  const std::uint64_t reject_from = UINT64_MAX - UINT64_MAX % range;
  oracle::Matrix g(n, std::vector<int>(m));
  for (auto& row : g) {
    for (auto& x : row) {
      std::uint64_t draw = engine();
      while (draw >= reject_from) draw = engine();
      x = static_cast<int>(draw % range);
    }
  }
  return g;
}

struct RefStats {
  std::vector<std::uint64_t> top;
  std::uint64_t ties = 0;
};

std::vector<RefStats> ref_simulation(std::uint64_t scenarios, std::size_t n, std::size_t m, int steps,
                                     std::uint64_t seed) {
  std::vector<RefStats> out(3, RefStats{std::vector<std::uint64_t>(n, 0), 0});
  for (std::uint64_t k = 0; k < scenarios; ++k) {
    const auto t = oracle::totals(ref_scenario(seed, k, n, m, steps));
    for (int measure = 0; measure < 3; ++measure) {
      oracle::Frac best = oracle::value(t[0], measure);
      for (std::size_t i = 1; i < n; ++i)
        if (oracle::cmp(oracle::value(t[i], measure), best) > 0) best = oracle::value(t[i], measure);
      for (std::size_t i = 0; i < n; ++i) {
        if (oracle::cmp(oracle::value(t[i], measure), best) == 0) ++out[measure].top[i];
        for (std::size_t j = i + 1; j < n; ++j)
          if (oracle::cmp(oracle::value(t[i], measure), oracle::value(t[j], measure)) == 0) ++out[measure].ties;
      }
    }
  }
  return out;
}

SimulationConfig small(std::uint64_t scenarios, std::uint64_t seed) {
  SimulationConfig c;
  c.scenarios = scenarios;
  c.n_alternatives = 4;
  c.n_attributes = 5;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("splitmix64 matches the reference finaliser") {
  for (std::uint64_t x : {0ULL, 1ULL, 42ULL, 0xFFFFFFFFFFFFFFFFULL}) CHECK(fsp::sim::splitmix64(x) == ref_splitmix64(x));
}

TEST_CASE("random scenarios stay on the grid and are reproducible") {
  for (const char* step : {"0.1", "0.25", "0.5", "1.0", "0.0001"}) {
    CAPTURE(step);
    const auto g = fsp::Grade::parse(step);
    auto s1 = fsp::sim::ScenarioStream::for_scenario(11, 3);
    auto s2 = fsp::sim::ScenarioStream::for_scenario(11, 3);
    const auto a = fsp::sim::random_scenario(s1, 6, 9, g);
    CHECK(a == fsp::sim::random_scenario(s2, 6, 9, g));
    CHECK(a.alternatives().front() == "x1");
    CHECK(a.attributes().back().id == "e9");
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t e = 0; e < 9; ++e) CHECK(a.grade(i, e).units() % g.units() == 0);
  }
  auto s = fsp::sim::ScenarioStream::for_scenario(0, 0);
  const auto one = fsp::sim::random_scenario(s, 1, 1, fsp::Grade::parse("0.1"));
  CHECK(one.alternative_count() == 1);
  CHECK(one.attribute_count() == 1);
}

TEST_CASE("grid draws match the independent stream") {
  for (std::uint64_t k : {0ULL, 1ULL, 57ULL}) {
    auto stream = fsp::sim::ScenarioStream::for_scenario(2024, k);
    const auto fss = fsp::sim::random_scenario(stream, 4, 5, fsp::Grade::parse("0.1"));
    const auto ref = ref_scenario(2024, k, 4, 5, 10);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t e = 0; e < 5; ++e) CHECK(fss.grade(i, e).units() == ref[i][e] * 1000);
  }
}

TEST_CASE("uniform draws cover the whole range") {
  auto stream = fsp::sim::ScenarioStream::for_scenario(5, 0);
  std::vector<int> seen(11, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto v = stream.uniform(10);
    REQUIRE(v <= 10);
    ++seen[v];
  }
  for (int count : seen) CHECK(count > 300);
}

TEST_CASE("simulation agrees with the replay oracle") {
  for (std::uint64_t seed : {0ULL, 7ULL, 123456789ULL}) {
    CAPTURE(seed);
    const auto report = fsp::sim::run_simulation(small(200, seed));
    const auto ref = ref_simulation(200, 4, 5, 10, seed);
    REQUIRE(report.measures.size() == 3);
    for (int m = 0; m < 3; ++m) {
      CHECK(report.measures[m].top_frequency == ref[m].top);
      CHECK(report.measures[m].tie_count == ref[m].ties);
    }
  }
}

TEST_CASE("simulation invariants") {
  const auto report = fsp::sim::run_simulation(small(300, 99));
  for (const auto& s : report.measures) {
    // Every scenario credits at least one alternative.
    const auto credited = std::accumulate(s.top_frequency.begin(), s.top_frequency.end(), std::uint64_t{0});
    CHECK(credited >= 300);
    CHECK(credited <= 300 * 4);
  }
  SUBCASE("same seed, same report") { CHECK(fsp::sim::run_simulation(small(300, 99)) == report); }
  SUBCASE("measure subset keeps the per-measure numbers") {
    auto c = small(300, 99);
    c.measures = {Measure::G3};
    const auto only = fsp::sim::run_simulation(c);
    REQUIRE(only.measures.size() == 1);
    CHECK(only.measures[0] == report.measures[2]);
  }
  SUBCASE("zero scenarios") {
    const auto empty = fsp::sim::run_simulation(small(0, 1));
    for (const auto& s : empty.measures) {
      CHECK(s.tie_count == 0);
      CHECK(std::all_of(s.top_frequency.begin(), s.top_frequency.end(), [](auto v) { return v == 0; }));
    }
    const auto text = fsp::sim::emit_report(empty, fsp::io::Format::Text);
    CHECK(text.find('#') == std::string::npos);
  }
  SUBCASE("one alternative always wins, never ties") {
    auto c = small(20, 3);
    c.n_alternatives = 1;
    for (const auto& s : fsp::sim::run_simulation(c).measures) {
      CHECK(s.top_frequency == std::vector<std::uint64_t>{20});
      CHECK(s.tie_count == 0);
    }
  }
}

TEST_CASE("top credits exceed the scenario count exactly when the maximum is tied") {
  // Small grids make argmax ties common.
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    auto c = small(150, seed);
    c.n_attributes = 2;
    c.grid_step = fsp::Grade::parse("0.5");
    const auto report = fsp::sim::run_simulation(c);
    for (std::size_t mi = 0; mi < 3; ++mi) {
      std::uint64_t tied_scenarios = 0, extra = 0;
      for (std::uint64_t k = 0; k < c.scenarios; ++k) {
        auto stream = fsp::sim::ScenarioStream::for_scenario(seed, k);
        const auto fss = fsp::sim::random_scenario(stream, c.n_alternatives, c.n_attributes, c.grid_step);
        const auto outcome = fsp::sim::evaluate_scenario(fss, c.measures);
        const auto& top = outcome.top[mi];
        const auto winners = static_cast<std::uint64_t>(std::count(top.begin(), top.end(), true));
        if (winners > 1) ++tied_scenarios;
        extra += winners - 1;
      }
      const auto& s = report.measures[mi];
      const auto credits = std::accumulate(s.top_frequency.begin(), s.top_frequency.end(), std::uint64_t{0});
      CHECK(credits == c.scenarios + extra);
      CHECK((credits == c.scenarios) == (tied_scenarios == 0));
    }
  }
  // No argmax tie is possible with a single alternative.
  auto c = small(30, 4);
  c.n_alternatives = 1;
  for (const auto& s : fsp::sim::run_simulation(c).measures) CHECK(s.top_frequency[0] == 30);
}

TEST_CASE("evaluate_scenario on the worked example") {
  const auto out = fsp::sim::evaluate_scenario(golden_fss(), {Measure::G1, Measure::G2, Measure::G3});
  CHECK(out.top[0] == std::vector<bool>{false, false, false, false, true});
  CHECK(out.top[1] == std::vector<bool>{false, false, false, false, true});
  CHECK(out.top[2] == std::vector<bool>{false, false, true, false, false});
  CHECK(out.tie_pairs == std::vector<std::uint64_t>{0, 0, 0});

  const auto tied = fsp::new_fuzzy_soft_set({"a", "b", "c"}, {{"e", ""}, {"f", ""}},
                                            {{"0.5", "0.5"}, {"0.5", "0.5"}, {"0.1", "0.9"}});
  const auto t = fsp::sim::evaluate_scenario(tied, {Measure::G2});
  CHECK(t.tie_pairs[0] >= 1);
}

TEST_CASE("report serialisation") {
  const auto report = fsp::sim::run_simulation(small(40, 8));
  SUBCASE("json round trip") {
    const auto text = fsp::sim::emit_report(report, fsp::io::Format::Json);
    CHECK(fsp::sim::report_from_json(nlohmann::json::parse(text)) == report);
  }
  SUBCASE("csv has one row per measure and alternative") {
    const auto csv = fsp::sim::emit_report(report, fsp::io::Format::Csv);
    CHECK(csv.rfind("measure,alternative,top_frequency,tie_count\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 3 * 4);
    CHECK(fsp::sim::emit_report(report, fsp::io::Format::Csv) == csv);
  }
  SUBCASE("text histogram") {
    const auto text = fsp::sim::emit_report(report, fsp::io::Format::Text);
    CHECK(text.find("g1:") != std::string::npos);
    CHECK(text.find("x4") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  const auto code = [](auto&& f) {
    try {
      f();
    } catch (const fsp::Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };
  SimulationConfig c;
  CHECK_NOTHROW(c.validate());
  SUBCASE("bad dimensions") {
    c.n_alternatives = 0;
    CHECK(code([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  }
  SUBCASE("grid step must divide one") {
    c.grid_step = fsp::Grade::parse("0.3");
    CHECK(code([&] { c.validate(); }) == ErrorCode::InvalidArgument);
    c.grid_step = fsp::Grade::parse("0.0");
    CHECK(code([&] { c.validate(); }) == ErrorCode::InvalidArgument);
  }
  SUBCASE("config_from_json overlays defaults") {
    const auto parsed = fsp::sim::config_from_json(
        nlohmann::json::parse(R"({"scenarios": 5, "grid_step": "0.25", "measures": ["g2"]})"));
    CHECK(parsed.scenarios == 5);
    CHECK(parsed.n_alternatives == 10);
    CHECK(parsed.grid_step.units() == 2500);
    CHECK(parsed.measures == std::vector<Measure>{Measure::G2});
    CHECK(code([] { fsp::sim::config_from_json(nlohmann::json::parse(R"({"grid_step": 0.1})")); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code([] { fsp::sim::config_from_json(nlohmann::json::parse(R"({"scenarios": -1})")); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code([] { fsp::sim::config_from_json(nlohmann::json::parse(R"({"measures": ["g7"]})")); }) ==
          ErrorCode::InvalidArgument);
  }
}
