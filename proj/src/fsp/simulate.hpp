#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fsp/fuzzy_soft_set.hpp"
#include "fsp/io.hpp"
#include "fsp/measures.hpp"

namespace fsp::sim {

struct SimulationConfig {
  std::uint64_t scenarios = 1000;
  std::size_t n_alternatives = 10;
  std::size_t n_attributes = 20;
  Grade grid_step = Grade::from_units(1000);  // 0.1
  std::uint64_t seed = 0;
  std::vector<Measure> measures{Measure::G1, Measure::G2, Measure::G3};

  /// Throws InvalidArgument unless n_alternatives >= 1, n_attributes >= 1,
  /// grid_step > 0, 1/grid_step is an integer and measures is non-empty.
  void validate() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// Deterministic random stream for one scenario. Stream k of seed s is
/// std::mt19937_64 seeded with splitmix64(s + (k + 1) * 0x9E3779B97F4A7C15),
/// so scenario k draws the same grades whether run alone, serially or in parallel.
class ScenarioStream {
 public:
  explicit ScenarioStream(std::uint64_t state_seed) : engine_(state_seed) {}
  static ScenarioStream for_scenario(std::uint64_t seed, std::uint64_t scenario);

  /// Uniform integer in [0, bound] by rejection sampling (portable, unbiased).
  std::uint64_t uniform(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Every grade drawn independently and uniformly from {0, step, 2*step, ..., 1},
/// row by row. Alternatives are named x1..xn, attributes e1..em.
FuzzySoftSet random_scenario(ScenarioStream& stream, std::size_t n, std::size_t m, Grade grid_step);

struct MeasureStats {
  Measure measure = Measure::G1;
  /// Scenarios in which each alternative attains the maximum value; every
  /// alternative in a tied maximum is credited.
  std::vector<std::uint64_t> top_frequency;
  /// Σ over scenarios of the number of unordered alternative pairs with
  /// exactly equal values (over all ranks, not only the top).
  std::uint64_t tie_count = 0;

  friend bool operator==(const MeasureStats&, const MeasureStats&) = default;
};

struct SimulationReport {
  SimulationConfig config;
  std::vector<MeasureStats> measures;  // in config.measures order

  friend bool operator==(const SimulationReport&, const SimulationReport&) = default;
};

/// Per-scenario statistics, exposed for testing and incremental use.
struct ScenarioOutcome {
  std::vector<std::vector<bool>> top;            // [measure][alternative]
  std::vector<std::uint64_t> tie_pairs;          // [measure]
};
ScenarioOutcome evaluate_scenario(const FuzzySoftSet& fss, const std::vector<Measure>& measures);

SimulationReport run_simulation(const SimulationConfig& config);

nlohmann::ordered_json report_to_json(const SimulationReport& report);
SimulationReport report_from_json(const nlohmann::json& json);

/// Reads a config object; absent keys keep their defaults. Throws InvalidArgument.
SimulationConfig config_from_json(const nlohmann::json& json);

/// Csv, Json, or Text (per-measure histogram, bars scaled to the largest count).
std::string emit_report(const SimulationReport& report, io::Format format);

}  // namespace fsp::sim
