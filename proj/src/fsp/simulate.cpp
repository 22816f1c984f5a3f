#include "fsp/simulate.hpp"

#include <algorithm>
#include <limits>

#include "fsp/error.hpp"
#include "fsp/pairwise.hpp"

namespace fsp::sim {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr std::size_t kBarWidth = 50;

std::uint64_t grid_points(Grade step) { return static_cast<std::uint64_t>(Grade::kScale / step.units()); }

std::vector<Measure> parse_measures(const json& list) {
  if (!list.is_array()) throw Error(ErrorCode::InvalidArgument, "measures must be an array", "measures");
  std::vector<Measure> out;
  for (const auto& m : list) {
    auto parsed = m.is_string() ? parse_measure(m.get<std::string>()) : std::nullopt;
    if (!parsed) throw Error(ErrorCode::InvalidArgument, "unknown measure " + m.dump(), "measures");
    out.push_back(*parsed);
  }
  return out;
}

template <typename T>
T get_unsigned(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_unsigned()) {
    throw Error(ErrorCode::InvalidArgument, "expected a non-negative integer", key);
  }
  return it->get<T>();
}

}  // namespace

void SimulationConfig::validate() const {
  if (n_alternatives < 1) throw Error(ErrorCode::InvalidArgument, "need at least one alternative");
  if (n_attributes < 1) throw Error(ErrorCode::InvalidArgument, "need at least one attribute");
  if (grid_step.units() <= 0 || Grade::kScale % grid_step.units() != 0) {
    throw Error(ErrorCode::InvalidArgument,
                "grid step " + grid_step.to_string() + " must be positive with 1/step an integer");
  }
  if (measures.empty()) throw Error(ErrorCode::InvalidArgument, "no measures selected");
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ScenarioStream ScenarioStream::for_scenario(std::uint64_t seed, std::uint64_t scenario) {
  return ScenarioStream(splitmix64(seed + (scenario + 1) * 0x9E3779B97F4A7C15ULL));
}

std::uint64_t ScenarioStream::uniform(std::uint64_t bound) {
  if (bound == std::numeric_limits<std::uint64_t>::max()) return engine_();
  const std::uint64_t range = bound + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % range;
}

FuzzySoftSet random_scenario(ScenarioStream& stream, std::size_t n, std::size_t m, Grade grid_step) {
  const std::uint64_t points = grid_points(grid_step);
  std::vector<std::string> alternatives;
  std::vector<Attribute> attributes;
  for (std::size_t i = 0; i < n; ++i) alternatives.push_back("x" + std::to_string(i + 1));
  for (std::size_t e = 0; e < m; ++e) attributes.push_back({.id = "e" + std::to_string(e + 1), .label = {}});

  std::vector<std::vector<Grade>> grades(n, std::vector<Grade>(m));
  for (auto& row : grades) {
    for (auto& g : row) {
      g = Grade::from_units(static_cast<std::int64_t>(stream.uniform(points)) * grid_step.units());
    }
  }
  return FuzzySoftSet::create(std::move(alternatives), std::move(attributes), std::move(grades));
}

ScenarioOutcome evaluate_scenario(const FuzzySoftSet& fss, const std::vector<Measure>& measures) {
  std::vector<DecisionMeasures> values;
  for (const auto& s : cumulative_scores(fss)) values.push_back(decision_measures(s));

  ScenarioOutcome out;
  for (Measure m : measures) {
    std::vector<Rational> v;
    v.reserve(values.size());
    for (const auto& d : values) v.push_back(measure_value(d, m));

    const Rational best = *std::max_element(v.begin(), v.end());
    std::vector<bool> top(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) top[i] = v[i] == best;
    out.top.push_back(std::move(top));

    std::sort(v.begin(), v.end());
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < v.size();) {
      std::size_t j = i;
      while (j < v.size() && v[j] == v[i]) ++j;
      const std::uint64_t g = j - i;
      pairs += g * (g - 1) / 2;
      i = j;
    }
    out.tie_pairs.push_back(pairs);
  }
  return out;
}

SimulationReport run_simulation(const SimulationConfig& config) {
  config.validate();
  SimulationReport report{.config = config, .measures = {}};
  for (Measure m : config.measures) {
    report.measures.push_back(
        MeasureStats{.measure = m, .top_frequency = std::vector<std::uint64_t>(config.n_alternatives), .tie_count = 0});
  }

  for (std::uint64_t k = 0; k < config.scenarios; ++k) {
    auto stream = ScenarioStream::for_scenario(config.seed, k);
    const auto fss = random_scenario(stream, config.n_alternatives, config.n_attributes, config.grid_step);
    const auto outcome = evaluate_scenario(fss, config.measures);
    for (std::size_t mi = 0; mi < report.measures.size(); ++mi) {
      auto& stats = report.measures[mi];
      for (std::size_t i = 0; i < config.n_alternatives; ++i) stats.top_frequency[i] += outcome.top[mi][i];
      stats.tie_count += outcome.tie_pairs[mi];
    }
  }
  return report;
}

SimulationConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "simulation config must be a JSON object");
  SimulationConfig c;
  c.scenarios = get_unsigned<std::uint64_t>(j, "scenarios", c.scenarios);
  c.n_alternatives = get_unsigned<std::size_t>(j, "n_alternatives", c.n_alternatives);
  c.n_attributes = get_unsigned<std::size_t>(j, "n_attributes", c.n_attributes);
  c.seed = get_unsigned<std::uint64_t>(j, "seed", c.seed);
  if (auto it = j.find("grid_step"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::InvalidArgument, "grid_step must be a decimal string", "grid_step");
    try {
      c.grid_step = Grade::parse(it->get<std::string>());
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidArgument, e.detail(), "grid_step");
    }
  }
  if (auto it = j.find("measures"); it != j.end()) c.measures = parse_measures(*it);
  c.validate();
  return c;
}

ordered_json report_to_json(const SimulationReport& report) {
  const auto& c = report.config;
  ordered_json out;
  ordered_json config;
  config["scenarios"] = c.scenarios;
  config["n_alternatives"] = c.n_alternatives;
  config["n_attributes"] = c.n_attributes;
  config["grid_step"] = c.grid_step.to_string();
  config["seed"] = c.seed;
  ordered_json names = ordered_json::array();
  for (Measure m : c.measures) names.push_back(std::string(to_string(m)));
  config["measures"] = std::move(names);
  out["config"] = std::move(config);
  out["tie_semantics"] = "unordered pairs of alternatives with exactly equal value, all ranks, summed over scenarios";
  out["rng"] = "mt19937_64 per scenario, seeded splitmix64(seed + (k+1)*0x9E3779B97F4A7C15)";

  ordered_json measures = ordered_json::array();
  for (const auto& s : report.measures) {
    ordered_json m;
    m["measure"] = std::string(to_string(s.measure));
    m["top_frequency"] = s.top_frequency;
    m["tie_count"] = s.tie_count;
    measures.push_back(std::move(m));
  }
  out["measures"] = std::move(measures);
  return out;
}

SimulationReport report_from_json(const json& j) {
  if (!j.is_object() || !j.contains("config") || !j.contains("measures")) {
    throw Error(ErrorCode::SyntaxError, "simulation report needs 'config' and 'measures'");
  }
  SimulationReport report{.config = config_from_json(j.at("config")), .measures = {}};
  for (const auto& m : j.at("measures")) {
    auto measure = parse_measure(m.at("measure").get<std::string>());
    if (!measure) throw Error(ErrorCode::SyntaxError, "unknown measure in report");
    report.measures.push_back(MeasureStats{
        .measure = *measure,
        .top_frequency = m.at("top_frequency").get<std::vector<std::uint64_t>>(),
        .tie_count = m.at("tie_count").get<std::uint64_t>(),
    });
  }
  return report;
}

std::string emit_report(const SimulationReport& report, io::Format format) {
  const auto& c = report.config;
  switch (format) {
    case io::Format::Json:
      return report_to_json(report).dump(2) + "\n";
    case io::Format::Csv: {
      std::string out = "measure,alternative,top_frequency,tie_count\n";
      for (const auto& s : report.measures) {
        for (std::size_t i = 0; i < s.top_frequency.size(); ++i) {
          out += std::string(to_string(s.measure)) + ",x" + std::to_string(i + 1) + "," +
                 std::to_string(s.top_frequency[i]) + "," + std::to_string(s.tie_count) + "\n";
        }
      }
      return out;
    }
    case io::Format::Text: {
      std::string out = "Simulation: " + std::to_string(c.scenarios) + " scenarios, " +
                        std::to_string(c.n_alternatives) + " alternatives x " + std::to_string(c.n_attributes) +
                        " attributes, grid " + c.grid_step.to_string() + ", seed " + std::to_string(c.seed) + "\n";
      const std::size_t label_width = std::string("x" + std::to_string(c.n_alternatives)).size();
      for (const auto& s : report.measures) {
        std::uint64_t total = 0;
        std::uint64_t peak = 0;
        for (auto f : s.top_frequency) {
          total += f;
          peak = std::max(peak, f);
        }
        out += "\n" + std::string(to_string(s.measure)) + ": ties " + std::to_string(s.tie_count) +
               ", top credits " + std::to_string(total) + "\n";
        for (std::size_t i = 0; i < s.top_frequency.size(); ++i) {
          std::string label = "x" + std::to_string(i + 1);
          label.resize(label_width, ' ');
          const std::size_t bar = peak == 0 ? 0 : static_cast<std::size_t>((s.top_frequency[i] * kBarWidth + peak / 2) / peak);
          out += "  " + label + " |" + std::string(bar, '#') + std::string(kBarWidth - bar, ' ') + "| " +
                 std::to_string(s.top_frequency[i]) + "\n";
        }
      }
      return out;
    }
  }
  return {};
}

}  // namespace fsp::sim
