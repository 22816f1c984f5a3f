#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "fsp/pairwise.hpp"
#include "fsp/rational.hpp"

namespace fsp {

enum class Measure { G1, G2, G3 };

inline constexpr Measure kAllMeasures[] = {Measure::G1, Measure::G2, Measure::G3};

/// "g1"/"G1" etc.
std::optional<Measure> parse_measure(std::string_view text) noexcept;
std::string_view to_string(Measure m) noexcept;  // "g1", "g2", "g3"

/// gamma1 = dom * equity / sub   (equity-weighted domination ratio)
/// gamma2 = dom - sub
/// gamma3 = (dom + sub) / equity
struct DecisionMeasures {
  Rational gamma1;
  std::int64_t gamma2 = 0;
  Rational gamma3;

  friend bool operator==(const DecisionMeasures&, const DecisionMeasures&) = default;
};

/// Throws DegenerateScores if sub or equity is zero (impossible when the
/// diagonal pair is counted and there is at least one attribute).
DecisionMeasures decision_measures(const CumulativeScores& scores);

/// The selected measure as a rational, so all three order the same way.
Rational measure_value(const DecisionMeasures& m, Measure which);

}  // namespace fsp
