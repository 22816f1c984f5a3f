#include "fsp/measures.hpp"

#include "fsp/error.hpp"

namespace fsp {

std::optional<Measure> parse_measure(std::string_view text) noexcept {
  if (text == "g1" || text == "G1") return Measure::G1;
  if (text == "g2" || text == "G2") return Measure::G2;
  if (text == "g3" || text == "G3") return Measure::G3;
  return std::nullopt;
}

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::G1: return "g1";
    case Measure::G2: return "g2";
    case Measure::G3: return "g3";
  }
  return "g1";
}

DecisionMeasures decision_measures(const CumulativeScores& s) {
  if (s.sub <= 0 || s.equity <= 0) {
    throw Error(ErrorCode::DegenerateScores, "scores (" + std::to_string(s.dom) + ", " + std::to_string(s.sub) +
                                                 ", " + std::to_string(s.equity) +
                                                 ") have a zero subjection or equity total");
  }
  return DecisionMeasures{
      .gamma1 = Rational(s.dom * s.equity, s.sub),
      .gamma2 = s.dom - s.sub,
      .gamma3 = Rational(s.dom + s.sub, s.equity),
  };
}

Rational measure_value(const DecisionMeasures& m, Measure which) {
  switch (which) {
    case Measure::G1: return m.gamma1;
    case Measure::G2: return Rational(m.gamma2);
    case Measure::G3: return m.gamma3;
  }
  return m.gamma1;
}

}  // namespace fsp
