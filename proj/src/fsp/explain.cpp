#include "fsp/explain.hpp"

namespace fsp {

ExplanationReport explain(const FuzzySoftSet& fss, std::size_t alternative) {
  ExplanationReport report;
  report.alternative = alternative;
  report.scores.alternative = alternative;
  for (std::size_t j = 0; j < fss.alternative_count(); ++j) {
    ComparisonCell cell = compare(fss, alternative, j);
    report.scores.dom += static_cast<std::int64_t>(cell.rho.size());
    report.scores.sub += static_cast<std::int64_t>(cell.chi.size());
    report.scores.equity += static_cast<std::int64_t>(cell.eq.size());
    if (j != alternative) report.opponents.push_back(std::move(cell));
  }
  report.measures = decision_measures(report.scores);
  return report;
}

ExplanationReport explain(const FuzzySoftSet& fss, std::string_view alternative) {
  return explain(fss, fss.alternative_index(alternative));
}

}  // namespace fsp
