#include "fsp/ranking.hpp"

#include <algorithm>

#include "fsp/pairwise.hpp"

namespace fsp {

DecisionTable rank(const FuzzySoftSet& fss, Measure measure) {
  DecisionTable table;
  table.measure = measure;
  table.attribute_count = fss.attribute_count();
  table.source_digest = fss.digest();

  for (const auto& s : cumulative_scores(fss)) {
    table.rows.push_back(DecisionRow{
        .alternative = fss.alternatives()[s.alternative],
        .index = s.alternative,
        .scores = s,
        .measures = decision_measures(s),
    });
  }

  std::stable_sort(table.rows.begin(), table.rows.end(), [measure](const DecisionRow& a, const DecisionRow& b) {
    return measure_value(a.measures, measure) > measure_value(b.measures, measure);
  });

  std::size_t group = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    auto& row = table.rows[r];
    row.rank = r + 1;
    if (r == 0 || measure_value(row.measures, measure) != measure_value(table.rows[r - 1].measures, measure)) {
      ++group;
    }
    row.tie_group = group;
  }
  return table;
}

}  // namespace fsp
