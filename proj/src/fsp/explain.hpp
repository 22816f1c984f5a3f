#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "fsp/fuzzy_soft_set.hpp"
#include "fsp/measures.hpp"
#include "fsp/pairwise.hpp"

namespace fsp {

/// One alternative's row of the domination/subjection tables, plus its totals
/// and measures. `opponents` excludes the alternative itself; the diagonal
/// still counts toward `scores`.
struct ExplanationReport {
  std::size_t alternative = 0;
  std::vector<ComparisonCell> opponents;
  CumulativeScores scores;
  DecisionMeasures measures;
};

ExplanationReport explain(const FuzzySoftSet& fss, std::size_t alternative);
ExplanationReport explain(const FuzzySoftSet& fss, std::string_view alternative);

}  // namespace fsp
