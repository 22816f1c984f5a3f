#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fsp/fuzzy_soft_set.hpp"
#include "fsp/measures.hpp"

namespace fsp {

struct DecisionRow {
  std::string alternative;
  std::size_t index = 0;  // position in the source set
  CumulativeScores scores;
  DecisionMeasures measures;
  std::size_t rank = 0;        // 1-based row position
  std::size_t tie_group = 0;   // 1-based; equal selected-measure values share a group

  friend bool operator==(const DecisionRow&, const DecisionRow&) = default;
};

struct DecisionTable {
  Measure measure = Measure::G1;
  std::size_t attribute_count = 0;
  std::vector<DecisionRow> rows;  // non-increasing in the selected measure
  std::string source_digest;

  friend bool operator==(const DecisionTable&, const DecisionTable&) = default;
};

/// Sorts alternatives by the selected measure, descending, with a stable
/// sort so tied alternatives keep their input order. All three measures are
/// filled in regardless of which one drives the order.
DecisionTable rank(const FuzzySoftSet& fss, Measure measure);

}  // namespace fsp
