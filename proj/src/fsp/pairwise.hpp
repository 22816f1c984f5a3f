#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "fsp/fuzzy_soft_set.hpp"

namespace fsp {

/// Attribute indices in ascending column order.
using AttributeSet = std::vector<std::size_t>;

/// Domination/subjection structure of one ordered pair (row, col).
/// rho: row grade >= col grade; chi: row grade <= col grade; eq = rho ∩ chi.
struct ComparisonCell {
  std::size_t row = 0;
  std::size_t col = 0;
  AttributeSet rho;
  AttributeSet chi;
  AttributeSet eq;

  friend bool operator==(const ComparisonCell&, const ComparisonCell&) = default;
};

ComparisonCell compare(const FuzzySoftSet& fss, std::size_t i, std::size_t j);
ComparisonCell compare(const FuzzySoftSet& fss, std::string_view i, std::string_view j);

class ComparisonMatrix {
 public:
  explicit ComparisonMatrix(const FuzzySoftSet& fss);

  std::size_t size() const noexcept { return n_; }
  const ComparisonCell& at(std::size_t i, std::size_t j) const { return cells_.at(i * n_ + j); }

 private:
  std::size_t n_;
  std::vector<ComparisonCell> cells_;
};

inline ComparisonMatrix comparison_matrix(const FuzzySoftSet& fss) { return ComparisonMatrix(fss); }

/// Totals over every opponent j, the alternative itself included:
/// dom = Σ|rho|, sub = Σ|chi|, equity = Σ|eq|.
struct CumulativeScores {
  std::size_t alternative = 0;
  std::int64_t dom = 0;
  std::int64_t sub = 0;
  std::int64_t equity = 0;

  friend bool operator==(const CumulativeScores&, const CumulativeScores&) = default;
};

std::vector<CumulativeScores> cumulative_scores(const FuzzySoftSet& fss);

}  // namespace fsp
