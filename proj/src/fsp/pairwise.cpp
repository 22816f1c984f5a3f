#include "fsp/pairwise.hpp"

namespace fsp {

ComparisonCell compare(const FuzzySoftSet& fss, std::size_t i, std::size_t j) {
  ComparisonCell cell{.row = i, .col = j, .rho = {}, .chi = {}, .eq = {}};
  const auto a = fss.row(i);
  const auto b = fss.row(j);
  for (std::size_t e = 0; e < a.size(); ++e) {
    if (a[e] >= b[e]) cell.rho.push_back(e);
    if (a[e] <= b[e]) cell.chi.push_back(e);
    if (a[e] == b[e]) cell.eq.push_back(e);
  }
  return cell;
}

ComparisonCell compare(const FuzzySoftSet& fss, std::string_view i, std::string_view j) {
  return compare(fss, fss.alternative_index(i), fss.alternative_index(j));
}

ComparisonMatrix::ComparisonMatrix(const FuzzySoftSet& fss) : n_(fss.alternative_count()) {
  cells_.reserve(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) cells_.push_back(compare(fss, i, j));
  }
}

std::vector<CumulativeScores> cumulative_scores(const FuzzySoftSet& fss) {
  const std::size_t n = fss.alternative_count();
  std::vector<CumulativeScores> scores(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& s = scores[i];
    s.alternative = i;
    const auto a = fss.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      const auto b = fss.row(j);
      for (std::size_t e = 0; e < a.size(); ++e) {
        s.dom += a[e] >= b[e];
        s.sub += a[e] <= b[e];
        s.equity += a[e] == b[e];
      }
    }
  }
  return scores;
}

}  // namespace fsp
