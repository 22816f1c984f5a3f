#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsp/grade.hpp"

namespace fsp {

struct Attribute {
  std::string id;
  std::string label;  // free text, may be empty

  const std::string& display_name() const { return label.empty() ? id : label; }
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

/// Alternatives x attributes grade matrix. Immutable once built; every cell is
/// populated. Missing information is modelled by dropping whole attributes
/// (see restrict_attributes), never by holes in the matrix.
class FuzzySoftSet {
 public:
  /// Validates ids and dimensions. Throws EmptyUniverse, EmptyAttributeSet,
  /// InvalidId, DuplicateId or DimensionMismatch.
  static FuzzySoftSet create(std::vector<std::string> alternatives, std::vector<Attribute> attributes,
                             std::vector<std::vector<Grade>> grades);

  std::size_t alternative_count() const noexcept { return alternatives_.size(); }
  std::size_t attribute_count() const noexcept { return attributes_.size(); }

  const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }

  Grade grade(std::size_t alternative, std::size_t attribute) const {
    return grades_[alternative * attributes_.size() + attribute];
  }
  std::span<const Grade> row(std::size_t alternative) const {
    return {grades_.data() + alternative * attributes_.size(), attributes_.size()};
  }

  /// Throws UnknownAlternative / UnknownAttribute.
  std::size_t alternative_index(std::string_view id) const;
  std::size_t attribute_index(std::string_view id) const;

  /// Keeps only the listed attribute columns, in the original column order.
  /// Throws EmptyAttributeSet when `keep` is empty, UnknownAttribute for ids not present.
  FuzzySoftSet restrict_attributes(std::span<const std::string> keep) const;

  /// Drops the listed attributes. Throws EmptyAttributeSet if nothing would remain.
  FuzzySoftSet eliminate_attributes(std::span<const std::string> drop) const;

  FuzzySoftSet with_grade(std::size_t alternative, std::size_t attribute, Grade value) const;

  /// "sha256:<hex>" over a canonical encoding of ids, labels and grade units.
  std::string digest() const;

  friend bool operator==(const FuzzySoftSet&, const FuzzySoftSet&) = default;

 private:
  FuzzySoftSet() = default;

  std::vector<std::string> alternatives_;
  std::vector<Attribute> attributes_;
  std::vector<Grade> grades_;  // row-major, alternatives x attributes
};

/// Builds a FuzzySoftSet from decimal grade text. Grade errors are re-anchored
/// at "grades[i][j]".
FuzzySoftSet new_fuzzy_soft_set(std::vector<std::string> alternatives, std::vector<Attribute> attributes,
                                const std::vector<std::vector<std::string>>& grades);

}  // namespace fsp
