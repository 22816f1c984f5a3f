#include "fsp/fuzzy_soft_set.hpp"

#include <array>
#include <cstdio>
#include <unordered_set>

#include <openssl/sha.h>

#include "fsp/error.hpp"

namespace fsp {
namespace {

template <typename Range, typename Proj>
void check_ids(const Range& items, Proj id_of, std::string_view what) {
  std::unordered_set<std::string_view> seen;
  for (const auto& item : items) {
    const std::string& id = id_of(item);
    if (id.empty()) throw Error(ErrorCode::InvalidId, std::string(what) + " id must not be empty");
    if (!seen.insert(id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate " + std::string(what) + " id '" + id + "'");
    }
  }
}

void append_field(std::string& out, std::string_view field) {
  out += std::to_string(field.size());
  out += ':';
  out += field;
}

}  // namespace

FuzzySoftSet FuzzySoftSet::create(std::vector<std::string> alternatives, std::vector<Attribute> attributes,
                                  std::vector<std::vector<Grade>> grades) {
  if (alternatives.empty()) throw Error(ErrorCode::EmptyUniverse, "at least one alternative is required");
  if (attributes.empty()) throw Error(ErrorCode::EmptyAttributeSet, "at least one attribute is required");
  check_ids(alternatives, [](const std::string& s) -> const std::string& { return s; }, "alternative");
  check_ids(attributes, [](const Attribute& a) -> const std::string& { return a.id; }, "attribute");

  if (grades.size() != alternatives.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grade matrix has " + std::to_string(grades.size()) +
                                                  " rows for " + std::to_string(alternatives.size()) +
                                                  " alternatives");
  }
  FuzzySoftSet fss;
  fss.grades_.reserve(alternatives.size() * attributes.size());
  for (std::size_t i = 0; i < grades.size(); ++i) {
    if (grades[i].size() != attributes.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row for '" + alternatives[i] + "' has " + std::to_string(grades[i].size()) +
                      " grades for " + std::to_string(attributes.size()) + " attributes");
    }
    fss.grades_.insert(fss.grades_.end(), grades[i].begin(), grades[i].end());
  }
  fss.alternatives_ = std::move(alternatives);
  fss.attributes_ = std::move(attributes);
  return fss;
}

std::size_t FuzzySoftSet::alternative_index(std::string_view id) const {
  for (std::size_t i = 0; i < alternatives_.size(); ++i) {
    if (alternatives_[i] == id) return i;
  }
  throw Error(ErrorCode::UnknownAlternative, "unknown alternative '" + std::string(id) + "'");
}

std::size_t FuzzySoftSet::attribute_index(std::string_view id) const {
  for (std::size_t e = 0; e < attributes_.size(); ++e) {
    if (attributes_[e].id == id) return e;
  }
  throw Error(ErrorCode::UnknownAttribute, "unknown attribute '" + std::string(id) + "'");
}

FuzzySoftSet FuzzySoftSet::restrict_attributes(std::span<const std::string> keep) const {
  if (keep.empty()) throw Error(ErrorCode::EmptyAttributeSet, "attribute restriction keeps nothing");
  std::vector<bool> kept(attributes_.size(), false);
  for (const auto& id : keep) kept[attribute_index(id)] = true;

  FuzzySoftSet out;
  out.alternatives_ = alternatives_;
  for (std::size_t e = 0; e < attributes_.size(); ++e) {
    if (kept[e]) out.attributes_.push_back(attributes_[e]);
  }
  out.grades_.reserve(alternatives_.size() * out.attributes_.size());
  for (std::size_t i = 0; i < alternatives_.size(); ++i) {
    for (std::size_t e = 0; e < attributes_.size(); ++e) {
      if (kept[e]) out.grades_.push_back(grade(i, e));
    }
  }
  return out;
}

FuzzySoftSet FuzzySoftSet::eliminate_attributes(std::span<const std::string> drop) const {
  std::vector<bool> dropped(attributes_.size(), false);
  for (const auto& id : drop) dropped[attribute_index(id)] = true;
  std::vector<std::string> keep;
  for (std::size_t e = 0; e < attributes_.size(); ++e) {
    if (!dropped[e]) keep.push_back(attributes_[e].id);
  }
  if (keep.empty()) throw Error(ErrorCode::EmptyAttributeSet, "eliminating every attribute leaves nothing to rank");
  return restrict_attributes(keep);
}

FuzzySoftSet FuzzySoftSet::with_grade(std::size_t alternative, std::size_t attribute, Grade value) const {
  FuzzySoftSet out = *this;
  out.grades_.at(alternative * attributes_.size() + attribute) = value;
  return out;
}

std::string FuzzySoftSet::digest() const {
  std::string canonical = "fss/1;";
  canonical += std::to_string(alternatives_.size()) + "x" + std::to_string(attributes_.size()) + ";";
  for (const auto& a : alternatives_) append_field(canonical, a);
  for (const auto& attr : attributes_) {
    append_field(canonical, attr.id);
    append_field(canonical, attr.label);
  }
  for (Grade g : grades_) {
    canonical += std::to_string(g.units());
    canonical += ',';
  }

  std::array<unsigned char, SHA256_DIGEST_LENGTH> hash{};
  SHA256(reinterpret_cast<const unsigned char*>(canonical.data()), canonical.size(), hash.data());
  std::string out = "sha256:";
  char buf[3];
  for (unsigned char b : hash) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    out += buf;
  }
  return out;
}

FuzzySoftSet new_fuzzy_soft_set(std::vector<std::string> alternatives, std::vector<Attribute> attributes,
                                const std::vector<std::vector<std::string>>& grades) {
  std::vector<std::vector<Grade>> parsed(grades.size());
  for (std::size_t i = 0; i < grades.size(); ++i) {
    parsed[i].reserve(grades[i].size());
    for (std::size_t j = 0; j < grades[i].size(); ++j) {
      try {
        parsed[i].push_back(Grade::parse(grades[i][j]));
      } catch (const Error& e) {
        throw e.at("grades[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      }
    }
  }
  return FuzzySoftSet::create(std::move(alternatives), std::move(attributes), std::move(parsed));
}

}  // namespace fsp
