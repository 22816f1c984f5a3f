#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "fsp/explain.hpp"
#include "fsp/fuzzy_soft_set.hpp"
#include "fsp/ranking.hpp"

namespace fsp::io {

enum class Format { Csv, Json, Text };

/// An assessment matrix plus free-form metadata. CSV carries only ids and
/// grades; labels and metadata survive only in JSON.
struct AssessmentDocument {
  FuzzySoftSet set;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const AssessmentDocument&, const AssessmentDocument&) = default;
};

/// CSV dialect: comma separated, LF line endings (CR tolerated on input),
/// double-quote quoting, first header cell empty, header = attribute ids,
/// first column = alternative ids, grades as plain decimals.
///
/// JSON schema: {"alternatives": [...], "attributes": [{"id", "label"}],
///               "grades": [["0.7", ...], ...], "metadata": {...}}
/// Grades must be JSON strings.
///
/// Syntax errors raise SyntaxError; validation errors keep their code and are
/// located at "row R, column C" (CSV, 1-based) or "grades[i][j]" (JSON).
AssessmentDocument parse_document(std::string_view text, Format format);

inline FuzzySoftSet parse_assessment(std::string_view text, Format format) {
  return parse_document(text, format).set;
}

AssessmentDocument document_from_json(const nlohmann::json& json);
nlohmann::ordered_json document_to_json(const AssessmentDocument& doc);

/// Csv or Json only.
std::string emit_assessment(const AssessmentDocument& doc, Format format);

/// Json if the path ends in ".json" or the content starts with '{', else Csv.
Format detect_format(std::string_view path, std::string_view content);

nlohmann::ordered_json decision_table_to_json(const DecisionTable& table);

/// Rows in rank order; rationals as "p/q" plus a 4-place decimal.
std::string emit_decision_table(const DecisionTable& table, Format format);

nlohmann::ordered_json explanation_to_json(const FuzzySoftSet& fss, const ExplanationReport& report);
std::string emit_explanation(const FuzzySoftSet& fss, const ExplanationReport& report, Format format);

/// RFC 4180 style field quoting, only when needed.
std::string csv_field(std::string_view field);

/// Display width in code points (UTF-8), for text tables.
std::size_t display_width(std::string_view text);

}  // namespace fsp::io
