#include "fsp/io.hpp"

#include <sstream>

#include "fsp/error.hpp"
#include "fsp/rational.hpp"

namespace fsp::io {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kDecimalPlaces = 4;

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> cells;
};

std::vector<CsvRecord> read_csv(std::string_view text) {
  std::vector<CsvRecord> records;
  std::size_t pos = 0;
  std::size_t line = 1;

  while (pos < text.size()) {
    CsvRecord rec{.line = line, .cells = {}};
    std::string cell;
    bool quoted_cell = false;
    bool end_of_record = false;

    while (!end_of_record) {
      if (pos >= text.size()) {
        rec.cells.push_back(std::move(cell));
        break;
      }
      char c = text[pos];
      if (c == '"' && cell.empty() && !quoted_cell) {
        quoted_cell = true;
        ++pos;
        for (;;) {
          if (pos >= text.size()) {
            throw Error(ErrorCode::SyntaxError, "unterminated quoted field",
                        "row " + std::to_string(rec.line) + ", column " + std::to_string(rec.cells.size() + 1));
          }
          c = text[pos++];
          if (c == '"') {
            if (pos < text.size() && text[pos] == '"') {
              cell += '"';
              ++pos;
            } else {
              break;
            }
          } else {
            if (c == '\n') ++line;
            cell += c;
          }
        }
        continue;
      }
      if (c == ',') {
        rec.cells.push_back(std::move(cell));
        cell.clear();
        quoted_cell = false;
        ++pos;
      } else if (c == '\n' || c == '\r') {
        rec.cells.push_back(std::move(cell));
        if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
        ++pos;
        ++line;
        end_of_record = true;
      } else {
        if (quoted_cell) {
          throw Error(ErrorCode::SyntaxError, "unexpected character after closing quote",
                      "row " + std::to_string(rec.line) + ", column " + std::to_string(rec.cells.size() + 1));
        }
        cell += c;
        ++pos;
      }
    }

    const bool blank = rec.cells.size() == 1 && rec.cells[0].empty() && !quoted_cell;
    if (!blank) records.push_back(std::move(rec));
  }
  return records;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::string at_cell(std::size_t line, std::size_t column) {
  return "row " + std::to_string(line) + ", column " + std::to_string(column);
}

AssessmentDocument parse_csv(std::string_view text) {
  const auto records = read_csv(text);
  if (records.empty()) throw Error(ErrorCode::SyntaxError, "empty document", "row 1");

  const auto& header = records.front();
  if (!trim(header.cells[0]).empty()) {
    throw Error(ErrorCode::SyntaxError, "first header cell must be empty", at_cell(header.line, 1));
  }
  std::vector<Attribute> attributes;
  for (std::size_t c = 1; c < header.cells.size(); ++c) {
    attributes.push_back(Attribute{.id = trim(header.cells[c]), .label = {}});
    if (attributes.back().id.empty()) {
      throw Error(ErrorCode::InvalidId, "attribute id must not be empty", at_cell(header.line, c + 1));
    }
  }
  const std::size_t width = header.cells.size();

  std::vector<std::string> alternatives;
  std::vector<std::vector<Grade>> grades;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.cells.size() > width) {
      throw Error(ErrorCode::SyntaxError,
                  "expected " + std::to_string(width) + " cells, found " + std::to_string(rec.cells.size()),
                  at_cell(rec.line, width + 1));
    }
    std::string id = trim(rec.cells[0]);
    if (id.empty()) throw Error(ErrorCode::InvalidId, "alternative id must not be empty", at_cell(rec.line, 1));
    alternatives.push_back(std::move(id));

    std::vector<Grade> row;
    for (std::size_t c = 1; c < width; ++c) {
      const std::string cell = c < rec.cells.size() ? trim(rec.cells[c]) : std::string();
      if (cell.empty()) throw Error(ErrorCode::SyntaxError, "missing cell", at_cell(rec.line, c + 1));
      try {
        row.push_back(Grade::parse(cell));
      } catch (const Error& e) {
        throw e.at(at_cell(rec.line, c + 1));
      }
    }
    grades.push_back(std::move(row));
  }

  try {
    return AssessmentDocument{.set = FuzzySoftSet::create(std::move(alternatives), std::move(attributes),
                                                          std::move(grades)),
                              .metadata = {}};
  } catch (const Error& e) {
    if (!e.location().empty()) throw;
    throw e.at("document");
  }
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::SyntaxError, std::string("missing field '") + key + "'", key);
  return *it;
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw Error(ErrorCode::SyntaxError, "expected a string", where);
  return v.get<std::string>();
}

void rational_pair(ordered_json& row, const char* key, const Rational& value) {
  row[key] = to_fraction_string(value);
  row[std::string(key) + "_decimal"] = to_decimal_string(value, kDecimalPlaces);
}

ordered_json attribute_ids_json(const FuzzySoftSet& fss, const AttributeSet& set) {
  ordered_json out = ordered_json::array();
  for (std::size_t e : set) out.push_back(fss.attributes()[e].id);
  return out;
}

std::string join_ids(const FuzzySoftSet& fss, const AttributeSet& set, std::string_view sep) {
  std::string out;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (k) out += sep;
    out += fss.attributes()[set[k]].id;
  }
  return out;
}

std::string pad(std::string_view text, std::size_t width) {
  std::string out(text);
  const std::size_t w = display_width(text);
  if (w < width) out.append(width - w, ' ');
  return out;
}

std::string render_columns(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows) {
    if (widths.size() < r.size()) widths.resize(r.size(), 0);
    for (std::size_t c = 0; c < r.size(); ++c) widths[c] = std::max(widths[c], display_width(r[c]));
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) line += "  ";
      line += c + 1 == r.size() ? r[c] : pad(r[c], widths[c]);
    }
    out += line + "\n";
  }
  return out;
}

}  // namespace

std::size_t display_width(std::string_view text) {
  std::size_t n = 0;
  for (unsigned char c : text) n += (c & 0xC0) != 0x80;
  return n;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos && !field.empty() && field.front() != ' ' &&
      field.back() != ' ') {
    return std::string(field);
  }
  if (field.empty()) return {};
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

AssessmentDocument document_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "document must be a JSON object", "$");

  const json& alts = require(doc, "alternatives");
  const json& attrs = require(doc, "attributes");
  const json& grades = require(doc, "grades");
  if (!alts.is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", "alternatives");
  if (!attrs.is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", "attributes");
  if (!grades.is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", "grades");

  std::vector<std::string> alternatives;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    alternatives.push_back(require_string(alts[i], "alternatives[" + std::to_string(i) + "]"));
  }

  std::vector<Attribute> attributes;
  for (std::size_t e = 0; e < attrs.size(); ++e) {
    const std::string where = "attributes[" + std::to_string(e) + "]";
    const json& a = attrs[e];
    if (a.is_string()) {
      attributes.push_back(Attribute{.id = a.get<std::string>(), .label = {}});
    } else if (a.is_object()) {
      auto id = a.find("id");
      if (id == a.end()) throw Error(ErrorCode::SyntaxError, "missing field 'id'", where);
      Attribute attr{.id = require_string(*id, where + ".id"), .label = {}};
      if (auto label = a.find("label"); label != a.end() && !label->is_null()) {
        attr.label = require_string(*label, where + ".label");
      }
      attributes.push_back(std::move(attr));
    } else {
      throw Error(ErrorCode::SyntaxError, "expected an attribute object or id string", where);
    }
  }

  std::vector<std::vector<std::string>> grade_text(grades.size());
  for (std::size_t i = 0; i < grades.size(); ++i) {
    const std::string where = "grades[" + std::to_string(i) + "]";
    if (!grades[i].is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", where);
    for (std::size_t j = 0; j < grades[i].size(); ++j) {
      const json& g = grades[i][j];
      if (!g.is_string()) {
        throw Error(ErrorCode::SyntaxError, "grades must be decimal strings",
                    where + "[" + std::to_string(j) + "]");
      }
      grade_text[i].push_back(g.get<std::string>());
    }
  }

  std::map<std::string, std::string> metadata;
  if (auto meta = doc.find("metadata"); meta != doc.end() && !meta->is_null()) {
    if (!meta->is_object()) throw Error(ErrorCode::SyntaxError, "expected an object", "metadata");
    for (auto it = meta->begin(); it != meta->end(); ++it) {
      metadata[it.key()] = require_string(it.value(), "metadata." + it.key());
    }
  }

  return AssessmentDocument{
      .set = new_fuzzy_soft_set(std::move(alternatives), std::move(attributes), grade_text),
      .metadata = std::move(metadata),
  };
}

AssessmentDocument parse_document(std::string_view text, Format format) {
  if (format == Format::Csv) return parse_csv(text);
  if (format != Format::Json) throw Error(ErrorCode::InvalidArgument, "assessments are read from CSV or JSON");
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, e.what(), "byte " + std::to_string(e.byte));
  }
  return document_from_json(doc);
}

ordered_json document_to_json(const AssessmentDocument& doc) {
  const FuzzySoftSet& fss = doc.set;
  ordered_json out;
  out["alternatives"] = fss.alternatives();
  ordered_json attrs = ordered_json::array();
  for (const auto& a : fss.attributes()) attrs.push_back({{"id", a.id}, {"label", a.label}});
  out["attributes"] = std::move(attrs);
  ordered_json grades = ordered_json::array();
  for (std::size_t i = 0; i < fss.alternative_count(); ++i) {
    ordered_json row = ordered_json::array();
    for (Grade g : fss.row(i)) row.push_back(g.to_string());
    grades.push_back(std::move(row));
  }
  out["grades"] = std::move(grades);
  ordered_json meta = ordered_json::object();
  for (const auto& [k, v] : doc.metadata) meta[k] = v;
  out["metadata"] = std::move(meta);
  return out;
}

std::string emit_assessment(const AssessmentDocument& doc, Format format) {
  if (format == Format::Json) return document_to_json(doc).dump(2) + "\n";
  if (format != Format::Csv) throw Error(ErrorCode::InvalidArgument, "assessments are written as CSV or JSON");

  const FuzzySoftSet& fss = doc.set;
  std::string out;
  for (const auto& a : fss.attributes()) out += "," + csv_field(a.id);
  out += "\n";
  for (std::size_t i = 0; i < fss.alternative_count(); ++i) {
    out += csv_field(fss.alternatives()[i]);
    for (Grade g : fss.row(i)) out += "," + g.to_string();
    out += "\n";
  }
  return out;
}

Format detect_format(std::string_view path, std::string_view content) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return Format::Json;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return Format::Csv;
  const auto first = content.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && content[first] == '{') return Format::Json;
  return Format::Csv;
}

ordered_json decision_table_to_json(const DecisionTable& table) {
  ordered_json out;
  out["measure"] = std::string(to_string(table.measure));
  out["source_digest"] = table.source_digest;
  out["attribute_count"] = table.attribute_count;
  ordered_json rows = ordered_json::array();
  for (const auto& r : table.rows) {
    ordered_json row;
    row["rank"] = r.rank;
    row["alternative"] = r.alternative;
    row["tie_group"] = r.tie_group;
    row["dom"] = r.scores.dom;
    row["sub"] = r.scores.sub;
    row["equity"] = r.scores.equity;
    rational_pair(row, "gamma1", r.measures.gamma1);
    row["gamma2"] = r.measures.gamma2;
    rational_pair(row, "gamma3", r.measures.gamma3);
    rows.push_back(std::move(row));
  }
  out["rows"] = std::move(rows);
  return out;
}

std::string emit_decision_table(const DecisionTable& table, Format format) {
  switch (format) {
    case Format::Json:
      return decision_table_to_json(table).dump(2) + "\n";
    case Format::Csv: {
      std::string out = "rank,alternative,tie_group,dom,sub,equity,gamma1,gamma1_decimal,gamma2,gamma3,gamma3_decimal\n";
      for (const auto& r : table.rows) {
        std::ostringstream line;
        line << r.rank << ',' << csv_field(r.alternative) << ',' << r.tie_group << ',' << r.scores.dom << ','
             << r.scores.sub << ',' << r.scores.equity << ',' << to_fraction_string(r.measures.gamma1) << ','
             << to_decimal_string(r.measures.gamma1, kDecimalPlaces) << ',' << r.measures.gamma2 << ','
             << to_fraction_string(r.measures.gamma3) << ','
             << to_decimal_string(r.measures.gamma3, kDecimalPlaces) << '\n';
        out += line.str();
      }
      return out;
    }
    case Format::Text: {
      std::vector<std::vector<std::string>> cells{
          {"rank", "alternative", "tie", "dom", "sub", "equity", "gamma1", "gamma2", "gamma3"}};
      for (const auto& r : table.rows) {
        cells.push_back({std::to_string(r.rank), r.alternative, std::to_string(r.tie_group),
                         std::to_string(r.scores.dom), std::to_string(r.scores.sub),
                         std::to_string(r.scores.equity), to_decimal_string(r.measures.gamma1, kDecimalPlaces),
                         std::to_string(r.measures.gamma2), to_decimal_string(r.measures.gamma3, kDecimalPlaces)});
      }
      return "Decision table, sorted by " + std::string(to_string(table.measure)) + " (descending)\n" +
             render_columns(cells);
    }
  }
  return {};
}

ordered_json explanation_to_json(const FuzzySoftSet& fss, const ExplanationReport& report) {
  ordered_json out;
  out["alternative"] = fss.alternatives()[report.alternative];
  ordered_json labels = ordered_json::object();
  for (const auto& a : fss.attributes()) labels[a.id] = a.display_name();
  out["attribute_labels"] = std::move(labels);
  ordered_json opponents = ordered_json::array();
  for (const auto& cell : report.opponents) {
    ordered_json o;
    o["opponent"] = fss.alternatives()[cell.col];
    o["rho"] = attribute_ids_json(fss, cell.rho);
    o["chi"] = attribute_ids_json(fss, cell.chi);
    o["eq"] = attribute_ids_json(fss, cell.eq);
    opponents.push_back(std::move(o));
  }
  out["opponents"] = std::move(opponents);
  out["dom"] = report.scores.dom;
  out["sub"] = report.scores.sub;
  out["equity"] = report.scores.equity;
  rational_pair(out, "gamma1", report.measures.gamma1);
  out["gamma2"] = report.measures.gamma2;
  rational_pair(out, "gamma3", report.measures.gamma3);
  return out;
}

std::string emit_explanation(const FuzzySoftSet& fss, const ExplanationReport& report, Format format) {
  switch (format) {
    case Format::Json:
      return explanation_to_json(fss, report).dump(2) + "\n";
    case Format::Csv: {
      std::string out = "opponent,rho,chi,eq\n";
      for (const auto& cell : report.opponents) {
        out += csv_field(fss.alternatives()[cell.col]) + "," + csv_field(join_ids(fss, cell.rho, " ")) + "," +
               csv_field(join_ids(fss, cell.chi, " ")) + "," + csv_field(join_ids(fss, cell.eq, " ")) + "\n";
      }
      return out;
    }
    case Format::Text: {
      const std::string& id = fss.alternatives()[report.alternative];
      std::vector<std::vector<std::string>> cells{{"opponent", "rho (>=)", "chi (<=)", "eq"}};
      for (const auto& cell : report.opponents) {
        cells.push_back({fss.alternatives()[cell.col], "{" + join_ids(fss, cell.rho, ",") + "}",
                         "{" + join_ids(fss, cell.chi, ",") + "}", "{" + join_ids(fss, cell.eq, ",") + "}"});
      }
      std::string out = "Comparisons for " + id + "\n";
      out += report.opponents.empty() ? "(no opponents)\n" : render_columns(cells);
      out += "dom " + std::to_string(report.scores.dom) + ", sub " + std::to_string(report.scores.sub) +
             ", equity " + std::to_string(report.scores.equity) + "\n";
      out += "gamma1 " + to_fraction_string(report.measures.gamma1) + " (" +
             to_decimal_string(report.measures.gamma1, kDecimalPlaces) + "), gamma2 " +
             std::to_string(report.measures.gamma2) + ", gamma3 " + to_fraction_string(report.measures.gamma3) +
             " (" + to_decimal_string(report.measures.gamma3, kDecimalPlaces) + ")\n";
      return out;
    }
  }
  return {};
}

}  // namespace fsp::io
