#include "fsp/fsp.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "fsp/error.hpp"
#include "fsp/explain.hpp"
#include "fsp/io.hpp"
#include "fsp/ranking.hpp"
#include "fsp/service.hpp"
#include "fsp/simulate.hpp"

struct fsp_assessment {
  fsp::io::AssessmentDocument doc;
};

struct fsp_table {
  fsp::DecisionTable table;
};

struct fsp_server {
  std::unique_ptr<fsp::service::Service> service;
  std::unique_ptr<fsp::service::HttpServer> http;
  int port = 0;
};

namespace {

thread_local std::string last_error;

fsp_status status_of(fsp::ErrorCode code) {
  using fsp::ErrorCode;
  switch (code) {
    case ErrorCode::DimensionMismatch: return FSP_ERR_DIMENSION_MISMATCH;
    case ErrorCode::GradeOutOfRange: return FSP_ERR_GRADE_OUT_OF_RANGE;
    case ErrorCode::InvalidGrade: return FSP_ERR_INVALID_GRADE;
    case ErrorCode::DuplicateId: return FSP_ERR_DUPLICATE_ID;
    case ErrorCode::InvalidId: return FSP_ERR_INVALID_ID;
    case ErrorCode::EmptyUniverse: return FSP_ERR_EMPTY_UNIVERSE;
    case ErrorCode::EmptyAttributeSet: return FSP_ERR_EMPTY_ATTRIBUTE_SET;
    case ErrorCode::UnknownAlternative: return FSP_ERR_UNKNOWN_ALTERNATIVE;
    case ErrorCode::UnknownAttribute: return FSP_ERR_UNKNOWN_ATTRIBUTE;
    case ErrorCode::DegenerateScores: return FSP_ERR_DEGENERATE_SCORES;
    case ErrorCode::SyntaxError: return FSP_ERR_SYNTAX;
    case ErrorCode::InvalidArgument: return FSP_ERR_INVALID_ARGUMENT;
    case ErrorCode::IoError: return FSP_ERR_IO;
    case ErrorCode::NotFound: return FSP_ERR_NOT_FOUND;
    case ErrorCode::BindError: return FSP_ERR_BIND;
    case ErrorCode::Internal: return FSP_ERR_INTERNAL;
  }
  return FSP_ERR_INTERNAL;
}

fsp_status fail(fsp_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
fsp_status guarded(F&& body) {
  last_error.clear();
  try {
    body();
    return FSP_OK;
  } catch (const fsp::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(FSP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FSP_ERR_INTERNAL, e.what());
  }
}

fsp_status null_arg(const char* name) { return fail(FSP_ERR_INVALID_ARGUMENT, std::string(name) + " is NULL"); }

fsp::io::Format output_format(fsp_format f) {
  switch (f) {
    case FSP_FORMAT_CSV: return fsp::io::Format::Csv;
    case FSP_FORMAT_JSON: return fsp::io::Format::Json;
    case FSP_FORMAT_TEXT: return fsp::io::Format::Text;
    case FSP_FORMAT_AUTO: break;
  }
  throw fsp::Error(fsp::ErrorCode::InvalidArgument, "unsupported output format");
}

void fill_buffer(fsp_buffer* out, const std::string& text) {
  char* data = static_cast<char*>(std::malloc(text.size() + 1));
  if (!data) throw std::bad_alloc();
  std::memcpy(data, text.data(), text.size());
  data[text.size()] = '\0';
  out->data = data;
  out->size = text.size();
}

fsp::Measure to_measure(fsp_measure m) {
  switch (m) {
    case FSP_MEASURE_G1: return fsp::Measure::G1;
    case FSP_MEASURE_G2: return fsp::Measure::G2;
    case FSP_MEASURE_G3: return fsp::Measure::G3;
  }
  throw fsp::Error(fsp::ErrorCode::InvalidArgument, "unknown measure");
}

fsp::sim::SimulationConfig to_config(const fsp_sim_config& c) {
  fsp::sim::SimulationConfig config;
  config.scenarios = c.scenarios;
  config.n_alternatives = c.alternatives;
  config.n_attributes = c.attributes;
  config.seed = c.seed;
  const std::size_t len = strnlen(c.grid_step, sizeof c.grid_step);
  try {
    config.grid_step = fsp::Grade::parse(std::string_view(c.grid_step, len));
  } catch (const fsp::Error& e) {
    throw fsp::Error(fsp::ErrorCode::InvalidArgument, "grid step: " + e.detail());
  }
  config.measures.clear();
  for (fsp::Measure m : fsp::kAllMeasures) {
    if (c.measures & (1u << static_cast<unsigned>(m))) config.measures.push_back(m);
  }
  config.validate();
  return config;
}

void from_config(const fsp::sim::SimulationConfig& config, fsp_sim_config* out) {
  out->scenarios = config.scenarios;
  out->alternatives = config.n_alternatives;
  out->attributes = config.n_attributes;
  out->seed = config.seed;
  const std::string step = config.grid_step.to_string();
  std::memset(out->grid_step, 0, sizeof out->grid_step);
  std::memcpy(out->grid_step, step.data(), std::min(step.size(), sizeof out->grid_step - 1));
  out->measures = 0;
  for (fsp::Measure m : config.measures) out->measures |= 1u << static_cast<unsigned>(m);
}

}  // namespace

extern "C" {

const char* fsp_version(void) { return "1.0.0"; }

const char* fsp_status_name(fsp_status status) {
  switch (status) {
    case FSP_OK: return "Ok";
    case FSP_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case FSP_ERR_GRADE_OUT_OF_RANGE: return "GradeOutOfRange";
    case FSP_ERR_INVALID_GRADE: return "InvalidGrade";
    case FSP_ERR_DUPLICATE_ID: return "DuplicateId";
    case FSP_ERR_INVALID_ID: return "InvalidId";
    case FSP_ERR_EMPTY_UNIVERSE: return "EmptyUniverse";
    case FSP_ERR_EMPTY_ATTRIBUTE_SET: return "EmptyAttributeSet";
    case FSP_ERR_UNKNOWN_ALTERNATIVE: return "UnknownAlternative";
    case FSP_ERR_UNKNOWN_ATTRIBUTE: return "UnknownAttribute";
    case FSP_ERR_DEGENERATE_SCORES: return "DegenerateScores";
    case FSP_ERR_SYNTAX: return "SyntaxError";
    case FSP_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case FSP_ERR_IO: return "IoError";
    case FSP_ERR_NOT_FOUND: return "NotFound";
    case FSP_ERR_BIND: return "BindError";
    case FSP_ERR_INTERNAL: return "Internal";
  }
  return "Internal";
}

const char* fsp_last_error(void) { return last_error.c_str(); }

void fsp_buffer_free(fsp_buffer* buffer) {
  if (!buffer) return;
  std::free(buffer->data);
  buffer->data = nullptr;
  buffer->size = 0;
}

fsp_status fsp_measure_parse(const char* text, fsp_measure* out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  auto m = fsp::parse_measure(text);
  if (!m) return fail(FSP_ERR_INVALID_ARGUMENT, std::string("unknown measure '") + text + "' (expected g1, g2 or g3)");
  *out = static_cast<fsp_measure>(*m);
  return FSP_OK;
}

fsp_status fsp_assessment_parse(const char* data, size_t size, fsp_format format, fsp_assessment** out) {
  if (!data && size) return null_arg("data");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const std::string_view text(data ? data : "", size);
    fsp::io::Format f = fsp::io::Format::Csv;
    if (format == FSP_FORMAT_AUTO) {
      f = fsp::io::detect_format({}, text);
    } else if (format == FSP_FORMAT_JSON) {
      f = fsp::io::Format::Json;
    } else if (format != FSP_FORMAT_CSV) {
      throw fsp::Error(fsp::ErrorCode::InvalidArgument, "assessments are read from CSV or JSON");
    }
    *out = new fsp_assessment{fsp::io::parse_document(text, f)};
  });
}

void fsp_assessment_free(fsp_assessment* assessment) { delete assessment; }

size_t fsp_assessment_alternative_count(const fsp_assessment* a) { return a ? a->doc.set.alternative_count() : 0; }

size_t fsp_assessment_attribute_count(const fsp_assessment* a) { return a ? a->doc.set.attribute_count() : 0; }

const char* fsp_assessment_alternative_id(const fsp_assessment* a, size_t index) {
  if (!a || index >= a->doc.set.alternative_count()) return nullptr;
  return a->doc.set.alternatives()[index].c_str();
}

const char* fsp_assessment_attribute_id(const fsp_assessment* a, size_t index) {
  if (!a || index >= a->doc.set.attribute_count()) return nullptr;
  return a->doc.set.attributes()[index].id.c_str();
}

fsp_status fsp_assessment_restrict(const fsp_assessment* a, const char* const* keep, size_t count,
                                   fsp_assessment** out) {
  if (!a) return null_arg("assessment");
  if (!keep && count) return null_arg("keep");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    std::vector<std::string> ids(keep, keep + count);
    *out = new fsp_assessment{{a->doc.set.restrict_attributes(ids), a->doc.metadata}};
  });
}

fsp_status fsp_assessment_emit(const fsp_assessment* a, fsp_format format, fsp_buffer* out) {
  if (!a) return null_arg("assessment");
  if (!out) return null_arg("out");
  return guarded([&] { fill_buffer(out, fsp::io::emit_assessment(a->doc, output_format(format))); });
}

fsp_status fsp_rank(const fsp_assessment* a, fsp_measure measure, fsp_table** out) {
  if (!a) return null_arg("assessment");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] { *out = new fsp_table{fsp::rank(a->doc.set, to_measure(measure))}; });
}

void fsp_table_free(fsp_table* table) { delete table; }

size_t fsp_table_row_count(const fsp_table* table) { return table ? table->table.rows.size() : 0; }

fsp_status fsp_table_row(const fsp_table* table, size_t index, fsp_row* out) {
  if (!table) return null_arg("table");
  if (!out) return null_arg("out");
  if (index >= table->table.rows.size()) {
    return fail(FSP_ERR_INVALID_ARGUMENT, "row index " + std::to_string(index) + " out of range");
  }
  const auto& r = table->table.rows[index];
  *out = fsp_row{
      .alternative = r.alternative.c_str(),
      .rank = r.rank,
      .tie_group = r.tie_group,
      .dom = r.scores.dom,
      .sub = r.scores.sub,
      .equity = r.scores.equity,
      .gamma1_num = r.measures.gamma1.numerator(),
      .gamma1_den = r.measures.gamma1.denominator(),
      .gamma2 = r.measures.gamma2,
      .gamma3_num = r.measures.gamma3.numerator(),
      .gamma3_den = r.measures.gamma3.denominator(),
  };
  return FSP_OK;
}

fsp_status fsp_table_emit(const fsp_table* table, fsp_format format, fsp_buffer* out) {
  if (!table) return null_arg("table");
  if (!out) return null_arg("out");
  return guarded([&] { fill_buffer(out, fsp::io::emit_decision_table(table->table, output_format(format))); });
}

fsp_status fsp_explain(const fsp_assessment* a, const char* alternative, fsp_format format, fsp_buffer* out) {
  if (!a) return null_arg("assessment");
  if (!alternative) return null_arg("alternative");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto report = fsp::explain(a->doc.set, alternative);
    fill_buffer(out, fsp::io::emit_explanation(a->doc.set, report, output_format(format)));
  });
}

void fsp_sim_config_default(fsp_sim_config* config) {
  if (config) from_config(fsp::sim::SimulationConfig{}, config);
}

fsp_status fsp_sim_config_from_json(const char* data, size_t size, fsp_sim_config* config) {
  if (!data && size) return null_arg("data");
  if (!config) return null_arg("config");
  return guarded([&] {
    auto json = nlohmann::json::parse(std::string_view(data ? data : "", size), nullptr, false);
    if (json.is_discarded()) throw fsp::Error(fsp::ErrorCode::SyntaxError, "simulation config is not valid JSON");
    if (!json.is_object()) throw fsp::Error(fsp::ErrorCode::InvalidArgument, "simulation config must be an object");
    // Start from the caller's values so only the keys present override them.
    auto base = fsp::sim::report_to_json(fsp::sim::SimulationReport{.config = to_config(*config), .measures = {}})
                    .at("config");
    for (auto it = json.begin(); it != json.end(); ++it) base[it.key()] = it.value();
    from_config(fsp::sim::config_from_json(nlohmann::json::parse(base.dump())), config);
  });
}

fsp_status fsp_simulate(const fsp_sim_config* config, fsp_format format, fsp_buffer* out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto report = fsp::sim::run_simulation(to_config(*config));
    fill_buffer(out, fsp::sim::emit_report(report, output_format(format)));
  });
}

fsp_status fsp_server_create(const fsp_server_options* options, fsp_server** out) {
  if (!options) return null_arg("options");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto server = std::make_unique<fsp_server>();
    fsp::service::Service::Options service_options;
    if (options->state_dir && *options->state_dir) service_options.state_dir = options->state_dir;
    server->service = std::make_unique<fsp::service::Service>(std::move(service_options));
    server->http = std::make_unique<fsp::service::HttpServer>(*server->service,
                                                              options->cors_origin ? options->cors_origin : "*");
    server->port = server->http->bind(options->host ? options->host : "127.0.0.1", options->port);
    *out = server.release();
  });
}

int fsp_server_port(const fsp_server* server) { return server ? server->port : -1; }

fsp_status fsp_server_listen(fsp_server* server) {
  if (!server) return null_arg("server");
  return guarded([&] { server->http->listen(); });
}

void fsp_server_wait_ready(const fsp_server* server) {
  if (server) server->http->wait_until_ready();
}

void fsp_server_stop(fsp_server* server) {
  if (server) server->http->stop();
}

void fsp_server_free(fsp_server* server) { delete server; }

}  // extern "C"
