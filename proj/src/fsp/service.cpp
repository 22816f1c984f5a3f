#include "fsp/service.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <httplib.h>

#include "fsp/error.hpp"
#include "fsp/explain.hpp"

namespace fsp::service {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string now_utc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Response json_response(int status, const ordered_json& body) { return Response{status, body.dump(2) + "\n"}; }

Response error_response(int status, ErrorCode code, const std::string& message, const std::string& location = {}) {
  ordered_json err;
  err["code"] = std::string(to_string(code));
  err["message"] = message;
  if (!location.empty()) err["location"] = location;
  return json_response(status, ordered_json{{"error", err}});
}

Response error_response(int status, const Error& e) {
  return error_response(status, e.code(), e.detail(), e.location());
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (pos < path.size()) {
    if (path[pos] == '/') {
      ++pos;
      continue;
    }
    const auto end = path.find('/', pos);
    parts.push_back(path.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return parts;
}

io::Format body_format(std::string_view body, std::string_view content_type) {
  if (content_type.find("json") != std::string_view::npos) return io::Format::Json;
  if (content_type.find("csv") != std::string_view::npos) return io::Format::Csv;
  return io::detect_format({}, body);
}

std::optional<Measure> measure_param(const std::map<std::string, std::string>& query) {
  auto it = query.find("measure");
  if (it == query.end()) return Measure::G1;
  return parse_measure(it->second);
}

std::vector<std::string> id_list(const json& j, const char* key) {
  std::vector<std::string> out;
  auto it = j.find(key);
  if (it == j.end()) return out;
  if (!it->is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", key);
  for (const auto& id : *it) {
    if (!id.is_string()) throw Error(ErrorCode::SyntaxError, "attribute ids must be strings", key);
    out.push_back(id.get<std::string>());
  }
  return out;
}

ordered_json history_to_json(const Session& s) {
  ordered_json out;
  out["id"] = s.id;
  out["initial"] = io::document_to_json(s.initial);
  ordered_json history = ordered_json::array();
  for (const auto& p : s.history) history.push_back(patch_to_json(p));
  out["history"] = std::move(history);
  return out;
}

}  // namespace

FuzzySoftSet WorkingSet::current() const {
  return eliminated.empty() ? full : full.eliminate_attributes(eliminated);
}

WorkingSet apply_patch(const WorkingSet& state, const Patch& patch) {
  WorkingSet out = state;
  for (const auto& edit : patch.edits) {
    out.full = out.full.with_grade(out.full.alternative_index(edit.alternative),
                                   out.full.attribute_index(edit.attribute), edit.grade);
  }
  const auto is_eliminated = [&](const std::string& id) {
    return std::find(out.eliminated.begin(), out.eliminated.end(), id) != out.eliminated.end();
  };
  std::vector<bool> hidden(out.full.attribute_count(), false);
  for (const auto& id : out.eliminated) hidden[out.full.attribute_index(id)] = true;
  for (const auto& id : patch.eliminate) {
    if (is_eliminated(id)) throw Error(ErrorCode::UnknownAttribute, "attribute '" + id + "' is already eliminated");
    hidden[out.full.attribute_index(id)] = true;
    out.eliminated.push_back(id);
  }
  for (const auto& id : patch.restore) hidden[out.full.attribute_index(id)] = false;

  out.eliminated.clear();
  for (std::size_t e = 0; e < hidden.size(); ++e) {
    if (hidden[e]) out.eliminated.push_back(out.full.attributes()[e].id);
  }
  if (out.eliminated.size() == out.full.attribute_count()) {
    throw Error(ErrorCode::EmptyAttributeSet, "cannot eliminate every attribute");
  }
  return out;
}

WorkingSet replay(const FuzzySoftSet& initial, const std::vector<Patch>& history) {
  WorkingSet state(initial);
  for (const auto& p : history) state = apply_patch(state, p);
  return state;
}

Patch patch_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::SyntaxError, "patch must be a JSON object", "$");
  Patch patch;
  if (auto it = j.find("edits"); it != j.end()) {
    if (!it->is_array()) throw Error(ErrorCode::SyntaxError, "expected an array", "edits");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& e = (*it)[k];
      const std::string where = "edits[" + std::to_string(k) + "]";
      if (!e.is_object()) throw Error(ErrorCode::SyntaxError, "expected an object", where);
      for (const char* key : {"alternative", "attribute", "grade"}) {
        if (!e.contains(key) || !e.at(key).is_string()) {
          throw Error(ErrorCode::SyntaxError, std::string("'") + key + "' must be a string", where);
        }
      }
      try {
        patch.edits.push_back(GradeEdit{
            .alternative = e.at("alternative").get<std::string>(),
            .attribute = e.at("attribute").get<std::string>(),
            .grade = Grade::parse(e.at("grade").get<std::string>()),
        });
      } catch (const Error& err) {
        throw err.at(where + ".grade");
      }
    }
  }
  patch.eliminate = id_list(j, "eliminate");
  patch.restore = id_list(j, "restore");
  if (auto it = j.find("timestamp"); it != j.end() && it->is_string()) patch.timestamp = it->get<std::string>();
  return patch;
}

ordered_json patch_to_json(const Patch& patch) {
  ordered_json out;
  ordered_json edits = ordered_json::array();
  for (const auto& e : patch.edits) {
    edits.push_back({{"alternative", e.alternative}, {"attribute", e.attribute}, {"grade", e.grade.to_string()}});
  }
  out["edits"] = std::move(edits);
  out["eliminate"] = patch.eliminate;
  out["restore"] = patch.restore;
  out["timestamp"] = patch.timestamp;
  return out;
}

Service::Service() : Service(Options{}) {}

Service::Service(Options options) : options_(std::move(options)) {
  if (options_.state_dir) load_state();
}

std::shared_ptr<Service::Entry> Service::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::optional<Session> Service::session(const std::string& id) const {
  auto entry = find(id);
  if (!entry) return std::nullopt;
  std::lock_guard lock(entry->mutex);
  return entry->session;
}

std::size_t Service::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

std::string Service::create_session(io::AssessmentDocument doc) {
  std::shared_ptr<Entry> entry;
  std::string id;
  {
    std::unique_lock lock(mutex_);
    id = "s" + std::to_string(next_id_++);
    WorkingSet working(doc.set);
    FuzzySoftSet current = doc.set;
    entry = std::make_shared<Entry>(Session{
        .id = id, .initial = std::move(doc), .working = std::move(working), .current = std::move(current), .history = {}});
    sessions_.emplace(id, entry);
  }
  std::lock_guard lock(entry->mutex);
  persist(entry->session);
  return id;
}

void Service::persist(const Session& session) const {
  if (!options_.state_dir) return;
  const auto target = *options_.state_dir / (session.id + ".json");
  const auto tmp = *options_.state_dir / (session.id + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << history_to_json(session).dump(2) << "\n";
  }
  std::filesystem::rename(tmp, target);
}

void Service::load_state() {
  std::filesystem::create_directories(*options_.state_dir);
  for (const auto& file : std::filesystem::directory_iterator(*options_.state_dir)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path(), std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    json snapshot = json::parse(buf.str(), nullptr, false);
    if (snapshot.is_discarded() || !snapshot.contains("id") || !snapshot.contains("initial")) continue;

    // Files that are not valid session snapshots (e.g. assessment fixtures) are ignored.
    std::optional<Session> loaded;
    try {
      auto initial = io::document_from_json(snapshot.at("initial"));
      std::vector<Patch> history;
      for (const auto& p : snapshot.value("history", json::array())) history.push_back(patch_from_json(p));
      WorkingSet working = replay(initial.set, history);
      FuzzySoftSet current = working.current();
      loaded = Session{.id = snapshot.at("id").get<std::string>(),
                       .initial = std::move(initial),
                       .working = std::move(working),
                       .current = std::move(current),
                       .history = std::move(history)};
    } catch (const std::exception&) {
      continue;
    }
    Session& s = *loaded;

    if (s.id.size() > 1 && s.id[0] == 's') {
      try {
        next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(s.id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
    auto entry = std::make_shared<Entry>(std::move(s));
    sessions_.emplace(entry->session.id, entry);
  }
}

Response Service::whatif(const std::string& id, std::string_view body) {
  auto entry = find(id);
  if (!entry) return error_response(404, ErrorCode::NotFound, "unknown session '" + id + "'");

  json request = json::parse(body.begin(), body.end(), nullptr, false);
  if (request.is_discarded()) return error_response(400, ErrorCode::SyntaxError, "request body is not valid JSON");

  Patch patch;
  Measure measure = Measure::G1;
  bool dry_run = false;
  try {
    patch = patch_from_json(request);
    if (auto it = request.find("measure"); it != request.end()) {
      auto m = it->is_string() ? parse_measure(it->get<std::string>()) : std::nullopt;
      if (!m) return error_response(400, ErrorCode::InvalidArgument, "measure must be g1, g2 or g3", "measure");
      measure = *m;
    }
    if (auto it = request.find("dry_run"); it != request.end()) {
      if (!it->is_boolean()) return error_response(400, ErrorCode::SyntaxError, "expected a boolean", "dry_run");
      dry_run = it->get<bool>();
    }
  } catch (const Error& e) {
    return error_response(400, e);
  }

  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  std::optional<WorkingSet> working;
  std::optional<FuzzySoftSet> next_set;
  try {
    working = apply_patch(s.working, patch);
    next_set = working->current();
  } catch (const Error& e) {
    return error_response(e.code() == ErrorCode::EmptyAttributeSet ? 409 : 400, e);
  }
  const FuzzySoftSet& next = *next_set;

  const DecisionTable before = rank(s.current, measure);
  const DecisionTable after = rank(next, measure);

  std::vector<std::size_t> old_rank(s.current.alternative_count());
  std::vector<std::size_t> new_rank(next.alternative_count());
  for (const auto& r : before.rows) old_rank[r.index] = r.rank;
  for (const auto& r : after.rows) new_rank[r.index] = r.rank;
  ordered_json deltas = ordered_json::array();
  for (std::size_t i = 0; i < old_rank.size(); ++i) {
    deltas.push_back({{"alternative", s.current.alternatives()[i]},
                      {"before_rank", old_rank[i]},
                      {"after_rank", new_rank[i]},
                      {"delta", static_cast<std::int64_t>(old_rank[i]) - static_cast<std::int64_t>(new_rank[i])}});
  }

  if (!dry_run) {
    patch.timestamp = now_utc();
    Session updated = s;
    updated.working = std::move(*working);
    updated.current = next;
    updated.history.push_back(patch);
    try {
      persist(updated);
    } catch (const std::exception& e) {
      return error_response(500, ErrorCode::IoError, e.what());
    }
    s = std::move(updated);
  }

  ordered_json out;
  out["applied"] = !dry_run;
  out["measure"] = std::string(to_string(measure));
  out["before"] = io::decision_table_to_json(before);
  out["after"] = io::decision_table_to_json(after);
  out["deltas"] = std::move(deltas);
  return json_response(200, out);
}

Response Service::handle(std::string_view method, std::string_view path,
                         const std::map<std::string, std::string>& query, std::string_view body,
                         std::string_view content_type) {
  const auto parts = split_path(path);
  const bool get = method == "GET";
  const bool post = method == "POST";

  try {
    if (parts.size() == 1 && parts[0] == "health") {
      if (!get) return error_response(405, ErrorCode::InvalidArgument, "method not allowed");
      return json_response(200, ordered_json{{"status", "ok"}});
    }
    if (parts.empty() || parts[0] != "sessions") {
      return error_response(404, ErrorCode::NotFound, "no route for " + std::string(path));
    }

    if (parts.size() == 1) {
      if (!post) return error_response(405, ErrorCode::InvalidArgument, "method not allowed");
      std::optional<io::AssessmentDocument> doc;
      try {
        doc = io::parse_document(body, body_format(body, content_type));
      } catch (const Error& e) {
        return error_response(400, e);
      }
      const std::string id = create_session(std::move(*doc));
      return json_response(201, ordered_json{{"id", id}});
    }

    const std::string id(parts[1]);
    auto entry = find(id);
    if (!entry) return error_response(404, ErrorCode::NotFound, "unknown session '" + id + "'");

    if (parts.size() == 3 && parts[2] == "whatif") {
      if (!post) return error_response(405, ErrorCode::InvalidArgument, "method not allowed");
      return whatif(id, body);
    }
    if (!get) return error_response(405, ErrorCode::InvalidArgument, "method not allowed");

    const Session snapshot = [&] {
      std::lock_guard lock(entry->mutex);
      return entry->session;
    }();

    if (parts.size() == 2) {
      return json_response(200, io::document_to_json(io::AssessmentDocument{
                                    .set = snapshot.current, .metadata = snapshot.initial.metadata}));
    }
    if (parts.size() == 3 && parts[2] == "history") return json_response(200, history_to_json(snapshot));
    if (parts.size() == 3 && parts[2] == "rank") {
      auto measure = measure_param(query);
      if (!measure) {
        return error_response(400, ErrorCode::InvalidArgument, "measure must be g1, g2 or g3", "measure");
      }
      return Response{200, io::emit_decision_table(rank(snapshot.current, *measure), io::Format::Json)};
    }
    if (parts.size() == 4 && parts[2] == "explain") {
      try {
        const auto report = explain(snapshot.current, parts[3]);
        return Response{200, io::emit_explanation(snapshot.current, report, io::Format::Json)};
      } catch (const Error& e) {
        return error_response(e.code() == ErrorCode::UnknownAlternative ? 404 : 400, e);
      }
    }
    return error_response(404, ErrorCode::NotFound, "no route for " + std::string(path));
  } catch (const Error& e) {
    return error_response(500, e);
  } catch (const std::exception& e) {
    return error_response(500, ErrorCode::Internal, e.what());
  }
}

HttpServer::HttpServer(Service& service, std::string cors_origin)
    : service_(service), cors_origin_(std::move(cors_origin)), server_(std::make_unique<httplib::Server>()) {
  // httplib's default adds SO_REUSEPORT, which lets a second server share an
  // occupied port silently. Plain SO_REUSEADDR still allows quick restarts.
  server_->set_socket_options([](auto sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto out = service_.handle(req.method, req.path, query, req.body, req.get_header_value("Content-Type"));
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  server_->Get(".*", dispatch);
  server_->Post(".*", dispatch);
  server_->Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server_->set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", cors_origin_);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = -1;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (server_->bind_to_port(host, port)) {
    bound = port;
  }
  if (bound < 0) {
    throw Error(ErrorCode::BindError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_->is_running()) server_->stop();
}

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace fsp::service
