#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fsp/io.hpp"
#include "fsp/ranking.hpp"

namespace httplib {
class Server;
}

namespace fsp::service {

struct GradeEdit {
  std::string alternative;
  std::string attribute;
  Grade grade;

  friend bool operator==(const GradeEdit&, const GradeEdit&) = default;
};

/// A what-if change, applied in three steps: grade edits, then eliminations,
/// then restorations of previously eliminated attributes.
struct Patch {
  std::vector<GradeEdit> edits;
  std::vector<std::string> eliminate;
  std::vector<std::string> restore;
  std::string timestamp;  // ISO-8601 UTC, informational

  friend bool operator==(const Patch&, const Patch&) = default;
};

/// Edits land on `full`, which keeps every attribute; eliminated attributes
/// are only hidden, so restoring one brings back its (possibly edited) column.
struct WorkingSet {
  FuzzySoftSet full;
  std::vector<std::string> eliminated;  // source order

  explicit WorkingSet(FuzzySoftSet initial) : full(std::move(initial)) {}
  /// `full` without the eliminated attributes.
  FuzzySoftSet current() const;

  friend bool operator==(const WorkingSet&, const WorkingSet&) = default;
};

/// Edits may target eliminated attributes. Eliminating an attribute that is not
/// active, or restoring an unknown one, raises UnknownAttribute; restoring an
/// active attribute is a no-op. An empty active set raises EmptyAttributeSet.
WorkingSet apply_patch(const WorkingSet& state, const Patch& patch);

/// Reads {"edits": [{"alternative", "attribute", "grade"}], "eliminate": [...],
/// "restore": [...]}; every key is optional.
Patch patch_from_json(const nlohmann::json& json);
nlohmann::ordered_json patch_to_json(const Patch& patch);

struct Session {
  std::string id;
  io::AssessmentDocument initial;
  WorkingSet working;
  FuzzySoftSet current;  // working.current(), cached
  std::vector<Patch> history;
};

WorkingSet replay(const FuzzySoftSet& initial, const std::vector<Patch>& history);

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Session store plus request routing, independent of the transport.
///
///   GET  /health
///   POST /sessions                      body: assessment (JSON or CSV)
///   GET  /sessions/{id}                 current assessment document
///   GET  /sessions/{id}/history         initial document + patch history
///   GET  /sessions/{id}/rank?measure=g1
///   POST /sessions/{id}/whatif          body: patch + "dry_run", "measure"
///   GET  /sessions/{id}/explain/{alt}
///
/// Reads copy the session state under its lock and compute outside it;
/// mutations hold the session lock for the whole transition.
class Service {
 public:
  struct Options {
    std::optional<std::filesystem::path> state_dir;
  };

  Service();
  explicit Service(Options options);

  Response handle(std::string_view method, std::string_view path, const std::map<std::string, std::string>& query,
                  std::string_view body, std::string_view content_type = {});

  std::string create_session(io::AssessmentDocument doc);
  std::optional<Session> session(const std::string& id) const;
  std::size_t session_count() const;

 private:
  struct Entry {
    explicit Entry(Session s) : session(std::move(s)) {}
    mutable std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void persist(const Session& session) const;
  void load_state();

  Response whatif(const std::string& id, std::string_view body);

  Options options_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// cpp-httplib front end. All routes delegate to Service::handle; CORS
/// headers are added to every response and OPTIONS preflights answered.
class HttpServer {
 public:
  HttpServer(Service& service, std::string cors_origin = "*");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds without listening; port 0 picks a free port. Returns the bound
  /// port. Throws BindError.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  Service& service_;
  std::string cors_origin_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace fsp::service
