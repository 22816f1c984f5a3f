// fsp command-line front end. Links only the libfsp C API.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "fsp/fsp.h"

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kIo = 3,
  kSyntax = 4,
  kInvalidData = 5,
  kUnknownId = 6,
  kInvalidArgument = 7,
  kBind = 8,
};

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error\n"
    "  2  usage error (unknown flag, missing argument)\n"
    "  3  I/O error (input cannot be read)\n"
    "  4  syntax error in the input document\n"
    "  5  invalid assessment (grade out of range, duplicate id, dimension mismatch, ...)\n"
    "  6  unknown alternative or attribute\n"
    "  7  invalid option value (measure, format, simulation parameters)\n"
    "  8  cannot bind the service port\n"
    "Errors are reported on stderr as a single line: fsp: error[<Code>]: <message>\n"
    "Environment: FSP_FIXTURE_DIR is searched for relative input paths not found\n"
    "in the current directory, and is the default serve --state-dir.";

int exit_code_for(fsp_status status) {
  switch (status) {
    case FSP_OK: return kOk;
    case FSP_ERR_SYNTAX: return kSyntax;
    case FSP_ERR_DIMENSION_MISMATCH:
    case FSP_ERR_GRADE_OUT_OF_RANGE:
    case FSP_ERR_INVALID_GRADE:
    case FSP_ERR_DUPLICATE_ID:
    case FSP_ERR_INVALID_ID:
    case FSP_ERR_EMPTY_UNIVERSE:
    case FSP_ERR_EMPTY_ATTRIBUTE_SET:
    case FSP_ERR_DEGENERATE_SCORES: return kInvalidData;
    case FSP_ERR_UNKNOWN_ALTERNATIVE:
    case FSP_ERR_UNKNOWN_ATTRIBUTE:
    case FSP_ERR_NOT_FOUND: return kUnknownId;
    case FSP_ERR_INVALID_ARGUMENT: return kInvalidArgument;
    case FSP_ERR_IO: return kIo;
    case FSP_ERR_BIND: return kBind;
    case FSP_ERR_INTERNAL: return kInternal;
  }
  return kInternal;
}

int report(const char* code, const std::string& message, int exit_code) {
  std::string line = message;
  for (char& c : line) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  std::fprintf(stderr, "fsp: error[%s]: %s\n", code, line.c_str());
  return exit_code;
}

int report(fsp_status status, const std::string& context = {}) {
  std::string message = fsp_last_error();
  if (!context.empty()) message = context + ": " + message;
  return report(fsp_status_name(status), message, exit_code_for(status));
}

class Buffer {
 public:
  Buffer() = default;
  ~Buffer() { fsp_buffer_free(&buf_); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fsp_buffer* get() { return &buf_; }
  void write(std::FILE* out) const { std::fwrite(buf_.data, 1, buf_.size, out); }

 private:
  fsp_buffer buf_{nullptr, 0};
};

struct AssessmentDeleter {
  void operator()(fsp_assessment* a) const { fsp_assessment_free(a); }
};
struct TableDeleter {
  void operator()(fsp_table* t) const { fsp_table_free(t); }
};
using AssessmentPtr = std::unique_ptr<fsp_assessment, AssessmentDeleter>;
using TablePtr = std::unique_ptr<fsp_table, TableDeleter>;

struct CliFailure {
  int exit_code;
};

bool stdout_is_terminal() { return ::isatty(STDOUT_FILENO) == 1; }

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::string resolved = path;
  std::ifstream in(resolved, std::ios::binary);
  if (!in && !path.empty() && path[0] != '/') {
    if (const char* dir = std::getenv("FSP_FIXTURE_DIR"); dir && *dir) {
      resolved = std::string(dir) + "/" + path;
      in.open(resolved, std::ios::binary);
    }
  }
  if (!in) {
    throw CliFailure{report("IoError", "cannot read '" + path + "': " + std::strerror(errno), kIo)};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fsp_format input_format(const std::string& path, const std::string& flag) {
  if (flag == "csv") return FSP_FORMAT_CSV;
  if (flag == "json") return FSP_FORMAT_JSON;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return FSP_FORMAT_JSON;
  if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0) return FSP_FORMAT_CSV;
  return FSP_FORMAT_AUTO;
}

fsp_format output_format(const std::string& flag, fsp_format terminal_default) {
  if (flag == "csv") return FSP_FORMAT_CSV;
  if (flag == "json") return FSP_FORMAT_JSON;
  if (flag == "table" || flag == "text") return FSP_FORMAT_TEXT;
  return stdout_is_terminal() ? terminal_default : FSP_FORMAT_CSV;
}

AssessmentPtr load_assessment(const std::string& path, const std::string& format_flag) {
  const std::string text = read_input(path);
  fsp_assessment* raw = nullptr;
  if (auto st = fsp_assessment_parse(text.data(), text.size(), input_format(path, format_flag), &raw); st != FSP_OK) {
    throw CliFailure{report(st, path)};
  }
  return AssessmentPtr(raw);
}

std::vector<std::string> split_list(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

AssessmentPtr eliminate(AssessmentPtr a, const std::vector<std::string>& drop) {
  if (drop.empty()) return a;
  std::vector<std::string> keep;
  const std::size_t m = fsp_assessment_attribute_count(a.get());
  std::vector<bool> found(drop.size(), false);
  for (std::size_t e = 0; e < m; ++e) {
    const std::string id = fsp_assessment_attribute_id(a.get(), e);
    bool dropped = false;
    for (std::size_t k = 0; k < drop.size(); ++k) {
      if (drop[k] == id) dropped = found[k] = true;
    }
    if (!dropped) keep.push_back(id);
  }
  for (std::size_t k = 0; k < drop.size(); ++k) {
    if (!found[k]) throw CliFailure{report("UnknownAttribute", "unknown attribute '" + drop[k] + "'", kUnknownId)};
  }
  std::vector<const char*> ids;
  for (const auto& id : keep) ids.push_back(id.c_str());
  fsp_assessment* raw = nullptr;
  if (auto st = fsp_assessment_restrict(a.get(), ids.data(), ids.size(), &raw); st != FSP_OK) {
    throw CliFailure{report(st)};
  }
  return AssessmentPtr(raw);
}

fsp_measure parse_measure_flag(const std::string& text) {
  fsp_measure m = FSP_MEASURE_G1;
  if (auto st = fsp_measure_parse(text.c_str(), &m); st != FSP_OK) throw CliFailure{report(st, "--measure")};
  return m;
}

int cmd_rank(const std::string& input, const std::string& measure, const std::string& format,
             const std::string& in_format, const std::vector<std::string>& drop) {
  const fsp_measure m = parse_measure_flag(measure);
  auto assessment = eliminate(load_assessment(input, in_format), split_list(drop));
  fsp_table* raw = nullptr;
  if (auto st = fsp_rank(assessment.get(), m, &raw); st != FSP_OK) return report(st, input);
  TablePtr table(raw);
  Buffer out;
  if (auto st = fsp_table_emit(table.get(), output_format(format, FSP_FORMAT_TEXT), out.get()); st != FSP_OK) {
    return report(st);
  }
  out.write(stdout);
  return kOk;
}

int cmd_explain(const std::string& input, const std::string& alternative, const std::string& format,
                const std::string& in_format) {
  auto assessment = load_assessment(input, in_format);
  Buffer out;
  if (auto st = fsp_explain(assessment.get(), alternative.c_str(), output_format(format, FSP_FORMAT_TEXT), out.get());
      st != FSP_OK) {
    return report(st, input);
  }
  out.write(stdout);
  return kOk;
}

struct SimulateFlags {
  std::string config_path;
  std::optional<std::uint64_t> scenarios;
  std::optional<std::size_t> alternatives;
  std::optional<std::size_t> attributes;
  std::optional<std::string> grid_step;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> measures;
  std::string format;
};

int cmd_simulate(const SimulateFlags& flags) {
  fsp_sim_config config;
  fsp_sim_config_default(&config);
  if (!flags.config_path.empty()) {
    const std::string text = read_input(flags.config_path);
    if (auto st = fsp_sim_config_from_json(text.data(), text.size(), &config); st != FSP_OK) {
      return report(st, flags.config_path);
    }
  }
  if (flags.scenarios) config.scenarios = *flags.scenarios;
  if (flags.alternatives) config.alternatives = *flags.alternatives;
  if (flags.attributes) config.attributes = *flags.attributes;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.grid_step) {
    if (flags.grid_step->size() >= sizeof config.grid_step) {
      return report("InvalidArgument", "--grid-step '" + *flags.grid_step + "' is too long", kInvalidArgument);
    }
    std::memset(config.grid_step, 0, sizeof config.grid_step);
    std::memcpy(config.grid_step, flags.grid_step->data(), flags.grid_step->size());
  }
  if (!flags.measures.empty()) {
    config.measures = 0;
    for (const auto& name : split_list(flags.measures)) config.measures |= 1u << parse_measure_flag(name);
  }

  Buffer out;
  if (auto st = fsp_simulate(&config, output_format(flags.format, FSP_FORMAT_TEXT), out.get()); st != FSP_OK) {
    return report(st);
  }
  out.write(stdout);
  return kOk;
}

int cmd_serve(const std::string& host, int port, std::string state_dir, const std::string& cors_origin) {
  if (state_dir.empty()) {
    if (const char* dir = std::getenv("FSP_FIXTURE_DIR"); dir && *dir) state_dir = dir;
  }

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  fsp_server_options options{host.c_str(), port, state_dir.empty() ? nullptr : state_dir.c_str(),
                             cors_origin.c_str()};
  fsp_server* server = nullptr;
  if (auto st = fsp_server_create(&options, &server); st != FSP_OK) return report(st);

  fsp_status listen_status = FSP_OK;
  std::thread worker([&] { listen_status = fsp_server_listen(server); });
  fsp_server_wait_ready(server);
  std::fprintf(stderr, "fsp: listening on http://%s:%d\n", host.c_str(), fsp_server_port(server));
  std::fflush(stderr);

  int received = 0;
  sigwait(&signals, &received);
  fsp_server_stop(server);
  worker.join();
  fsp_server_free(server);
  std::fprintf(stderr, "fsp: shutting down (signal %d)\n", received);
  return listen_status == FSP_OK ? kOk : report(listen_status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuzzy soft set decision ranking: rank, explain, simulate, serve", "fsp"};
  app.require_subcommand(1);
  app.footer(kExitCodeHelp);
  app.set_version_flag("--version", fsp_version());

  std::string input, measure = "g1", format, in_format = "auto";
  std::vector<std::string> drop;
  auto* rank = app.add_subcommand("rank", "Rank alternatives by a decision measure");
  rank->add_option("input", input, "Assessment file (CSV or JSON), '-' for stdin")->required();
  rank->add_option("-m,--measure", measure, "Decision measure: g1, g2 or g3")->capture_default_str();
  rank->add_option("-f,--format", format, "Output: csv, json or table (default: table on a terminal, else csv)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  rank->add_option("--input-format", in_format, "Input: auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
  rank->add_option("--eliminate", drop, "Attribute ids to drop before ranking (repeatable or comma separated)");

  std::string alternative;
  auto* explain = app.add_subcommand("explain", "Show domination/subjection sets and scores for one alternative");
  explain->add_option("input", input, "Assessment file (CSV or JSON), '-' for stdin")->required();
  explain->add_option("alternative", alternative, "Alternative id")->required();
  explain->add_option("-f,--format", format, "Output: csv, json or table (default: table on a terminal, else csv)")
      ->check(CLI::IsMember({"csv", "json", "table"}));
  explain->add_option("--input-format", in_format, "Input: auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}));

  SimulateFlags sim;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo study of measure bias and ties");
  simulate->add_option("--config", sim.config_path, "JSON config; flags given on the command line override it");
  simulate->add_option("--scenarios", sim.scenarios, "Number of random scenarios (default 1000)");
  simulate->add_option("--alternatives", sim.alternatives, "Alternatives per scenario (default 10)");
  simulate->add_option("--attributes", sim.attributes, "Attributes per scenario (default 20)");
  simulate->add_option("--grid-step", sim.grid_step, "Grade grid step, 1/step integral (default 0.1)");
  simulate->add_option("--seed", sim.seed, "64-bit seed (default 0)");
  simulate->add_option("--measures", sim.measures, "Measures to evaluate, e.g. g1,g3 (default all)");
  simulate->add_option("-f,--format", sim.format, "Output: csv, json or text (default: text on a terminal, else csv)")
      ->check(CLI::IsMember({"csv", "json", "text", "table"}));

  std::string host = "127.0.0.1", state_dir, cors_origin = "*";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the JSON-over-HTTP what-if service");
  serve->add_option("-p,--port", port, "TCP port (0 = any free port)")->capture_default_str();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--state-dir", state_dir, "Directory for session snapshots (default $FSP_FIXTURE_DIR, else none)");
  serve->add_option("--cors-origin", cors_origin, "Access-Control-Allow-Origin value")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("Usage", e.what(), kUsage);
  }

  try {
    if (*rank) return cmd_rank(input, measure, format, in_format, drop);
    if (*explain) return cmd_explain(input, alternative, format, in_format);
    if (*simulate) return cmd_simulate(sim);
    if (*serve) return cmd_serve(host, port, state_dir, cors_origin);
  } catch (const CliFailure& f) {
    return f.exit_code;
  }
  return kUsage;
}
