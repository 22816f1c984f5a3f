#pragma once

// Subprocess helpers for driving the fsp executable (path from FSP_CLI_PATH).

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace testsupport {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<char*> argv_of(std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);
  return argv;
}

inline int exit_status(int status) {
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  if (WIFSIGNALED(status)) return 128 + WTERMSIG(status);
  return -1;
}

}  // namespace detail

/// Runs fsp with the given arguments; stdin, stdout and stderr go through
/// temporary files so large outputs cannot deadlock.
inline CliResult run_cli(const std::vector<std::string>& args, const std::string& input = {},
                         const std::map<std::string, std::string>& env = {}) {
  static int counter = 0;
  const auto base = std::filesystem::temp_directory_path() /
                    ("fsp_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const auto in_path = base.string() + ".in", out_path = base.string() + ".out", err_path = base.string() + ".err";
  { std::ofstream(in_path, std::ios::binary) << input; }

  std::vector<std::string> full{FSP_CLI_PATH};
  full.insert(full.end(), args.begin(), args.end());
  auto argv = detail::argv_of(full);

  std::fflush(nullptr);
  const pid_t pid = ::fork();
  if (pid == 0) {
    const int in = ::open(in_path.c_str(), O_RDONLY);
    const int out = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    const int err = ::open(err_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
    ::dup2(in, 0);
    ::dup2(out, 1);
    ::dup2(err, 2);
    for (const auto& [k, v] : env) ::setenv(k.c_str(), v.c_str(), 1);
    ::execv(argv[0], argv.data());
    std::_Exit(127);
  }
  int status = 0;
  ::waitpid(pid, &status, 0);

  CliResult r{detail::exit_status(status), detail::slurp(out_path), detail::slurp(err_path)};
  for (const auto& p : {in_path, out_path, err_path}) std::filesystem::remove(p);
  return r;
}

/// A running `fsp serve`. The port is parsed from the "listening on" line.
struct ServeProcess {
  pid_t pid = -1;
  int port = -1;
  int stderr_fd = -1;  // kept open so later writes by the server cannot raise SIGPIPE
  std::string banner;

  ServeProcess() = default;
  ServeProcess(ServeProcess&& other) noexcept
      : pid(other.pid), port(other.port), stderr_fd(other.stderr_fd), banner(std::move(other.banner)) {
    other.pid = -1;
    other.stderr_fd = -1;
  }
  ServeProcess(const ServeProcess&) = delete;
  ServeProcess& operator=(const ServeProcess&) = delete;

  /// SIGINT, then the exit code.
  int interrupt() {
    if (pid <= 0) return -1;
    ::kill(pid, SIGINT);
    int status = 0;
    ::waitpid(pid, &status, 0);
    pid = -1;
    return detail::exit_status(status);
  }

  ~ServeProcess() {
    if (pid > 0) {
      ::kill(pid, SIGKILL);
      ::waitpid(pid, nullptr, 0);
    }
    if (stderr_fd >= 0) ::close(stderr_fd);
  }
};

inline ServeProcess spawn_serve(const std::vector<std::string>& args) {
  int pipe_fds[2];
  if (::pipe(pipe_fds) != 0) return {};
  std::vector<std::string> full{FSP_CLI_PATH, "serve"};
  full.insert(full.end(), args.begin(), args.end());
  auto argv = detail::argv_of(full);

  std::fflush(nullptr);
  ServeProcess proc;
  proc.pid = ::fork();
  if (proc.pid == 0) {
    ::dup2(pipe_fds[1], 2);
    ::close(pipe_fds[0]);
    ::close(pipe_fds[1]);
    const int devnull = ::open("/dev/null", O_RDWR);
    ::dup2(devnull, 0);
    ::dup2(devnull, 1);
    ::execv(argv[0], argv.data());
    std::_Exit(127);
  }
  ::close(pipe_fds[1]);
  // Read the first line of stderr; the server is accepting once it is printed.
  char c;
  while (::read(pipe_fds[0], &c, 1) == 1 && c != '\n') proc.banner += c;
  proc.stderr_fd = pipe_fds[0];
  if (const auto colon = proc.banner.rfind(':'); colon != std::string::npos &&
                                                  proc.banner.find("listening on") != std::string::npos) {
    proc.port = std::atoi(proc.banner.c_str() + colon + 1);
  }
  return proc;
}

}  // namespace testsupport
