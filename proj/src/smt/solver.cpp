// Copyright 2026 The p4aeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "p4aeq/smt/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

namespace p4aeq {

std::string_view solver_name(SolverKind k) {
  switch (k) {
    case SolverKind::Z3: return "z3";
    case SolverKind::Cvc4: return "cvc4";
    case SolverKind::Boolector: return "boolector";
  }
  return "?";
}

std::optional<SolverKind> parse_solver(std::string_view name) {
  if (name == "z3") return SolverKind::Z3;
  if (name == "cvc4") return SolverKind::Cvc4;
  if (name == "boolector") return SolverKind::Boolector;
  return std::nullopt;
}

std::vector<std::string> SolverConfig::command() const {
  const std::string exe = path.empty() ? std::string(solver_name(kind)) : path;
  switch (kind) {
    case SolverKind::Z3: return {exe, "-in", "-smt2"};
    case SolverKind::Cvc4: return {exe, "--lang", "smt2"};
    case SolverKind::Boolector: return {exe, "--smt2"};
  }
  return {exe};
}

namespace {

SolveResult failure(std::string why) { return {SolveResult::Status::Failure, std::move(why)}; }

SolveResult classify(const std::string& out) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string tok = line.substr(b, e - b + 1);
    if (tok.starts_with(";")) continue;
    if (tok == "sat") return {SolveResult::Status::Sat, tok};
    if (tok == "unsat") return {SolveResult::Status::Unsat, tok};
    if (tok == "unknown") return {SolveResult::Status::Unknown, tok};
    return failure("unparseable solver output: " + tok.substr(0, 200));
  }
  return failure("solver produced no result");
}

}  // namespace

SolveResult solve(std::string_view query, const SolverConfig& cfg) {
  if (!(cfg.timeout_seconds > 0)) return failure("timeout must be positive");
  const std::vector<std::string> cmd = cfg.command();

  int in_pipe[2];
  int out_pipe[2];
  int err_pipe[2];
  if (pipe2(in_pipe, O_CLOEXEC) != 0) return failure(std::string("pipe: ") + std::strerror(errno));
  if (pipe2(out_pipe, O_CLOEXEC) != 0) {
    close(in_pipe[0]);
    close(in_pipe[1]);
    return failure(std::string("pipe: ") + std::strerror(errno));
  }
  if (pipe2(err_pipe, O_CLOEXEC) != 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) close(fd);
    return failure(std::string("pipe: ") + std::strerror(errno));
  }

  std::vector<char*> argv;
  for (const std::string& a : cmd) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  const pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    return failure(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    execvp(argv[0], argv.data());
    const char msg[] = "p4aeq: cannot execute solver\n";
    (void)!write(STDERR_FILENO, msg, sizeof msg - 1);
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  close(err_pipe[1]);
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);

  // Writing to a solver that exited early must not kill us.
  struct sigaction ignore {};
  struct sigaction saved {};
  ignore.sa_handler = SIG_IGN;
  sigaction(SIGPIPE, &ignore, &saved);

  std::string out;
  std::string err;
  std::size_t written = 0;
  int in_fd = in_pipe[1];
  int out_fd = out_pipe[0];
  int err_fd = err_pipe[0];
  if (query.empty()) {
    close(in_fd);
    in_fd = -1;
  }
  const auto deadline =
      std::chrono::steady_clock::now() + std::chrono::duration<double>(cfg.timeout_seconds);
  bool timed_out = false;
  char buf[4096];
  while (out_fd >= 0 || err_fd >= 0) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    const int wait_ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count() + 1);
    pollfd fds[3];
    int nfds = 0;
    if (in_fd >= 0) fds[nfds++] = {in_fd, POLLOUT, 0};
    if (out_fd >= 0) fds[nfds++] = {out_fd, POLLIN, 0};
    if (err_fd >= 0) fds[nfds++] = {err_fd, POLLIN, 0};
    const int rc = poll(fds, static_cast<nfds_t>(nfds), wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < nfds; ++i) {
      if (fds[i].revents == 0) continue;
      if (fds[i].fd == in_fd) {
        const ssize_t n = write(in_fd, query.data() + written, query.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN && errno != EINTR) written = query.size();
        if (written >= query.size()) {
          close(in_fd);
          in_fd = -1;
        }
      } else {
        int& fd = fds[i].fd == out_fd ? out_fd : err_fd;
        std::string& sink = fds[i].fd == out_fd ? out : err;
        const ssize_t n = read(fd, buf, sizeof buf);
        if (n > 0) {
          if (sink.size() < (1U << 20)) sink.append(buf, static_cast<std::size_t>(n));
        } else if (n == 0 || (errno != EAGAIN && errno != EINTR)) {
          close(fd);
          fd = -1;
        }
      }
    }
  }
  for (int fd : {in_fd, out_fd, err_fd}) {
    if (fd >= 0) close(fd);
  }
  if (timed_out) kill(pid, SIGKILL);
  int status = 0;
  while (waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  sigaction(SIGPIPE, &saved, nullptr);

  if (timed_out) return failure("timeout after " + std::to_string(cfg.timeout_seconds) + " s");
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && out.empty()) {
    return failure("cannot execute solver '" + cmd.front() + "'");
  }
  if (WIFSIGNALED(status)) return failure("solver killed by signal " + std::to_string(WTERMSIG(status)));
  SolveResult r = classify(out);
  if (r.status == SolveResult::Status::Failure && !err.empty()) {
    r.detail += " (stderr: " + err.substr(0, 200) + ")";
  }
  return r;
}

}  // namespace p4aeq
