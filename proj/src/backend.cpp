#include "entail/backend.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "entail/semantics.hpp"

namespace entail {

std::string BackendVerdict::str() const {
  switch (kind) {
    case Kind::Valid: return "valid";
    case Kind::Invalid: return "invalid";
    case Kind::Unknown:
      switch (reason) {
        case Reason::Timeout: return "unknown(timeout)";
        case Reason::SolverError: return "unknown(solver-error)";
        case Reason::Unsupported: return "unknown(unsupported)";
        default: return "unknown";
      }
  }
  return "unknown";
}

namespace {
void emit_term(std::ostringstream& os, const Term& t) {
  std::vector<std::string> parts;
  for (const auto& [v, c] : t.coeffs()) {
    if (c == 1)
      parts.push_back(v);
    else if (c >= 0)
      parts.push_back("(* " + std::to_string(c) + " " + v + ")");
    else
      parts.push_back("(- (* " + std::to_string(-c) + " " + v + "))");
  }
  if (t.constant() != 0 || parts.empty()) {
    long long k = t.constant();
    parts.push_back(k >= 0 ? std::to_string(k)
                           : "(- " + std::to_string(-k) + ")");
  }
  if (parts.size() == 1) {
    os << parts[0];
    return;
  }
  os << "(+";
  for (const auto& p : parts) os << " " << p;
  os << ")";
}

void emit_formula(std::ostringstream& os, const PureRef& f) {
  switch (f->kind()) {
    case Pure::Kind::True: os << "true"; return;
    case Pure::Kind::False: os << "false"; return;
    case Pure::Kind::Atom: {
      const auto& a = f->atom();
      if (a.rel == Rel::Ne) os << "(not ";
      os << "(" << (a.rel == Rel::Lt ? "<" : a.rel == Rel::Le ? "<=" : "=")
         << " ";
      emit_term(os, a.lhs);
      os << " ";
      emit_term(os, a.rhs);
      os << ")";
      if (a.rel == Rel::Ne) os << ")";
      return;
    }
    case Pure::Kind::And:
    case Pure::Kind::Or:
    case Pure::Kind::Implies: {
      os << "(" << (f->kind() == Pure::Kind::And   ? "and"
                    : f->kind() == Pure::Kind::Or ? "or"
                                                  : "=>")
         << " ";
      emit_formula(os, f->lhs());
      os << " ";
      emit_formula(os, f->rhs());
      os << ")";
      return;
    }
    case Pure::Kind::Not:
      os << "(not ";
      emit_formula(os, f->lhs());
      os << ")";
      return;
    case Pure::Kind::Forall:
      os << "(forall ((" << f->var() << " Int)) (=> (>= " << f->var()
         << " 0) ";
      emit_formula(os, f->body());
      os << "))";
      return;
    case Pure::Kind::Exists:
      os << "(exists ((" << f->var() << " Int)) (and (>= " << f->var()
         << " 0) ";
      emit_formula(os, f->body());
      os << "))";
      return;
  }
}
}  // namespace

std::string smtlib_formula(const PureRef& f) {
  std::ostringstream os;
  emit_formula(os, f);
  return os.str();
}

std::string emit_smtlib(const PureRef& f) {
  if (!free_vars(f).empty())
    throw std::invalid_argument("emit_smtlib requires a closed formula");
  std::ostringstream os;
  os << "(set-logic LIA)\n";
  os << "(assert (not " << smtlib_formula(f) << "))\n";
  os << "(check-sat)\n";
  return os.str();
}

namespace {
std::string resolve_executable(const std::string& exe) {
  namespace fs = std::filesystem;
  if (exe.empty()) throw SolverConfigError("no solver executable configured");
  if (exe.find('/') != std::string::npos) {
    if (::access(exe.c_str(), X_OK) == 0) return exe;
    throw SolverConfigError("solver executable not found: " + exe);
  }
  const char* path = std::getenv("PATH");
  std::string paths = path ? path : "";
  std::size_t pos = 0;
  while (pos <= paths.size()) {
    std::size_t next = paths.find(':', pos);
    std::string dir = paths.substr(
        pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!dir.empty()) {
      fs::path cand = fs::path(dir) / exe;
      if (::access(cand.c_str(), X_OK) == 0) return cand.string();
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  throw SolverConfigError("solver executable not found in PATH: " + exe);
}
}  // namespace

RawResult run_solver(const std::string& script, const SolverConfig& cfg) {
  // A child dying mid-write must surface as EPIPE, not kill the process.
  static const bool sigpipe_ignored = [] {
    signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)sigpipe_ignored;

  std::string exe = resolve_executable(cfg.executable);

  int in_pipe[2];   // parent -> child stdin
  int out_pipe[2];  // child stdout -> parent
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    return {RawResult::Status::Error, "pipe failed"};

  pid_t pid = fork();
  if (pid < 0) return {RawResult::Status::Error, "fork failed"};
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    if (!cfg.working_dir.empty()) {
      if (chdir(cfg.working_dir.c_str()) != 0) _exit(127);
    }
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(exe.c_str()));
    for (const auto& a : cfg.args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execv(exe.c_str(), argv.data());
    _exit(127);
  }

  close(in_pipe[0]);
  close(out_pipe[1]);
  int wfd = in_pipe[1];
  int rfd = out_pipe[0];
  fcntl(wfd, F_SETFL, O_NONBLOCK);
  fcntl(rfd, F_SETFL, O_NONBLOCK);

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::milliseconds(cfg.timeout_ms);
  std::string output;
  std::size_t written = 0;
  bool write_open = true;
  bool timed_out = false;

  // Feed stdin and drain stdout together; scripts can exceed the pipe
  // buffer, so a blocking write could deadlock against a chatty child.
  for (;;) {
    struct pollfd fds[2];
    nfds_t n = 0;
    fds[n].fd = rfd;
    fds[n].events = POLLIN;
    ++n;
    if (write_open) {
      fds[n].fd = wfd;
      fds[n].events = POLLOUT;
      ++n;
    }
    auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      timed_out = true;
      break;
    }
    int ms = static_cast<int>(
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now)
            .count());
    int rc = poll(fds, n, std::max(1, ms));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) {
      timed_out = true;
      break;
    }
    bool read_closed = false;
    if (fds[0].revents & (POLLIN | POLLHUP)) {
      char buf[4096];
      ssize_t got = read(rfd, buf, sizeof(buf));
      if (got > 0)
        output.append(buf, static_cast<std::size_t>(got));
      else if (got == 0)
        read_closed = true;
      else if (errno != EAGAIN && errno != EWOULDBLOCK)
        read_closed = true;
    }
    if (write_open && n > 1 && (fds[1].revents & (POLLOUT | POLLERR))) {
      if (fds[1].revents & POLLERR) {
        close(wfd);
        write_open = false;
      } else {
        ssize_t put = write(wfd, script.data() + written,
                            script.size() - written);
        if (put > 0) written += static_cast<std::size_t>(put);
        if (put < 0 && errno != EAGAIN && errno != EWOULDBLOCK) {
          close(wfd);
          write_open = false;
        }
        if (written == script.size()) {
          close(wfd);
          write_open = false;
        }
      }
    }
    if (read_closed) break;
  }

  if (write_open) close(wfd);
  close(rfd);

  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    return {RawResult::Status::Timeout, output};
  }
  int status = 0;
  waitpid(pid, &status, 0);
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    return {RawResult::Status::Error, output};
  return {RawResult::Status::Ok, output};
}

bool bounded_eval(const PureRef& f, std::uint64_t bound) {
  Store empty;
  return eval_pure(empty, f, bound);
}

BackendVerdict decide_validity(const PureRef& f, const SolverConfig& cfg,
                               SolverStats* stats) {
  std::string script = emit_smtlib(f);
  if (!cfg.dump_dir.empty()) {
    static std::atomic<std::uint64_t> counter{0};
    std::uint64_t id = counter.fetch_add(1);
    std::error_code ec;
    std::filesystem::create_directories(cfg.dump_dir, ec);
    char name[32];
    std::snprintf(name, sizeof(name), "q%06llu.smt2",
                  static_cast<unsigned long long>(id));
    std::ofstream out(std::filesystem::path(cfg.dump_dir) / name);
    out << script;
  }
  if (stats) stats->calls.fetch_add(1, std::memory_order_relaxed);
  RawResult raw = run_solver(script, cfg);
  if (raw.status == RawResult::Status::Timeout)
    return BackendVerdict::unknown(BackendVerdict::Reason::Timeout);
  if (raw.status == RawResult::Status::Error)
    return BackendVerdict::unknown(BackendVerdict::Reason::SolverError);
  std::istringstream is(raw.output);
  std::string token;
  is >> token;
  if (token == "unsat") return BackendVerdict::valid();
  if (token == "sat") return BackendVerdict::invalid();
  if (token == "unknown")
    return BackendVerdict::unknown(BackendVerdict::Reason::Unsupported);
  return BackendVerdict::unknown(BackendVerdict::Reason::SolverError);
}

SolverConfig default_solver_config() {
  SolverConfig cfg;
  if (const char* env = std::getenv("ENTAIL_SOLVER")) {
    cfg.executable = env;
    return cfg;
  }
  std::error_code ec;
  auto self = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    auto sibling = self.parent_path() / "pressmt";
    if (::access(sibling.c_str(), X_OK) == 0) {
      cfg.executable = sibling.string();
      return cfg;
    }
  }
  cfg.executable = "pressmt";
  return cfg;
}

}  // namespace entail
