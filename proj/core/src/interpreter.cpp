#include "golovin/interpreter.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <optional>

#include "golovin/errors.hpp"
#include "golovin/text.hpp"

namespace golovin {

namespace {

std::optional<int> first_capture(const std::string& line, const std::vector<std::regex>& res) {
  for (const auto& re : res) {
    std::smatch m;
    if (std::regex_search(line, m, re) && m.size() > 1) return std::stoi(m[1].str());
  }
  return std::nullopt;
}

std::vector<std::regex> compile(const std::vector<std::string>& patterns) {
  std::vector<std::regex> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) out.emplace_back(p);
  return out;
}

bool contains_any(const std::string& s, const std::vector<std::string>& needles) {
  for (const auto& n : needles)
    if (!n.empty() && s.find(n) != std::string::npos) return true;
  return false;
}

bool is_prompt_line(const std::string& line) {
  auto t = text::trim(line);
  return t == ">" || t.empty();
}

}  // namespace

Percept parse_interpreter_output(const std::string& raw, const Percept& previous, const OutputPatterns& patterns) {
  const auto score_res = compile(patterns.score);
  const auto moves_res = compile(patterns.moves);
  const std::regex pair_re(patterns.pair);

  Percept p;
  p.score = previous.score;
  p.moves = previous.moves;

  std::vector<std::string> kept;
  bool first_content = true;
  for (auto line : text::split(raw, '\n')) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_prompt_line(line)) continue;
    auto score = first_capture(line, score_res);
    auto moves = first_capture(line, moves_res);
    if (score || moves) {
      if (score) p.score = *score;
      if (moves) p.moves = *moves;
      first_content = false;
      continue;
    }
    if (first_content) {
      first_content = false;
      std::smatch m;
      if (std::regex_search(line, m, pair_re)) {
        p.score = std::stoi(m[1].str());
        p.moves = std::stoi(m[2].str());
        continue;
      }
    }
    kept.push_back(line);
  }

  p.description = text::collapse_whitespace(text::join(kept, " "));
  p.dead = contains_any(raw, patterns.death);
  p.won = !p.dead && contains_any(raw, patterns.won);
  return p;
}

std::vector<std::string> parse_inventory_listing(const std::string& response) {
  std::vector<std::string> items;
  for (auto line : text::split(response, '\n')) {
    auto t = text::trim(line);
    if (t.empty() || t.back() == ':' || t == ">") continue;
    auto lower = text::to_lower(t);
    if (lower.rfind("you are ", 0) == 0 || lower.rfind("you have ", 0) == 0 || lower.rfind("you're ", 0) == 0) continue;
    while (!t.empty() && (t.back() == '.' || t.back() == ',')) t.pop_back();
    for (std::string_view article : {"a ", "an ", "the ", "some "}) {
      if (text::starts_with_icase(t, article)) {
        t = text::trim(t.substr(article.size()));
        break;
      }
    }
    if (!t.empty()) items.push_back(text::to_lower(t));
  }
  return items;
}

std::filesystem::path resolve_interpreter(const std::filesystem::path& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv("GOLOVIN_INTERPRETER"); env && *env) return env;
  return {};
}

// Child process connected through a socket pair, so writes to a dead child
// fail with EPIPE instead of raising SIGPIPE.
class InterpreterEnv::Process {
 public:
  explicit Process(const std::vector<std::string>& argv) {
    int sv[2];
    if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
      throw EnvironmentError(std::string("socketpair: ") + std::strerror(errno));
    int status_pipe[2];
    if (::pipe2(status_pipe, O_CLOEXEC) != 0) {
      ::close(sv[0]);
      ::close(sv[1]);
      throw EnvironmentError(std::string("pipe: ") + std::strerror(errno));
    }

    std::vector<char*> cargv;
    for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
    cargv.push_back(nullptr);

    pid_ = ::fork();
    if (pid_ < 0) throw EnvironmentError(std::string("fork: ") + std::strerror(errno));
    if (pid_ == 0) {
      ::dup2(sv[1], STDIN_FILENO);
      ::dup2(sv[1], STDOUT_FILENO);
      int devnull = ::open("/dev/null", O_WRONLY);
      if (devnull >= 0) ::dup2(devnull, STDERR_FILENO);
      ::execvp(cargv[0], cargv.data());
      int err = errno;
      [[maybe_unused]] auto n = ::write(status_pipe[1], &err, sizeof err);
      ::_exit(127);
    }
    ::close(sv[1]);
    ::close(status_pipe[1]);
    fd_ = sv[0];

    int child_errno = 0;
    auto n = ::read(status_pipe[0], &child_errno, sizeof child_errno);
    ::close(status_pipe[0]);
    if (n == static_cast<ssize_t>(sizeof child_errno)) {
      ::waitpid(pid_, nullptr, 0);
      pid_ = -1;
      ::close(fd_);
      fd_ = -1;
      throw EnvironmentError("cannot execute '" + argv.front() + "': " + std::strerror(child_errno));
    }
  }

  ~Process() {
    if (fd_ >= 0) ::close(fd_);
    if (pid_ > 0) {
      ::kill(pid_, SIGTERM);
      ::waitpid(pid_, nullptr, 0);
    }
  }

  Process(const Process&) = delete;
  Process& operator=(const Process&) = delete;

  void write_line(std::string_view line) {
    std::string buf(line);
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      auto n = ::send(fd_, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw EnvironmentError(std::string("interpreter input closed: ") + std::strerror(errno));
      }
      off += static_cast<std::size_t>(n);
    }
  }

  // Reads until the accumulated output ends with `prompt` or the child closes
  // its end. Throws on timeout.
  std::string read_until(const std::string& prompt, std::chrono::milliseconds timeout) {
    std::string out;
    auto deadline = std::chrono::steady_clock::now() + timeout;
    char chunk[4096];
    for (;;) {
      if (!prompt.empty() && out.size() >= prompt.size() &&
          out.compare(out.size() - prompt.size(), prompt.size(), prompt) == 0)
        return out;
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw EnvironmentError("interpreter response timed out (prompt not seen)");
      pollfd pfd{fd_, POLLIN, 0};
      int r = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (r < 0) {
        if (errno == EINTR) continue;
        throw EnvironmentError(std::string("poll: ") + std::strerror(errno));
      }
      if (r == 0) continue;
      auto n = ::read(fd_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw EnvironmentError(std::string("read: ") + std::strerror(errno));
      }
      if (n == 0) {
        eof_ = true;
        return out;
      }
      out.append(chunk, static_cast<std::size_t>(n));
    }
  }

  bool eof() const { return eof_; }

 private:
  pid_t pid_ = -1;
  int fd_ = -1;
  bool eof_ = false;
};

InterpreterEnv::InterpreterEnv(InterpreterOptions options) : options_(std::move(options)) {
  session_.backend = Backend::interpreter;
  options_.program = resolve_interpreter(options_.program);
}

InterpreterEnv::~InterpreterEnv() {
  if (process_ && !process_->eof()) {
    try {
      process_->write_line("quit");
    } catch (const EnvironmentError&) {
    }
  }
}

void InterpreterEnv::spawn() {
  if (options_.program.empty())
    throw EnvironmentError("no interpreter configured (set GOLOVIN_INTERPRETER or pass --interpreter)");
  std::vector<std::string> argv{options_.program.string()};
  argv.insert(argv.end(), options_.args.begin(), options_.args.end());
  if (!options_.story.empty()) argv.push_back(options_.story.string());
  process_.reset();
  process_ = std::make_unique<Process>(argv);
}

std::string InterpreterEnv::exchange(std::string_view command) {
  if (!process_ || process_->eof()) throw EnvironmentError("interpreter process is not running");
  process_->write_line(command);
  last_raw_ = process_->read_until(options_.prompt, options_.timeout);
  return last_raw_;
}

Percept InterpreterEnv::start() {
  spawn();
  started_ = true;
  session_.steps = 0;
  last_raw_ = process_->read_until(options_.prompt, options_.timeout);
  if (process_->eof() && text::trim(last_raw_).empty())
    throw EnvironmentError("interpreter exited before its first prompt");
  last_ = parse_interpreter_output(last_raw_, Percept{}, options_.patterns);
  return last_;
}

Percept InterpreterEnv::restart() {
  if (started_) ++session_.episode;
  return start();
}

Percept InterpreterEnv::step(std::string_view command) {
  if (!started_) throw UsageError("step before start");
  if (last_.terminal()) throw UsageError("step on a terminated session; restart first");
  auto raw = exchange(command);
  ++session_.steps;
  last_ = parse_interpreter_output(raw, last_, options_.patterns);
  if (last_.description.empty() && process_->eof()) last_.description = "(interpreter exited)";
  return last_;
}

std::vector<std::string> InterpreterEnv::query_inventory() {
  if (!started_) throw UsageError("inventory query before start");
  ++session_.inventory_queries;
  auto raw = exchange(options_.inventory_command);
  // Drop status lines and the prompt, keep line structure.
  std::string body;
  const auto score_res = compile(options_.patterns.score);
  const auto moves_res = compile(options_.patterns.moves);
  for (const auto& line : text::split(raw, '\n')) {
    if (first_capture(line, score_res) || first_capture(line, moves_res)) continue;
    body += line + "\n";
  }
  return parse_inventory_listing(body);
}

}  // namespace golovin
