// Copyright 2026 The tradeoff-bo Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#include "tradeoff/objectives.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstring>
#include <mutex>
#include <nlohmann/json.hpp>
#include <numbers>

#include "tradeoff/error.hpp"

namespace tradeoff {

namespace {

const SearchSpace& saturating_space() {
  static const SearchSpace space({
      ParamDomain::continuous("x1", 0.0, 1.0),
      ParamDomain::continuous("x2", 0.0, 1.0),
      ParamDomain::fraction("train_fraction", {0.2, 0.4, 0.6, 0.8, 1.0}),
  });
  return space;
}

const SearchSpace& grid_space() {
  static const SearchSpace space({
      ParamDomain::fraction("train_fraction", {0.2, 0.4, 0.6, 0.8, 1.0}),
      ParamDomain::categorical("model", {"a", "b", "c"}),
  });
  return space;
}

// Uniform in (0, 1) from a 64-bit word.
double to_open_unit(std::uint64_t x) { return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53; }

double standard_normal(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t key = mix64(seed ^ mix64(counter + 0x632be59bd9b4e019ULL));
  const double u1 = to_open_unit(mix64(key));
  const double u2 = to_open_unit(mix64(key + 1));
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

template <class T>
const T& value_of(const SearchSpace& space, const Configuration& config, std::string_view name) {
  const std::size_t i = space.index_of(name);
  if (i >= config.values.size()) throw Error(ErrorCode::OutOfDomain, "configuration lacks '" + std::string(name) + "'");
  const T* v = std::get_if<T>(&config.values[i]);
  if (!v) throw Error(ErrorCode::OutOfDomain, "wrong value type for '" + std::string(name) + "'");
  return *v;
}

EvalOutcome saturating(const SynthSpec& spec, const Configuration& config, std::size_t eval_index) {
  const auto& space = saturating_space();
  validate_configuration(space, config);
  const double x1 = value_of<double>(space, config, "x1");
  const double x2 = value_of<double>(space, config, "x2");
  const double f = value_of<double>(space, config, "train_fraction");
  const double q = (x1 - 0.55) * (x1 - 0.55) + (x2 - 0.45) * (x2 - 0.45);
  double accuracy = (0.55 + 0.45 * (1.0 - q)) * (1.0 - std::exp(-3.0 * f));
  if (spec.noise_std > 0.0) accuracy += spec.noise_std * standard_normal(spec.seed, eval_index);
  return {std::clamp(accuracy, 0.0, 1.0), (0.5 + 4.5 * x1) * f + 0.05};
}

EvalOutcome grid(const Configuration& config) {
  const auto& space = grid_space();
  validate_configuration(space, config);
  const double f = value_of<double>(space, config, "train_fraction");
  const auto& model = value_of<std::string>(space, config, "model");
  for (const auto& e : discrete_grid_table()) {
    if (e.fraction == f && e.model == model) return {e.accuracy, e.seconds};
  }
  throw Error(ErrorCode::OutOfDomain, "no table entry");
}

// ---- subprocess plumbing -------------------------------------------------

class Fd {
 public:
  Fd() = default;
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  Fd(Fd&& o) noexcept : fd_(std::exchange(o.fd_, -1)) {}
  Fd& operator=(Fd&& o) noexcept {
    if (this != &o) {
      reset();
      fd_ = std::exchange(o.fd_, -1);
    }
    return *this;
  }
  ~Fd() { reset(); }

  int get() const noexcept { return fd_; }
  void reset() noexcept {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

std::pair<Fd, Fd> make_pipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(ErrorCode::SpawnFailure, std::string("pipe: ") + std::strerror(errno));
  return {Fd(fds[0]), Fd(fds[1])};
}

// Owns a spawned trainer; the destructor kills and reaps the process group.
class ChildProcess {
 public:
  explicit ChildProcess(pid_t pid) : pid_(pid) {}
  ChildProcess(const ChildProcess&) = delete;
  ChildProcess& operator=(const ChildProcess&) = delete;
  ~ChildProcess() { kill_and_reap(); }

  /// Waits for exit until `deadline`; returns true if the child exited.
  bool wait_until(std::chrono::steady_clock::time_point deadline) {
    while (!reaped_) {
      int status = 0;
      const pid_t r = ::waitpid(pid_, &status, WNOHANG);
      if (r == pid_ || (r < 0 && errno == ECHILD)) {
        reaped_ = true;
        break;
      }
      if (std::chrono::steady_clock::now() >= deadline) return false;
      ::usleep(2000);
    }
    return true;
  }

  void kill_and_reap() noexcept {
    // Grandchildren share the group, so this also clears anything the trainer
    // left running after exiting.
    ::kill(-pid_, SIGKILL);
    if (!reaped_) {
      int status = 0;
      while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
      }
      reaped_ = true;
    }
  }

 private:
  pid_t pid_;
  bool reaped_ = false;
};

void ignore_sigpipe_once() {
  static std::once_flag flag;
  std::call_once(flag, [] { ::signal(SIGPIPE, SIG_IGN); });
}

int remaining_ms(std::chrono::steady_clock::time_point deadline) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
  return static_cast<int>(std::clamp<std::int64_t>(left.count(), 0, 1 << 30));
}

EvalOutcome parse_response(const std::string& line, double measured_seconds) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProtocolError, "response is not JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) throw Error(ErrorCode::ProtocolError, "response is not a JSON object");
  if (j.contains("error")) {
    throw Error(ErrorCode::TrainerError, j["error"].is_string() ? j["error"].get<std::string>() : j["error"].dump());
  }
  if (!j.contains("accuracy") || !j["accuracy"].is_number()) {
    throw Error(ErrorCode::ProtocolError, "response lacks numeric 'accuracy'");
  }
  const double accuracy = j["accuracy"].get<double>();
  if (!std::isfinite(accuracy)) throw Error(ErrorCode::ProtocolError, "accuracy is not finite");
  double seconds = measured_seconds;
  if (j.contains("train_seconds")) {
    if (!j["train_seconds"].is_number()) throw Error(ErrorCode::ProtocolError, "'train_seconds' is not a number");
    seconds = j["train_seconds"].get<double>();
    if (!std::isfinite(seconds) || seconds < 0.0) {
      throw Error(ErrorCode::ProtocolError, "'train_seconds' must be finite and non-negative");
    }
  }
  return {std::clamp(accuracy, 0.0, 1.0), std::max(seconds, 1e-9)};
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::string> synthetic_benchmarks() { return {"saturating", "discrete-grid"}; }

SearchSpace synthetic_space(const std::string& name) {
  if (name == "saturating") return saturating_space();
  if (name == "discrete-grid") return grid_space();
  throw Error(ErrorCode::UnknownBenchmark, "no synthetic benchmark named '" + name + "'");
}

// Model "a" is slow and accurate, "c" fast and weak. For t_ref = 8 s (the
// default Sobol initialization) and t_ref = 10 s alike, the T_alpha argmax is
// (1.0, a) at alpha 0, (0.6, b) at 0.5 and (0.6, c) at 1, each unique.
const std::vector<GridEntry>& discrete_grid_table() {
  static const std::vector<GridEntry> table = {
      {0.2, "a", 0.60, 2.0}, {0.2, "b", 0.58, 1.0}, {0.2, "c", 0.50, 0.4},
      {0.4, "a", 0.72, 4.0}, {0.4, "b", 0.70, 2.0}, {0.4, "c", 0.58, 0.8},
      {0.6, "a", 0.80, 6.0}, {0.6, "b", 0.77, 3.0}, {0.6, "c", 0.64, 1.2},
      {0.8, "a", 0.85, 8.0}, {0.8, "b", 0.79, 4.0}, {0.8, "c", 0.66, 1.6},
      {1.0, "a", 0.88, 10.0}, {1.0, "b", 0.80, 5.0}, {1.0, "c", 0.68, 2.0},
  };
  return table;
}

EvalOutcome eval_synthetic(const SynthSpec& spec, const Configuration& config, std::size_t eval_index) {
  if (spec.name == "saturating") return saturating(spec, config, eval_index);
  if (spec.name == "discrete-grid") return grid(config);
  throw Error(ErrorCode::UnknownBenchmark, "no synthetic benchmark named '" + spec.name + "'");
}

std::string trainer_request(const SearchSpace& space, const Configuration& config, std::uint64_t seed) {
  validate_configuration(space, config);
  nlohmann::ordered_json hyper = nlohmann::ordered_json::object();
  double train_fraction = 1.0;
  bool fraction_taken = false;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& dim = space.dims()[i];
    const auto& v = config.values[i];
    if (dim.is_fraction() && !fraction_taken) {
      train_fraction = std::get<double>(v);
      fraction_taken = true;
      continue;
    }
    std::visit([&](const auto& x) { hyper[dim.name] = x; }, v);
  }
  nlohmann::ordered_json req;
  req["hyperparameters"] = std::move(hyper);
  req["train_fraction"] = train_fraction;
  req["seed"] = seed;
  return req.dump();
}

EvalOutcome eval_external(const std::vector<std::string>& command, const Configuration& config,
                          const SearchSpace& space, std::chrono::duration<double> timeout, std::uint64_t seed) {
  if (command.empty()) throw Error(ErrorCode::SpawnFailure, "empty trainer command");
  const std::string request = trainer_request(space, config, seed) + "\n";
  ignore_sigpipe_once();

  auto [stdin_read, stdin_write] = make_pipe();
  auto [stdout_read, stdout_write] = make_pipe();
  auto [exec_read, exec_write] = make_pipe();

  std::vector<char*> argv;
  for (const auto& a : command) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);

  const auto start = std::chrono::steady_clock::now();
  const auto deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(timeout);
  const pid_t pid = ::fork();
  if (pid < 0) throw Error(ErrorCode::SpawnFailure, std::string("fork: ") + std::strerror(errno));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(stdin_read.get(), STDIN_FILENO);
    ::dup2(stdout_write.get(), STDOUT_FILENO);
    ::execvp(argv[0], argv.data());
    const int err = errno;
    [[maybe_unused]] auto n = ::write(exec_write.get(), &err, sizeof err);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ChildProcess child(pid);
  stdin_read.reset();
  stdout_write.reset();
  exec_write.reset();

  int exec_errno = 0;
  if (::read(exec_read.get(), &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
    throw Error(ErrorCode::SpawnFailure, "cannot execute '" + command.front() + "': " + std::strerror(exec_errno));
  }

  // The trainer may not read its input; a failed write surfaces later as a
  // missing or malformed response.
  std::size_t written = 0;
  while (written < request.size()) {
    const ssize_t n = ::write(stdin_write.get(), request.data() + written, request.size() - written);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    written += static_cast<std::size_t>(n);
  }
  stdin_write.reset();

  std::string buffer;
  bool got_line = false;
  char chunk[4096];
  while (!got_line) {
    pollfd p{stdout_read.get(), POLLIN, 0};
    const int ready = ::poll(&p, 1, remaining_ms(deadline));
    if (ready < 0 && errno == EINTR) continue;
    if (ready == 0) {
      child.kill_and_reap();
      throw Error(ErrorCode::Timeout, "trainer exceeded " + std::to_string(timeout.count()) + " s");
    }
    const ssize_t n = ::read(stdout_read.get(), chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    if (buffer.find('\n') != std::string::npos) got_line = true;
  }
  const double measured = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stdout_read.reset();

  if (const auto nl = buffer.find('\n'); nl != std::string::npos) buffer.resize(nl);
  if (!buffer.empty() && buffer.back() == '\r') buffer.pop_back();
  if (buffer.empty()) {
    child.kill_and_reap();
    throw Error(ErrorCode::ProtocolError, "trainer closed its output without a response");
  }
  const auto outcome = parse_response(buffer, measured);
  child.wait_until(deadline);
  child.kill_and_reap();
  return outcome;
}

std::vector<std::size_t> subsample_indices(std::size_t n, double fraction, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidSettings, "subsample_indices requires n >= 1");
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw Error(ErrorCode::InvalidSettings, "fraction must lie in (0, 1]");
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  // Fisher-Yates driven by a counter-based stream, so the permutation does not
  // depend on the standard library's shuffle.
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::uint64_t r = mix64(seed ^ mix64(i));
    const auto j = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(r) * static_cast<unsigned __int128>(i + 1)) >> 64);
    std::swap(perm[i], perm[j]);
  }
  auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n) - 1e-9));
  count = std::clamp<std::size_t>(count, 1, n);
  perm.resize(count);
  return perm;
}

}  // namespace tradeoff
