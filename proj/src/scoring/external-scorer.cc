// Copyright 2026 The ekrt Authors. All Rights Reserved.
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

#include "ekrt/scoring/external-scorer.h"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstring>
#include <sstream>
#include <thread>

namespace ekrt {

ExternalScorer::ExternalScorer(const ExternalScorerConfig &config)
    : config_(config) {
  if (config_.command.empty()) throw ConfigError("external scorer: no command");
  int sv[2];
  if (socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw ScorerError(std::string("external scorer: socketpair: ") +
                      std::strerror(errno));
  pid_ = fork();
  if (pid_ < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw ScorerError(std::string("external scorer: fork: ") +
                      std::strerror(errno));
  }
  if (pid_ == 0) {
    dup2(sv[1], STDIN_FILENO);
    dup2(sv[1], STDOUT_FILENO);
    execl("/bin/sh", "sh", "-c", config_.command.c_str(),
          static_cast<char *>(nullptr));
    _exit(127);
  }
  ::close(sv[1]);
  fd_ = sv[0];

  const std::string hello = ReadLine();
  std::istringstream ss(hello);
  std::string magic;
  int version = 0;
  long long n = 0;
  std::string rest;
  if (!(ss >> magic >> version >> n) || magic != "EKRT-SCORER" ||
      version != 1 || n <= 0 || (ss >> rest))
    Fail("bad handshake '" + hello + "'");
  num_pdfs_ = static_cast<std::size_t>(n);
  if (config_.expected_pdfs != 0 && num_pdfs_ != config_.expected_pdfs)
    Fail("scorer reports " + std::to_string(num_pdfs_) + " pdfs, expected " +
         std::to_string(config_.expected_pdfs));
}

ExternalScorer::~ExternalScorer() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_WR);
    ::close(fd_);
  }
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (waitpid(pid_, &status, WNOHANG) == pid_) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    kill(pid_, SIGKILL);
    waitpid(pid_, &status, 0);
  }
}

void ExternalScorer::Fail(const std::string &what) {
  throw ScorerError("external scorer '" + config_.command + "': " + what);
}

std::string ExternalScorer::ReadLine() {
  const auto deadline = std::chrono::steady_clock::now() + config_.timeout;
  for (;;) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0)
      Fail("no reply within " + std::to_string(config_.timeout.count()) +
           " ms");
    pollfd p{fd_, POLLIN, 0};
    const int rc = ::poll(&p, 1, static_cast<int>(left.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0) Fail(std::string("poll: ") + std::strerror(errno));
    if (rc == 0) continue;
    char buf[4096];
    const ssize_t n = ::recv(fd_, buf, sizeof(buf), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) Fail(std::string("read: ") + std::strerror(errno));
    if (n == 0) Fail("process exited");
    buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

void ExternalScorer::WriteLine(const std::string &line) {
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t n =
        ::send(fd_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (n < 0 && errno == EINTR) continue;
    if (n < 0) Fail("process exited (write failed)");
    sent += static_cast<std::size_t>(n);
  }
}

LoglikBlock ExternalScorer::Score(const FeatureMatrix &block) {
  if (config_.dims != 0 && block.frames() > 0 && block.dims() != config_.dims)
    throw DimensionError("external scorer: features have " +
                         std::to_string(block.dims()) + " dims, expected " +
                         std::to_string(config_.dims));
  LoglikBlock out;
  out.first_frame = block.first_frame;
  out.data = Matrix(block.frames(), num_pdfs_);
  std::string line;
  char num[32];
  for (std::size_t t = 0; t < block.frames(); ++t) {
    line.clear();
    for (double v : block.data.Row(t)) {
      auto res = std::to_chars(num, num + sizeof(num), v);
      if (!line.empty()) line.push_back(' ');
      line.append(num, res.ptr);
    }
    line.push_back('\n');
    WriteLine(line);

    const std::string reply = ReadLine();
    const char *p = reply.data();
    const char *end = p + reply.size();
    std::size_t k = 0;
    for (;;) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      double v;
      auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc() || !std::isfinite(v) || k >= num_pdfs_ ||
          (res.ptr < end && *res.ptr != ' ' && *res.ptr != '\t'))
        Fail("malformed reply for frame " +
             std::to_string(block.first_frame + t) + ": '" +
             reply.substr(0, 80) + "'");
      out.data(t, k++) = v;
      p = res.ptr;
    }
    if (k != num_pdfs_)
      Fail("reply for frame " + std::to_string(block.first_frame + t) +
           " has " + std::to_string(k) + " values, expected " +
           std::to_string(num_pdfs_));
  }
  return out;
}

}  // namespace ekrt
