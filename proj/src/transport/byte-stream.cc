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

#include "ekrt/transport/byte-stream.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>
#include <vector>

namespace ekrt {
namespace {

struct Channel {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::uint8_t> buf;
  bool closed = false;
};

class MemoryStream : public ByteStream {
 public:
  MemoryStream(std::shared_ptr<Channel> in, std::shared_ptr<Channel> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~MemoryStream() override { CloseWrite(); }

  void Write(std::span<const std::uint8_t> bytes) override {
    std::lock_guard<std::mutex> lock(out_->mu);
    if (out_->closed) throw TransportError("memory stream: write after close");
    out_->buf.insert(out_->buf.end(), bytes.begin(), bytes.end());
    out_->cv.notify_all();
  }

  bool WaitReadable(std::chrono::milliseconds timeout) override {
    std::unique_lock<std::mutex> lock(in_->mu);
    return in_->cv.wait_for(lock, timeout,
                            [&] { return !in_->buf.empty() || in_->closed; });
  }

  bool ReadExact(std::span<std::uint8_t> out) override {
    std::unique_lock<std::mutex> lock(in_->mu);
    std::size_t got = 0;
    while (got < out.size()) {
      in_->cv.wait(lock, [&] { return !in_->buf.empty() || in_->closed; });
      if (in_->buf.empty()) {
        if (got == 0) return false;
        throw TransportError("memory stream: closed mid-message");
      }
      const std::size_t n = std::min(out.size() - got, in_->buf.size());
      std::copy_n(in_->buf.begin(), n, out.begin() + got);
      in_->buf.erase(in_->buf.begin(), in_->buf.begin() + n);
      got += n;
    }
    return true;
  }

  void CloseWrite() override {
    std::lock_guard<std::mutex> lock(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

 private:
  std::shared_ptr<Channel> in_;
  std::shared_ptr<Channel> out_;
};

[[noreturn]] void ThrowErrno(const std::string &what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

addrinfo *Resolve(const HostPort &addr, bool passive) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo *res = nullptr;
  const std::string port = std::to_string(addr.port);
  const int rc = getaddrinfo(addr.host.empty() ? nullptr : addr.host.c_str(),
                             port.c_str(), &hints, &res);
  if (rc != 0)
    throw TransportError("cannot resolve '" + addr.host + "': " +
                         gai_strerror(rc));
  return res;
}

}  // namespace

std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
MakeMemoryStreamPair() {
  auto a_to_b = std::make_shared<Channel>();
  auto b_to_a = std::make_shared<Channel>();
  return {std::make_unique<MemoryStream>(b_to_a, a_to_b),
          std::make_unique<MemoryStream>(a_to_b, b_to_a)};
}

LossyStream::LossyStream(std::unique_ptr<ByteStream> inner,
                         double corrupt_rate, std::uint64_t seed)
    : inner_(std::move(inner)), rate_(corrupt_rate), rng_(seed) {
  if (!(rate_ >= 0.0 && rate_ < 1.0))
    throw ConfigError("lossy stream: corruption rate must lie in [0, 1)");
}

void LossyStream::Write(std::span<const std::uint8_t> bytes) {
  ++messages_;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (bytes.size() < kHeaderSize || u(rng_) >= rate_) {
    inner_->Write(bytes);
    return;
  }
  ++corrupted_;
  static constexpr std::size_t kHeaderTargets[] = {0, 1, 2, 3, 4, 7,
                                                   16, 17, 18, 19};
  const std::size_t n_targets = std::size(kHeaderTargets) +
                                (bytes.size() - kHeaderSize);
  std::size_t pick = std::uniform_int_distribution<std::size_t>(
      0, n_targets - 1)(rng_);
  pick = pick < std::size(kHeaderTargets)
             ? kHeaderTargets[pick]
             : kHeaderSize + (pick - std::size(kHeaderTargets));
  std::vector<std::uint8_t> copy(bytes.begin(), bytes.end());
  copy[pick] ^= static_cast<std::uint8_t>(
      std::uniform_int_distribution<int>(1, 255)(rng_));
  inner_->Write(copy);
}

HostPort ParseHostPort(const std::string &spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string::npos)
    throw ConfigError("address '" + spec + "' is not host:port");
  HostPort hp;
  hp.host = spec.substr(0, colon);
  const std::string port = spec.substr(colon + 1);
  try {
    std::size_t used = 0;
    const int p = std::stoi(port, &used);
    if (used != port.size() || p < 0 || p > 65535) throw std::out_of_range("");
    hp.port = static_cast<std::uint16_t>(p);
  } catch (const std::exception &) {
    throw ConfigError("address '" + spec + "' has a bad port");
  }
  return hp;
}

TcpStream::TcpStream(int fd) : fd_(fd) {
  int one = 1;
  setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

TcpStream::~TcpStream() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpStream::Write(std::span<const std::uint8_t> bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t n =
        ::send(fd_, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno("tcp send");
    }
    sent += static_cast<std::size_t>(n);
  }
}

bool TcpStream::WaitReadable(std::chrono::milliseconds timeout) {
  pollfd p{fd_, POLLIN, 0};
  for (;;) {
    const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
    if (rc < 0 && errno == EINTR) continue;
    if (rc < 0) ThrowErrno("tcp poll");
    return rc > 0;
  }
}

bool TcpStream::ReadExact(std::span<std::uint8_t> out) {
  std::size_t got = 0;
  while (got < out.size()) {
    const ssize_t n = ::recv(fd_, out.data() + got, out.size() - got, 0);
    if (n < 0) {
      if (errno == EINTR) continue;
      ThrowErrno("tcp recv");
    }
    if (n == 0) {
      if (got == 0) return false;
      throw TransportError("tcp: connection closed mid-message");
    }
    got += static_cast<std::size_t>(n);
  }
  return true;
}

void TcpStream::CloseWrite() { ::shutdown(fd_, SHUT_WR); }

TcpListener::TcpListener(const HostPort &addr) {
  addrinfo *res = Resolve(addr, true);
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0) {
    freeaddrinfo(res);
    ThrowErrno("socket");
  }
  int one = 1;
  setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  const int rc = ::bind(fd_, res->ai_addr, res->ai_addrlen);
  freeaddrinfo(res);
  if (rc < 0 || ::listen(fd_, 1) < 0) {
    const int err = errno;
    ::close(fd_);
    errno = err;
    ThrowErrno("listen on port " + std::to_string(addr.port));
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  getsockname(fd_, reinterpret_cast<sockaddr *>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<TcpStream> TcpListener::Accept(
    std::chrono::milliseconds timeout) {
  pollfd p{fd_, POLLIN, 0};
  int rc;
  do {
    rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
  } while (rc < 0 && errno == EINTR);
  if (rc < 0) ThrowErrno("accept poll");
  if (rc == 0) throw TransportError("no client connected before timeout");
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) ThrowErrno("accept");
  return std::make_unique<TcpStream>(fd);
}

std::unique_ptr<TcpStream> TcpConnect(const HostPort &addr,
                                      std::chrono::milliseconds timeout) {
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  addrinfo *res = Resolve(
      {addr.host.empty() ? std::string("127.0.0.1") : addr.host, addr.port},
      false);
  for (;;) {
    const int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) {
      freeaddrinfo(res);
      ThrowErrno("socket");
    }
    if (::connect(fd, res->ai_addr, res->ai_addrlen) == 0) {
      freeaddrinfo(res);
      return std::make_unique<TcpStream>(fd);
    }
    const int err = errno;
    ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline) {
      freeaddrinfo(res);
      errno = err;
      ThrowErrno("connect to " + addr.host + ":" + std::to_string(addr.port));
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

}  // namespace ekrt
