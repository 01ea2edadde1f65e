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

// include/ekrt/transport/byte-stream.h

#ifndef EKRT_TRANSPORT_BYTE_STREAM_H_
#define EKRT_TRANSPORT_BYTE_STREAM_H_

#include <chrono>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>

#include "ekrt/transport/wire.h"

namespace ekrt {

// Full-duplex reliable byte stream. One reader and one writer may use it
// concurrently.
class ByteStream {
 public:
  virtual ~ByteStream() = default;

  // Writes all bytes. Throws TransportError on connection loss.
  virtual void Write(std::span<const std::uint8_t> bytes) = 0;

  // True when at least one byte or end of stream is ready within timeout.
  virtual bool WaitReadable(std::chrono::milliseconds timeout) = 0;

  // Fills out. Returns false on end of stream before the first byte;
  // throws TransportError if the stream ends part way.
  virtual bool ReadExact(std::span<std::uint8_t> out) = 0;

  // Ends the write direction; the peer reads end of stream.
  virtual void CloseWrite() = 0;
};

// Two connected in-memory endpoints.
std::pair<std::unique_ptr<ByteStream>, std::unique_ptr<ByteStream>>
MakeMemoryStreamPair();

// Decorator that corrupts a fraction of outgoing messages, one message per
// Write call. Only the bytes the receiver can check are touched: magic,
// version, reserved, the crc field and the payload. Framing survives, so
// the receiver can always resynchronize.
class LossyStream : public ByteStream {
 public:
  LossyStream(std::unique_ptr<ByteStream> inner, double corrupt_rate,
              std::uint64_t seed);

  void Write(std::span<const std::uint8_t> bytes) override;
  bool WaitReadable(std::chrono::milliseconds t) override {
    return inner_->WaitReadable(t);
  }
  bool ReadExact(std::span<std::uint8_t> out) override {
    return inner_->ReadExact(out);
  }
  void CloseWrite() override { inner_->CloseWrite(); }

  std::int64_t messages() const { return messages_; }
  std::int64_t corrupted() const { return corrupted_; }

 private:
  std::unique_ptr<ByteStream> inner_;
  double rate_;
  std::mt19937_64 rng_;
  std::int64_t messages_ = 0;
  std::int64_t corrupted_ = 0;
};

struct HostPort {
  std::string host;
  std::uint16_t port = 0;
};

// "host:port"; an empty host means all interfaces.
HostPort ParseHostPort(const std::string &spec);

class TcpStream : public ByteStream {
 public:
  explicit TcpStream(int fd);
  ~TcpStream() override;
  TcpStream(const TcpStream &) = delete;
  TcpStream &operator=(const TcpStream &) = delete;

  void Write(std::span<const std::uint8_t> bytes) override;
  bool WaitReadable(std::chrono::milliseconds timeout) override;
  bool ReadExact(std::span<std::uint8_t> out) override;
  void CloseWrite() override;

 private:
  int fd_;
};

class TcpListener {
 public:
  explicit TcpListener(const HostPort &addr);
  ~TcpListener();
  TcpListener(const TcpListener &) = delete;
  TcpListener &operator=(const TcpListener &) = delete;

  std::uint16_t port() const { return port_; }

  // Throws TransportError if nobody connects within timeout.
  std::unique_ptr<TcpStream> Accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

// Retries refused connections until timeout, so a client may start
// before its server.
std::unique_ptr<TcpStream> TcpConnect(const HostPort &addr,
                                      std::chrono::milliseconds timeout);

}  // namespace ekrt

#endif  // EKRT_TRANSPORT_BYTE_STREAM_H_
