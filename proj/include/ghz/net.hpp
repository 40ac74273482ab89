#ifndef GHZ_NET_HPP_
#define GHZ_NET_HPP_

// Loopback stream sockets carrying newline-delimited messages.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

#include "ghz/session.hpp"
#include "ghz/wire.hpp"

namespace ghz::net {

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Owning file descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  ~Socket() { close(); }
  Socket(Socket&& other) noexcept : fd_(other.release()) {}
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();
  void close();

 private:
  int fd_ = -1;
};

Socket listen_tcp(const harness::Endpoint& endpoint);
std::uint16_t local_port(const Socket& s);
// std::nullopt on timeout.
std::optional<Socket> accept_with_timeout(const Socket& listener,
                                          std::chrono::milliseconds timeout);
// Retries refused connections until the timeout elapses.
Socket connect_tcp(const harness::Endpoint& endpoint,
                   std::chrono::milliseconds timeout);

// Buffered line reader/writer over a connected socket. Optionally mirrors
// every line sent or received into capture files.
class LineChannel {
 public:
  LineChannel() = default;
  explicit LineChannel(Socket s) : sock_(std::move(s)) {}

  void capture_rx(const std::string& path);
  void capture_tx(const std::string& path);

  void send(const wire::WireMessage& msg);
  void send_line(const std::string& line);

  enum class ReadStatus { kLine, kTimeout, kClosed };
  // Waits up to `timeout` for a complete line (newline stripped).
  ReadStatus read_line(std::string& line, std::chrono::milliseconds timeout);
  // Non-blocking: a complete line already buffered.
  bool take_buffered_line(std::string& line);
  // Reads whatever is available without blocking; false once the peer closed.
  bool pump();

  int fd() const { return sock_.fd(); }
  bool open() const { return sock_.valid() && !eof_; }
  void close() { sock_.close(); }

 private:
  Socket sock_;
  std::string buf_;
  bool eof_ = false;
  std::ofstream rx_capture_;
  std::ofstream tx_capture_;
};

}  // namespace ghz::net

#endif  // GHZ_NET_HPP_
