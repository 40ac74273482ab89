#include "ghz/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

namespace ghz::net {
namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void fail(const std::string& what) {
  throw TransportError(what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const harness::Endpoint& e) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (int rc = ::getaddrinfo(e.host.c_str(), nullptr, &hints, &res); rc != 0) {
    throw TransportError("cannot resolve " + e.host + ": " + ::gai_strerror(rc));
  }
  sockaddr_in addr = *reinterpret_cast<sockaddr_in*>(res->ai_addr);
  ::freeaddrinfo(res);
  addr.sin_port = htons(e.port);
  return addr;
}

int remaining_ms(Clock::time_point deadline) {
  const auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  return left.count() < 0 ? 0 : static_cast<int>(left.count());
}

}  // namespace

Socket& Socket::operator=(Socket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.release();
  }
  return *this;
}

int Socket::release() {
  const int fd = fd_;
  fd_ = -1;
  return fd;
}

void Socket::close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

Socket listen_tcp(const harness::Endpoint& endpoint) {
  Socket s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
  if (!s.valid()) fail("socket");
  const int one = 1;
  ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr = resolve(endpoint);
  if (::bind(s.fd(), reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    fail("bind " + endpoint.to_string());
  }
  if (::listen(s.fd(), 16) != 0) fail("listen");
  return s;
}

std::uint16_t local_port(const Socket& s) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(s.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) {
    fail("getsockname");
  }
  return ntohs(addr.sin_port);
}

std::optional<Socket> accept_with_timeout(const Socket& listener,
                                          std::chrono::milliseconds timeout) {
  pollfd p{listener.fd(), POLLIN, 0};
  const int rc = ::poll(&p, 1, static_cast<int>(timeout.count()));
  if (rc < 0) fail("poll");
  if (rc == 0) return std::nullopt;
  Socket s(::accept4(listener.fd(), nullptr, nullptr, SOCK_CLOEXEC));
  if (!s.valid()) fail("accept");
  const int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

Socket connect_tcp(const harness::Endpoint& endpoint,
                   std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  const sockaddr_in addr = resolve(endpoint);
  for (;;) {
    Socket s(::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0));
    if (!s.valid()) fail("socket");
    if (::connect(s.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) == 0) {
      const int one = 1;
      ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      return s;
    }
    if ((errno != ECONNREFUSED && errno != ENOENT) || Clock::now() >= deadline) {
      fail("connect " + endpoint.to_string());
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

void LineChannel::capture_rx(const std::string& path) {
  rx_capture_.open(path, std::ios::app);
  if (!rx_capture_) throw TransportError("cannot open capture " + path);
}

void LineChannel::capture_tx(const std::string& path) {
  tx_capture_.open(path, std::ios::app);
  if (!tx_capture_) throw TransportError("cannot open capture " + path);
}

void LineChannel::send(const wire::WireMessage& msg) {
  send_line(wire::encode(msg));
}

void LineChannel::send_line(const std::string& line) {
  const std::string data = line + '\n';
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n =
        ::send(sock_.fd(), data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("send");
    }
    sent += static_cast<std::size_t>(n);
  }
  // Flushed per line: processes may leave via _exit.
  if (tx_capture_.is_open()) tx_capture_ << line << '\n' << std::flush;
}

bool LineChannel::take_buffered_line(std::string& line) {
  const auto nl = buf_.find('\n');
  if (nl == std::string::npos) return false;
  line.assign(buf_, 0, nl);
  buf_.erase(0, nl + 1);
  if (rx_capture_.is_open()) rx_capture_ << line << '\n' << std::flush;
  return true;
}

bool LineChannel::pump() {
  char chunk[4096];
  for (;;) {
    const ssize_t n = ::recv(sock_.fd(), chunk, sizeof chunk, MSG_DONTWAIT);
    if (n > 0) {
      buf_.append(chunk, static_cast<std::size_t>(n));
      continue;
    }
    if (n == 0) {
      eof_ = true;
      return false;
    }
    if (errno == EINTR) continue;
    if (errno == EAGAIN || errno == EWOULDBLOCK) return true;
    if (errno == ECONNRESET) {
      eof_ = true;
      return false;
    }
    fail("recv");
  }
}

LineChannel::ReadStatus LineChannel::read_line(std::string& line,
                                               std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  for (;;) {
    if (take_buffered_line(line)) return ReadStatus::kLine;
    if (eof_) return ReadStatus::kClosed;
    pollfd p{sock_.fd(), POLLIN, 0};
    const int rc = ::poll(&p, 1, remaining_ms(deadline));
    if (rc < 0) {
      if (errno == EINTR) continue;
      fail("poll");
    }
    if (rc == 0) return ReadStatus::kTimeout;
    pump();
  }
}

}  // namespace ghz::net
