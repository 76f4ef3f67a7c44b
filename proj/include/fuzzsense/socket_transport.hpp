#ifndef FUZZSENSE_SOCKET_TRANSPORT_HPP
#define FUZZSENSE_SOCKET_TRANSPORT_HPP

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "fuzzsense/broker.hpp"
#include "fuzzsense/framing.hpp"

namespace fuzzsense::broker {

struct TransportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Serves a Broker over TCP: one connection per endpoint, length-prefixed
/// JSON messages. Every request gets exactly one reply: cmd -> ack,
/// sensor frame -> transformed frame (or a failure ack when dropped),
/// control -> ack after forwarding.
class BrokerSocketServer {
public:
    /// Binds to 127.0.0.1 on the given port (0 picks an ephemeral port).
    explicit BrokerSocketServer(Broker& broker, std::uint16_t port = 0);
    ~BrokerSocketServer();

    BrokerSocketServer(const BrokerSocketServer&) = delete;
    BrokerSocketServer& operator=(const BrokerSocketServer&) = delete;

    std::uint16_t port() const { return port_; }
    void stop();

private:
    void accept_loop();
    void serve(int client_fd);

    Broker& broker_;
    int listen_fd_{-1};
    std::uint16_t port_{0};
    std::atomic<bool> running_{false};
    std::thread accept_thread_;
    std::vector<std::thread> connection_threads_;
};

/// Blocking request/response client for the framed broker protocol.
class FramedClient {
public:
    FramedClient(const std::string& host, std::uint16_t port);
    ~FramedClient();

    FramedClient(const FramedClient&) = delete;
    FramedClient& operator=(const FramedClient&) = delete;

    BrokerMessage request(const BrokerMessage& msg);

private:
    int fd_{-1};
    FrameDecoder decoder_;
};

}  // namespace fuzzsense::broker

#endif
