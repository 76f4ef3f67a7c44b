#include "fuzzsense/socket_transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>

namespace fuzzsense::broker {

namespace {

void send_all(int fd, const std::vector<std::uint8_t>& bytes) {
    std::size_t sent = 0;
    while (sent < bytes.size()) {
        const ssize_t n = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
        if (n <= 0) throw TransportError("send failed");
        sent += static_cast<std::size_t>(n);
    }
}

BrokerMessage error_ack(const std::string& detail) {
    BrokerMessage msg;
    msg.type = MessageType::ack;
    msg.payload = AckPayload{false, detail};
    return msg;
}

}  // namespace

BrokerSocketServer::BrokerSocketServer(Broker& broker, std::uint16_t port) : broker_(broker) {
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw TransportError("cannot create listen socket");

    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(port);
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(listen_fd_);
        throw TransportError("cannot bind broker socket");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    if (::listen(listen_fd_, 4) < 0) {
        ::close(listen_fd_);
        throw TransportError("cannot listen on broker socket");
    }
    running_ = true;
    accept_thread_ = std::thread([this] { accept_loop(); });
}

BrokerSocketServer::~BrokerSocketServer() { stop(); }

void BrokerSocketServer::stop() {
    if (!running_.exchange(false)) return;
    ::shutdown(listen_fd_, SHUT_RDWR);
    ::close(listen_fd_);
    if (accept_thread_.joinable()) accept_thread_.join();
    for (auto& t : connection_threads_) {
        if (t.joinable()) t.join();
    }
    connection_threads_.clear();
}

void BrokerSocketServer::accept_loop() {
    while (running_) {
        const int client = ::accept(listen_fd_, nullptr, nullptr);
        if (client < 0) break;
        connection_threads_.emplace_back([this, client] { serve(client); });
    }
}

void BrokerSocketServer::serve(int client_fd) {
    FrameDecoder decoder;
    std::uint8_t buffer[16384];
    try {
        while (running_) {
            const ssize_t n = ::recv(client_fd, buffer, sizeof(buffer), 0);
            if (n <= 0) break;
            decoder.feed(std::span<const std::uint8_t>(buffer, static_cast<std::size_t>(n)));

            while (auto msg = decoder.next()) {
                BrokerMessage reply;
                try {
                    switch (msg->type) {
                        case MessageType::cmd:
                            reply = broker_.lifecycle(std::get<LifecycleVerb>(msg->payload));
                            break;
                        case MessageType::pointcloud:
                        case MessageType::camera: {
                            auto out = broker_.process_sensor_frame(*msg);
                            reply = out.has_value() ? std::move(*out)
                                                    : error_ack("frame dropped: malformed payload");
                            break;
                        }
                        case MessageType::control: {
                            broker_.forward_control(std::get<ControlCommand>(msg->payload));
                            BrokerMessage ack;
                            ack.type = MessageType::ack;
                            ack.payload = AckPayload{true, "control forwarded"};
                            reply = std::move(ack);
                            break;
                        }
                        case MessageType::ack:
                            reply = error_ack("unexpected ack from endpoint");
                            break;
                    }
                } catch (const std::exception& e) {
                    reply = error_ack(e.what());
                }
                send_all(client_fd, encode_frame(reply));
            }
        }
    } catch (const std::exception&) {
        // connection torn down; nothing to reply to
    }
    ::close(client_fd);
}

FramedClient::FramedClient(const std::string& host, std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) throw TransportError("cannot create client socket");

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
        ::close(fd_);
        throw TransportError("bad host address: " + host);
    }
    if (::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0) {
        ::close(fd_);
        throw TransportError("cannot connect to broker endpoint");
    }
    const int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

FramedClient::~FramedClient() {
    if (fd_ >= 0) ::close(fd_);
}

BrokerMessage FramedClient::request(const BrokerMessage& msg) {
    send_all(fd_, encode_frame(msg));
    std::uint8_t buffer[16384];
    while (true) {
        if (auto reply = decoder_.next()) return std::move(*reply);
        const ssize_t n = ::recv(fd_, buffer, sizeof(buffer), 0);
        if (n <= 0) throw TransportError("connection closed while awaiting reply");
        decoder_.feed(std::span<const std::uint8_t>(buffer, static_cast<std::size_t>(n)));
    }
}

}  // namespace fuzzsense::broker
