#ifndef FUZZSENSE_FRAMING_HPP
#define FUZZSENSE_FRAMING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fuzzsense/broker.hpp"

namespace fuzzsense::broker {

struct FramingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Wire format: 4-byte big-endian payload length, then UTF-8 JSON with the
/// BrokerMessage schema.
std::vector<std::uint8_t> encode_frame(const BrokerMessage& msg);

std::vector<std::uint8_t> frame_payload(const std::string& json_text);

/// Incremental decoder for a framed byte stream.
class FrameDecoder {
public:
    void feed(std::span<const std::uint8_t> bytes);

    /// Next complete message, or nullopt when more bytes are needed.
    std::optional<BrokerMessage> next();

private:
    std::vector<std::uint8_t> buffer_;
};

}  // namespace fuzzsense::broker

#endif
