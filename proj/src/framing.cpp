#include "fuzzsense/framing.hpp"

#include "fuzzsense/json_codec.hpp"

namespace fuzzsense::broker {

std::vector<std::uint8_t> frame_payload(const std::string& json_text) {
    if (json_text.size() > 0xffffffffull) throw FramingError("payload too large to frame");
    const auto length = static_cast<std::uint32_t>(json_text.size());
    std::vector<std::uint8_t> out;
    out.reserve(4 + json_text.size());
    out.push_back(static_cast<std::uint8_t>(length >> 24));
    out.push_back(static_cast<std::uint8_t>(length >> 16));
    out.push_back(static_cast<std::uint8_t>(length >> 8));
    out.push_back(static_cast<std::uint8_t>(length));
    out.insert(out.end(), json_text.begin(), json_text.end());
    return out;
}

std::vector<std::uint8_t> encode_frame(const BrokerMessage& msg) {
    return frame_payload(nlohmann::json(msg).dump());
}

void FrameDecoder::feed(std::span<const std::uint8_t> bytes) {
    buffer_.insert(buffer_.end(), bytes.begin(), bytes.end());
}

std::optional<BrokerMessage> FrameDecoder::next() {
    if (buffer_.size() < 4) return std::nullopt;
    const std::uint32_t length = (static_cast<std::uint32_t>(buffer_[0]) << 24) |
                                 (static_cast<std::uint32_t>(buffer_[1]) << 16) |
                                 (static_cast<std::uint32_t>(buffer_[2]) << 8) |
                                 static_cast<std::uint32_t>(buffer_[3]);
    if (buffer_.size() < 4 + static_cast<std::size_t>(length)) return std::nullopt;

    const std::string json_text(buffer_.begin() + 4, buffer_.begin() + 4 + length);
    buffer_.erase(buffer_.begin(), buffer_.begin() + 4 + length);
    try {
        return nlohmann::json::parse(json_text).get<BrokerMessage>();
    } catch (const nlohmann::json::exception& e) {
        throw FramingError(std::string("malformed framed message: ") + e.what());
    }
}

}  // namespace fuzzsense::broker
