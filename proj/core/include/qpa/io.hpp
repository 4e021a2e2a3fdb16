#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpa/protocol.hpp"

namespace qpa {

inline constexpr std::string_view kToolVersion = "qpa-sim 1.0.0";

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

// Bit vectors use values 0/1, most significant bit of each nibble/byte first.
std::string bits_to_hex(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> hex_to_bits(std::string_view hex);
std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes);

std::string_view channel_kind_name(ChannelKind kind);
ChannelKind parse_channel_kind(std::string_view name);

nlohmann::ordered_json config_to_json(const ProtocolConfig& config, const ChannelModel& channel);
nlohmann::ordered_json result_to_json(const ProtocolResult& result);
nlohmann::ordered_json leakage_to_json(const LeakageEstimate& est);

double leakage_z(const LeakageEstimate& est);

std::string leakage_csv_header();
std::string leakage_csv_row(const LeakageEstimate& est);
std::string result_csv_header();
std::string result_csv_row(const ProtocolResult& result);

}  // namespace qpa
