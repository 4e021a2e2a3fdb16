#include "qpa/io.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpa {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string bits_to_hex(std::span<const std::uint8_t> bits) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string hex;
    hex.reserve((bits.size() + 3) / 4);
    for (std::size_t i = 0; i < bits.size(); i += 4) {
        unsigned nibble = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nibble <<= 1;
            if (i + j < bits.size() && bits[i + j]) nibble |= 1;
        }
        hex.push_back(digits[nibble]);
    }
    return hex;
}

std::vector<std::uint8_t> hex_to_bits(std::string_view hex) {
    std::vector<std::uint8_t> bits;
    bits.reserve(hex.size() * 4);
    for (char c : hex) {
        unsigned nibble;
        if (c >= '0' && c <= '9') nibble = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') nibble = static_cast<unsigned>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') nibble = static_cast<unsigned>(c - 'A' + 10);
        else throw std::invalid_argument("invalid hex digit in message");
        for (int j = 3; j >= 0; --j) {
            bits.push_back(static_cast<std::uint8_t>((nibble >> j) & 1u));
        }
    }
    return bits;
}

std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t byte : bytes) {
        for (int j = 7; j >= 0; --j) {
            bits.push_back(static_cast<std::uint8_t>((byte >> j) & 1u));
        }
    }
    return bits;
}

std::string_view channel_kind_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::Ideal: return "ideal";
        case ChannelKind::InterceptResend: return "intercept";
        case ChannelKind::Depolarizing: return "depolarizing";
    }
    throw std::invalid_argument("invalid ChannelKind");
}

ChannelKind parse_channel_kind(std::string_view name) {
    if (name == "ideal") return ChannelKind::Ideal;
    if (name == "intercept") return ChannelKind::InterceptResend;
    if (name == "depolarizing") return ChannelKind::Depolarizing;
    throw std::invalid_argument("channel must be ideal, intercept or depolarizing");
}

nlohmann::ordered_json config_to_json(const ProtocolConfig& config, const ChannelModel& channel) {
    return {
        {"n_batch", config.n_batch},
        {"check_fraction", config.check_fraction},
        {"error_threshold", config.error_threshold},
        {"group_size_m", config.group_size_m},
        {"message_bits", config.message_bits.size()},
        {"message_hex", bits_to_hex(config.message_bits)},
        {"channel", channel_kind_name(channel.kind)},
        {"rate", channel.rate},
        {"seed", config.seed},
    };
}

nlohmann::ordered_json result_to_json(const ProtocolResult& result) {
    nlohmann::ordered_json j{
        {"detected_error_rate_e", result.detected_error_rate_e},
        {"inferred_r", result.inferred_r},
        {"aborted", result.aborted},
        {"message_bit_errors", result.message_bit_errors},
        {"eve_known_condensed_fraction", result.eve_known_condensed_fraction},
        {"condensed_count", result.condensed_count},
        {"eve_bit_guess_accuracy", result.eve_bit_guess_accuracy},
    };
    if (result.decoded_message) {
        j["decoded_message_hex"] = bits_to_hex(*result.decoded_message);
        j["decoded_bits"] = result.decoded_message->size();
    } else {
        j["decoded_message_hex"] = nullptr;
        j["decoded_bits"] = 0;
    }
    return j;
}

double leakage_z(const LeakageEstimate& est) {
    const double diff = est.observed_p - est.predicted_p;
    if (est.std_error == 0.0) {
        return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / est.std_error;
}

nlohmann::ordered_json leakage_to_json(const LeakageEstimate& est) {
    return {
        {"r", est.r},
        {"m", est.m},
        {"trials", est.trials},
        {"observed_p", est.observed_p},
        {"predicted_p", est.predicted_p},
        {"std_error", est.std_error},
        {"z", leakage_z(est)},
    };
}

std::string leakage_csv_header() { return "r,m,trials,observed_p,predicted_p,std_error,z"; }

std::string leakage_csv_row(const LeakageEstimate& est) {
    std::string row;
    row += format_double(est.r);
    row += ',';
    row += std::to_string(est.m);
    row += ',';
    row += std::to_string(est.trials);
    row += ',';
    row += format_double(est.observed_p);
    row += ',';
    row += format_double(est.predicted_p);
    row += ',';
    row += format_double(est.std_error);
    row += ',';
    row += format_double(leakage_z(est));
    return row;
}

std::string result_csv_header() {
    return "detected_error_rate_e,inferred_r,aborted,message_bit_errors,"
           "eve_known_condensed_fraction,condensed_count,eve_bit_guess_accuracy,"
           "decoded_message_hex";
}

std::string result_csv_row(const ProtocolResult& result) {
    std::string row;
    row += format_double(result.detected_error_rate_e);
    row += ',';
    row += format_double(result.inferred_r);
    row += ',';
    row += result.aborted ? "true" : "false";
    row += ',';
    row += std::to_string(result.message_bit_errors);
    row += ',';
    row += format_double(result.eve_known_condensed_fraction);
    row += ',';
    row += std::to_string(result.condensed_count);
    row += ',';
    row += format_double(result.eve_bit_guess_accuracy);
    row += ',';
    row += result.decoded_message ? bits_to_hex(*result.decoded_message) : std::string();
    return row;
}

}  // namespace qpa
