#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "qpa/io.hpp"
#include "qpa/rng.hpp"

using namespace qpa;

TEST_CASE("format_double round-trips") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(0.0625) == "0.0625");
    SeededRng rng(123);
    for (int i = 0; i < 1000; ++i) {
        double v = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<double>(rng.below(20)) - 10.0);
        const std::string s = format_double(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("hex and bit conversions") {
    const std::vector<std::uint8_t> bits{1, 0, 1, 0, 1, 1, 1, 1};
    CHECK(bits_to_hex(bits) == "af");
    CHECK(hex_to_bits("af") == bits);
    CHECK(hex_to_bits("AF") == bits);
    CHECK_THROWS_AS(hex_to_bits("xy"), std::invalid_argument);

    const std::vector<std::uint8_t> bytes{0xde, 0xad};
    CHECK(bits_to_hex(bytes_to_bits(bytes)) == "dead");

    SeededRng rng(9);
    for (int i = 0; i < 50; ++i) {
        std::vector<std::uint8_t> random_bits(4 * (1 + rng.below(64)));
        for (auto& b : random_bits) b = static_cast<std::uint8_t>(rng.below(2));
        CHECK(hex_to_bits(bits_to_hex(random_bits)) == random_bits);
    }
}

TEST_CASE("channel kind names") {
    for (ChannelKind k :
         {ChannelKind::Ideal, ChannelKind::InterceptResend, ChannelKind::Depolarizing}) {
        CHECK(parse_channel_kind(channel_kind_name(k)) == k);
    }
    CHECK_THROWS_AS(parse_channel_kind("bogus"), std::invalid_argument);
}

TEST_CASE("sweep CSV header is fixed") {
    CHECK(leakage_csv_header() == "r,m,trials,observed_p,predicted_p,std_error,z");
}

TEST_CASE("leakage serialization") {
    const LeakageEstimate est = leakage_monte_carlo(0.25, 2, 100000, 5);
    const auto j = leakage_to_json(est);
    CHECK(j["r"] == 0.25);
    CHECK(j["m"] == 2);
    CHECK(j["trials"] == 100000);
    CHECK(j["predicted_p"] == 0.0625);
    CHECK(j.contains("observed_p"));
    CHECK(j.contains("std_error"));
    CHECK(j.contains("z"));

    const std::string row = leakage_csv_row(est);
    CHECK(row.substr(0, 5) == "0.25,");
    CHECK(std::count(row.begin(), row.end(), ',') == 6);
}

TEST_CASE("config and result serialization") {
    ProtocolConfig config;
    config.n_batch = 1000;
    config.check_fraction = 0.25;
    config.group_size_m = 2;
    config.message_bits = hex_to_bits("f0");
    config.seed = 7;
    const ChannelModel channel{ChannelKind::InterceptResend, 0.5};
    const auto j = config_to_json(config, channel);
    CHECK(j["n_batch"] == 1000);
    CHECK(j["channel"] == "intercept");
    CHECK(j["rate"] == 0.5);
    CHECK(j["seed"] == 7);
    CHECK(j["message_hex"] == "f0");

    ProtocolResult aborted;
    aborted.aborted = true;
    aborted.detected_error_rate_e = 0.25;
    const auto ja = result_to_json(aborted);
    CHECK(ja["aborted"] == true);
    CHECK(ja["decoded_message_hex"].is_null());

    ProtocolResult done;
    done.decoded_message = hex_to_bits("ab");
    const auto jd = result_to_json(done);
    CHECK(jd["decoded_message_hex"] == "ab");
    CHECK(jd["decoded_bits"] == 8);
}
