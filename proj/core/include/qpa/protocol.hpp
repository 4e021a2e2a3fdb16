#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qpa/engine.hpp"
#include "qpa/quantum.hpp"
#include "qpa/rng.hpp"

namespace qpa {

struct PreparedQubit {
    Bb84Label label;  // Bob's preparation record
    Qubit state;
};

enum class ChannelKind { Ideal, InterceptResend, Depolarizing };

struct ChannelModel {
    ChannelKind kind = ChannelKind::Ideal;
    // Interception probability for InterceptResend, replacement probability
    // for Depolarizing, ignored for Ideal.
    double rate = 0.0;
};

struct EveRecord {
    bool intercepted = false;
    std::optional<Basis> basis_guess;
    std::optional<Bb84Label> observed_label;
    bool knows = false;  // true iff Eve's information about this qubit is complete
};

struct ProtocolConfig {
    std::size_t n_batch = 0;
    double check_fraction = 0.1;
    double error_threshold = 0.05;
    std::size_t group_size_m = 2;
    std::vector<std::uint8_t> message_bits;  // values 0/1
    std::uint64_t seed = 0;
};

struct ProtocolResult {
    double detected_error_rate_e = 0.0;
    double inferred_r = 0.0;
    bool aborted = false;
    std::optional<std::vector<std::uint8_t>> decoded_message;
    std::size_t message_bit_errors = 0;
    double eve_known_condensed_fraction = 0.0;
    std::size_t condensed_count = 0;
    // Accuracy of Eve's best-effort guess of the message bits: correct when
    // she knows the whole group, a fair coin otherwise.
    double eve_bit_guess_accuracy = 0.0;
};

struct LeakageEstimate {
    double r = 0.0;
    int m = 0;
    long trials = 0;
    double observed_p = 0.0;
    double predicted_p = 0.0;  // r^m
    double std_error = 0.0;    // binomial standard error
};

struct CheckSample {
    std::size_t index;
    Basis basis;
    Bb84Label result;
};

struct CheckOutput {
    std::vector<CheckSample> published;
    std::vector<std::size_t> remaining_indices;  // batch order preserved
};

struct ChannelOutput {
    std::vector<Qubit> qubits;
    std::vector<EveRecord> eve;
};

std::vector<PreparedQubit> bob_prepare_batch(std::size_t n, SeededRng& rng);

ChannelOutput channel_transmit(std::span<const PreparedQubit> batch, const ChannelModel& model,
                               SeededRng& rng);

// Measures a uniform random-basis sample (without replacement) of the batch
// and publishes the results. Throws if the rounded sample size is 0 or
// exceeds the batch.
CheckOutput alice_check(std::span<const Qubit> batch, double check_fraction, SeededRng& rng);

// Disagreement fraction over the matching-basis published entries. Throws
// std::runtime_error if no entry matches the preparation basis.
double estimate_error_rate(std::span<const CheckSample> published,
                           std::span<const Bb84Label> bob_labels);

// r = min(4e, 1).
double infer_interception_rate(double e);

// Partitions the remaining qubits in batch order into consecutive groups of
// m (trailing partial group discarded) and cascades each. Throws if fewer
// than m qubits remain.
std::vector<CascadeRecord> alice_condense(std::span<const PreparedQubit> remaining,
                                          std::size_t m, SeededRng& rng);

// Bit 0 -> identity, bit 1 -> the i*sigma_y flip; unused condensed qubits dropped.
std::vector<Qubit> alice_encode(std::span<const CascadeRecord> condensed,
                                std::span<const std::uint8_t> message);

// Measures each received qubit in the basis of the tracked label; tracked
// label -> 0, orthogonal -> 1.
std::vector<std::uint8_t> bob_decode(std::span<const Qubit> encoded,
                                     std::span<const Bb84Label> tracked, SeededRng& rng);

ProtocolResult run_protocol(const ProtocolConfig& config, const ChannelModel& channel);

// Abstract-knowledge Monte Carlo: each of m qubits is known to Eve
// independently with probability r; the condensed qubit is known iff all are.
LeakageEstimate leakage_monte_carlo(double r, int m, long trials, std::uint64_t seed);

// Smallest m with r^m <= epsilon. r=0 gives 1; throws for r=1.
int required_group_size(double r, double epsilon);

}  // namespace qpa
