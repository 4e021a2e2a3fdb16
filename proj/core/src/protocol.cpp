#include "qpa/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qpa {

std::vector<PreparedQubit> bob_prepare_batch(std::size_t n, SeededRng& rng) {
    if (n < 1) throw std::invalid_argument("batch size must be at least 1");
    std::vector<PreparedQubit> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Bb84Label label = kAllLabels[rng.below(4)];
        batch.push_back({label, bb84_to_qubit(label)});
    }
    return batch;
}

ChannelOutput channel_transmit(std::span<const PreparedQubit> batch, const ChannelModel& model,
                               SeededRng& rng) {
    if (model.rate < 0.0 || model.rate > 1.0) {
        throw std::invalid_argument("channel rate must lie in [0,1]");
    }
    ChannelOutput out;
    out.qubits.reserve(batch.size());
    out.eve.resize(batch.size());
    for (std::size_t i = 0; i < batch.size(); ++i) {
        const PreparedQubit& p = batch[i];
        switch (model.kind) {
            case ChannelKind::Ideal:
                out.qubits.push_back(p.state);
                break;
            case ChannelKind::InterceptResend: {
                if (rng.bernoulli(model.rate)) {
                    const Basis guess = (rng.below(2) == 0) ? Basis::Z : Basis::X;
                    const Bb84Label observed = measure_qubit(p.state, guess, rng.uniform());
                    out.eve[i] = {true, guess, observed, guess == basis_of(p.label)};
                    out.qubits.push_back(bb84_to_qubit(observed));
                } else {
                    out.qubits.push_back(p.state);
                }
                break;
            }
            case ChannelKind::Depolarizing:
                if (rng.bernoulli(model.rate)) {
                    out.qubits.push_back(bb84_to_qubit(kAllLabels[rng.below(4)]));
                } else {
                    out.qubits.push_back(p.state);
                }
                break;
        }
    }
    return out;
}

CheckOutput alice_check(std::span<const Qubit> batch, double check_fraction, SeededRng& rng) {
    if (check_fraction <= 0.0 || check_fraction >= 1.0) {
        throw std::invalid_argument("check_fraction must lie in (0,1)");
    }
    const std::size_t n = batch.size();
    const std::size_t k = static_cast<std::size_t>(std::llround(check_fraction * static_cast<double>(n)));
    if (k == 0) throw std::invalid_argument("check sample is empty after rounding");
    if (k > n) throw std::invalid_argument("check sample exceeds batch size");

    // Partial Fisher-Yates for a uniform sample without replacement.
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::size_t> sampled(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(k));
    std::ranges::sort(sampled);

    CheckOutput out;
    out.published.reserve(k);
    for (std::size_t idx : sampled) {
        const Basis basis = (rng.below(2) == 0) ? Basis::Z : Basis::X;
        out.published.push_back({idx, basis, measure_qubit(batch[idx], basis, rng.uniform())});
    }
    out.remaining_indices.reserve(n - k);
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (s < sampled.size() && sampled[s] == i) {
            ++s;
        } else {
            out.remaining_indices.push_back(i);
        }
    }
    return out;
}

double estimate_error_rate(std::span<const CheckSample> published,
                           std::span<const Bb84Label> bob_labels) {
    if (published.empty()) throw std::invalid_argument("published check set is empty");
    std::size_t matching = 0;
    std::size_t errors = 0;
    for (const CheckSample& s : published) {
        const Bb84Label prepared = bob_labels[s.index];
        if (s.basis != basis_of(prepared)) continue;
        ++matching;
        if (s.result != prepared) ++errors;
    }
    if (matching == 0) {
        throw std::runtime_error("no matching-basis check entries; enlarge the sample");
    }
    return static_cast<double>(errors) / static_cast<double>(matching);
}

double infer_interception_rate(double e) {
    if (e < 0.0 || e > 1.0) throw std::invalid_argument("error rate must lie in [0,1]");
    return std::min(4.0 * e, 1.0);
}

std::vector<CascadeRecord> alice_condense(std::span<const PreparedQubit> remaining,
                                          std::size_t m, SeededRng& rng) {
    if (m < 1) throw std::invalid_argument("group size must be at least 1");
    if (remaining.size() < m) {
        throw std::invalid_argument("fewer qubits remaining than one group");
    }
    std::vector<CascadeRecord> records;
    records.reserve(remaining.size() / m);
    std::vector<std::pair<Bb84Label, Qubit>> group(m);
    for (std::size_t start = 0; start + m <= remaining.size(); start += m) {
        for (std::size_t j = 0; j < m; ++j) {
            group[j] = {remaining[start + j].label, remaining[start + j].state};
        }
        records.push_back(cascade(group, rng));
    }
    return records;
}

std::vector<Qubit> alice_encode(std::span<const CascadeRecord> condensed,
                                std::span<const std::uint8_t> message) {
    if (message.size() > condensed.size()) {
        throw std::invalid_argument("message longer than condensed qubit supply");
    }
    std::vector<Qubit> encoded;
    encoded.reserve(message.size());
    for (std::size_t i = 0; i < message.size(); ++i) {
        encoded.push_back(message[i] ? apply_flip(condensed[i].retained)
                                     : condensed[i].retained);
    }
    return encoded;
}

std::vector<std::uint8_t> bob_decode(std::span<const Qubit> encoded,
                                     std::span<const Bb84Label> tracked, SeededRng& rng) {
    if (encoded.size() != tracked.size()) {
        throw std::invalid_argument("encoded qubit count must match tracked label count");
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(encoded.size());
    for (std::size_t i = 0; i < encoded.size(); ++i) {
        const Bb84Label result = measure_qubit(encoded[i], basis_of(tracked[i]), rng.uniform());
        bits.push_back(result == tracked[i] ? 0 : 1);
    }
    return bits;
}

ProtocolResult run_protocol(const ProtocolConfig& config, const ChannelModel& channel) {
    if (config.n_batch < 1) throw std::invalid_argument("n_batch must be at least 1");
    if (config.check_fraction <= 0.0 || config.check_fraction >= 1.0) {
        throw std::invalid_argument("check_fraction must lie in (0,1)");
    }
    if (config.error_threshold < 0.0 || config.error_threshold > 1.0) {
        throw std::invalid_argument("error_threshold must lie in [0,1]");
    }
    if (config.group_size_m < 1) throw std::invalid_argument("group_size_m must be at least 1");
    const double capacity = static_cast<double>(config.n_batch) * (1.0 - config.check_fraction) /
                            static_cast<double>(config.group_size_m);
    if (capacity < static_cast<double>(config.message_bits.size())) {
        throw std::invalid_argument(
            "message too long: n_batch * (1 - check_fraction) / group_size_m "
            "must be at least the message length");
    }

    SeededRng prepare_rng(config.seed, Stream::Prepare);
    SeededRng channel_rng(config.seed, Stream::Channel);
    SeededRng check_rng(config.seed, Stream::Check);
    SeededRng condense_rng(config.seed, Stream::Condense);
    SeededRng decode_rng(config.seed, Stream::Decode);
    SeededRng eve_rng(config.seed, Stream::EveGuess);

    const auto batch = bob_prepare_batch(config.n_batch, prepare_rng);
    const auto transmitted = channel_transmit(batch, channel, channel_rng);
    const auto check = alice_check(transmitted.qubits, config.check_fraction, check_rng);

    std::vector<Bb84Label> bob_labels;
    bob_labels.reserve(batch.size());
    for (const PreparedQubit& p : batch) bob_labels.push_back(p.label);

    ProtocolResult result;
    result.detected_error_rate_e = estimate_error_rate(check.published, bob_labels);
    result.inferred_r = infer_interception_rate(result.detected_error_rate_e);
    if (result.detected_error_rate_e > config.error_threshold) {
        result.aborted = true;
        return result;
    }

    std::vector<PreparedQubit> remaining;
    remaining.reserve(check.remaining_indices.size());
    for (std::size_t idx : check.remaining_indices) {
        remaining.push_back({batch[idx].label, transmitted.qubits[idx]});
    }
    const auto condensed = alice_condense(remaining, config.group_size_m, condense_rng);
    result.condensed_count = condensed.size();

    // Eve knows a condensed qubit iff she knows all m group members.
    std::vector<bool> eve_knows_group(condensed.size());
    std::size_t known_groups = 0;
    for (std::size_t g = 0; g < condensed.size(); ++g) {
        bool all = true;
        for (std::size_t j = 0; j < config.group_size_m; ++j) {
            const std::size_t batch_idx = check.remaining_indices[g * config.group_size_m + j];
            all = all && transmitted.eve[batch_idx].knows;
        }
        eve_knows_group[g] = all;
        if (all) ++known_groups;
    }
    result.eve_known_condensed_fraction =
        condensed.empty() ? 0.0
                          : static_cast<double>(known_groups) / static_cast<double>(condensed.size());

    const auto encoded = alice_encode(condensed, config.message_bits);

    std::vector<Bb84Label> tracked;
    tracked.reserve(config.message_bits.size());
    for (std::size_t i = 0; i < config.message_bits.size(); ++i) {
        tracked.push_back(bob_track(condensed[i].group_labels, condensed[i].announced_bits));
    }

    // Return channel is ideal: Bob receives the encoded qubits unchanged.
    const auto decoded = bob_decode(encoded, tracked, decode_rng);
    result.message_bit_errors = 0;
    for (std::size_t i = 0; i < decoded.size(); ++i) {
        if (decoded[i] != config.message_bits[i]) ++result.message_bit_errors;
    }
    result.decoded_message = decoded;

    std::size_t eve_correct = 0;
    for (std::size_t i = 0; i < config.message_bits.size(); ++i) {
        const std::uint8_t guess =
            eve_knows_group[i] ? config.message_bits[i]
                               : static_cast<std::uint8_t>(eve_rng.below(2));
        if (guess == config.message_bits[i]) ++eve_correct;
    }
    result.eve_bit_guess_accuracy =
        config.message_bits.empty()
            ? 0.0
            : static_cast<double>(eve_correct) / static_cast<double>(config.message_bits.size());

    return result;
}

LeakageEstimate leakage_monte_carlo(double r, int m, long trials, std::uint64_t seed) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("r must lie in [0,1]");
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");

    SeededRng rng(seed, Stream::Generic);
    long known = 0;
    for (long t = 0; t < trials; ++t) {
        bool all = true;
        for (int j = 0; j < m; ++j) {
            all = rng.bernoulli(r) && all;
        }
        if (all) ++known;
    }

    LeakageEstimate est;
    est.r = r;
    est.m = m;
    est.trials = trials;
    est.observed_p = static_cast<double>(known) / static_cast<double>(trials);
    est.predicted_p = std::pow(r, m);
    est.std_error = std::sqrt(est.observed_p * (1.0 - est.observed_p) / static_cast<double>(trials));
    return est;
}

int required_group_size(double r, double epsilon) {
    if (epsilon <= 0.0 || epsilon >= 1.0) {
        throw std::invalid_argument("epsilon must lie in (0,1)");
    }
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("r must lie in [0,1]");
    if (r == 1.0) throw std::runtime_error("r=1 admits no finite group size");
    if (r == 0.0) return 1;
    int m = std::max(1, static_cast<int>(std::ceil(std::log(epsilon) / std::log(r))));
    while (std::pow(r, m) > epsilon) ++m;
    while (m > 1 && std::pow(r, m - 1) <= epsilon) --m;
    return m;
}

}  // namespace qpa
