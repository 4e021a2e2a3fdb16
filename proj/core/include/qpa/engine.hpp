#pragma once

#include <array>
#include <concepts>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qpa/quantum.hpp"
#include "qpa/rng.hpp"

namespace qpa {

// Result of one condensation step.
struct QpaOutcome {
    Qubit retained;
    int measured_bit;
};

// One full cascade: Bob's preparation record, Alice's published sigma_z
// results, and the surviving control qubit.
struct CascadeRecord {
    std::vector<Bb84Label> group_labels;
    std::vector<int> announced_bits;
    Qubit retained;
};

// Output state of the control qubit for every (outcome, control, target)
// combination, indexed by the Bb84Label enum values.
using OutputTable = std::array<std::array<std::array<Bb84Label, 4>, 4>, 2>;

// The hard-coded output table. This copy is the protocol of record; tests
// re-derive every entry from the amplitude-level circuit.
const OutputTable& canonical_output_table();

// CNOT -> H(control) -> CNOT on the joint input state.
TwoQubitState qpa_circuit(const Qubit& control, const Qubit& target);

// Runs the circuit and measures the target in sigma_z; u selects the branch.
QpaOutcome qpa_step(const Qubit& control, const Qubit& target, double u);

Bb84Label table_lookup(Bb84Label control, Bb84Label target, int outcome,
                       const OutputTable& table = canonical_output_table());

template <typename U>
concept UniformSource = requires(U u) {
    { u.uniform() } -> std::convertible_to<double>;
};

// Folds qpa_step left-to-right over the group; the retained qubit of each
// step becomes the next control. Throws std::invalid_argument on empty input.
template <UniformSource U>
CascadeRecord cascade(std::span<const std::pair<Bb84Label, Qubit>> group, U& uniforms);

// Classical tracking of the cascade output from the preparation labels and
// the announced measurement bits.
Bb84Label bob_track(std::span<const Bb84Label> labels, std::span<const int> announced_bits,
                    const OutputTable& table = canonical_output_table());

// Eve's marginal over the unknown target: uniform mixture of the four table
// outputs for a fixed (control, outcome) pair. Equals I/2 for the canonical table.
DensityMatrix2 eve_marginal(Bb84Label known_control, int outcome,
                            const OutputTable& table = canonical_output_table());

// --- exhaustive verification of a table against the circuit ---

struct TableEntryCheck {
    Bb84Label control;
    Bb84Label target;
    int outcome;
    Bb84Label expected;   // the table entry
    double overlap_dev;   // 1 - |<circuit output|expected>|
    bool pass;
};

struct BranchBalanceCheck {
    Bb84Label control;
    Bb84Label target;
    double p0_dev;  // |p(outcome 0) - 1/2|
    bool pass;
};

struct MarginalCheck {
    Bb84Label control;
    int outcome;
    double max_dev;  // max entrywise deviation from I/2
    bool pass;
};

struct TableVerification {
    std::vector<TableEntryCheck> entries;     // 32
    std::vector<BranchBalanceCheck> branches; // 16
    std::vector<MarginalCheck> marginals;     // 8
    bool latin_ok[2];  // rows and columns of each table permute the four labels
    bool all_pass() const;
};

// Checks every table entry against the forced-branch circuit (overlap within
// 1e-12), branch balance for all 16 BB84 pairs, the double-Latin property,
// and the fully-mixed Eve marginal for all 8 (control, outcome) pairs.
TableVerification verify_output_table(const OutputTable& table = canonical_output_table());

template <UniformSource U>
CascadeRecord cascade(std::span<const std::pair<Bb84Label, Qubit>> group, U& uniforms) {
    if (group.empty()) {
        throw std::invalid_argument("cascade group must be non-empty");
    }
    CascadeRecord rec;
    rec.group_labels.reserve(group.size());
    rec.announced_bits.reserve(group.size() - 1);
    rec.group_labels.push_back(group[0].first);
    rec.retained = group[0].second;
    for (std::size_t i = 1; i < group.size(); ++i) {
        const auto& [label, qubit] = group[i];
        const QpaOutcome step = qpa_step(rec.retained, qubit, uniforms.uniform());
        rec.group_labels.push_back(label);
        rec.announced_bits.push_back(step.measured_bit);
        rec.retained = step.retained;
    }
    return rec;
}

}  // namespace qpa
