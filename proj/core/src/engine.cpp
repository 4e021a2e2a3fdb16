#include "qpa/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qpa {

namespace {

using L = Bb84Label;
constexpr L PZ = L::PlusZ, MZ = L::MinusZ, PX = L::PlusX, MX = L::MinusX;

// Indexed [outcome][control][target].
constexpr OutputTable kOutputTable = {{
    // outcome 0
    {{
        {PZ, MZ, PX, MX},  // control +z
        {MZ, PZ, MX, PX},  // control -z
        {MX, PX, PZ, MZ},  // control +x
        {PX, MX, MZ, PZ},  // control -x
    }},
    // outcome 1
    {{
        {MZ, PZ, PX, MX},  // control +z
        {PZ, MZ, MX, PX},  // control -z
        {PX, MX, PZ, MZ},  // control +x
        {MX, PX, MZ, PZ},  // control -x
    }},
}};

int idx(Bb84Label label) { return static_cast<int>(label); }

bool is_permutation_of_labels(const std::array<Bb84Label, 4>& row) {
    std::array<bool, 4> seen{};
    for (Bb84Label l : row) seen[idx(l)] = true;
    return std::ranges::all_of(seen, [](bool b) { return b; });
}

}  // namespace

const OutputTable& canonical_output_table() { return kOutputTable; }

TwoQubitState qpa_circuit(const Qubit& control, const Qubit& target) {
    return apply_cnot(apply_h_control(apply_cnot(tensor(control, target))));
}

QpaOutcome qpa_step(const Qubit& control, const Qubit& target, double u) {
    const auto [outcome, retained] = measure_second_z(qpa_circuit(control, target), u);
    return {retained, outcome};
}

Bb84Label table_lookup(Bb84Label control, Bb84Label target, int outcome,
                       const OutputTable& table) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    return table[outcome][idx(control)][idx(target)];
}

Bb84Label bob_track(std::span<const Bb84Label> labels, std::span<const int> announced_bits,
                    const OutputTable& table) {
    if (labels.empty()) {
        throw std::invalid_argument("bob_track needs at least one label");
    }
    if (announced_bits.size() != labels.size() - 1) {
        throw std::invalid_argument("announced bit count must be label count minus one");
    }
    Bb84Label current = labels[0];
    for (std::size_t i = 1; i < labels.size(); ++i) {
        current = table_lookup(current, labels[i], announced_bits[i - 1], table);
    }
    return current;
}

DensityMatrix2 eve_marginal(Bb84Label known_control, int outcome, const OutputTable& table) {
    std::array<std::pair<double, Qubit>, 4> entries;
    for (int t = 0; t < 4; ++t) {
        const Bb84Label out = table_lookup(known_control, kAllLabels[t], outcome, table);
        entries[t] = {0.25, bb84_to_qubit(out)};
    }
    return mixture_density(entries);
}

bool TableVerification::all_pass() const {
    auto ok = [](const auto& checks) {
        return std::ranges::all_of(checks, [](const auto& c) { return c.pass; });
    };
    return ok(entries) && ok(branches) && ok(marginals) && latin_ok[0] && latin_ok[1];
}

TableVerification verify_output_table(const OutputTable& table) {
    TableVerification v;

    for (int outcome = 0; outcome < 2; ++outcome) {
        for (Bb84Label control : kAllLabels) {
            for (Bb84Label target : kAllLabels) {
                // p0 = 1/2 for every BB84 pair, so u=0.0 / u=0.999 force the branches.
                const double u = (outcome == 0) ? 0.0 : 0.999;
                const QpaOutcome step =
                    qpa_step(bb84_to_qubit(control), bb84_to_qubit(target), u);
                const Bb84Label expected = table_lookup(control, target, outcome, table);
                const double dev =
                    1.0 - overlap(step.retained, bb84_to_qubit(expected));
                v.entries.push_back({control, target, outcome, expected, dev,
                                     step.measured_bit == outcome && dev <= 1e-12});
            }
        }
    }

    for (Bb84Label control : kAllLabels) {
        for (Bb84Label target : kAllLabels) {
            const TwoQubitState out = qpa_circuit(bb84_to_qubit(control), bb84_to_qubit(target));
            const double p0 = std::norm(out.c00) + std::norm(out.c10);
            const double dev = std::abs(p0 - 0.5);
            v.branches.push_back({control, target, dev, dev <= 1e-12});
        }
    }

    for (Bb84Label control : kAllLabels) {
        for (int outcome = 0; outcome < 2; ++outcome) {
            const DensityMatrix2 rho = eve_marginal(control, outcome, table);
            const double dev = std::max({std::abs(rho.m00 - Complex{0.5, 0.0}),
                                         std::abs(rho.m11 - Complex{0.5, 0.0}),
                                         std::abs(rho.m01), std::abs(rho.m10)});
            v.marginals.push_back({control, outcome, dev, dev <= 1e-12});
        }
    }

    for (int outcome = 0; outcome < 2; ++outcome) {
        bool ok = true;
        for (int c = 0; c < 4; ++c) {
            ok = ok && is_permutation_of_labels(table[outcome][c]);
            std::array<Bb84Label, 4> column{};
            for (int t = 0; t < 4; ++t) column[t] = table[outcome][t][c];
            ok = ok && is_permutation_of_labels(column);
        }
        v.latin_ok[outcome] = ok;
    }

    return v;
}

}  // namespace qpa
