#pragma once

#include <array>
#include <complex>
#include <span>
#include <string_view>
#include <utility>

namespace qpa {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;

// Single qubit as the amplitude pair over {|0>, |1>}.
struct Qubit {
    Complex a;  // amplitude of |0>
    Complex b;  // amplitude of |1>
};

// The four BB84 preparation states.
enum class Bb84Label { PlusZ = 0, MinusZ = 1, PlusX = 2, MinusX = 3 };

enum class Basis { Z = 0, X = 1 };

inline constexpr std::array<Bb84Label, 4> kAllLabels = {
    Bb84Label::PlusZ, Bb84Label::MinusZ, Bb84Label::PlusX, Bb84Label::MinusX};

Basis basis_of(Bb84Label label);
// The other label within the same basis.
Bb84Label orthogonal_label(Bb84Label label);
std::string_view label_name(Bb84Label label);
std::string_view basis_name(Basis basis);

// Pure two-qubit state over {|00>,|01>,|10>,|11>}; first index is the
// control/retained qubit, second the target/measured qubit.
struct TwoQubitState {
    Complex c00, c01, c10, c11;
};

// 2x2 density matrix.
struct DensityMatrix2 {
    Complex m00, m01, m10, m11;
};

// Validating constructor; throws std::invalid_argument on non-finite
// amplitudes or norm deviating from 1 by more than kNormTolerance.
Qubit make_qubit(Complex a, Complex b);
TwoQubitState make_two_qubit_state(Complex c00, Complex c01, Complex c10, Complex c11);

double norm_squared(const Qubit& q);
double norm_squared(const TwoQubitState& s);

Qubit bb84_to_qubit(Bb84Label label);

TwoQubitState tensor(const Qubit& q1, const Qubit& q2);

// CNOT with the first qubit as control: swaps c10 <-> c11.
TwoQubitState apply_cnot(const TwoQubitState& s);

// Hadamard on the first (control) qubit.
TwoQubitState apply_h_control(const TwoQubitState& s);

// The encoding flip i*sigma_y: (a, b) -> (b, -a). Maps each BB84 state to its
// in-basis orthogonal state up to global phase.
Qubit apply_flip(const Qubit& q);

struct MeasureZResult {
    int outcome;    // 0 or 1, the sigma_z result on the second qubit
    Qubit retained; // renormalized conditional state of the first qubit
};

// Projective sigma_z measurement of the second qubit; u in [0,1) selects the
// branch (outcome 0 iff u < p0). Throws std::runtime_error if the selected
// branch has probability below 1e-12.
MeasureZResult measure_second_z(const TwoQubitState& s, double u);

// Born-rule measurement of a single qubit in the given basis; returns the
// label of the collapse result.
Bb84Label measure_qubit(const Qubit& q, Basis basis, double u);

// |<q1|q2>|
double overlap(const Qubit& q1, const Qubit& q2);

// True iff |<q1|q2>| >= 1 - tol.
bool equal_up_to_phase(const Qubit& q1, const Qubit& q2, double tol);

// Sum of w_k |q_k><q_k|. Weights must be non-negative and sum to 1 within
// 1e-12; throws std::invalid_argument otherwise.
DensityMatrix2 mixture_density(std::span<const std::pair<double, Qubit>> entries);

}  // namespace qpa
