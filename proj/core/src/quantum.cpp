#include "qpa/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace qpa {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

}  // namespace

Basis basis_of(Bb84Label label) {
    return (label == Bb84Label::PlusZ || label == Bb84Label::MinusZ) ? Basis::Z : Basis::X;
}

Bb84Label orthogonal_label(Bb84Label label) {
    switch (label) {
        case Bb84Label::PlusZ: return Bb84Label::MinusZ;
        case Bb84Label::MinusZ: return Bb84Label::PlusZ;
        case Bb84Label::PlusX: return Bb84Label::MinusX;
        case Bb84Label::MinusX: return Bb84Label::PlusX;
    }
    throw std::invalid_argument("invalid Bb84Label");
}

std::string_view label_name(Bb84Label label) {
    switch (label) {
        case Bb84Label::PlusZ: return "+z";
        case Bb84Label::MinusZ: return "-z";
        case Bb84Label::PlusX: return "+x";
        case Bb84Label::MinusX: return "-x";
    }
    throw std::invalid_argument("invalid Bb84Label");
}

std::string_view basis_name(Basis basis) {
    return basis == Basis::Z ? "Z" : "X";
}

double norm_squared(const Qubit& q) { return std::norm(q.a) + std::norm(q.b); }

double norm_squared(const TwoQubitState& s) {
    return std::norm(s.c00) + std::norm(s.c01) + std::norm(s.c10) + std::norm(s.c11);
}

Qubit make_qubit(Complex a, Complex b) {
    if (!finite(a) || !finite(b)) {
        throw std::invalid_argument("qubit amplitudes must be finite");
    }
    Qubit q{a, b};
    if (std::abs(norm_squared(q) - 1.0) > kNormTolerance) {
        throw std::invalid_argument("qubit amplitudes must be unit-norm");
    }
    return q;
}

TwoQubitState make_two_qubit_state(Complex c00, Complex c01, Complex c10, Complex c11) {
    if (!finite(c00) || !finite(c01) || !finite(c10) || !finite(c11)) {
        throw std::invalid_argument("two-qubit amplitudes must be finite");
    }
    TwoQubitState s{c00, c01, c10, c11};
    if (std::abs(norm_squared(s) - 1.0) > kNormTolerance) {
        throw std::invalid_argument("two-qubit amplitudes must be unit-norm");
    }
    return s;
}

Qubit bb84_to_qubit(Bb84Label label) {
    switch (label) {
        case Bb84Label::PlusZ: return {1.0, 0.0};
        case Bb84Label::MinusZ: return {0.0, 1.0};
        case Bb84Label::PlusX: return {kInvSqrt2, kInvSqrt2};
        case Bb84Label::MinusX: return {kInvSqrt2, -kInvSqrt2};
    }
    throw std::invalid_argument("invalid Bb84Label");
}

TwoQubitState tensor(const Qubit& q1, const Qubit& q2) {
    return {q1.a * q2.a, q1.a * q2.b, q1.b * q2.a, q1.b * q2.b};
}

TwoQubitState apply_cnot(const TwoQubitState& s) {
    return {s.c00, s.c01, s.c11, s.c10};
}

TwoQubitState apply_h_control(const TwoQubitState& s) {
    return {(s.c00 + s.c10) * kInvSqrt2, (s.c01 + s.c11) * kInvSqrt2,
            (s.c00 - s.c10) * kInvSqrt2, (s.c01 - s.c11) * kInvSqrt2};
}

Qubit apply_flip(const Qubit& q) { return {q.b, -q.a}; }

MeasureZResult measure_second_z(const TwoQubitState& s, double u) {
    const double p0 = std::norm(s.c00) + std::norm(s.c10);
    const int outcome = (u < p0) ? 0 : 1;
    const double p = (outcome == 0) ? p0 : 1.0 - p0;
    if (p < 1e-12) {
        throw std::runtime_error("collapse onto a zero-probability branch");
    }
    const double inv = 1.0 / std::sqrt(p);
    Qubit retained = (outcome == 0) ? Qubit{s.c00 * inv, s.c10 * inv}
                                    : Qubit{s.c01 * inv, s.c11 * inv};
    return {outcome, retained};
}

Bb84Label measure_qubit(const Qubit& q, Basis basis, double u) {
    if (basis == Basis::Z) {
        const double p0 = std::norm(q.a);
        return (u < p0) ? Bb84Label::PlusZ : Bb84Label::MinusZ;
    }
    const double p_plus = std::norm((q.a + q.b) * kInvSqrt2);
    return (u < p_plus) ? Bb84Label::PlusX : Bb84Label::MinusX;
}

double overlap(const Qubit& q1, const Qubit& q2) {
    return std::abs(std::conj(q1.a) * q2.a + std::conj(q1.b) * q2.b);
}

bool equal_up_to_phase(const Qubit& q1, const Qubit& q2, double tol) {
    return overlap(q1, q2) >= 1.0 - tol;
}

DensityMatrix2 mixture_density(std::span<const std::pair<double, Qubit>> entries) {
    double total = 0.0;
    for (const auto& [w, q] : entries) {
        if (w < 0.0) throw std::invalid_argument("mixture weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("mixture weights must sum to 1");
    }
    DensityMatrix2 rho{0.0, 0.0, 0.0, 0.0};
    for (const auto& [w, q] : entries) {
        rho.m00 += w * q.a * std::conj(q.a);
        rho.m01 += w * q.a * std::conj(q.b);
        rho.m10 += w * q.b * std::conj(q.a);
        rho.m11 += w * q.b * std::conj(q.b);
    }
    return rho;
}

}  // namespace qpa
