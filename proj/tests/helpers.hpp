#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>

#include "qpa/quantum.hpp"
#include "qpa/rng.hpp"

namespace test_helpers {

// Fixed sequence of uniforms, for forcing measurement branches.
struct SequenceSource {
    std::span<const double> values;
    std::size_t next = 0;
    double uniform() {
        if (next >= values.size()) throw std::runtime_error("uniform sequence exhausted");
        return values[next++];
    }
};

// --- independent 4x4 matrix oracle for the two-qubit gates ---

using Mat4 = std::array<std::array<qpa::Complex, 4>, 4>;
using Vec4 = std::array<qpa::Complex, 4>;

inline Mat4 cnot_matrix() {
    Mat4 m{};
    m[0][0] = 1.0;  // |00> -> |00>
    m[1][1] = 1.0;  // |01> -> |01>
    m[3][2] = 1.0;  // |10> -> |11>
    m[2][3] = 1.0;  // |11> -> |10>
    return m;
}

inline Mat4 h_on_first_matrix() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 m{};
    // H (x) I over basis order |00>,|01>,|10>,|11>
    m[0][0] = s; m[0][2] = s;
    m[1][1] = s; m[1][3] = s;
    m[2][0] = s; m[2][2] = -s;
    m[3][1] = s; m[3][3] = -s;
    return m;
}

inline Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 c{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Vec4 to_vec(const qpa::TwoQubitState& s) { return {s.c00, s.c01, s.c10, s.c11}; }

inline Vec4 apply_matrix(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
    return out;
}

inline double max_entry_dev(const Vec4& a, const Vec4& b) {
    double dev = 0.0;
    for (int i = 0; i < 4; ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

// --- random state generators ---

inline qpa::Qubit random_real_qubit(qpa::SeededRng& rng) {
    const double theta = rng.uniform() * 2.0 * M_PI;
    return {std::cos(theta), std::sin(theta)};
}

inline qpa::Qubit random_complex_qubit(qpa::SeededRng& rng) {
    const double theta = rng.uniform() * M_PI;
    const double phi = rng.uniform() * 2.0 * M_PI;
    return {std::cos(theta / 2.0),
            qpa::Complex{std::cos(phi), std::sin(phi)} * std::sin(theta / 2.0)};
}

inline qpa::TwoQubitState random_two_qubit_state(qpa::SeededRng& rng) {
    Vec4 v;
    double norm = 0.0;
    for (auto& c : v) {
        c = {rng.uniform() - 0.5, rng.uniform() - 0.5};
        norm += std::norm(c);
    }
    const double inv = 1.0 / std::sqrt(norm);
    return {v[0] * inv, v[1] * inv, v[2] * inv, v[3] * inv};
}

}  // namespace test_helpers
