#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shorsim/state.hpp"
#include "shorsim/stats.hpp"

namespace shorsim {

/// 2x2 unitary, row-major: m[0] m[1] / m[2] m[3].
struct Gate2 {
    std::array<Amplitude, 4> m;

    static Gate2 x() { return {{{0, 1, 1, 0}}}; }
    static Gate2 y() { return {{{0, Amplitude{0, -1}, Amplitude{0, 1}, 0}}}; }
    static Gate2 z() { return {{{1, 0, 0, -1}}}; }
    static Gate2 hadamard() {
        const double c = 1.0 / std::sqrt(2.0);
        return {{{c, c, c, -c}}};
    }

    /// G * G^dagger == I within tol.
    bool is_unitary(double tol = 1e-12) const {
        const Amplitude d00 = m[0] * std::conj(m[0]) + m[1] * std::conj(m[1]);
        const Amplitude d11 = m[2] * std::conj(m[2]) + m[3] * std::conj(m[3]);
        const Amplitude off = m[0] * std::conj(m[2]) + m[1] * std::conj(m[3]);
        return std::abs(d00 - 1.0) <= tol && std::abs(d11 - 1.0) <= tol && std::abs(off) <= tol;
    }
};

/// Bijection on register-2 basis values, stored with its inverse.
struct PermutationGate {
    std::vector<std::uint32_t> forward;
    std::vector<std::uint32_t> inverse;

    std::uint64_t size() const { return forward.size(); }

    PermutationGate inverted() const { return PermutationGate{inverse, forward}; }
};

/// The multiply-by-x map |y> -> |x*y mod n> for y < n, identity on the
/// padding values n <= y < 2^ell. Requires gcd(x, n) = 1 so the map is a
/// bijection (a gcd > 1 means the caller already holds a factor of n).
inline PermutationGate mod_mult_perm(std::uint64_t x, std::uint64_t n, std::uint32_t ell) {
    if (n < 2) throw std::domain_error("mod_mult_perm: modulus must be at least 2");
    const std::uint64_t size = std::uint64_t{1} << ell;
    if (n > size) throw std::invalid_argument("mod_mult_perm: modulus does not fit in register-2");
    if (std::gcd(x % n, n) != 1) {
        throw std::domain_error("mod_mult_perm: gcd(x, n) != 1, multiplication map is not a permutation");
    }

    PermutationGate p;
    p.forward.resize(size);
    p.inverse.resize(size);
    const std::uint64_t xr = x % n;
    for (std::uint64_t y = 0; y < size; ++y) {
        p.forward[y] = (y < n) ? static_cast<std::uint32_t>((xr * y) % n)
                               : static_cast<std::uint32_t>(y);
    }
    for (std::uint64_t y = 0; y < size; ++y) p.inverse[p.forward[y]] = static_cast<std::uint32_t>(y);
    return p;
}

/// Standard one-qubit update on every amplitude pair differing in `qubit`
/// (global bit position; register-2 occupies bits [0, ell)).
inline void apply_single_qubit(StateVector& state, const Gate2& g, std::uint32_t qubit,
                               CircuitStats& stats) {
    if (qubit >= state.layout.total_qubits()) {
        throw std::out_of_range("apply_single_qubit: qubit index out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t high = 0; high < dim; high += 2 * mask) {
        for (std::uint64_t low = 0; low < mask; ++low) {
            const std::uint64_t i0 = high | low;
            const std::uint64_t i1 = i0 | mask;
            const Amplitude a0 = state.amps[i0];
            const Amplitude a1 = state.amps[i1];
            state.amps[i0] = g.m[0] * a0 + g.m[1] * a1;
            state.amps[i1] = g.m[2] * a0 + g.m[3] * a1;
        }
    }
    stats.single_qubit_gate_applications += 1;
    stats.amplitude_operations += 2 * dim;
}

/// |c>|t> -> |c>|c XOR t> on global qubit indices.
inline void apply_cnot(StateVector& state, std::uint32_t control, std::uint32_t target,
                       CircuitStats& stats) {
    if (control == target) throw std::invalid_argument("apply_cnot: control equals target");
    const std::uint32_t total = state.layout.total_qubits();
    if (control >= total || target >= total) {
        throw std::out_of_range("apply_cnot: qubit index out of range");
    }
    const std::uint64_t cmask = std::uint64_t{1} << control;
    const std::uint64_t tmask = std::uint64_t{1} << target;
    for (std::uint64_t index = 0; index < state.dim(); ++index) {
        if ((index & cmask) && !(index & tmask)) {
            std::swap(state.amps[index], state.amps[index | tmask]);
            stats.amplitude_operations += 4;
        }
    }
}

/// Controlled-U stage: wherever register-1 bit `control` is 1, the register-2
/// component y moves to p.forward(y), carrying its amplitude. Counts as one
/// controlled stage regardless of q, n, or the permutation applied.
inline void apply_controlled_permutation(StateVector& state, std::uint32_t control,
                                         const PermutationGate& p, CircuitStats& stats) {
    const auto& layout = state.layout;
    if (control >= layout.t) {
        throw std::out_of_range("apply_controlled_permutation: control is not a register-1 qubit");
    }
    if (p.size() != layout.dim2()) {
        throw std::invalid_argument("apply_controlled_permutation: permutation size does not match register-2");
    }

    const std::uint64_t slice = layout.dim2();
    std::vector<Amplitude> scratch(slice);
    for (std::uint64_t a = 0; a < layout.q(); ++a) {
        if (!((a >> control) & 1)) continue;
        Amplitude* base = state.amps.data() + layout.index_of(a, 0);
        for (std::uint64_t y = 0; y < slice; ++y) scratch[p.forward[y]] = base[y];
        for (std::uint64_t y = 0; y < slice; ++y) base[y] = scratch[y];
    }
    stats.controlled_stage_applications += 1;
    stats.amplitude_operations += (layout.q() / 2) * 2 * slice;
}

}  // namespace shorsim
