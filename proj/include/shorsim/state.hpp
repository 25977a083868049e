#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "shorsim/layout.hpp"
#include "shorsim/random.hpp"
#include "shorsim/stats.hpp"

namespace shorsim {

using Amplitude = std::complex<double>;

enum class Register { One, Two };

/// Dense two-register state: amps[a * 2^ell + y] is the amplitude of |a>|y>.
struct StateVector {
    RegisterLayout layout;
    std::vector<Amplitude> amps;

    explicit StateVector(const RegisterLayout& layout_)
        : layout(layout_), amps(layout_.dim(), Amplitude{0.0, 0.0}) {}

    std::uint64_t dim() const { return amps.size(); }
};

struct ProbabilityVector {
    Register which;
    std::vector<double> values;
};

inline double norm_sq(const std::vector<Amplitude>& amps) {
    double s = 0.0;
    for (const auto& a : amps) s += std::norm(a);
    return s;
}

inline double norm_sq(const StateVector& state) { return norm_sq(state.amps); }

inline bool all_finite(const StateVector& state) {
    for (const auto& a : state.amps) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
    }
    return true;
}

/// Largest entrywise |u_i - v_i| between two equally sized amplitude arrays.
inline double max_abs_diff(const std::vector<Amplitude>& u, const std::vector<Amplitude>& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        m = std::max(m, std::abs(u[i] - v[i]));
    }
    return m;
}

inline double max_abs_diff(const StateVector& u, const StateVector& v) {
    return max_abs_diff(u.amps, v.amps);
}

inline StateVector new_basis_state(const RegisterLayout& layout, std::uint64_t a,
                                   std::uint64_t y) {
    if (a >= layout.q()) throw std::out_of_range("new_basis_state: register-1 value out of range");
    if (y >= layout.dim2()) throw std::out_of_range("new_basis_state: register-2 value out of range");
    StateVector state(layout);
    state.amps[layout.index_of(a, y)] = 1.0;
    return state;
}

/// Kronecker product of two amplitude arrays: entry (i * |v| + j) = u_i * v_j.
/// On basis states this concatenates bit strings, high bits from u.
inline std::vector<Amplitude> tensor(const std::vector<Amplitude>& u,
                                     const std::vector<Amplitude>& v) {
    std::vector<Amplitude> out(u.size() * v.size());
    std::size_t k = 0;
    for (const auto& ui : u) {
        for (const auto& vj : v) out[k++] = ui * vj;
    }
    return out;
}

inline std::vector<Amplitude> tensor(const StateVector& u, const StateVector& v) {
    return tensor(u.amps, v.amps);
}

namespace detail {

// One-qubit Hadamard butterfly used by state preparation. The general gate
// application lives in gates.hpp; this avoids a dependency cycle.
inline void hadamard_sweep(StateVector& state, std::uint32_t qubit, CircuitStats* stats) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t dim = state.dim();
    for (std::uint64_t high = 0; high < dim; high += 2 * mask) {
        for (std::uint64_t low = 0; low < mask; ++low) {
            const std::uint64_t i0 = high | low;
            const std::uint64_t i1 = i0 | mask;
            const Amplitude a0 = state.amps[i0];
            const Amplitude a1 = state.amps[i1];
            state.amps[i0] = inv_sqrt2 * (a0 + a1);
            state.amps[i1] = inv_sqrt2 * (a0 - a1);
        }
    }
    if (stats) {
        stats->single_qubit_gate_applications += 1;
        stats->amplitude_operations += 2 * dim;
    }
}

}  // namespace detail

/// (1/sqrt(q)) sum_a |a>|y0>, prepared by t Hadamards on the register-1
/// qubits of |0>|y0>.
inline StateVector uniform_first_register(const RegisterLayout& layout, std::uint64_t y0,
                                          CircuitStats* stats = nullptr) {
    StateVector state = new_basis_state(layout, 0, y0);
    for (std::uint32_t i = 0; i < layout.t; ++i) {
        detail::hadamard_sweep(state, layout.reg1_qubit(i), stats);
    }
    return state;
}

/// Same state written directly, no gates. Reference path for the Hadamard
/// construction; the two must agree within 1e-12.
inline StateVector uniform_first_register_direct(const RegisterLayout& layout,
                                                 std::uint64_t y0) {
    StateVector state = new_basis_state(layout, 0, y0);
    state.amps[layout.index_of(0, y0)] = 0.0;
    const double amp = 1.0 / std::sqrt(static_cast<double>(layout.q()));
    for (std::uint64_t a = 0; a < layout.q(); ++a) {
        state.amps[layout.index_of(a, y0)] = amp;
    }
    return state;
}

/// Born-rule marginal of one register: P(v) = sum over the other register
/// of |amp|^2.
inline ProbabilityVector marginal_distribution(const StateVector& state, Register which) {
    const auto& layout = state.layout;
    const std::uint64_t size = (which == Register::One) ? layout.q() : layout.dim2();
    ProbabilityVector dist{which, std::vector<double>(size, 0.0)};
    for (std::uint64_t index = 0; index < state.dim(); ++index) {
        const auto [a, y] = layout.decompose(index);
        dist.values[(which == Register::One) ? a : y] += std::norm(state.amps[index]);
    }
    return dist;
}

struct Measurement {
    std::uint64_t value;
    StateVector post;
};

/// Projective measurement of one register: samples the marginal, then
/// renormalizes the restriction to the observed value.
inline Measurement measure_register(const StateVector& state, Register which, Rng& rng) {
    const ProbabilityVector marginal = marginal_distribution(state, which);
    const std::uint64_t value = sample_index(marginal.values, rng);

    StateVector post(state.layout);
    const double scale = 1.0 / std::sqrt(marginal.values[value]);
    for (std::uint64_t index = 0; index < state.dim(); ++index) {
        const auto [a, y] = state.layout.decompose(index);
        const std::uint64_t observed = (which == Register::One) ? a : y;
        if (observed == value) post.amps[index] = state.amps[index] * scale;
    }
    return Measurement{value, std::move(post)};
}

}  // namespace shorsim
