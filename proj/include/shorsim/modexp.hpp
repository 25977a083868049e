#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shorsim/gates.hpp"
#include "shorsim/random.hpp"
#include "shorsim/state.hpp"

namespace shorsim {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

/// x^e mod n by repeated squaring: walk the bits of e right to left,
/// multiplying x^{2^i} into the accumulator where bit i is set.
inline std::uint64_t modpow(std::uint64_t x, std::uint64_t e, std::uint64_t n) {
    if (n < 2) throw std::domain_error("modpow: modulus must be at least 2");
    std::uint64_t power = 1 % n;
    std::uint64_t square = x % n;
    for (; e != 0; e >>= 1) {
        if (e & 1) power = mul_mod(power, square, n);
        square = mul_mod(square, square, n);
    }
    return power;
}

/// Least r >= 1 with x^r == 1 (mod n). Independent oracle for every order
/// value in the test suites; plain repeated multiplication, no shortcuts.
inline std::uint64_t order_bruteforce(std::uint64_t x, std::uint64_t n) {
    if (n < 2) throw std::domain_error("order_bruteforce: modulus must be at least 2");
    if (std::gcd(x % n, n) != 1) {
        throw std::domain_error("order_bruteforce: gcd(x, n) != 1, order undefined");
    }
    const std::uint64_t xr = x % n;
    std::uint64_t power = xr;
    for (std::uint64_t r = 1; r <= n; ++r) {
        if (power == 1) return r;
        power = mul_mod(power, xr, n);
    }
    throw std::logic_error("order_bruteforce: no order below n, impossible for gcd(x, n) = 1");
}

/// entries[i] = x^{2^i} mod n for i < t, each the square of the previous.
struct SquareTable {
    std::uint64_t x;
    std::uint64_t n;
    std::vector<std::uint64_t> entries;
};

inline SquareTable precompute_squares(std::uint64_t x, std::uint64_t n, std::uint32_t t) {
    if (n < 2) throw std::domain_error("precompute_squares: modulus must be at least 2");
    SquareTable table{x, n, {}};
    table.entries.reserve(t);
    std::uint64_t value = x % n;
    for (std::uint32_t i = 0; i < t; ++i) {
        table.entries.push_back(value);
        value = mul_mod(value, value, n);
    }
    return table;
}

struct ModexpResult {
    StateVector state;
    CircuitStats stats;
};

/// Staged construction of (1/sqrt(q)) sum_a |a>|x^a mod n>: uniform register-1
/// over |y=1>, then one controlled multiply-by-x^{2^i} stage per register-1
/// qubit. Exactly t controlled stages, independent of q, x, n.
inline ModexpResult modexp_circuit(const RegisterLayout& layout, std::uint64_t x,
                                   std::uint64_t n) {
    if (n > layout.dim2()) {
        throw std::invalid_argument("modexp_circuit: modulus does not fit in register-2");
    }
    CircuitStats stats;
    // Register-2 starts at the multiplicative identity, not |0>: every stage
    // multiplies, and 0 is a fixed point of all the permutations.
    StateVector state = uniform_first_register(layout, 1, &stats);
    const SquareTable table = precompute_squares(x, n, layout.t);
    for (std::uint32_t i = 0; i < layout.t; ++i) {
        const PermutationGate p = mod_mult_perm(table.entries[i], n, layout.ell);
        apply_controlled_permutation(state, i, p, stats);
    }
    return ModexpResult{std::move(state), stats};
}

/// Brute-force enumeration of the same state: amplitude 1/sqrt(q) at
/// (a, x^a mod n) for every a.
inline StateVector modexp_oracle(const RegisterLayout& layout, std::uint64_t x,
                                 std::uint64_t n) {
    if (n > layout.dim2()) {
        throw std::invalid_argument("modexp_oracle: modulus does not fit in register-2");
    }
    StateVector state(layout);
    const double amp = 1.0 / std::sqrt(static_cast<double>(layout.q()));
    for (std::uint64_t a = 0; a < layout.q(); ++a) {
        state.amps[layout.index_of(a, modpow(x, a, n))] = amp;
    }
    return state;
}

/// Side-by-side audit of the staged circuit against the enumeration oracle.
/// claimed_invocations is the per-pure-state operation count asserted for the
/// top term a = q-1 (one unitary invocation per unit of the exponent); t is
/// the stage count the schedule actually performs.
struct AuditReport {
    std::uint64_t t = 0;
    std::uint64_t claimed_invocations = 0;
    double max_amplitude_deviation = 0.0;
    bool equal = false;
};

namespace detail {

// Run just the controlled stages (no state prep) on an arbitrary start state.
inline void run_modexp_stages(StateVector& state, std::uint64_t x, std::uint64_t n,
                              CircuitStats& stats) {
    const SquareTable table = precompute_squares(x, n, state.layout.t);
    for (std::uint32_t i = 0; i < state.layout.t; ++i) {
        const PermutationGate p = mod_mult_perm(table.entries[i], n, state.layout.ell);
        apply_controlled_permutation(state, i, p, stats);
    }
}

}  // namespace detail

/// Compares the staged circuit with the oracle and verifies that the stages
/// act linearly: for random subsets S of register-1 values, the normalized
/// superposition over {|a>|1> : a in S} must map to the one over
/// {|a>|x^a>}. A linearity violation would falsify the simulation itself,
/// so it throws rather than reporting.
inline AuditReport claim_audit(const RegisterLayout& layout, std::uint64_t x, std::uint64_t n,
                               std::uint32_t subset_trials = 20,
                               std::uint64_t subset_seed = 0x5b0c5eed) {
    const ModexpResult staged = modexp_circuit(layout, x, n);
    const StateVector oracle = modexp_oracle(layout, x, n);

    AuditReport report;
    report.t = staged.stats.controlled_stage_applications;
    report.claimed_invocations = layout.q() - 1;
    report.max_amplitude_deviation = max_abs_diff(staged.state, oracle);
    report.equal = report.max_amplitude_deviation < 1e-10;

    Rng rng(subset_seed);
    const std::uint64_t q = layout.q();
    for (std::uint32_t trial = 0; trial < subset_trials; ++trial) {
        // First few trials are singletons, the pure-state case; the rest are
        // random subsets of register-1 values.
        std::vector<std::uint64_t> subset;
        if (trial < 3) {
            subset.push_back(rand_below(rng, q));
        } else {
            const std::uint64_t size = 1 + rand_below(rng, std::min<std::uint64_t>(q, 32));
            for (std::uint64_t k = 0; k < size; ++k) subset.push_back(rand_below(rng, q));
            std::sort(subset.begin(), subset.end());
            subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
        }
        const double amp = 1.0 / std::sqrt(static_cast<double>(subset.size()));

        StateVector input(layout);
        for (std::uint64_t a : subset) input.amps[layout.index_of(a, 1)] = amp;
        CircuitStats scratch;
        detail::run_modexp_stages(input, x, n, scratch);

        StateVector expected(layout);
        for (std::uint64_t a : subset) {
            expected.amps[layout.index_of(a, modpow(x, a, n))] = amp;
        }
        if (max_abs_diff(input, expected) >= 1e-10) {
            throw std::logic_error("claim_audit: staged circuit violated linearity on a subset state");
        }
    }
    return report;
}

}  // namespace shorsim
