#pragma once

#include <cstdint>

namespace shorsim {

/// Operation accounting. Two cost notions are tracked separately:
/// controlled_stage_applications counts controlled-U stages at the
/// granularity the staged modular-exponentiation schedule uses, while
/// amplitude_operations counts individual amplitude reads/writes the
/// simulation performs (one read plus one write per moved amplitude).
/// Counters only ever increase during a run.
struct CircuitStats {
    std::uint64_t controlled_stage_applications = 0;
    std::uint64_t single_qubit_gate_applications = 0;
    std::uint64_t amplitude_operations = 0;

    CircuitStats& operator+=(const CircuitStats& other) {
        controlled_stage_applications += other.controlled_stage_applications;
        single_qubit_gate_applications += other.single_qubit_gate_applications;
        amplitude_operations += other.amplitude_operations;
        return *this;
    }

    bool operator==(const CircuitStats&) const = default;
};

}  // namespace shorsim
