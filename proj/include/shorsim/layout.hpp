#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace shorsim {

/// Hard cap on total simulated qubits unless a caller overrides it.
/// 2^26 complex doubles is about 1 GiB of amplitudes.
inline constexpr std::uint32_t kDefaultMaxQubits = 26;

/// Qubit widths of the two registers and the index convention joining them.
///
/// Register-1 (width t, values a < q = 2^t) occupies the high-order bits of
/// a basis index; register-2 (width ell, values y < 2^ell) the low-order
/// bits, so the basis index of (a, y) is a * 2^ell + y.
struct RegisterLayout {
    std::uint32_t t;
    std::uint32_t ell;
    std::uint32_t max_total;

    RegisterLayout(std::uint32_t t_, std::uint32_t ell_,
                   std::uint32_t max_total_ = kDefaultMaxQubits)
        : t(t_), ell(ell_), max_total(max_total_) {
        if (t < 1 || ell < 1) {
            throw std::invalid_argument("RegisterLayout: both registers need at least one qubit");
        }
        if (t + ell > max_total) {
            throw std::length_error("RegisterLayout: " + std::to_string(t + ell) +
                                    " qubits exceed the configured maximum of " +
                                    std::to_string(max_total));
        }
    }

    std::uint32_t total_qubits() const { return t + ell; }

    std::uint64_t q() const { return std::uint64_t{1} << t; }
    std::uint64_t dim2() const { return std::uint64_t{1} << ell; }
    std::uint64_t dim() const { return std::uint64_t{1} << (t + ell); }

    std::uint64_t index_of(std::uint64_t a, std::uint64_t y) const {
        return (a << ell) | y;
    }

    /// Inverse of index_of: index -> (a, y).
    std::pair<std::uint64_t, std::uint64_t> decompose(std::uint64_t index) const {
        return {index >> ell, index & (dim2() - 1)};
    }

    // Global qubit numbering: bit g of the basis index. Register-2 holds
    // bits [0, ell), register-1 bits [ell, ell + t).
    std::uint32_t reg1_qubit(std::uint32_t i) const { return ell + i; }
    std::uint32_t reg2_qubit(std::uint32_t j) const { return j; }

    bool operator==(const RegisterLayout&) const = default;
};

}  // namespace shorsim
