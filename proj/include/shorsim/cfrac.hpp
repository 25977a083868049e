#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace shorsim {

// Everything in this header is exact integer arithmetic; no floating point.

/// Reduced non-negative rational.
struct Fraction {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Fraction reduced(std::uint64_t num, std::uint64_t den) {
        if (den == 0) throw std::domain_error("Fraction: zero denominator");
        const std::uint64_t g = num == 0 ? den : std::gcd(num, den);
        return Fraction{num / g, den / g};
    }

    bool operator==(const Fraction&) const = default;
};

/// Partial quotients [a0; a1, a2, ...] of c/q and the convergents they
/// generate, in order. The final convergent is c/q in lowest terms.
struct ConvergentList {
    std::vector<std::uint64_t> quotients;
    std::vector<Fraction> convergents;
};

/// Euclidean continued-fraction expansion of c/q, 0 <= c < q.
inline ConvergentList continued_fraction(std::uint64_t c, std::uint64_t q) {
    if (q == 0) throw std::domain_error("continued_fraction: q must be positive");
    if (c >= q) throw std::invalid_argument("continued_fraction: c must be below q");

    ConvergentList list;
    // Convergent recurrence h_i = a_i*h_{i-1} + h_{i-2}, same for k_i.
    std::uint64_t h_prev = 1, h_prev2 = 0;
    std::uint64_t k_prev = 0, k_prev2 = 1;
    std::uint64_t num = c, den = q;
    while (true) {
        const std::uint64_t a = num / den;
        list.quotients.push_back(a);
        const std::uint64_t h = a * h_prev + h_prev2;
        const std::uint64_t k = a * k_prev + k_prev2;
        list.convergents.push_back(Fraction{h, k});
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
        const std::uint64_t rem = num % den;
        if (rem == 0) break;
        num = den;
        den = rem;
    }
    return list;
}

/// The convergent d/r of c/q with the largest denominator r < n satisfying
/// |c/q - d/r| <= 1/(2q), i.e. 2|dq - rc| <= r in exact arithmetic.
/// Absent when no convergent qualifies.
inline std::optional<Fraction> recover_order(std::uint64_t c, std::uint64_t q, std::uint64_t n) {
    if (q == 0) throw std::domain_error("recover_order: q must be positive");
    if (c >= q) throw std::invalid_argument("recover_order: c must be below q");

    std::optional<Fraction> best;
    for (const Fraction& conv : continued_fraction(c, q).convergents) {
        if (conv.den >= n) break;  // denominators only grow from here
        const __int128 delta = static_cast<__int128>(conv.num) * q - static_cast<__int128>(conv.den) * c;
        const __int128 mag = delta < 0 ? -delta : delta;
        if (2 * mag <= static_cast<__int128>(conv.den)) best = conv;
    }
    return best;
}

/// Exact check of the rounding-uniqueness chain 1/(2q) <= 1/(2n^2) < 1/(2r^2):
/// holds iff q >= n^2 and r < n.
inline bool verify_bound_chain(std::uint64_t q, std::uint64_t n, std::uint64_t r) {
    const bool q_large_enough = static_cast<unsigned __int128>(n) * n <= q;
    return q_large_enough && r < n;
}

}  // namespace shorsim
