#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shorsim/modexp.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/state.hpp"

namespace shorsim {

/// Exact register-1 measurement distribution for given (n, x, q), jointly
/// with the register-2 outcome index k (the position of the observed value
/// in the power cycle x^0, x^1, ..., x^{r-1} mod n).
struct OutcomeDistribution {
    std::uint64_t q = 0;
    std::uint64_t r = 0;
    std::vector<double> joint;     // row-major, entry (c, k) at c*r + k
    std::vector<double> marginal;  // P(c) = sum_k joint(c, k)

    double at(std::uint64_t c, std::uint64_t k) const { return joint[c * r + k]; }
};

/// x^0 .. x^{r-1} mod n.
inline std::vector<std::uint64_t> power_cycle(std::uint64_t x, std::uint64_t n) {
    const std::uint64_t r = order_bruteforce(x, n);
    std::vector<std::uint64_t> cycle(r);
    std::uint64_t value = 1 % n;
    for (std::uint64_t k = 0; k < r; ++k) {
        cycle[k] = value;
        value = mul_mod(value, x % n, n);
    }
    return cycle;
}

/// Closed-form evaluation of
///   P(c, k) = | (1/q) sum_{a = k + b*r < q} exp(2*pi*i*a*c/q) |^2.
/// The sum over b is a finite geometric series; its modulus is
/// |sin(pi*m*theta) / sin(pi*theta)| with theta = rc/q and m terms, and
/// exactly m when theta is an integer. Arguments are reduced in integer
/// arithmetic before any sine is taken, so peaks cost no cancellation.
inline OutcomeDistribution analytic_distribution(std::uint64_t n, std::uint64_t x,
                                                 std::uint64_t q) {
    if (q == 0 || (q & (q - 1)) != 0) {
        throw std::invalid_argument("analytic_distribution: q must be a power of two");
    }
    if (std::gcd(x % n, n) != 1) {
        throw std::domain_error("analytic_distribution: gcd(x, n) != 1");
    }
    const std::uint64_t r = order_bruteforce(x, n);

    OutcomeDistribution dist;
    dist.q = q;
    dist.r = r;
    dist.joint.assign(q * r, 0.0);
    dist.marginal.assign(q, 0.0);

    const double qd = static_cast<double>(q);
    for (std::uint64_t c = 0; c < q; ++c) {
        const std::uint64_t res = (r * c) % q;  // theta = res / q
        for (std::uint64_t k = 0; k < r; ++k) {
            const std::uint64_t m = (q - k + r - 1) / r;  // #terms a = k + b*r below q
            double magnitude;
            if (res == 0) {
                magnitude = static_cast<double>(m);
            } else {
                // sin(pi * m * theta): reduce m*res mod 2q first, exactly.
                const std::uint64_t num = (m * res) % (2 * q);
                const double s_num = std::sin(std::numbers::pi * static_cast<double>(num) / qd);
                const double s_den = std::sin(std::numbers::pi * static_cast<double>(res) / qd);
                magnitude = std::abs(s_num / s_den);
            }
            const double p = (magnitude / qd) * (magnitude / qd);
            dist.joint[c * r + k] = p;
            dist.marginal[c] += p;
        }
    }

    double total = 0.0;
    for (double p : dist.marginal) total += p;
    if (std::abs(total - 1.0) > 1e-9) {
        throw std::logic_error("analytic_distribution: probabilities do not sum to 1");
    }
    return dist;
}

/// The same distribution read off the simulated pipeline: staged modular
/// exponentiation, Fourier transform of register-1, Born-rule joint over
/// (c, k). Must agree with analytic_distribution entrywise within 1e-9.
inline OutcomeDistribution simulated_distribution(std::uint64_t n, std::uint64_t x,
                                                  std::uint32_t t, std::uint32_t ell,
                                                  std::uint32_t max_qubits = kDefaultMaxQubits) {
    const RegisterLayout layout(t, ell, max_qubits);
    ModexpResult run = modexp_circuit(layout, x, n);
    qft_first_register(run.state, FourierMode::Fast);

    const std::vector<std::uint64_t> cycle = power_cycle(x, n);
    std::vector<std::uint64_t> position(layout.dim2(), cycle.size());
    for (std::uint64_t k = 0; k < cycle.size(); ++k) position[cycle[k]] = k;

    OutcomeDistribution dist;
    dist.q = layout.q();
    dist.r = cycle.size();
    dist.joint.assign(dist.q * dist.r, 0.0);
    dist.marginal.assign(dist.q, 0.0);

    double leaked = 0.0;  // mass on register-2 values outside the power cycle
    for (std::uint64_t index = 0; index < run.state.dim(); ++index) {
        const double p = std::norm(run.state.amps[index]);
        if (p == 0.0) continue;
        const auto [c, y] = layout.decompose(index);
        const std::uint64_t k = position[y];
        if (k == cycle.size()) {
            leaked += p;
            continue;
        }
        dist.joint[c * dist.r + k] += p;
        dist.marginal[c] += p;
    }
    if (leaked > 1e-12) {
        throw std::logic_error("simulated_distribution: probability mass outside the power cycle");
    }
    return dist;
}

/// Outcome of checking the P(c, k) > 1/(3r^2) lower bound on every c that
/// admits an integer d with |dq - rc| <= r/2.
struct PeakBoundReport {
    std::uint64_t n = 0;
    std::uint64_t x = 0;
    std::uint64_t q = 0;
    std::uint64_t r = 0;
    std::uint64_t qualifying_c = 0;
    double min_ratio = 0.0;  // min over qualifying (c, k) of P(c, k) * 3r^2
    bool pass = false;
};

inline PeakBoundReport peak_bound_check(std::uint64_t n, std::uint64_t x, std::uint64_t q) {
    const OutcomeDistribution dist = analytic_distribution(n, x, q);

    PeakBoundReport report;
    report.n = n;
    report.x = x;
    report.q = q;
    report.r = dist.r;
    report.pass = true;

    const double threshold = 1.0 / (3.0 * static_cast<double>(dist.r) * static_cast<double>(dist.r));
    bool first = true;
    for (std::uint64_t c = 0; c < q; ++c) {
        const std::uint64_t res = (dist.r * c) % q;
        const std::uint64_t dist_to_multiple = std::min(res, q - res);
        if (2 * dist_to_multiple > dist.r) continue;  // no integer d within r/2
        report.qualifying_c += 1;
        for (std::uint64_t k = 0; k < dist.r; ++k) {
            const double p = dist.at(c, k);
            const double ratio = p / threshold;
            if (first || ratio < report.min_ratio) report.min_ratio = ratio;
            first = false;
            if (p <= threshold) report.pass = false;
        }
    }
    return report;
}

}  // namespace shorsim
