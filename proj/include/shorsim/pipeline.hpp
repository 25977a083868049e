#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shorsim/cfrac.hpp"
#include "shorsim/modexp.hpp"
#include "shorsim/qft.hpp"
#include "shorsim/random.hpp"
#include "shorsim/spectrum.hpp"
#include "shorsim/state.hpp"

namespace shorsim {

inline std::uint32_t bit_length(std::uint64_t n) {
    return static_cast<std::uint32_t>(std::bit_width(n));
}

struct QChoice {
    std::uint32_t s;
    std::uint64_t q;
};

/// The unique s with n^2 <= 2^s < 2n^2. The half-open interval [n^2, 2n^2)
/// spans a factor of two, so exactly one power of two lands in it.
inline QChoice choose_q(std::uint64_t n) {
    if (n < 2) throw std::invalid_argument("choose_q: n must be at least 2");
    const unsigned __int128 n2 = static_cast<unsigned __int128>(n) * n;
    std::uint32_t s = 0;
    while ((static_cast<unsigned __int128>(1) << s) < n2) ++s;
    return QChoice{s, std::uint64_t{1} << s};
}

namespace classical {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Smallest p with n = p^k, k >= 2, if n is a perfect power of a prime or
/// of anything else; absent otherwise. Largest exponent first, so a prime
/// power always reports its prime.
inline std::optional<std::uint64_t> perfect_power_base(std::uint64_t n) {
    if (n < 4) return std::nullopt;
    for (std::uint32_t k = 63; k >= 2; --k) {
        if ((std::uint64_t{1} << k) > n) continue;
        std::uint64_t root = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(n), 1.0 / k)));
        for (std::uint64_t cand = root > 1 ? root - 1 : 1; cand <= root + 1; ++cand) {
            if (cand < 2) continue;
            unsigned __int128 acc = 1;
            for (std::uint32_t i = 0; i < k && acc <= n; ++i) acc *= cand;
            if (acc == n) return cand;
        }
    }
    return std::nullopt;
}

}  // namespace classical

enum class RunOutcome { Success, OddOrder, TrivialRoot, Exhausted };

inline const char* to_string(RunOutcome outcome) {
    switch (outcome) {
        case RunOutcome::Success: return "success";
        case RunOutcome::OddOrder: return "odd_order";
        case RunOutcome::TrivialRoot: return "trivial_root";
        case RunOutcome::Exhausted: return "exhausted";
    }
    return "unknown";
}

/// One register-1 sample and what continued fractions made of it.
struct SampleRecord {
    std::uint64_t c = 0;
    bool has_candidate = false;
    std::uint64_t d = 0;
    std::uint64_t r = 0;
    // "verified" | "not_order" | "r_equals_1" | "no_qualifying_convergent"
    std::string status;
};

struct ShorConfig {
    std::uint64_t n = 0;
    std::optional<std::uint64_t> x;
    std::optional<std::uint32_t> s_override;
    std::uint64_t seed = 0;
    std::uint32_t max_samples = 16;
    std::uint32_t trials = 1;
    /// Sample register-1 from the closed-form distribution instead of the
    /// dense simulation. Distribution-identical by the spectrum equivalence
    /// invariant; no circuit statistics accrue.
    bool fast = false;
    std::uint32_t max_qubits = kDefaultMaxQubits;
};

struct ShorReport {
    std::uint64_t n = 0;
    std::optional<std::uint64_t> x;
    std::uint32_t s = 0;
    std::uint64_t q = 0;
    // "quantum" | "gcd" | "even" | "prime_power"
    std::string method;
    std::vector<SampleRecord> samples;
    std::optional<std::uint64_t> verified_r;
    // "sample" when one candidate verified directly, "lcm" when two
    // candidate denominators had to be combined.
    std::string verified_via;
    std::optional<std::pair<std::uint64_t, std::uint64_t>> factors;
    CircuitStats stats;
    RunOutcome outcome = RunOutcome::Exhausted;
};

namespace detail {

struct OrderFindResult {
    std::optional<std::uint64_t> r;
    std::string via;
    std::vector<SampleRecord> samples;
    CircuitStats stats;
};

// The sampling/recovery loop shared by run_shor and order_find. Each sample
// rebuilds the state from scratch so draws are independent; candidates that
// fail x^r == 1 are kept and retried as pairwise least common multiples.
inline OrderFindResult order_find_impl(std::uint64_t n, std::uint64_t x, std::uint32_t s,
                                       std::uint32_t max_samples, Rng& rng, bool fast,
                                       std::uint32_t max_qubits) {
    const std::uint32_t ell = bit_length(n);
    const std::uint64_t q = std::uint64_t{1} << s;

    OrderFindResult result;
    std::vector<double> fast_marginal;
    if (fast) {
        fast_marginal = analytic_distribution(n, x, q).marginal;
    } else {
        RegisterLayout probe(s, ell, max_qubits);  // capacity check up front
        (void)probe;
    }

    std::vector<std::uint64_t> failed_candidates;
    for (std::uint32_t sample = 0; sample < max_samples; ++sample) {
        std::uint64_t c;
        if (fast) {
            c = sample_index(fast_marginal, rng);
        } else {
            RegisterLayout layout(s, ell, max_qubits);
            ModexpResult run = modexp_circuit(layout, x, n);
            result.stats += run.stats;
            qft_first_register(run.state, FourierMode::Fast);
            c = measure_register(run.state, Register::One, rng).value;
        }

        SampleRecord record;
        record.c = c;
        const std::optional<Fraction> candidate = recover_order(c, q, n);
        if (!candidate) {
            record.status = "no_qualifying_convergent";
            result.samples.push_back(record);
            continue;
        }
        record.has_candidate = true;
        record.d = candidate->num;
        record.r = candidate->den;
        if (candidate->den == 1) {
            // c = 0 (or another zero-information outcome): resample.
            record.status = "r_equals_1";
            result.samples.push_back(record);
            continue;
        }
        if (modpow(x, candidate->den, n) == 1) {
            record.status = "verified";
            result.samples.push_back(record);
            result.r = candidate->den;
            result.via = "sample";
            return result;
        }
        record.status = "not_order";
        result.samples.push_back(record);

        // gcd(d, r) > 1 samples yield a divisor of the order; two such
        // divisors often recombine to the full order.
        for (std::uint64_t prev : failed_candidates) {
            const std::uint64_t l = std::lcm(prev, candidate->den);
            if (l >= n) continue;
            if (modpow(x, l, n) == 1) {
                result.r = l;
                result.via = "lcm";
                return result;
            }
        }
        if (std::find(failed_candidates.begin(), failed_candidates.end(), candidate->den) ==
            failed_candidates.end()) {
            failed_candidates.push_back(candidate->den);
        }
    }
    return result;
}

}  // namespace detail

/// Order finding alone: returns r with x^r == 1 (mod n) or absent when the
/// sample budget runs out.
inline std::optional<std::uint64_t> order_find(std::uint64_t n, std::uint64_t x, std::uint32_t s,
                                               std::uint32_t max_samples, Rng& rng,
                                               bool fast = false,
                                               std::uint32_t max_qubits = kDefaultMaxQubits) {
    if (std::gcd(x % n, n) != 1) throw std::domain_error("order_find: gcd(x, n) != 1");
    return detail::order_find_impl(n, x, s, max_samples, rng, fast, max_qubits).r;
}

/// Full factoring run. Even n, prime powers, and gcd(x, n) > 1 are settled
/// classically; prime n is rejected. Everything else goes through the
/// simulated order-finding pipeline and the x^{r/2} +- 1 gcd extraction.
inline ShorReport run_shor(const ShorConfig& config, Rng& rng) {
    const std::uint64_t n = config.n;
    ShorReport report;
    report.n = n;

    if (n < 2) throw std::invalid_argument("run_shor: n must be at least 2");
    if (classical::is_prime(n)) {
        throw std::domain_error("run_shor: n is prime, nothing to factor");
    }
    if (n % 2 == 0) {
        report.method = "even";
        report.factors = {std::uint64_t{2}, n / 2};
        report.outcome = RunOutcome::Success;
        return report;
    }
    if (const auto base = classical::perfect_power_base(n)) {
        report.method = "prime_power";
        report.factors = {*base, n / *base};
        report.outcome = RunOutcome::Success;
        return report;
    }

    const std::uint64_t x = config.x ? *config.x : 2 + rand_below(rng, n - 3);
    report.x = x;
    if (x < 2 || x >= n) throw std::invalid_argument("run_shor: base x must satisfy 2 <= x < n");

    const std::uint64_t g = std::gcd(x, n);
    if (g != 1) {
        report.method = "gcd";
        report.factors = {std::min(g, n / g), std::max(g, n / g)};
        report.outcome = RunOutcome::Success;
        return report;
    }

    report.method = "quantum";
    const std::uint32_t s = config.s_override ? *config.s_override : choose_q(n).s;
    report.s = s;
    report.q = std::uint64_t{1} << s;

    detail::OrderFindResult found = detail::order_find_impl(n, x, s, config.max_samples, rng,
                                                            config.fast, config.max_qubits);
    report.samples = std::move(found.samples);
    report.stats = found.stats;
    report.verified_r = found.r;
    report.verified_via = found.via;

    if (!found.r) {
        report.outcome = RunOutcome::Exhausted;
        return report;
    }
    const std::uint64_t r = *found.r;
    if (r % 2 != 0) {
        report.outcome = RunOutcome::OddOrder;
        return report;
    }
    const std::uint64_t h = modpow(x, r / 2, n);
    if (h == n - 1) {
        report.outcome = RunOutcome::TrivialRoot;
        return report;
    }
    const std::uint64_t f1 = std::gcd(h >= 1 ? h - 1 : 0, n);
    const std::uint64_t f2 = std::gcd(h + 1, n);
    if (f1 <= 1 || f2 <= 1 || f1 * f2 != n) {
        // Possible only for a verified r that is not the actual order.
        report.outcome = RunOutcome::Exhausted;
        return report;
    }
    report.factors = {std::min(f1, f2), std::max(f1, f2)};
    report.outcome = RunOutcome::Success;
    return report;
}

/// One published demonstration: label, citation key, and qubit counts.
struct DemoCase {
    std::string label;
    std::string citation;
    std::uint64_t n = 0;
    std::uint32_t s1 = 0;
    std::uint32_t s2 = 0;
};

struct DemoAuditRow {
    std::string label;
    std::string citation;
    std::uint64_t n = 0;
    std::uint32_t s1 = 0;
    std::uint32_t s2 = 0;
    bool q_ok = false;      // n^2 <= 2^{s1} < 2n^2
    bool width_ok = false;  // 2^{s2} >= n
    std::uint32_t required_s1 = 0;
    std::string verdict;
};

/// The four compiled factoring demonstrations discussed in the source
/// material, as published: first/second register widths for n = 15.
inline std::vector<DemoCase> builtin_demo_cases() {
    return {
        {"IBM 2001", "VS01", 15, 3, 4},
        {"Queensland 2007", "LW07", 15, 3, 4},
        {"USTC 2007", "LB07", 15, 2, 4},
        {"UCSB 2012", "L12", 15, 1, 2},
    };
}

inline std::vector<DemoAuditRow> demo_audit(const std::vector<DemoCase>& cases) {
    std::vector<DemoAuditRow> rows;
    rows.reserve(cases.size());
    for (const DemoCase& demo : cases) {
        DemoAuditRow row;
        row.label = demo.label;
        row.citation = demo.citation;
        row.n = demo.n;
        row.s1 = demo.s1;
        row.s2 = demo.s2;
        const unsigned __int128 n2 = static_cast<unsigned __int128>(demo.n) * demo.n;
        const unsigned __int128 q1 = static_cast<unsigned __int128>(1) << demo.s1;
        row.q_ok = n2 <= q1 && q1 < 2 * n2;
        row.width_ok = (static_cast<unsigned __int128>(1) << demo.s2) >= demo.n;
        row.required_s1 = choose_q(demo.n).s;
        if (row.q_ok && row.width_ok) {
            row.verdict = "compliant";
        } else if (!row.q_ok && !row.width_ok) {
            row.verdict = "q_and_width_violated";
        } else if (!row.q_ok) {
            row.verdict = "q_condition_violated";
        } else {
            row.verdict = "width_violated";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

struct SweepRow {
    std::uint32_t s = 0;
    std::uint64_t q = 0;
    std::uint32_t trials = 0;
    std::uint32_t successes = 0;
    double rate = 0.0;
};

/// Measured order-recovery success rate as a function of the register-1
/// width. Success means order_find returned exactly the brute-force order.
/// Each trial draws its own generator from (seed, s, trial), so the table
/// is deterministic and trials are independent.
inline std::vector<SweepRow> success_sweep(std::uint64_t n, std::uint64_t x,
                                           const std::vector<std::uint32_t>& s_values,
                                           std::uint32_t trials, std::uint64_t seed,
                                           std::uint32_t max_samples = 16, bool fast = true,
                                           std::uint32_t max_qubits = kDefaultMaxQubits) {
    const std::uint64_t true_order = order_bruteforce(x, n);
    std::vector<SweepRow> table;
    table.reserve(s_values.size());
    for (std::uint32_t s : s_values) {
        SweepRow row;
        row.s = s;
        row.q = std::uint64_t{1} << s;
        row.trials = trials;
        for (std::uint32_t trial = 0; trial < trials; ++trial) {
            Rng rng(mix_seed(seed, s, trial));
            const auto r = order_find(n, x, s, max_samples, rng, fast, max_qubits);
            if (r && *r == true_order) row.successes += 1;
        }
        row.rate = trials == 0 ? 0.0 : static_cast<double>(row.successes) / trials;
        table.push_back(row);
    }
    return table;
}

}  // namespace shorsim
