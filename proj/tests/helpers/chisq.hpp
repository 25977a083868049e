#pragma once

// Chi-square goodness-of-fit p-value via the regularized incomplete gamma
// function (series for x < a+1, Lentz continued fraction otherwise).
// Test-only; accuracy far beyond what a 0.001 significance cut needs.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace testutil {

inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

/// Upper regularized incomplete gamma Q(a, x) = P(X > x) for Gamma(a, 1).
inline double gamma_q(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

inline double chi_square_p_value(double statistic, double dof) {
    return gamma_q(dof / 2.0, statistic / 2.0);
}

/// Pearson statistic over cells with nonzero expectation; any observation in
/// a zero-probability cell is an outright failure, reported as p = 0.
inline double chi_square_gof_p(const std::vector<std::uint64_t>& counts,
                               const std::vector<double>& probs, std::uint64_t draws) {
    double stat = 0.0;
    std::size_t cells = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double expected = probs[i] * static_cast<double>(draws);
        if (probs[i] <= 0.0) {
            if (counts[i] != 0) return 0.0;
            continue;
        }
        const double diff = static_cast<double>(counts[i]) - expected;
        stat += diff * diff / expected;
        ++cells;
    }
    if (cells < 2) throw std::invalid_argument("chi_square_gof_p: need at least two cells");
    return chi_square_p_value(stat, static_cast<double>(cells - 1));
}

}  // namespace testutil
