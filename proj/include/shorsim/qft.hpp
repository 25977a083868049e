#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "shorsim/state.hpp"

namespace shorsim {

enum class FourierMode { Dense, Fast };

/// q x q Fourier matrix, row-major: entry (c, a) = exp(2*pi*i*a*c/q)/sqrt(q).
/// Test-scale reference only; q capped at 2^12.
inline std::vector<Amplitude> qft_matrix(std::uint64_t q) {
    if (q == 0 || (q & (q - 1)) != 0) throw std::invalid_argument("qft_matrix: q must be a power of two");
    if (q > (std::uint64_t{1} << 12)) throw std::invalid_argument("qft_matrix: q above the 2^12 test-scale cap");
    std::vector<Amplitude> m(q * q);
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    for (std::uint64_t c = 0; c < q; ++c) {
        for (std::uint64_t a = 0; a < q; ++a) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>((a * c) % q) /
                                 static_cast<double>(q);
            m[c * q + a] = scale * std::polar(1.0, angle);
        }
    }
    return m;
}

namespace detail {

inline std::uint64_t bit_reverse(std::uint64_t v, std::uint32_t bits) {
    std::uint64_t r = 0;
    for (std::uint32_t i = 0; i < bits; ++i) {
        r = (r << 1) | (v & 1);
        v >>= 1;
    }
    return r;
}

// Decimation-in-time radix-2 transform of one register-2 slice, kernel
// exp(sign * 2*pi*i*ac/q), unnormalized. twiddles has q/2 entries,
// twiddles[k] = exp(sign * 2*pi*i*k/q).
inline void fft_slice(std::vector<Amplitude>& buf, const std::vector<Amplitude>& twiddles,
                      std::uint32_t t) {
    const std::uint64_t q = std::uint64_t{1} << t;
    for (std::uint64_t i = 0; i < q; ++i) {
        const std::uint64_t j = bit_reverse(i, t);
        if (i < j) std::swap(buf[i], buf[j]);
    }
    for (std::uint64_t m = 2; m <= q; m <<= 1) {
        const std::uint64_t half = m >> 1;
        const std::uint64_t stride = q / m;  // twiddle subsampling for this level
        for (std::uint64_t j = 0; j < half; ++j) {
            const Amplitude w = twiddles[j * stride];
            for (std::uint64_t k = j; k < q; k += m) {
                const Amplitude u = buf[k];
                const Amplitude v = w * buf[k + half];
                buf[k] = u + v;
                buf[k + half] = u - v;
            }
        }
    }
}

}  // namespace detail

/// Fourier transform of register-1: |a>|y> components map to
/// (1/sqrt(q)) sum_c exp(2*pi*i*ac/q)|c>|y>. Register-2 is inert, so the
/// transform runs independently per register-2 value. `inverse` conjugates
/// the kernel.
inline void qft_first_register(StateVector& state, FourierMode mode = FourierMode::Fast,
                               bool inverse = false) {
    const auto& layout = state.layout;
    const std::uint64_t q = layout.q();
    const std::uint64_t slice = layout.dim2();
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));

    std::vector<Amplitude> in(q);

    if (mode == FourierMode::Dense) {
        // Direct kernel sum per slice; phase table indexed by (a*c) mod q.
        std::vector<Amplitude> out(q);
        std::vector<Amplitude> kernel(q);
        for (std::uint64_t k = 0; k < q; ++k) {
            kernel[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                            static_cast<double>(q));
        }
        for (std::uint64_t y = 0; y < slice; ++y) {
            for (std::uint64_t a = 0; a < q; ++a) in[a] = state.amps[layout.index_of(a, y)];
            for (std::uint64_t c = 0; c < q; ++c) {
                Amplitude acc{0.0, 0.0};
                for (std::uint64_t a = 0; a < q; ++a) acc += kernel[(a * c) % q] * in[a];
                out[c] = scale * acc;
            }
            for (std::uint64_t c = 0; c < q; ++c) state.amps[layout.index_of(c, y)] = out[c];
        }
        return;
    }

    std::vector<Amplitude> twiddles(q / 2);
    for (std::uint64_t k = 0; k < q / 2; ++k) {
        twiddles[k] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(k) /
                                          static_cast<double>(q));
    }
    for (std::uint64_t y = 0; y < slice; ++y) {
        for (std::uint64_t a = 0; a < q; ++a) in[a] = state.amps[layout.index_of(a, y)];
        detail::fft_slice(in, twiddles, layout.t);
        for (std::uint64_t c = 0; c < q; ++c) {
            state.amps[layout.index_of(c, y)] = scale * in[c];
        }
    }
}

}  // namespace shorsim
