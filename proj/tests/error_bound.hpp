#pragma once

// Worst-case error accumulation through the pipeline, in real units, for
// inputs whose components are bounded by `amplitude`. Deliberately written
// from the arithmetic rules rather than from the pipeline code:
//
//   butterfly:   outputs are (a +/- b)/2 rounded, so the propagated error is at
//                most max(ea, eb) and rounding adds half an LSB.
//   -j rotation: exact.
//   multiplier:  re = ar wr - ai wi; the propagated error grows by at most
//                max(|wr| + |wi|), twiddle quantization adds |a| (|dwr| + |dwi|),
//                and the single rounding adds half an LSB. |a| is bounded by
//                amplitude * sqrt(2) (components mix under rotation).
//
// Saturation is outside the model.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace dsfft::testing {

inline double error_bound(std::size_t n, double amplitude)
{
    constexpr double lsb = 0x1.0p-15;
    int stages = 0;
    for (std::size_t m = n; m > 1; m /= 4) ++stages;

    double err = 0.0;
    for (int s = 1; s <= stages; ++s) {
        err += 0.5 * lsb;  // BF-I
        err += 0.5 * lsb;  // BF-II
        if (s == stages) break;

        // Twiddles of this stage: W_M^e, M = n / 4^(s-1), e < M.
        const std::size_t local = n >> (2 * (s - 1));
        double gain = 1.0;
        double quant = 0.0;
        for (std::size_t e = 1; e < local; ++e) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(local);
            const double wr = std::cos(angle);
            const double wi = -std::sin(angle);
            const double qr = std::clamp(std::floor(wr * 32768.0 + 0.5), -32768.0, 32767.0) / 32768.0;
            const double qi = std::clamp(std::floor(wi * 32768.0 + 0.5), -32768.0, 32767.0) / 32768.0;
            gain = std::max(gain, std::abs(qr) + std::abs(qi));
            quant = std::max(quant, std::abs(qr - wr) + std::abs(qi - wi));
        }
        err = gain * err + amplitude * std::numbers::sqrt2 * quant + 0.5 * lsb;
    }
    return err;
}

}  // namespace dsfft::testing
