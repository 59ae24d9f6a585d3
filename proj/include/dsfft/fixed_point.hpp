#pragma once

// Q1.15 sample arithmetic shared by every multiplier backend and butterfly.
//
// All narrowing goes through one rounding rule (round to nearest, ties toward
// +infinity) followed by saturation, so the backends can be compared
// bit-for-bit.

#include <cmath>
#include <complex>
#include <cstdint>

namespace dsfft {

/// 16-bit two's-complement Q1.15 sample code; represented value is code * 2^-15.
struct Fx16
{
    static constexpr int kFracBits = 15;
    static constexpr std::int32_t kMinCode = -32768;
    static constexpr std::int32_t kMaxCode = 32767;

    std::int16_t code = 0;

    constexpr Fx16() = default;
    constexpr explicit Fx16(std::int16_t c) : code(c) {}

    constexpr double value() const { return static_cast<double>(code) / 32768.0; }

    friend constexpr bool operator==(Fx16, Fx16) = default;
};

struct CFx16
{
    Fx16 re;
    Fx16 im;

    std::complex<double> value() const { return {re.value(), im.value()}; }

    friend constexpr bool operator==(const CFx16&, const CFx16&) = default;
};

/// Exact wide accumulator. The scale (2^-30 product domain or 2^-15 sum
/// domain) is tracked by the caller; 64 bits comfortably covers any short
/// sum of Q2.30 products.
struct WideAcc
{
    std::int64_t value = 0;

    friend constexpr WideAcc operator+(WideAcc a, WideAcc b) { return {a.value + b.value}; }
    friend constexpr WideAcc operator-(WideAcc a, WideAcc b) { return {a.value - b.value}; }
    friend constexpr bool operator==(WideAcc, WideAcc) = default;
};

constexpr Fx16 saturate_code(std::int64_t code)
{
    if (code > Fx16::kMaxCode) return Fx16{static_cast<std::int16_t>(Fx16::kMaxCode)};
    if (code < Fx16::kMinCode) return Fx16{static_cast<std::int16_t>(Fx16::kMinCode)};
    return Fx16{static_cast<std::int16_t>(code)};
}

constexpr double fx_to_real(Fx16 x) { return x.value(); }

/// Nearest code to r * 2^15, ties toward +infinity, saturating. NaN maps to 0.
inline Fx16 fx_from_real(double r)
{
    if (std::isnan(r)) return Fx16{};
    const double scaled = std::floor(r * 32768.0 + 0.5);
    if (scaled >= Fx16::kMaxCode) return Fx16{static_cast<std::int16_t>(Fx16::kMaxCode)};
    if (scaled <= Fx16::kMinCode) return Fx16{static_cast<std::int16_t>(Fx16::kMinCode)};
    return Fx16{static_cast<std::int16_t>(scaled)};
}

inline CFx16 cfx_from_real(std::complex<double> z) { return {fx_from_real(z.real()), fx_from_real(z.imag())}; }

/// Exact product at scale 2^-30.
constexpr WideAcc fx_mul_exact(Fx16 a, Fx16 b)
{
    return {static_cast<std::int64_t>(a.code) * static_cast<std::int64_t>(b.code)};
}

/// Narrow a 2^-30 accumulator to Q1.15: floor((v + 2^14) / 2^15), saturated.
constexpr Fx16 round_q30_to_fx16(WideAcc acc)
{
    return saturate_code((acc.value + (std::int64_t{1} << 14)) >> 15);
}

/// (a + b) / 2 with the shared rounding rule; the 17-bit sum is exact.
constexpr Fx16 add_halve(Fx16 a, Fx16 b)
{
    return saturate_code((std::int64_t{a.code} + b.code + 1) >> 1);
}

/// (a - b) / 2 with the shared rounding rule. Only (32767, -32768) saturates.
constexpr Fx16 sub_halve(Fx16 a, Fx16 b)
{
    return saturate_code((std::int64_t{a.code} - b.code + 1) >> 1);
}

/// Exact multiplication by -j: (r, i) -> (i, -r). -(-32768) saturates to 32767.
constexpr CFx16 rotate_minus_j(CFx16 x)
{
    return {x.im, saturate_code(-std::int64_t{x.re.code})};
}

}  // namespace dsfft
