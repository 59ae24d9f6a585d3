#pragma once

// Complex multiplier backends. Every backend forms the exact product in a
// wide accumulator and rounds once per output component, which makes all
// three bit-identical.

#include <cstdint>
#include <optional>
#include <string_view>

#include "dsfft/fixed_point.hpp"
#include "dsfft/slicing.hpp"

namespace dsfft {

enum class MulBackend
{
    mul4,  ///< four real multipliers, one adder, one subtractor
    mul3,  ///< three real multipliers with shared a_i * (b_r - b_i) term
    lut,   ///< digit-sliced, multiplier-less table lookup
};

std::string_view to_string(MulBackend backend);
std::optional<MulBackend> parse_backend(std::string_view name);

/// Table pair for one twiddle factor: rom_re built from b_r, rom_im from b_i.
struct TwiddleRomPair
{
    TwiddleRom rom_re;
    TwiddleRom rom_im;

    CFx16 twiddle() const { return {rom_re.w, rom_im.w}; }
};

constexpr TwiddleRomPair build_rom_pair(CFx16 twiddle)
{
    return {build_rom(twiddle.re), build_rom(twiddle.im)};
}

constexpr CFx16 cmul4(CFx16 a, CFx16 b)
{
    const WideAcc re = fx_mul_exact(a.re, b.re) - fx_mul_exact(a.im, b.im);
    const WideAcc im = fx_mul_exact(a.im, b.re) + fx_mul_exact(a.re, b.im);
    return {round_q30_to_fx16(re), round_q30_to_fx16(im)};
}

constexpr CFx16 cmul3(CFx16 a, CFx16 b)
{
    // 17-bit pre-adder outputs, held exactly.
    const std::int64_t ar_minus_ai = std::int64_t{a.re.code} - a.im.code;
    const std::int64_t ar_plus_ai = std::int64_t{a.re.code} + a.im.code;
    const std::int64_t br_minus_bi = std::int64_t{b.re.code} - b.im.code;

    const WideAcc m1{b.re.code * ar_minus_ai};
    const WideAcc m2{a.im.code * br_minus_bi};
    const WideAcc m3{b.im.code * ar_plus_ai};
    return {round_q30_to_fx16(m1 + m2), round_q30_to_fx16(m3 + m2)};
}

/// Multiplier-less product: both operand components are sliced and each of the
/// four partial products is a shift-and-add over table lookups.
constexpr CFx16 cmul_lut(CFx16 a, const TwiddleRomPair& roms)
{
    const SlicedWord ar = slice(a.re);
    const SlicedWord ai = slice(a.im);
    const WideAcc re = lut_mul_exact(roms.rom_re, ar) - lut_mul_exact(roms.rom_im, ai);
    const WideAcc im = lut_mul_exact(roms.rom_re, ai) + lut_mul_exact(roms.rom_im, ar);
    return {round_q30_to_fx16(re), round_q30_to_fx16(im)};
}

/// Q1.15 code of e^{-j 2 pi exponent / n}. Throws std::out_of_range unless
/// 0 <= exponent < n.
CFx16 quantize_twiddle(std::int64_t exponent, std::int64_t n);

}  // namespace dsfft
