#pragma once

// Digit slicing of a 16-bit word into four 4-bit blocks and the
// multiplier-less product built from a 16-entry possibility table.

#include <array>
#include <cstdint>

#include "dsfft/fixed_point.hpp"

namespace dsfft {

inline constexpr int kSliceBlocks = 4;
inline constexpr int kSliceBits = 4;
inline constexpr int kRomEntries = 1 << kSliceBits;

/// Four unsigned nibbles, blocks[0] least significant. Bit 3 of blocks[3] is
/// the two's-complement sign and carries weight -2^15.
struct SlicedWord
{
    std::array<std::uint8_t, kSliceBlocks> blocks{};

    friend constexpr bool operator==(const SlicedWord&, const SlicedWord&) = default;
};

constexpr bool top_block_negative(const SlicedWord& s) { return (s.blocks[3] & 0x8) != 0; }

constexpr SlicedWord slice(Fx16 x)
{
    const auto bits = static_cast<std::uint16_t>(x.code);
    SlicedWord s;
    for (int k = 0; k < kSliceBlocks; ++k)
        s.blocks[k] = static_cast<std::uint8_t>((bits >> (kSliceBits * k)) & 0xF);
    return s;
}

constexpr Fx16 unslice(const SlicedWord& s)
{
    const std::int32_t top = std::int32_t{s.blocks[3]} - (top_block_negative(s) ? 16 : 0);
    const std::int32_t code = s.blocks[0] + 16 * s.blocks[1] + 256 * s.blocks[2] + 4096 * top;
    return Fx16{static_cast<std::int16_t>(code)};
}

/// Possibility table for one twiddle component: entries[u] = w * u.
/// Entries fit in 20 bits two's complement.
struct TwiddleRom
{
    std::array<std::int32_t, kRomEntries> entries{};
    Fx16 w;
};

constexpr TwiddleRom build_rom(Fx16 w)
{
    TwiddleRom rom;
    rom.w = w;
    for (int u = 0; u < kRomEntries; ++u)
        rom.entries[u] = std::int32_t{w.code} * u;
    return rom;
}

/// Shift-and-add recombination of four table lookups. The sign of the top
/// block is applied as a post-lookup correction of w << 4, so one unsigned
/// table serves every block. Exact; scale 2^-30.
constexpr WideAcc lut_mul_exact(const TwiddleRom& rom, const SlicedWord& s)
{
    const std::int64_t top_correction = top_block_negative(s) ? (std::int64_t{rom.w.code} << 4) : 0;
    std::int64_t acc = rom.entries[s.blocks[0]];
    acc += std::int64_t{rom.entries[s.blocks[1]]} << 4;
    acc += std::int64_t{rom.entries[s.blocks[2]]} << 8;
    acc += (std::int64_t{rom.entries[s.blocks[3]]} - top_correction) << 12;
    return {acc};
}

}  // namespace dsfft
