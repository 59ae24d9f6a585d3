#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "dsfft/cmul.hpp"

using namespace dsfft;

namespace {

Fx16 code(std::int32_t c) { return Fx16{static_cast<std::int16_t>(c)}; }
CFx16 ccode(std::int32_t re, std::int32_t im) { return {code(re), code(im)}; }

// Independent reference: the exact sums are below 2^32 and therefore exact in
// double; dividing by 2^15 is exact as well, so floor(v + 0.5) is the declared
// rounding rule evaluated in floating point.
std::int32_t round_reference(double exact_q30)
{
    const double v = std::floor(exact_q30 / 32768.0 + 0.5);
    return static_cast<std::int32_t>(std::clamp(v, -32768.0, 32767.0));
}

CFx16 cmul_reference(CFx16 a, CFx16 b)
{
    const double ar = a.re.code, ai = a.im.code, br = b.re.code, bi = b.im.code;
    return ccode(round_reference(ar * br - ai * bi), round_reference(ai * br + ar * bi));
}

void require_all_agree(CFx16 a, CFx16 b)
{
    const CFx16 expected = cmul_reference(a, b);
    const TwiddleRomPair roms = build_rom_pair(b);
    REQUIRE(cmul4(a, b) == expected);
    REQUIRE(cmul3(a, b) == expected);
    REQUIRE(cmul_lut(a, roms) == expected);
}

}  // namespace

TEST_CASE("cmul examples")
{
    CHECK(cmul4(ccode(16384, 0), ccode(16384, 0)) == ccode(8192, 0));
    CHECK(cmul4(ccode(0, 16384), ccode(0, 16384)) == ccode(-8192, 0));
    // 2 * 11585 * 23170 = 536848900 -> floor(16383.33 + 0.5) = 16383; im cancels exactly
    CHECK(cmul4(ccode(11585, 11585), ccode(23170, -23170)) == ccode(16383, 0));

    for (auto [a, b] : {std::pair{ccode(16384, 0), ccode(16384, 0)}, std::pair{ccode(0, 16384), ccode(0, 16384)},
                        std::pair{ccode(11585, 11585), ccode(23170, -23170)}}) {
        CHECK(cmul3(a, b) == cmul4(a, b));
        CHECK(cmul_lut(a, build_rom_pair(b)) == cmul4(a, b));
    }
    CHECK(cmul_lut(ccode(0, 0), build_rom_pair(ccode(-12000, 31000))) == ccode(0, 0));
}

TEST_CASE("cmul3 with a_r == a_i")
{
    for (std::int32_t x : {-32768, -7, 0, 9999, 32767})
        for (std::int32_t br : {-32768, 100, 32767}) require_all_agree(ccode(x, x), ccode(br, 0));
}

TEST_CASE("backends agree on boundary codes")
{
    constexpr std::array<std::int32_t, 7> edge{-32768, -32767, -1, 0, 1, 32766, 32767};
    for (auto ar : edge)
        for (auto ai : edge)
            for (auto br : edge)
                for (auto bi : edge) require_all_agree(ccode(ar, ai), ccode(br, bi));
}

TEST_CASE("backends agree on random operands")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<std::int32_t> dist(Fx16::kMinCode, Fx16::kMaxCode);
    for (int i = 0; i < 200000; ++i)
        require_all_agree(ccode(dist(rng), dist(rng)), ccode(dist(rng), dist(rng)));
}

TEST_CASE("exhaustive a_r sweep at a fixed a_i and twiddle")
{
    const CFx16 w = quantize_twiddle(3, 16);
    const TwiddleRomPair roms = build_rom_pair(w);
    for (std::int32_t ar = Fx16::kMinCode; ar <= Fx16::kMaxCode; ++ar) {
        const CFx16 a = ccode(ar, -12345);
        REQUIRE(cmul_lut(a, roms) == cmul4(a, w));
    }
}

TEST_CASE("quantize_twiddle")
{
    CHECK(quantize_twiddle(0, 16) == ccode(32767, 0));
    CHECK(quantize_twiddle(4, 16) == ccode(0, -32768));
    CHECK(quantize_twiddle(2, 16) == ccode(23170, -23170));
    CHECK(quantize_twiddle(8, 16) == ccode(-32768, 0));
    CHECK(quantize_twiddle(12, 16) == ccode(0, 32767));
    CHECK(quantize_twiddle(1024, 4096) == ccode(0, -32768));
    CHECK_THROWS_AS(quantize_twiddle(16, 16), std::out_of_range);
    CHECK_THROWS_AS(quantize_twiddle(-1, 16), std::out_of_range);
}

TEST_CASE("unit twiddle and -j stay within one code")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int32_t> dist(-32767, Fx16::kMaxCode);
    const CFx16 one = quantize_twiddle(0, 16);
    const CFx16 minus_j = quantize_twiddle(4, 16);
    for (int i = 0; i < 100000; ++i) {
        const CFx16 a = ccode(dist(rng), dist(rng));
        const CFx16 u = cmul4(a, one);
        REQUIRE(std::abs(u.re.code - a.re.code) <= 1);
        REQUIRE(std::abs(u.im.code - a.im.code) <= 1);
        const CFx16 r = cmul4(a, minus_j);
        const CFx16 exact = rotate_minus_j(a);
        REQUIRE(std::abs(r.re.code - exact.re.code) <= 1);
        REQUIRE(std::abs(r.im.code - exact.im.code) <= 1);
    }
}

TEST_CASE("backend names")
{
    for (MulBackend b : {MulBackend::mul4, MulBackend::mul3, MulBackend::lut}) CHECK(parse_backend(to_string(b)) == b);
    CHECK_FALSE(parse_backend("fast").has_value());
}
