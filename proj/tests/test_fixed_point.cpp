#include "doctest.h"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

#include "dsfft/fixed_point.hpp"

using namespace dsfft;

namespace {

Fx16 code(std::int32_t c) { return Fx16{static_cast<std::int16_t>(c)}; }

}  // namespace

TEST_CASE("fx_from_real rounds to nearest and saturates")
{
    CHECK(fx_from_real(0.0).code == 0);
    CHECK(fx_from_real(0.5).code == 16384);
    CHECK(fx_from_real(1.0).code == 32767);
    CHECK(fx_from_real(-1.0).code == -32768);
    CHECK(fx_from_real(-3.0).code == -32768);
    CHECK(fx_from_real(7.5).code == 32767);
    // ties go toward +infinity
    CHECK(fx_from_real(0.5 / 32768.0).code == 1);
    CHECK(fx_from_real(-0.5 / 32768.0).code == 0);
    CHECK(fx_from_real(-1.5 / 32768.0).code == -1);
    CHECK(fx_from_real(std::nan("")).code == 0);
}

TEST_CASE("every code survives the real round trip")
{
    for (std::int32_t c = Fx16::kMinCode; c <= Fx16::kMaxCode; ++c)
        REQUIRE(fx_from_real(fx_to_real(code(c))) == code(c));
}

TEST_CASE("fx_mul_exact keeps the full product")
{
    CHECK(fx_mul_exact(code(16384), code(16384)).value == 268435456);
    CHECK(fx_mul_exact(code(0), code(-12345)).value == 0);
    CHECK(fx_mul_exact(code(-32768), code(-32768)).value == 1073741824);
}

TEST_CASE("round_q30_to_fx16")
{
    CHECK(round_q30_to_fx16({268435456}).code == 8192);
    CHECK(round_q30_to_fx16({16384}).code == 1);
    CHECK(round_q30_to_fx16({16383}).code == 0);
    CHECK(round_q30_to_fx16({-16384}).code == 0);
    CHECK(round_q30_to_fx16({-16385}).code == -1);
    CHECK(round_q30_to_fx16({1073741824}).code == 32767);
    CHECK(round_q30_to_fx16({-1073741824}).code == -32768);
}

TEST_CASE("add_halve and sub_halve")
{
    CHECK(add_halve(code(16384), code(16384)).code == 16384);
    CHECK(sub_halve(code(16384), code(16384)).code == 0);
    CHECK(add_halve(code(3), code(0)).code == 2);
    CHECK(add_halve(code(-3), code(0)).code == -1);
    CHECK(sub_halve(code(32767), code(-32768)).code == 32767);  // the one saturating pair
    CHECK(add_halve(code(-32768), code(-32768)).code == -32768);
}

TEST_CASE("rounded products stay within half an LSB of the real product")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int32_t> dist(Fx16::kMinCode, Fx16::kMaxCode);
    for (int i = 0; i < 200000; ++i) {
        const Fx16 a = code(dist(rng));
        const Fx16 b = code(dist(rng));
        if (a.code == -32768 && b.code == -32768) continue;  // +1.0 saturates
        const double exact = a.value() * b.value();
        REQUIRE(std::abs(round_q30_to_fx16(fx_mul_exact(a, b)).value() - exact) <= 0x1.0p-16);
    }
}

TEST_CASE("halving error is at most half an LSB (boundary grid and random sample)")
{
    auto check_pair = [](Fx16 a, Fx16 b) {
        const double sum = (a.value() + b.value()) / 2.0;
        const double diff = (a.value() - b.value()) / 2.0;
        const Fx16 s = add_halve(a, b);
        const Fx16 d = sub_halve(a, b);
        REQUIRE(std::abs(s.value() - sum) <= 0x1.0p-16);
        REQUIRE(std::abs(d.value() - diff) <= 0x1.0p-16);
    };

    constexpr std::array<std::int32_t, 5> boundary{-32768, -1, 0, 1, 32767};
    for (auto a : boundary)
        for (auto b : boundary) check_pair(code(a), code(b));

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int32_t> dist(Fx16::kMinCode, Fx16::kMaxCode);
    for (int i = 0; i < (1 << 20); ++i) check_pair(code(dist(rng)), code(dist(rng)));
}

TEST_CASE("rotate_minus_j swaps and negates")
{
    const CFx16 x{code(8192), code(8192)};
    CHECK(rotate_minus_j(x) == CFx16{code(8192), code(-8192)});
    CHECK(rotate_minus_j({code(0), code(16384)}) == CFx16{code(16384), code(0)});
}
