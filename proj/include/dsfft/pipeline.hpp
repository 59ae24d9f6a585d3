#pragma once

// Streaming radix-2^2 single-path delay feedback (SDF) DIF FFT.
//
// An n = 4^m point transform is a chain of m stages. Stage s (1-based) is
//
//   BF-I (feedback n / 2^(2s-1)) -> BF-II (feedback n / 2^(2s)) -> twiddle multiplier
//
// and the last stage has no multiplier. Every butterfly halves its outputs, so
// the pipeline emits X[k] / n, in bit-reversed k order, one sample per step
// after a priming latency of n - 1 steps.
//
// Control schedule. Each unit sees the frame position p = (t - D) mod n of the
// sample on its input, where t is the global step counter and D is the sum of
// the feedback lengths upstream of the unit. With L the unit's feedback length:
//
//   BF-I   c1 = bit log2(L) of p          (0: fill, 1: compute)
//   BF-II  c1 = bit log2(L) of p
//          c2 = bit log2(2L) of p         (1: sample is a BF-I difference, k1 = 1)
//
// BF-II applies -j to its second-half input when c1 = c2 = 1. Because D is a
// multiple of 2L for BF-I and congruent to 2L mod 4L for BF-II, this is
// equivalently c1 = bit log2(L) of t for both units and c2 = NOT bit log2(2L) of t.
//
// The multiplier after stage s sees position p mod M, M = n / 4^(s-1), whose
// bits split as [k1 | k2 | n3] (k1 the MSB, n3 the low log2(M) - 2 bits), and
// multiplies by W_M^(n3 (k1 + 2 k2)) = W_n^(4^(s-1) n3 (k1 + 2 k2)).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dsfft/cmul.hpp"
#include "dsfft/fixed_point.hpp"

namespace dsfft {

enum class ButterflyKind
{
    type1,  ///< plain radix-2 sum/difference
    type2,  ///< radix-2 with the trivial -j rotation
};

/// One SDF butterfly and its feedback register file (a ring buffer of fixed
/// length).
class ButterflyUnit
{
public:
    ButterflyUnit(ButterflyKind kind, std::size_t feedback_length);

    ButterflyKind kind() const { return kind_; }
    std::size_t feedback_length() const { return feedback_.size(); }

    /// Oldest stored sample, i.e. the one the next step will consume.
    CFx16 front() const { return feedback_[head_]; }

    /// Advances one step. `rotate` requests the -j input rotation and is only
    /// honoured in compute mode.
    CFx16 step(CFx16 input, bool compute, bool rotate = false);

    void clear();

private:
    ButterflyKind kind_;
    std::vector<CFx16> feedback_;
    std::size_t head_ = 0;
};

/// Butterfly I step. Throws std::invalid_argument for a type-2 unit.
CFx16 bf1_step(ButterflyUnit& unit, CFx16 input, bool c1);

/// Butterfly II step; -j applies when c1 and c2 are both set. Throws
/// std::invalid_argument for a type-1 unit.
CFx16 bf2_step(ButterflyUnit& unit, CFx16 input, bool c1, bool c2);

/// Reverses the low `bits` bits of k. Throws std::out_of_range if k >= 2^bits.
std::size_t bit_reverse(std::size_t k, int bits);

/// Twiddle exponent, in units of W_n, applied after stage `stage` to the sample
/// at frame position `position`. nullopt means the exponent is zero and the
/// sample passes through unmultiplied. Throws std::out_of_range unless
/// 1 <= stage < log4(n) and position < n.
std::optional<std::int64_t> twiddle_exponent(std::size_t position, int stage, std::size_t n);

/// True when n is one of 4, 16, 64, ...
bool is_power_of_four(std::size_t n);

/// Distinct twiddle exponents (including 0) used anywhere in an n-point pipeline,
/// ascending.
std::vector<std::int64_t> pipeline_twiddle_exponents(std::size_t n);

class Pipeline
{
public:
    /// Throws std::invalid_argument unless n is a power of four.
    explicit Pipeline(std::size_t n, MulBackend backend = MulBackend::mul4);

    std::size_t size() const { return n_; }
    int stage_count() const { return static_cast<int>(stages_.size()); }
    MulBackend backend() const { return backend_; }
    std::size_t latency() const { return n_ - 1; }
    std::uint64_t steps() const { return steps_; }

    /// Twiddle products whose exact value fell outside Q1.15 and were clamped,
    /// counted since construction or the last reset().
    std::uint64_t saturation_events() const { return saturations_; }

    /// Feeds one natural-order input sample. Returns the next bit-reversed
    /// output once primed (from step n - 1 onward).
    std::optional<CFx16> step(CFx16 input);

    /// Clears every feedback register and the step counter.
    void reset();

    /// Transforms one frame in isolation and returns X[k] / n in natural order.
    /// Resets the pipeline first. Throws std::invalid_argument on a length
    /// mismatch.
    std::vector<CFx16> fft_frame(std::span<const CFx16> frame);

    /// Test hook: mutable access to the LUT tables of stage `stage` (1-based).
    std::span<TwiddleRomPair> stage_roms(int stage);

private:
    struct Multiplier
    {
        std::size_t mask = 0;                  // local length M - 1
        std::vector<std::int32_t> slot;        // per local position, -1 = pass
        std::vector<CFx16> twiddles;           // per slot
        std::vector<TwiddleRomPair> roms;      // per slot
    };

    struct Stage
    {
        ButterflyUnit bf1;
        ButterflyUnit bf2;
        std::size_t bf1_delay;  // upstream feedback sum seen by BF-I
        std::size_t bf2_delay;
        std::size_t mul_delay;
        std::optional<Multiplier> multiplier;
    };

    CFx16 multiply(const Multiplier& m, std::size_t position, CFx16 x);

    std::size_t n_;
    std::size_t mask_;
    MulBackend backend_;
    std::vector<Stage> stages_;
    std::uint64_t steps_ = 0;
    std::uint64_t saturations_ = 0;
};

}  // namespace dsfft
