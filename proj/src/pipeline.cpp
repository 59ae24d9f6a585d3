#include "dsfft/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>

namespace dsfft {

ButterflyUnit::ButterflyUnit(ButterflyKind kind, std::size_t feedback_length)
    : kind_(kind), feedback_(feedback_length)
{
    if (feedback_length == 0) throw std::invalid_argument("butterfly feedback length must be positive");
}

CFx16 ButterflyUnit::step(CFx16 input, bool compute, bool rotate)
{
    CFx16& slot = feedback_[head_];
    head_ = head_ + 1 == feedback_.size() ? 0 : head_ + 1;

    const CFx16 d = slot;
    if (!compute) {
        slot = input;
        return d;
    }

    CFx16 sum;
    CFx16 diff;
    if (rotate && kind_ == ButterflyKind::type2) {
        // d +/- (-j)x: the swap-mux feeds x.im to the real adder and x.re to the
        // imaginary one, with add and subtract exchanged on the imaginary side.
        sum = {add_halve(d.re, input.im), sub_halve(d.im, input.re)};
        diff = {sub_halve(d.re, input.im), add_halve(d.im, input.re)};
    } else {
        sum = {add_halve(d.re, input.re), add_halve(d.im, input.im)};
        diff = {sub_halve(d.re, input.re), sub_halve(d.im, input.im)};
    }
    slot = diff;
    return sum;
}

void ButterflyUnit::clear()
{
    std::fill(feedback_.begin(), feedback_.end(), CFx16{});
    head_ = 0;
}

CFx16 bf1_step(ButterflyUnit& unit, CFx16 input, bool c1)
{
    if (unit.kind() != ButterflyKind::type1) throw std::invalid_argument("bf1_step on a type-2 butterfly");
    return unit.step(input, c1);
}

CFx16 bf2_step(ButterflyUnit& unit, CFx16 input, bool c1, bool c2)
{
    if (unit.kind() != ButterflyKind::type2) throw std::invalid_argument("bf2_step on a type-1 butterfly");
    return unit.step(input, c1, c1 && c2);
}

std::size_t bit_reverse(std::size_t k, int bits)
{
    if (bits < 0 || bits >= 64 || (k >> bits) != 0)
        throw std::out_of_range("bit_reverse: " + std::to_string(k) + " does not fit in " +
                                std::to_string(bits) + " bits");
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
        r = (r << 1) | (k & 1u);
        k >>= 1;
    }
    return r;
}

bool is_power_of_four(std::size_t n)
{
    return n >= 4 && std::has_single_bit(n) && std::countr_zero(n) % 2 == 0;
}

namespace {

int log2_of(std::size_t n) { return std::countr_zero(n); }

}  // namespace

std::optional<std::int64_t> twiddle_exponent(std::size_t position, int stage, std::size_t n)
{
    if (!is_power_of_four(n)) throw std::out_of_range("twiddle_exponent: n must be a power of four");
    const int stages = log2_of(n) / 2;
    if (stage < 1 || stage >= stages)
        throw std::out_of_range("twiddle_exponent: stage " + std::to_string(stage) + " has no multiplier");
    if (position >= n) throw std::out_of_range("twiddle_exponent: position outside frame");

    const int local_bits = log2_of(n) - 2 * (stage - 1);
    const std::size_t local = position & ((std::size_t{1} << local_bits) - 1);
    const std::size_t k1 = (local >> (local_bits - 1)) & 1u;
    const std::size_t k2 = (local >> (local_bits - 2)) & 1u;
    const std::size_t n3 = local & ((std::size_t{1} << (local_bits - 2)) - 1);

    const auto exponent = static_cast<std::int64_t>((n3 * (k1 + 2 * k2)) << (2 * (stage - 1)));
    if (exponent == 0) return std::nullopt;
    return exponent;
}

std::vector<std::int64_t> pipeline_twiddle_exponents(std::size_t n)
{
    if (!is_power_of_four(n)) throw std::invalid_argument("n must be a power of four");
    std::vector<std::int64_t> out;
    const int stages = log2_of(n) / 2;
    for (int s = 1; s < stages; ++s)
        for (std::size_t p = 0; p < (n >> (2 * (s - 1))); ++p)
            out.push_back(twiddle_exponent(p, s, n).value_or(0));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Pipeline::Pipeline(std::size_t n, MulBackend backend) : n_(n), mask_(n - 1), backend_(backend)
{
    if (!is_power_of_four(n))
        throw std::invalid_argument("transform length " + std::to_string(n) + " is not a power of four");

    const int stages = log2_of(n) / 2;
    std::size_t delay = 0;
    for (int s = 1; s <= stages; ++s) {
        const std::size_t l1 = n >> (2 * s - 1);
        const std::size_t l2 = n >> (2 * s);
        Stage stage{ButterflyUnit(ButterflyKind::type1, l1), ButterflyUnit(ButterflyKind::type2, l2),
                    delay, delay + l1, delay + l1 + l2, std::nullopt};
        delay += l1 + l2;

        if (s < stages) {
            const std::size_t local = n >> (2 * (s - 1));
            Multiplier m;
            m.mask = local - 1;
            m.slot.assign(local, -1);
            std::map<std::int64_t, std::int32_t> slot_of;
            for (std::size_t p = 0; p < local; ++p) {
                const auto e = twiddle_exponent(p, s, n);
                if (!e) continue;
                auto [it, inserted] = slot_of.try_emplace(*e, static_cast<std::int32_t>(m.twiddles.size()));
                if (inserted) {
                    const CFx16 w = quantize_twiddle(*e, static_cast<std::int64_t>(n));
                    m.twiddles.push_back(w);
                    m.roms.push_back(build_rom_pair(w));
                }
                m.slot[p] = it->second;
            }
            stage.multiplier = std::move(m);
        }
        stages_.push_back(std::move(stage));
    }
}

namespace {

bool at_rail(Fx16 v) { return v.code == Fx16::kMaxCode || v.code == Fx16::kMinCode; }

bool exceeds_q15(WideAcc acc)
{
    const std::int64_t code = (acc.value + (std::int64_t{1} << 14)) >> 15;
    return code > Fx16::kMaxCode || code < Fx16::kMinCode;
}

}  // namespace

CFx16 Pipeline::multiply(const Multiplier& m, std::size_t position, CFx16 x)
{
    const std::int32_t slot = m.slot[position & m.mask];
    if (slot < 0) return x;
    const CFx16 w = m.twiddles[slot];
    CFx16 y;
    switch (backend_) {
    case MulBackend::mul4: y = cmul4(x, w); break;
    case MulBackend::mul3: y = cmul3(x, w); break;
    case MulBackend::lut: y = cmul_lut(x, m.roms[slot]); break;
    }
    // Only a result on a rail can have been clamped; confirm against the exact sums.
    if (at_rail(y.re) || at_rail(y.im)) {
        const WideAcc re = fx_mul_exact(x.re, w.re) - fx_mul_exact(x.im, w.im);
        const WideAcc im = fx_mul_exact(x.im, w.re) + fx_mul_exact(x.re, w.im);
        if (exceeds_q15(re) || exceeds_q15(im)) ++saturations_;
    }
    return y;
}

std::optional<CFx16> Pipeline::step(CFx16 input)
{
    const std::size_t t = static_cast<std::size_t>(steps_);
    CFx16 x = input;
    for (Stage& st : stages_) {
        const std::size_t l1 = st.bf1.feedback_length();
        const std::size_t p1 = (t - st.bf1_delay) & mask_;
        x = bf1_step(st.bf1, x, (p1 & l1) != 0);

        const std::size_t l2 = st.bf2.feedback_length();
        const std::size_t p2 = (t - st.bf2_delay) & mask_;
        x = bf2_step(st.bf2, x, (p2 & l2) != 0, (p2 & (2 * l2)) != 0);

        if (st.multiplier) x = multiply(*st.multiplier, (t - st.mul_delay) & mask_, x);
    }
    ++steps_;
    if (t < latency()) return std::nullopt;
    return x;
}

void Pipeline::reset()
{
    for (Stage& st : stages_) {
        st.bf1.clear();
        st.bf2.clear();
    }
    steps_ = 0;
    saturations_ = 0;
}

std::vector<CFx16> Pipeline::fft_frame(std::span<const CFx16> frame)
{
    if (frame.size() != n_)
        throw std::invalid_argument("frame length " + std::to_string(frame.size()) + " does not match n = " +
                                    std::to_string(n_));
    reset();
    const int bits = log2_of(n_);
    std::vector<CFx16> out(n_);
    std::size_t emitted = 0;
    auto collect = [&](std::optional<CFx16> y) {
        if (y) {
            out[bit_reverse(emitted, bits)] = *y;
            ++emitted;
        }
    };
    for (const CFx16& x : frame) collect(step(x));
    while (emitted < n_) collect(step(CFx16{}));
    return out;
}

std::span<TwiddleRomPair> Pipeline::stage_roms(int stage)
{
    if (stage < 1 || stage > stage_count() || !stages_[stage - 1].multiplier)
        throw std::out_of_range("stage " + std::to_string(stage) + " has no multiplier");
    return stages_[stage - 1].multiplier->roms;
}

}  // namespace dsfft
