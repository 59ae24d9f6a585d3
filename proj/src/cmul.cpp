#include "dsfft/cmul.hpp"

#include <numbers>
#include <stdexcept>
#include <string>

namespace dsfft {

std::string_view to_string(MulBackend backend)
{
    switch (backend) {
    case MulBackend::mul4: return "mul4";
    case MulBackend::mul3: return "mul3";
    case MulBackend::lut: return "lut";
    }
    return "unknown";
}

std::optional<MulBackend> parse_backend(std::string_view name)
{
    if (name == "mul4") return MulBackend::mul4;
    if (name == "mul3") return MulBackend::mul3;
    if (name == "lut") return MulBackend::lut;
    return std::nullopt;
}

CFx16 quantize_twiddle(std::int64_t exponent, std::int64_t n)
{
    if (n <= 0 || exponent < 0 || exponent >= n)
        throw std::out_of_range("twiddle exponent " + std::to_string(exponent) + " outside [0, " +
                                std::to_string(n) + ")");
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(exponent) / static_cast<double>(n);
    return {fx_from_real(std::cos(angle)), fx_from_real(-std::sin(angle))};
}

}  // namespace dsfft
