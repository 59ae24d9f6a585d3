#pragma once

// Command implementations behind the `dsfft` executable: sample-file parsing,
// CSV output, ROM memory images, the verification report and the benchmark.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dsfft/cmul.hpp"
#include "dsfft/fixed_point.hpp"

namespace dsfft::cli {

enum ExitStatus : int
{
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
};

struct RunConfig
{
    std::size_t n = 16;
    MulBackend backend = MulBackend::mul4;
    std::filesystem::path input;
    std::filesystem::path output;  // empty: standard output
    std::uint64_t seed = 1;
    std::size_t frames = 100;      // verify: random frames per check
    std::uint64_t bench_steps = 1u << 20;
    bool inject_rom_fault = false;  // verify: corrupt one LUT entry before checking
};

/// Transform lengths accepted on the command line.
bool is_supported_size(std::size_t n);

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// One "re,im" sample, either decimal reals or raw "0xRRRR,0xIIII" Q1.15
/// codes, selected by the line prefix.
CFx16 parse_sample_line(std::string_view line, std::size_t line_number);

/// All samples in a stream; blank lines are skipped. Throws ParseError.
std::vector<CFx16> read_samples(std::istream& in);

/// 20-bit two's-complement ROM word as five upper-case hex digits.
std::string format_rom_word(std::int32_t entry);

/// Shortest decimal string that round-trips the double.
std::string format_real(double value);

/// Writes the CSV for whole frames: header then k,re_code,im_code,re_value,im_value.
void write_spectrum_csv(std::ostream& out, const std::vector<CFx16>& bins, std::size_t n);

int cmd_fft(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_romgen(std::size_t n, const std::filesystem::path& dir, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_bench(const RunConfig& config, std::ostream& out);

}  // namespace dsfft::cli
