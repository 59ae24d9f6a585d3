// dsfft: command-line front end for the fixed-point radix-2^2 SDF FFT simulator.
//
//   dsfft fft    --n 16 --backend lut --in samples.txt [--out spectrum.csv]
//   dsfft romgen --n 16 --dir roms/
//   dsfft verify --n 16 [--seed 1]
//   dsfft bench  --n 256 --backend mul3

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dsfft/cli.hpp"

namespace {

void add_size_option(CLI::App* cmd, std::size_t& n)
{
    cmd->add_option("--n", n, "Transform length (4, 16, 64, 256, 1024, 4096)")
        ->check(CLI::IsMember({4, 16, 64, 256, 1024, 4096}));
}

void add_backend_option(CLI::App* cmd, std::string& backend)
{
    cmd->add_option("--backend", backend, "Complex multiplier: mul4, mul3 or lut")
        ->check(CLI::IsMember({"mul4", "mul3", "lut"}));
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace dsfft::cli;

    CLI::App app{"Bit-exact radix-2^2 SDF FFT simulator with digit-sliced multiplier-less twiddles"};
    app.require_subcommand(1);

    RunConfig config;
    std::string backend = "mul4";
    std::string dir;

    auto* fft = app.add_subcommand("fft", "Transform whole frames from a sample file into a CSV spectrum");
    add_size_option(fft, config.n);
    add_backend_option(fft, backend);
    fft->add_option("--in", config.input, "Input samples, one 're,im' per line")->required();
    fft->add_option("--out", config.output, "Output CSV (default: stdout)");

    auto* romgen = app.add_subcommand("romgen", "Write twiddle possibility tables as hex memory images");
    add_size_option(romgen, config.n);
    romgen->add_option("--dir", dir, "Output directory")->required();

    auto* verify = app.add_subcommand("verify", "Run the equivalence and oracle checks");
    add_size_option(verify, config.n);
    add_backend_option(verify, backend);
    verify->add_option("--seed", config.seed, "Seed for the random frames");
    verify->add_flag("--inject-rom-fault", config.inject_rom_fault)->group("");

    auto* bench = app.add_subcommand("bench", "Measure software streaming throughput");
    add_size_option(bench, config.n);
    add_backend_option(bench, backend);
    bench->add_option("--seed", config.seed, "Seed for the input frame");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    config.backend = *dsfft::parse_backend(backend);

    if (fft->parsed()) return cmd_fft(config, std::cout, std::cerr);
    if (romgen->parsed()) return cmd_romgen(config.n, dir, std::cerr);
    if (verify->parsed()) return cmd_verify(config, std::cout);
    if (bench->parsed()) return cmd_bench(config, std::cout);
    return kExitUsage;
}
