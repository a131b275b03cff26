#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "danlab/serialize.hpp"

namespace danlab::cli {

enum class Command {
    verify_surface,
    mc_spread,
    threshold,
    split,
    map_tame,
    spread_set,
    toy,
    randomize_projection,
    prescribe,
    interpolate,
};
enum class Backend { exact, approx };

const char* command_name(Command c);

// Everything a command run depends on; the seed fully determines all
// randomized output.
struct RunConfig {
    Command command = Command::verify_surface;
    std::string surface_text = "-1,0,1";
    uint64_t seed = 0;
    uint64_t samples = 100000;
    std::string input_path;   // --in (read by the CLI wrapper)
    std::string output_path;  // --out (written by the CLI wrapper)
    Backend backend = Backend::approx;
    std::vector<double> r_values{1.0};
    int nmax = 8;
    double zeta = 1000.0;
    double eps = 0.05;
    std::string toy_f = "poly:0,0,1";            // "poly:<coeffs>" or "exp-neg"
    std::vector<double> grid{10.0, 100.0, 1000.0};
    std::string axis = "x";  // randomize-projection target projection
    std::string input_json;  // contents of --in, if any
};

struct RunResult {
    int exit_code = 0;
    std::string output;  // JSON text (or CSV for mc-spread)
};

// Runs one command. Domain/usage/internal errors escape as the danlab
// exception types; the CLI wrapper maps them onto exit codes 2/64/70.
RunResult run_command(const RunConfig& cfg);

Json config_echo(const RunConfig& cfg);

}  // namespace danlab::cli
