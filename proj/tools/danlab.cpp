// danlab: reproducible experiments on Danielewski surfaces {xy = P(z)}.
// One command per process; machine-readable JSON/CSV output only.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "danlab/cli_runner.hpp"

namespace {

using danlab::cli::Backend;
using danlab::cli::Command;
using danlab::cli::RunConfig;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw danlab::UsageError("cannot read input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

uint64_t env_seed_fallback() {
    if (const char* env = std::getenv("DANLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw danlab::UsageError("DANLAB_SEED must be a 64-bit unsigned decimal");
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and Monte Carlo computations on Danielewski surfaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    bool seed_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--surface", cfg.surface_text,
                        "surface polynomial P, coefficients low-to-high");
        sub->add_option("--seed", cfg.seed, "RNG seed (fallback: DANLAB_SEED env)")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--samples", cfg.samples, "Monte Carlo sample count");
        sub->add_option("--in", cfg.input_path, "input JSON file");
        sub->add_option("--out", cfg.output_path, "output file (default: stdout)");
        sub->add_option("--backend", cfg.backend, "scalar backend")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, Backend>{{"exact", Backend::exact},
                                               {"approx", Backend::approx}}));
        sub->add_option("--r", cfg.r_values, "ball radius / radii (comma list ok)")
            ->delimiter(',');
        sub->add_option("--nmax", cfg.nmax, "threshold schedule length");
        sub->add_option("--zeta", cfg.zeta, "default escape target");
        sub->add_option("--eps", cfg.eps, "toy verdict epsilon");
        sub->add_option("--f", cfg.toy_f, "toy family: poly:<coeffs> or exp-neg");
        sub->add_option("--grid", cfg.grid, "radius grid (comma list ok)")->delimiter(',');
        sub->add_option("--axis", cfg.axis, "projection axis (x or y)")
            ->check(CLI::IsMember({"x", "y", "X", "Y"}));
    };

    std::map<std::string, Command> cmds{
        {"verify-surface", Command::verify_surface},
        {"mc-spread", Command::mc_spread},
        {"threshold", Command::threshold},
        {"split", Command::split},
        {"map-tame", Command::map_tame},
        {"spread-set", Command::spread_set},
        {"toy", Command::toy},
        {"randomize-projection", Command::randomize_projection},
        {"prescribe", Command::prescribe},
        {"interpolate", Command::interpolate},
    };
    for (auto& [name, cmd] : cmds) {
        auto* sub = app.add_subcommand(name);
        add_common(sub);
        sub->callback([&cfg, c = cmd] { cfg.command = c; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (!seed_given) cfg.seed = env_seed_fallback();
        if (!cfg.input_path.empty()) cfg.input_json = read_file(cfg.input_path);
        const auto result = danlab::cli::run_command(cfg);
        if (cfg.output_path.empty()) {
            std::cout << result.output;
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) throw danlab::UsageError("cannot write output file: " + cfg.output_path);
            out << result.output;
        }
        return result.exit_code;
    } catch (const danlab::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 64;
    } catch (const danlab::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const danlab::InternalError& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
}
