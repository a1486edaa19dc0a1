// cayley-spectra: periodic wave functions of the discrete Schrödinger
// operator on Cayley trees. Subcommands: partition | spectrum | chain |
// verify. Exit codes: 0 = all checks pass, 1 = verification failure,
// 2 = configuration error.

#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayley_spectra/commands.hpp"

namespace {

using cayspec::Complex;
using cayspec::ConfigError;
using cayspec::RunConfig;

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw ConfigError("bad numeric list entry '" + token + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty numeric list");
    return out;
}

Complex parse_complex(const std::string& text) {
    const std::vector<double> parts = parse_double_list(text);
    if (parts.size() == 1) return {parts[0], 0.0};
    if (parts.size() == 2) return {parts[0], parts[1]};
    throw ConfigError("expected 're' or 're,im', got '" + text + "'");
}

struct FlagSet {
    std::string config_path;
    int k = 0;
    std::string subgroup, potential, convention, out;
    double epsilon = 0.0, energy = 0.0;
    int radius = 0, trials = 0;
    std::uint64_t seed = 0;
    std::string c1, c2, phi0, phi1;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--config", flags.config_path, "Declarative JSON config file");
    cmd->add_option("--k", flags.k, "Tree order (vertex degree is k+1)");
    cmd->add_option("--subgroup", flags.subgroup,
                    "Subgroup spec: trivial|even|hA:i,j|hpair:i,j|hcap|zM:i,j|inline");
    cmd->add_option("--epsilon", flags.epsilon, "Coupling constant");
    cmd->add_option("--potential", flags.potential,
                    "Potential: single value or comma list (per coset / chain period)");
    cmd->add_option("--energy", flags.energy, "Energy E (chain command)");
    cmd->add_option("--radius", flags.radius, "Ball radius / chain half-range");
    cmd->add_option("--convention", flags.convention, "adjacency (default) or laplacian");
    cmd->add_option("--seed", flags.seed, "64-bit seed for randomized checks");
    cmd->add_option("--trials", flags.trials, "Periodicity trials per verified solution");
    cmd->add_option("--out", flags.out, "Output path prefix (<out>.json, <out>.csv)");
    cmd->add_option("--c1", flags.c1, "Chain coefficient C1 as 're' or 're,im'");
    cmd->add_option("--c2", flags.c2, "Chain coefficient C2 as 're' or 're,im'");
    cmd->add_option("--phi0", flags.phi0, "Chain seed phi_0");
    cmd->add_option("--phi1", flags.phi1, "Chain seed phi_1");
}

RunConfig merge(const CLI::App* cmd, const FlagSet& flags) {
    RunConfig cfg = flags.config_path.empty() ? cayspec::default_config()
                                              : cayspec::load_config_file(flags.config_path);
    if (cmd->count("--k")) cfg.k = flags.k;
    if (cmd->count("--subgroup")) cfg.subgroup = flags.subgroup;
    if (cmd->count("--epsilon")) cfg.epsilon = flags.epsilon;
    if (cmd->count("--potential")) cfg.potential = parse_double_list(flags.potential);
    if (cmd->count("--energy")) cfg.energy = flags.energy;
    if (cmd->count("--radius")) cfg.radius = flags.radius;
    if (cmd->count("--convention"))
        cfg.convention = cayspec::convention_from_string(flags.convention);
    if (cmd->count("--seed")) cfg.seed = flags.seed;
    if (cmd->count("--trials")) cfg.trials = flags.trials;
    if (cmd->count("--out")) cfg.out = flags.out;
    if (cmd->count("--c1")) cfg.c1 = parse_complex(flags.c1);
    if (cmd->count("--c2")) cfg.c2 = parse_complex(flags.c2);
    if (cmd->count("--phi0")) cfg.phi0 = parse_complex(flags.phi0);
    if (cmd->count("--phi1")) cfg.phi1 = parse_complex(flags.phi1);
    return cfg;
}

void emit(const cayspec::CommandResult& result, const RunConfig& cfg) {
    if (cfg.out.empty()) {
        std::cout << result.report_json;
        return;
    }
    std::ofstream json_out(cfg.out + ".json");
    if (!json_out) throw ConfigError("cannot write '" + cfg.out + ".json'");
    json_out << result.report_json;
    if (!result.csv.empty()) {
        std::ofstream csv_out(cfg.out + ".csv");
        if (!csv_out) throw ConfigError("cannot write '" + cfg.out + ".csv'");
        csv_out << result.csv;
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic wave functions of discrete Schrödinger operators on Cayley trees"};
    app.require_subcommand(1);

    FlagSet flags;
    std::string verify_input;
    CLI::App* partition = app.add_subcommand("partition", "Coset structure and the Q matrix");
    CLI::App* spectrum = app.add_subcommand("spectrum", "Admissible energies and components");
    CLI::App* chain = app.add_subcommand("chain", "Infinite-index integer-chain solutions");
    CLI::App* verify = app.add_subcommand("verify", "Re-verify a spectrum/chain report on a ball");
    for (CLI::App* cmd : {partition, spectrum, chain, verify}) add_common_flags(cmd, flags);
    verify->add_option("input", verify_input, "Prior spectrum/chain JSON report")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        cayspec::CommandResult result;
        RunConfig cfg;
        if (partition->parsed()) {
            cfg = merge(partition, flags);
            result = cayspec::cmd_partition(cfg);
        } else if (spectrum->parsed()) {
            cfg = merge(spectrum, flags);
            result = cayspec::cmd_spectrum(cfg);
        } else if (chain->parsed()) {
            cfg = merge(chain, flags);
            result = cayspec::cmd_chain(cfg);
        } else {
            cfg = merge(verify, flags);
            result = cayspec::cmd_verify(cfg, read_file(verify_input));
        }
        emit(result, cfg);
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
