#pragma once

/// Subcommand implementations behind the CLI: partition | spectrum | chain |
/// verify. Each produces a deterministic JSON report (byte-identical under a
/// fixed seed) plus a CSV table, and an exit code: 0 = all checks pass,
/// 1 = verification failure. Configuration errors are thrown as ConfigError
/// and map to exit code 2.

#include <string>

#include "cayley_spectra/chain.hpp"
#include "cayley_spectra/config.hpp"
#include "cayley_spectra/spectrum.hpp"
#include "cayley_spectra/verifier.hpp"

namespace cayspec {

struct CommandResult {
    std::string report_json;
    std::string csv; // empty when the command has no tabular output
    int exit_code = 0;
};

/// Coset structure report: r, coset representatives and images, Q, Q(H_0),
/// N(H_0). Requires a finite-index subgroup spec.
CommandResult cmd_partition(const RunConfig& cfg);

/// Admissible energies with components and residuals, plus the determinant
/// polynomial. Exit code 0 iff every solver residual check passes.
CommandResult cmd_spectrum(const RunConfig& cfg);

/// Characteristic roots, classification and the sequence phi_n over
/// [-radius, radius]. Requires a zM subgroup spec.
CommandResult cmd_chain(const RunConfig& cfg);

/// Re-verifies a prior spectrum/chain report: lift onto a radius-R ball,
/// vertex-equation residual, periodicity spot check. Exit code 0 iff pass.
CommandResult cmd_verify(const RunConfig& cfg, const std::string& solution_json);

// Reconstruction of emitted reports (round-trip support, used by verify).

struct SpectrumDoc {
    int k = 2;
    std::string subgroup;
    Convention convention = Convention::adjacency;
    CosetPartition partition;
    PeriodicPotential potential; // as emitted (user-facing convention)
    std::vector<double> d_coefficients;
    std::vector<SpectralSolution> solutions;
};

struct ChainDoc {
    std::string subgroup;
    Convention convention = Convention::adjacency;
    ZProjection projection;
    ChainParams params;          // as emitted (user-facing convention)
    bool closed_form = false;
    ChainSolution solution;      // valid when closed_form
    Complex phi0, phi1;          // valid when !closed_form
    IndexRange range;
    std::vector<Complex> sequence;
};

SpectrumDoc parse_spectrum_report(const std::string& json_text);
ChainDoc parse_chain_report(const std::string& json_text);

} // namespace cayspec
