#pragma once

/// Run configuration shared by all CLI subcommands. A declarative JSON file
/// supplies defaults; command-line flags override individual values. The
/// environment variable CAYLEY_SPECTRA_MAX_BALL overrides the ball guard.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cayley_spectra/group.hpp"
#include "cayley_spectra/partition.hpp"

namespace cayspec {

enum class Convention { adjacency, laplacian };

std::string to_string(Convention c);
Convention convention_from_string(std::string_view text); // throws ConfigError

struct RunConfig {
    int k = 2;
    std::string subgroup = "trivial";
    std::optional<InvolutiveHom> inline_hom; // used when subgroup == "inline"
    double epsilon = 0.0;
    std::vector<double> potential{0.0}; // per-coset, constant, or chain period
    std::optional<double> energy;       // chain only
    Convention convention = Convention::adjacency;
    int radius = 4;
    std::uint64_t seed = 1;
    int trials = 20; // periodicity trials per verified solution
    std::string out; // output path prefix; empty = stdout only
    std::size_t ball_guard = kDefaultBallGuard;
    std::size_t image_cap = kDefaultImageCap;

    // chain coefficients / seeds; explicit coefficients win over seeds
    std::optional<std::complex<double>> c1, c2;
    std::optional<std::complex<double>> phi0, phi1;
};

/// Defaults with the ball-guard environment override applied.
RunConfig default_config();

/// Parse the declarative JSON config text. Unknown keys are rejected.
RunConfig parse_config_json(const std::string& text);

/// Loads and parses a config file; throws ConfigError on I/O or parse errors.
RunConfig load_config_file(const std::string& path);

/// Resolve the configured subgroup: the inline homomorphism when selected,
/// otherwise the named catalog entry.
SubgroupSpec resolve_subgroup(const RunConfig& cfg);

} // namespace cayspec
