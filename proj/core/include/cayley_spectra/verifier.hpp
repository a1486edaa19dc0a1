#pragma once

/// Independent end-to-end check: lift a claimed periodic solution onto a
/// finite ball of the tree and verify the vertex equation
///
///     sum_{y ~ x} phi(y) = (E - eps*v(x)) phi(x)
///
/// at every interior vertex (boundary vertices lack neighbors and are
/// excluded, not zero-padded), plus the periodicity definition
/// phi(y x) = phi(x) for kernel elements y.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cayley_spectra/chain.hpp"
#include "cayley_spectra/group.hpp"
#include "cayley_spectra/partition.hpp"
#include "cayley_spectra/spectrum.hpp"

namespace cayspec {

/// A wave function and potential sampled on every vertex of a ball.
struct BallWaveFunction {
    Ball ball;
    std::vector<Complex> values;    // one per ball vertex, BFS order
    std::vector<double> potential;  // eps*v(x) per vertex
    double energy = 0.0;
};

/// phi(x) = components[coset_of(x)] and eps*v(x) = eps*v[coset_of(x)] on a
/// radius-R ball.
BallWaveFunction lift_finite(const CosetPartition& p, const SpectralSolution& sol,
                             const PeriodicPotential& pot, int R,
                             std::size_t max_vertices = kDefaultBallGuard);

/// phi(x) = phi_n with n the integer coset label of x, from the closed form.
BallWaveFunction lift_chain(const ZProjection& zp, const ChainParams& params,
                            const ChainSolution& sol, int R,
                            std::size_t max_vertices = kDefaultBallGuard);

/// Same, from an explicitly tabulated sequence; the range must cover
/// [-R, R] (a radius-R ball only meets classes with |n| <= R).
BallWaveFunction lift_chain(const ZProjection& zp, const ChainParams& params,
                            std::span<const Complex> sequence, IndexRange range, int R,
                            std::size_t max_vertices = kDefaultBallGuard);

struct ResidualReport {
    double max_residual = 0.0;
    ReducedWord worst_vertex;      // BFS-least among ties
    std::size_t interior_count = 0;
};

/// Max vertex-equation defect over interior vertices. Requires R >= 1.
ResidualReport residual(const BallWaveFunction& w);

struct PeriodicityReport {
    bool pass = true;
    int trials = 0;
    std::optional<ReducedWord> witness_y; // failing kernel element, if any
    std::optional<ReducedWord> witness_x;
};

/// Draws `trials` random pairs (y, x) with y a kernel element found by
/// rejection over words of length <= 2R and y*x inside the ball, and checks
/// phi(y x) = phi(x) exactly. Throws Error when the ball is too small to
/// supply kernel elements (increase R).
PeriodicityReport check_periodicity(const BallWaveFunction& w, const CosetPartition& p,
                                    int trials, std::uint64_t seed);

/// Infinite-index analogue: kernel elements are words whose projection is
/// trivial (integer label 0).
PeriodicityReport check_periodicity(const BallWaveFunction& w, const ZProjection& zp,
                                    int trials, std::uint64_t seed);

} // namespace cayspec
