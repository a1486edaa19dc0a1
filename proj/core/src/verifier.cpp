#include "cayley_spectra/verifier.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cayspec {

namespace {

// Coset labels for every ball vertex, propagated down the BFS tree.
std::vector<int> ball_coset_labels(const Ball& ball, const CosetPartition& p) {
    std::vector<int> labels(ball.size(), 0);
    for (std::size_t i = 1; i < ball.size(); ++i) {
        const auto parent = static_cast<std::size_t>(ball.parent_of(i));
        const int letter = ball.word(i).letters().back();
        labels[i] = p.transitions(labels[parent], letter - 1);
    }
    return labels;
}

ReducedWord random_reduced_word(std::mt19937_64& rng, GroupParams params, int length) {
    std::vector<int> letters;
    letters.reserve(static_cast<std::size_t>(length));
    std::uniform_int_distribution<int> first(1, params.degree());
    for (int i = 0; i < length; ++i) {
        if (letters.empty()) {
            letters.push_back(first(rng));
        } else {
            // uniform over the k letters different from the previous one
            std::uniform_int_distribution<int> step(1, params.k);
            int offset = step(rng);
            int letter = letters.back() + offset;
            if (letter > params.degree()) letter -= params.degree();
            letters.push_back(letter);
        }
    }
    return reduce(letters, params);
}

template <typename InKernel>
PeriodicityReport run_periodicity(const BallWaveFunction& w, InKernel in_kernel, int trials,
                                  std::uint64_t seed) {
    PeriodicityReport report;
    std::mt19937_64 rng(seed);
    const GroupParams params = w.ball.params();
    const int R = w.ball.radius();
    std::uniform_int_distribution<int> length_dist(1, std::max(1, 2 * R));
    std::uniform_int_distribution<std::size_t> vertex_dist(0, w.ball.size() - 1);

    constexpr int kMaxAttempts = 2000;
    for (int t = 0; t < trials; ++t) {
        bool found = false;
        for (int attempt = 0; attempt < kMaxAttempts && !found; ++attempt) {
            ReducedWord y = random_reduced_word(rng, params, length_dist(rng));
            if (!in_kernel(y)) continue;
            const ReducedWord& x = w.ball.word(vertex_dist(rng));
            const ReducedWord yx = multiply(y, x);
            const std::ptrdiff_t idx = w.ball.index_of(yx);
            if (idx < 0) continue;
            found = true;
            ++report.trials;
            const std::ptrdiff_t xi = w.ball.index_of(x);
            if (w.values[static_cast<std::size_t>(idx)] != w.values[static_cast<std::size_t>(xi)]) {
                report.pass = false;
                report.witness_y = y;
                report.witness_x = x;
                return report;
            }
        }
        if (!found)
            throw Error("check_periodicity: no kernel pair found within the radius-" +
                        std::to_string(R) + " ball; increase R");
    }
    return report;
}

} // namespace

BallWaveFunction lift_finite(const CosetPartition& p, const SpectralSolution& sol,
                             const PeriodicPotential& pot, int R, std::size_t max_vertices) {
    if (static_cast<int>(pot.values.size()) != p.r)
        throw std::invalid_argument("lift_finite: potential length does not match the index");
    if (sol.components.size() != p.r)
        throw std::invalid_argument("lift_finite: component count does not match the index");

    BallWaveFunction w{Ball(p.hom.params, R, max_vertices), {}, {}, sol.energy};
    const std::vector<int> labels = ball_coset_labels(w.ball, p);
    w.values.resize(w.ball.size());
    w.potential.resize(w.ball.size());
    for (std::size_t i = 0; i < w.ball.size(); ++i) {
        w.values[i] = Complex(sol.components(labels[i]), 0.0);
        w.potential[i] = pot.epsilon * pot.values[static_cast<std::size_t>(labels[i])];
    }
    return w;
}

namespace {

BallWaveFunction lift_chain_values(const ZProjection& zp, const ChainParams& params,
                                   std::span<const Complex> sequence, IndexRange range, int R,
                                   std::size_t max_vertices) {
    if (range.lo > -R || range.hi < R)
        throw std::invalid_argument("lift_chain: sequence range [" + std::to_string(range.lo) +
                                    ", " + std::to_string(range.hi) +
                                    "] does not cover [-R, R] for R = " + std::to_string(R));
    if (sequence.size() != static_cast<std::size_t>(range.count()))
        throw std::invalid_argument("lift_chain: sequence length does not match its range");

    BallWaveFunction w{Ball(zp.params, R, max_vertices), {}, {}, params.energy};
    w.values.resize(w.ball.size());
    w.potential.resize(w.ball.size());
    for (std::size_t i = 0; i < w.ball.size(); ++i) {
        const int n = z_coset_index(w.ball.word(i), zp);
        w.values[i] = sequence[static_cast<std::size_t>(n - range.lo)];
        w.potential[i] = params.site_potential(n);
    }
    return w;
}

} // namespace

BallWaveFunction lift_chain(const ZProjection& zp, const ChainParams& params,
                            const ChainSolution& sol, int R, std::size_t max_vertices) {
    validate(params);
    if (zp.params != params.params)
        throw std::invalid_argument("lift_chain: group parameters differ");
    const IndexRange range{-R, R};
    const std::vector<Complex> seq = general_solution(sol, range);
    return lift_chain_values(zp, params, seq, range, R, max_vertices);
}

BallWaveFunction lift_chain(const ZProjection& zp, const ChainParams& params,
                            std::span<const Complex> sequence, IndexRange range, int R,
                            std::size_t max_vertices) {
    validate(params);
    if (zp.params != params.params)
        throw std::invalid_argument("lift_chain: group parameters differ");
    return lift_chain_values(zp, params, sequence, range, R, max_vertices);
}

ResidualReport residual(const BallWaveFunction& w) {
    if (w.ball.radius() < 1)
        throw std::invalid_argument("residual: needs R >= 1 (no interior vertices)");

    ResidualReport report{0.0, w.ball.word(0), w.ball.interior_count()};
    for (std::size_t i = 0; i < w.ball.interior_count(); ++i) {
        Complex sum{0.0, 0.0};
        // parent plus contiguous children = the full neighbor set
        const std::ptrdiff_t parent = w.ball.parent_of(i);
        if (parent >= 0) sum += w.values[static_cast<std::size_t>(parent)];
        const std::size_t begin = w.ball.child_begin(i);
        const std::size_t count = w.ball.child_count(i);
        for (std::size_t c = begin; c < begin + count; ++c)
            sum += w.values[c];

        const Complex defect = sum - (w.energy - w.potential[i]) * w.values[i];
        const double value = std::abs(defect);
        if (value > report.max_residual) {
            report.max_residual = value;
            report.worst_vertex = w.ball.word(i);
        }
    }
    return report;
}

PeriodicityReport check_periodicity(const BallWaveFunction& w, const CosetPartition& p,
                                    int trials, std::uint64_t seed) {
    return run_periodicity(
        w, [&](const ReducedWord& y) { return coset_of(y, p) == 0; }, trials, seed);
}

PeriodicityReport check_periodicity(const BallWaveFunction& w, const ZProjection& zp,
                                    int trials, std::uint64_t seed) {
    return run_periodicity(
        w, [&](const ReducedWord& y) { return z_coset_index(y, zp) == 0; }, trials, seed);
}

} // namespace cayspec
