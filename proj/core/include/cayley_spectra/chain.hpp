#pragma once

/// The infinite-index case: cosets of the kernel of the two-generator
/// projection are indexed by the integers, and a periodic wave function
/// collapses to the three-term recurrence
///
///     (E - eps*v_n) phi_n = phi_{n-1} + (k-1) phi_n + phi_{n+1},  n in Z.
///
/// For a constant potential the general solution is phi_n = C1 l1^n + C2 l2^n
/// with l1, l2 the roots of l^2 + (k-1+eps*v0-E) l + 1 = 0; the double-root
/// case uses the standard (C1 + C2*n) l^n basis.

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cayley_spectra/group.hpp"

namespace cayspec {

using Complex = std::complex<double>;

/// Inclusive integer interval.
struct IndexRange {
    int lo = 0;
    int hi = 0;

    int count() const { return hi - lo + 1; }
    bool contains(int n) const { return lo <= n && n <= hi; }
};

struct ChainParams {
    GroupParams params;            // k
    double epsilon = 0.0;
    std::vector<double> potential; // period p >= 1; v_n = potential[n mod p]
    double energy = 0.0;

    bool constant_potential() const { return potential.size() == 1; }
    /// eps * v_n with the index wrapped into [0, p).
    double site_potential(int n) const;
};

void validate(const ChainParams& params);

enum class ChainRegime {
    oscillatory, // conjugate pair on the unit circle, |E - (k-1) - eps*v0| < 2
    degenerate,  // double root +-1, boundary case
    hyperbolic   // real reciprocal pair, unbounded on one side
};

struct ChainSolution {
    Complex lambda1, lambda2; // lambda1 * lambda2 = 1
    Complex c1, c2;
    bool degenerate = false;
};

/// Roots of the characteristic quadratic, ordered by (|lambda|, then
/// argument). Requires a constant potential.
std::pair<Complex, Complex> characteristic_roots(const ChainParams& params);

ChainRegime classify(const ChainParams& params);
ChainRegime classify(const ChainSolution& sol);

/// Bundles roots and coefficients; flags the double-root case.
ChainSolution make_chain_solution(const ChainParams& params, Complex c1, Complex c2);

/// phi_n over the range: C1 l1^n + C2 l2^n, or (C1 + C2 n) l^n when
/// degenerate. Throws OverflowError before |lambda|^|n| leaves double range.
std::vector<Complex> general_solution(const ChainSolution& sol, IndexRange range);

/// Forward/backward iteration of the recurrence from seeds phi_0, phi_1.
/// Works for periodic non-constant potentials, which the closed form does
/// not cover. The range must contain {0, 1}.
std::vector<Complex> solve_recurrence(const ChainParams& params, Complex phi0, Complex phi1,
                                      IndexRange range);

struct FitResult {
    Complex c1, c2;
    bool degenerate = false;      // routed to the (C1 + C2 n) lambda^n basis
    bool ill_conditioned = false; // 0 < |lambda1 - lambda2| < 1e-8
};

/// Coefficients matching the seeds: C1 + C2 = phi_0 and
/// C1 l1 + C2 l2 = phi_1 (non-degenerate), or C1 = phi_0,
/// (C1 + C2) l = phi_1 (degenerate).
FitResult fit_coefficients(Complex lambda1, Complex lambda2, Complex phi0, Complex phi1);

/// True when the sequence is bounded on both sides (|lambda| = 1, and in the
/// degenerate case C2 = 0). Otherwise phi is a pointwise solution only and
/// never square-summable.
bool is_bounded(const ChainSolution& sol);

} // namespace cayspec
