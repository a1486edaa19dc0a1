#include "cayley_spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

namespace cayspec {

SpectralProblem build_problem(const CosetPartition& partition, PeriodicPotential potential) {
    if (static_cast<int>(potential.values.size()) != partition.r)
        throw std::invalid_argument("build_problem: potential has " +
                                    std::to_string(potential.values.size()) +
                                    " entries, partition index is " + std::to_string(partition.r));
    if (!std::isfinite(potential.epsilon))
        throw std::invalid_argument("build_problem: non-finite coupling constant");
    for (double v : potential.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("build_problem: non-finite potential entry");

    SpectralProblem prob;
    prob.matrix = partition.Q.cast<double>();
    for (int i = 0; i < partition.r; ++i)
        prob.matrix(i, i) += potential.epsilon * potential.values[static_cast<std::size_t>(i)];
    prob.partition = partition;
    prob.potential = std::move(potential);
    return prob;
}

namespace {

using Int64Matrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

bool checked_add(std::int64_t a, std::int64_t b, std::int64_t& out) {
    return !__builtin_add_overflow(a, b, &out);
}
bool checked_mul(std::int64_t a, std::int64_t b, std::int64_t& out) {
    return !__builtin_mul_overflow(a, b, &out);
}

// Faddeev-LeVerrier in exact 64-bit arithmetic. Returns false when entries
// are not integers or an intermediate overflows; the caller then falls back
// to floating point. For an integer matrix every division below is exact.
bool charpoly_int64(const Eigen::MatrixXd& A, std::vector<std::int64_t>& monic) {
    const int n = static_cast<int>(A.rows());
    Int64Matrix Ai(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double x = A(i, j);
            if (!std::isfinite(x) || std::nearbyint(x) != x || std::abs(x) > 9.0e15)
                return false;
            Ai(i, j) = static_cast<std::int64_t>(x);
        }

    monic.assign(static_cast<std::size_t>(n) + 1, 0);
    monic[static_cast<std::size_t>(n)] = 1;
    Int64Matrix N = Ai;
    for (int j = 1; j <= n; ++j) {
        std::int64_t tr = 0;
        for (int i = 0; i < n; ++i)
            if (!checked_add(tr, N(i, i), tr)) return false;
        if (tr % j != 0) return false; // exact for integer input
        const std::int64_t c = -(tr / j);
        monic[static_cast<std::size_t>(n - j)] = c;
        if (j == n) break;
        Int64Matrix shifted = N;
        for (int i = 0; i < n; ++i)
            if (!checked_add(shifted(i, i), c, shifted(i, i))) return false;
        Int64Matrix next(n, n);
        for (int row = 0; row < n; ++row)
            for (int col = 0; col < n; ++col) {
                std::int64_t acc = 0;
                for (int k = 0; k < n; ++k) {
                    std::int64_t term;
                    if (!checked_mul(Ai(row, k), shifted(k, col), term)) return false;
                    if (!checked_add(acc, term, acc)) return false;
                }
                next(row, col) = acc;
            }
        N = std::move(next);
    }
    return true;
}

std::vector<double> charpoly_double(const Eigen::MatrixXd& A) {
    const int n = static_cast<int>(A.rows());
    std::vector<double> monic(static_cast<std::size_t>(n) + 1, 0.0);
    monic[static_cast<std::size_t>(n)] = 1.0;
    Eigen::MatrixXd N = A;
    for (int j = 1; j <= n; ++j) {
        const double c = -N.trace() / j;
        monic[static_cast<std::size_t>(n - j)] = c;
        if (j == n) break;
        N = A * (N + c * Eigen::MatrixXd::Identity(n, n));
    }
    return monic;
}

void sign_normalize(Eigen::VectorXd& v) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-12) {
            if (v(i) < 0) v = -v;
            return;
        }
    }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (a(i) < b(i)) return true;
        if (a(i) > b(i)) return false;
    }
    return false;
}

} // namespace

std::vector<double> det_poly_of_matrix(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols())
        throw std::invalid_argument("det_poly_of_matrix: matrix must be square");
    const int n = static_cast<int>(A.rows());

    // p(x) = det(x*I - A) is monic; det(A - E*I) = (-1)^n p(E).
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    std::vector<std::int64_t> exact;
    if (charpoly_int64(A, exact)) {
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            coeffs[i] = sign * static_cast<double>(exact[i]);
    } else {
        std::vector<double> monic = charpoly_double(A);
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            coeffs[i] = sign * monic[i];
    }
    return coeffs;
}

std::vector<double> determinant_poly(const SpectralProblem& prob) {
    return det_poly_of_matrix(prob.matrix);
}

std::vector<SpectralSolution> eigen_solutions(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success)
        throw Error("symmetric eigensolver failed to converge");

    const int n = static_cast<int>(A.rows());
    const double scale = std::max(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
    const double cluster_tol = 1e-9 * scale;

    std::vector<SpectralSolution> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)].energy = solver.eigenvalues()(i);
        out[static_cast<std::size_t>(i)].components = solver.eigenvectors().col(i);
        sign_normalize(out[static_cast<std::size_t>(i)].components);
    }

    // Cluster equal eigenvalues, record multiplicity, order each cluster by
    // component vector.
    int begin = 0;
    while (begin < n) {
        int end = begin + 1;
        while (end < n && out[static_cast<std::size_t>(end)].energy -
                                  out[static_cast<std::size_t>(end - 1)].energy <=
                              cluster_tol)
            ++end;
        for (int i = begin; i < end; ++i)
            out[static_cast<std::size_t>(i)].multiplicity = end - begin;
        std::sort(out.begin() + begin, out.begin() + end,
                  [](const SpectralSolution& a, const SpectralSolution& b) {
                      return lex_less(a.components, b.components);
                  });
        begin = end;
    }

    for (auto& sol : out)
        sol.residual = (A * sol.components - sol.energy * sol.components).cwiseAbs().maxCoeff();
    return out;
}

std::vector<SpectralSolution> energies(const SpectralProblem& prob) {
    return eigen_solutions(prob.matrix);
}

double evaluate_D(const SpectralProblem& prob, double E) {
    const int n = static_cast<int>(prob.matrix.rows());
    Eigen::MatrixXd shifted = prob.matrix - E * Eigen::MatrixXd::Identity(n, n);
    return shifted.fullPivLu().determinant();
}

} // namespace cayspec
