#pragma once

/// The finite-index periodic eigenproblem. A K-periodic wave function is
/// constant on cosets, so the vertex equation collapses to the r x r system
/// M phi = E phi with M = Q + epsilon * diag(v). Admissible energies are the
/// roots of D_K(E) = det(M - E*I).

#include <vector>

#include <Eigen/Core>

#include "cayley_spectra/partition.hpp"

namespace cayspec {

/// One potential value per coset plus the coupling constant.
struct PeriodicPotential {
    std::vector<double> values;
    double epsilon = 0.0;
};

struct SpectralProblem {
    CosetPartition partition;
    PeriodicPotential potential;
    Eigen::MatrixXd matrix; // Q + epsilon * diag(v), symmetric
};

/// An admissible energy with its coset component vector. Components have unit
/// Euclidean norm and positive first nonzero entry; degenerate energies
/// appear once per basis vector, each carrying the cluster multiplicity.
struct SpectralSolution {
    double energy = 0.0;
    Eigen::VectorXd components;
    int multiplicity = 1;
    double residual = 0.0; // achieved ||M phi - E phi||_inf
};

/// Assembles M = Q + epsilon * diag(v). Throws std::invalid_argument on a
/// dimension mismatch or non-finite potential entries.
SpectralProblem build_problem(const CosetPartition& partition, PeriodicPotential potential);

/// Coefficients of det(A - E*I) as a polynomial in E, ascending order,
/// degree = rows(A), leading coefficient (-1)^rows(A). Integer matrices are
/// expanded in exact 64-bit arithmetic (falling back to floating point on
/// overflow).
std::vector<double> det_poly_of_matrix(const Eigen::MatrixXd& A);

/// det(M - E*I) coefficients for the assembled problem.
std::vector<double> determinant_poly(const SpectralProblem& prob);

/// All eigenpairs of a symmetric matrix, ascending, sign-normalized, with
/// cluster multiplicities; degenerate clusters are ordered lexicographically
/// by component vector.
std::vector<SpectralSolution> eigen_solutions(const Eigen::MatrixXd& A);

/// All admissible energies of the problem (the real spectrum of M).
std::vector<SpectralSolution> energies(const SpectralProblem& prob);

/// det(M - E*I) evaluated directly via LU factorization, independent of the
/// polynomial coefficients.
double evaluate_D(const SpectralProblem& prob, double E);

} // namespace cayspec
