#pragma once

// Eigenvalue machinery for stochastic matrices: a symmetric (Jacobi) path
// for reversible chains and a Hessenberg + Francis QR path for everything
// else. SLEM is always taken over moduli.

#include "mplex/matrix.hpp"
#include "mplex/netcore.hpp"
#include "mplex/stochastic.hpp"

#include <complex>
#include <vector>

namespace mplex {

enum class SpectralMethod { symmetric, nonsymmetric };

struct SpectralSummary {
    /// Sorted by descending modulus, ties broken by descending real part.
    std::vector<std::complex<double>> eigenvalues;
    Vector moduli;
    /// Second largest eigenvalue modulus; 1 when the top modulus is repeated.
    double slem = 0.0;
    SpectralMethod method = SpectralMethod::symmetric;
};

struct SymmetricEigen {
    Vector values;   // descending
    Matrix vectors;  // column j pairs with values[j]; empty unless requested
};

/// Cyclic Jacobi. Stops when the off-diagonal Frobenius norm is at most
/// 1e-13 * ||S||_F; throws ConvergenceError after 100 sweeps.
SymmetricEigen jacobi_eigen(const Matrix& s, bool want_vectors = false);
Vector symmetric_eigenvalues(const Matrix& s);

/// All eigenvalues of a general real matrix (balancing, Householder
/// Hessenberg reduction, Francis double-shift QR). Throws ConvergenceError
/// (with the matrix hash) when 100 * N QR iterations are exceeded.
std::vector<std::complex<double>> general_eigenvalues(const Matrix& m);

/// S = D^{-1/2} W D^{-1/2}; exactly symmetric, similar to the transition matrix.
Matrix symmetrize(const LayerGraph& layer);

SpectralSummary slem_reversible(const LayerGraph& layer);
SpectralSummary eig_moduli_nonsymmetric(const TransitionMatrix& m);
/// SLEM of a transition matrix via the nonsymmetric path.
double slem(const TransitionMatrix& m);

/// v^T S v / v^T v. Throws InvalidArgument for the zero vector.
double rayleigh_quotient(const Matrix& s, std::span<const double> v);

/// Builds a summary from raw eigenvalues (sorting, moduli, SLEM convention).
SpectralSummary summarize(std::vector<std::complex<double>> eigenvalues, SpectralMethod method);

}  // namespace mplex
