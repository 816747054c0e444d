#pragma once

#include "musa/types.hpp"

namespace musa {

struct EigenDecomposition {
  Vector eigenvalues;   // descending
  Matrix eigenvectors;  // orthonormal columns, column j pairs with eigenvalues[j]
};

// Symmetric eigendecomposition by cyclic Jacobi rotations.
//
// Stops when the off-diagonal Frobenius norm drops below 1e-12 relative to
// the input norm; at most 100 sweeps. Eigenvalues come back descending and
// each eigenvector is signed so its largest-magnitude entry is positive
// (ties broken by the lowest index).
//
// Throws PreconditionError for non-square or non-symmetric input and
// ConvergenceError (carrying the residual) if the sweep cap is exhausted.
EigenDecomposition symmetric_eigendecomposition(const Matrix& m);

// V * diag(sqrt(max(lambda, 0))) * V^T. Rejects matrices with an eigenvalue
// below -1e-10 * max(1, lambda_max) as not positive semidefinite.
Matrix symmetric_sqrt(const Matrix& m);

}  // namespace musa
