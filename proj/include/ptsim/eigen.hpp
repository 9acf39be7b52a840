#ifndef PTSIM_EIGEN_HPP
#define PTSIM_EIGEN_HPP

#include <vector>

#include "ptsim/matrix.hpp"

namespace ptsim {

/// Eigenvalues of a Hermitian matrix, descending. Input must be Hermitian
/// within 1e-9 (max entry deviation). Cyclic Jacobi sweeps.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Eigenvalues of a general complex matrix via Hessenberg reduction and
/// shifted QR with deflation. Sorted by descending real part, then
/// descending imaginary part. Throws NumericalError on non-convergence.
std::vector<Complex> general_eigenvalues(const ComplexMatrix& m);

/// exp(-i h t) for Hermitian 2x2 h, by spectral decomposition.
ComplexMatrix mat_exp_2x2_hermitian(const ComplexMatrix& h, double t);

/// exp(m) for an arbitrary complex 2x2 matrix. Closed form from the
/// Cayley-Hamilton identity; nonsingular at degenerate eigenvalues.
ComplexMatrix mat_exp_2x2(const ComplexMatrix& m);

} // namespace ptsim

#endif
