#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace sptk {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Tolerance for algebraic identities (projections, grading, real structure).
inline constexpr double kAlgebraTol = 1e-9;
/// Tolerance for equivalence and intertwining checks, one order looser.
inline constexpr double kEquivalenceTol = 1e-8;
/// Relative gap below which eigenvalues are treated as degenerate.
inline constexpr double kDegeneracyTol = 1e-7;

ComplexMatrix identity(Eigen::Index n);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry modulus; 0 for an empty matrix.
double max_abs(const ComplexMatrix& m);

// Residuals are max-entry moduli of the defining identity.
double hermitian_residual(const ComplexMatrix& m);
double unitary_residual(const ComplexMatrix& m);
double projection_residual(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_unitary(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_projection(const ComplexMatrix& m, double tol = kAlgebraTol);

struct HermitianEigen {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // columns are orthonormal eigenvectors
};

/// Eigendecomposition m = V diag(values) V*. Throws not_hermitian when the
/// symmetry residual exceeds tol * max(1, max_abs(m)).
HermitianEigen hermitian_eig(const ComplexMatrix& m, double tol = kAlgebraTol);

/// Largest singular value. Works for rectangular input.
double operator_norm(const ComplexMatrix& m);

/// max |lambda| of a Hermitian matrix; cheaper than the SVD route.
double hermitian_norm(const ComplexMatrix& m);

struct JointDiagonalization {
  ComplexMatrix basis;                     // unitary, columns grouped by joint eigenspace
  std::vector<ComplexVector> diagonals;    // diag(basis* m basis) per input matrix
};

/// Joint eigenbasis of a commuting family of normal matrices, by recursive
/// splitting of eigenspaces (gap threshold kDegeneracyTol relative to the
/// family's norm). Throws not_commuting / not_normal beyond tol (relative).
JointDiagonalization simultaneous_diagonalize(std::span<const ComplexMatrix> ms,
                                              double tol = kEquivalenceTol);

/// Haar-ish random unitary: QR of a complex Gaussian with phase fix.
ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng);
ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng);

/// Permutation matrix with column j = e_{perm[j]}, i.e. P e_j = e_{perm[j]}.
ComplexMatrix permutation_matrix(std::span<const int> perm);

}  // namespace sptk
