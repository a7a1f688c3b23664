#include "sptk/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sptk/errors.hpp"

namespace sptk {

ComplexMatrix identity(Eigen::Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b + b * a;
}

double max_abs(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermitian_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return max_abs(m - m.adjoint());
}

double unitary_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  const auto n = m.rows();
  return std::max(max_abs(m * m.adjoint() - identity(n)), max_abs(m.adjoint() * m - identity(n)));
}

double projection_residual(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return INFINITY;
  return std::max(max_abs(m * m - m), hermitian_residual(m));
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermitian_residual(m) <= tol; }
bool is_unitary(const ComplexMatrix& m, double tol) { return unitary_residual(m) <= tol; }
bool is_projection(const ComplexMatrix& m, double tol) { return projection_residual(m) <= tol; }

HermitianEigen hermitian_eig(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::shape_mismatch, "hermitian_eig needs a square matrix");
  }
  const double residual = hermitian_residual(m);
  if (residual > tol * std::max(1.0, max_abs(m))) {
    throw Error(ErrorCode::not_hermitian, "symmetry residual " + std::to_string(residual));
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double operator_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

double hermitian_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

namespace {

// Hermitian generators whose joint eigenbasis diagonalizes the normal family:
// N = H + iS with H, S Hermitian and commuting.
std::vector<ComplexMatrix> hermitian_family(std::span<const ComplexMatrix> ms) {
  std::vector<ComplexMatrix> out;
  for (const auto& m : ms) {
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    ComplexMatrix s = (m - m.adjoint()) / Complex(0.0, 2.0);
    if (max_abs(h) > 0.0) out.push_back(std::move(h));
    if (max_abs(s) > 0.0) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

JointDiagonalization simultaneous_diagonalize(std::span<const ComplexMatrix> ms, double tol) {
  if (ms.empty()) {
    throw Error(ErrorCode::invalid_argument, "simultaneous_diagonalize needs at least one matrix");
  }
  const auto n = ms.front().rows();
  double scale = 1.0;
  for (const auto& m : ms) {
    if (m.rows() != n || m.cols() != n) {
      throw Error(ErrorCode::shape_mismatch, "family members must be square of equal size");
    }
    scale = std::max(scale, operator_norm(m));
  }
  const double bound = tol * scale * scale;
  for (std::size_t a = 0; a < ms.size(); ++a) {
    const double normality = max_abs(commutator(ms[a], ms[a].adjoint()));
    if (normality > bound) {
      throw Error(ErrorCode::not_normal, "matrix " + std::to_string(a) + " is not normal (residual " +
                                             std::to_string(normality) + ")");
    }
    for (std::size_t b = a + 1; b < ms.size(); ++b) {
      const double r = max_abs(commutator(ms[a], ms[b]));
      if (r > bound) {
        throw Error(ErrorCode::not_commuting, "matrices " + std::to_string(a) + " and " +
                                                  std::to_string(b) + " do not commute (residual " +
                                                  std::to_string(r) + ")");
      }
    }
  }

  const double gap = kDegeneracyTol * scale;
  std::vector<ComplexMatrix> blocks{identity(n)};
  for (const auto& h : hermitian_family(ms)) {
    std::vector<ComplexMatrix> next;
    for (const auto& v : blocks) {
      if (v.cols() == 1) {
        next.push_back(v);
        continue;
      }
      ComplexMatrix compressed = v.adjoint() * h * v;
      compressed = 0.5 * (compressed + compressed.adjoint());
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(compressed);
      const auto& ev = solver.eigenvalues();
      Eigen::Index start = 0;
      for (Eigen::Index i = 1; i <= ev.size(); ++i) {
        if (i == ev.size() || ev(i) - ev(i - 1) > gap) {
          next.push_back(v * solver.eigenvectors().middleCols(start, i - start));
          start = i;
        }
      }
    }
    blocks = std::move(next);
  }

  JointDiagonalization out;
  out.basis.resize(n, n);
  Eigen::Index col = 0;
  for (const auto& v : blocks) {
    out.basis.middleCols(col, v.cols()) = v;
    col += v.cols();
  }
  for (const auto& m : ms) {
    out.diagonals.push_back((out.basis.adjoint() * m * out.basis).diagonal());
  }
  return out;
}

ComplexMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix z(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
  }
  return 0.5 * (z + z.adjoint());
}

ComplexMatrix permutation_matrix(std::span<const int> perm) {
  const auto n = static_cast<Eigen::Index>(perm.size());
  ComplexMatrix p = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) p(perm[static_cast<std::size_t>(j)], j) = 1.0;
  return p;
}

}  // namespace sptk
