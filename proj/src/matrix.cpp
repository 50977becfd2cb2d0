#include "randmeas/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace randmeas {

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermiticity_defect: matrix is not square");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

HermitianEig hermitian_eig(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("hermitian_eig: matrix is not square");
  }
  if (!is_hermitian(a)) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
  }
  // Eigen returns ascending order; flip to descending.
  const Eigen::Index n = a.rows();
  HermitianEig out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
  }
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& a) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

double trace_norm(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("trace_norm: matrix is not square");
  }
  // The Hermitian case covers states and their differences and keeps full
  // eigensolver accuracy; general matrices go through the SVD.
  if (is_hermitian(a)) {
    return hermitian_eig(a).eigenvalues.cwiseAbs().sum();
  }
  double sum = 0.0;
  for (double s : singular_values(a)) sum += s;
  return sum;
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

double spectral_norm(const ComplexMatrix& a) {
  if (a.size() == 0) return 0.0;
  // Largest eigenvalue of A^dagger A; avoids a full SVD.
  const ComplexMatrix gram =
      a.rows() >= a.cols() ? ComplexMatrix(a.adjoint() * a)
                           : ComplexMatrix(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("spectral_norm: eigensolver failed to converge");
  }
  const double top = solver.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

Eigen::Index numerical_rank(const ComplexMatrix& a, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("numerical_rank: tol must be positive");
  }
  const std::vector<double> sv = singular_values(a);
  // A matrix whose largest singular value sits at rounding-noise level is
  // rank zero; a purely relative cutoff would count the noise itself.
  if (sv.empty() || sv.front() <= 1e-12) return 0;
  const double cutoff = tol * sv.front();
  return static_cast<Eigen::Index>(
      std::count_if(sv.begin(), sv.end(), [&](double s) { return s > cutoff; }));
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

}  // namespace randmeas
