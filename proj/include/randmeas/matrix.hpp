#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace randmeas {

using Complex = std::complex<double>;

// Dense complex matrix, row-major so that .data() walks entries row by row.
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Result of a Hermitian eigendecomposition: eigenvalues in descending order,
/// eigenvector i in column i of `eigenvectors`.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Max entrywise deviation from A = A^dagger.
double hermiticity_defect(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = 1e-10);

/// Eigendecomposition of a Hermitian matrix. Eigenvalues descending,
/// eigenvector columns orthonormal. Throws std::invalid_argument on
/// non-square or non-Hermitian input.
HermitianEig hermitian_eig(const ComplexMatrix& a);

/// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Sum of singular values (for Hermitian input, sum of |eigenvalues|).
/// Throws std::invalid_argument on non-square input.
double trace_norm(const ComplexMatrix& a);

/// Entrywise l2 norm.
double frobenius_norm(const ComplexMatrix& a);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Number of singular values above tol * (largest singular value).
/// tol must be positive.
Eigen::Index numerical_rank(const ComplexMatrix& a, double tol = 1e-9);

ComplexMatrix dagger(const ComplexMatrix& a);

}  // namespace randmeas
