#pragma once

#include <string>
#include <vector>

#include "randmeas/matrix.hpp"
#include "randmeas/rng.hpp"

namespace randmeas {

/// Orthonormal vectors stored as matrix columns (a full basis when
/// count() == dim(), a fragment otherwise).
struct OrthonormalBasis {
  ComplexMatrix vectors;

  Eigen::Index dim() const { return vectors.rows(); }
  Eigen::Index count() const { return vectors.cols(); }
  /// Checks unit norms and pairwise orthogonality within tol.
  void validate(double tol = 1e-10) const;
};

/// Finite POVM: PSD elements on C^dim summing to the identity.
struct Povm {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;

  std::size_t size() const { return elements.size(); }
  /// Full check: shapes, hermiticity, element eigenvalues >= -psd_tol,
  /// completeness within completeness_tol entrywise, distinct labels.
  void validate(double completeness_tol = 1e-8, double psd_tol = 1e-9) const;
};

/// n complex entries with real and imaginary parts i.i.d. N(0, 1).
ComplexVector sample_gaussian_vector(Eigen::Index n, RngStream& rng);

/// Gaussian vector normalized to unit length (redrawn on a ~zero draw).
ComplexVector sample_unit_vector(Eigen::Index n, RngStream& rng);

/// Gram-Schmidt orthonormalization: output i is input i minus its projection
/// onto the span of the previous inputs, normalized (with a second
/// projection pass to hold orthogonality near machine precision). Prefix
/// spans are preserved and each diagonal coefficient <b'_i|b~_i> comes out
/// real positive. Throws std::runtime_error naming the offending index when
/// a residual drops below 1e-12 (linearly dependent input).
std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors);

/// Same, on matrix columns.
ComplexMatrix gram_schmidt_columns(const ComplexMatrix& columns);

/// Haar-distributed orthonormal basis: Gaussian n x n matrix, columns
/// orthonormalized by gram_schmidt. The positive-diagonal convention of
/// gram_schmidt is exactly the phase fix that makes the distribution Haar.
OrthonormalBasis sample_haar_basis(Eigen::Index n, RngStream& rng);

/// POVM from n Gaussian vectors b_i in C^n: elements b_i b_i^dag / ell plus
/// nu = I - (1/ell) sum_i b_i b_i^dag, with ell the spectral norm of the sum.
Povm build_random_povm_plain(Eigen::Index n, RngStream& rng);

/// Ancilla variant: m = K*n Gaussian vectors in C^m define the POVM above on
/// the extended space; the returned POVM on C^n compresses each element
/// through the embedding v -> v tensor |0>.
Povm build_random_povm_ancilla(Eigen::Index n, Eigen::Index K, RngStream& rng);

}  // namespace randmeas
