#include "randmeas/random_measure.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace randmeas {

void OrthonormalBasis::validate(double tol) const {
  const ComplexMatrix gram = vectors.adjoint() * vectors;
  const ComplexMatrix defect =
      gram - ComplexMatrix::Identity(gram.rows(), gram.cols());
  if (defect.cwiseAbs().maxCoeff() > tol) {
    throw std::runtime_error("OrthonormalBasis: vectors are not orthonormal");
  }
}

void Povm::validate(double completeness_tol, double psd_tol) const {
  if (elements.empty() || elements.size() != labels.size()) {
    throw std::runtime_error("Povm: elements and labels must be nonempty and match");
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const ComplexMatrix& e = elements[i];
    if (e.rows() != dim || e.cols() != dim) {
      throw std::runtime_error("Povm: element " + std::to_string(i) +
                               " has wrong dimensions");
    }
    if (hermiticity_defect(e) > 1e-10) {
      throw std::runtime_error("Povm: element " + std::to_string(i) +
                               " is not Hermitian");
    }
    if (hermitian_eig(e).eigenvalues.minCoeff() < -psd_tol) {
      throw std::runtime_error("Povm: element " + std::to_string(i) +
                               " is not positive semidefinite");
    }
    sum += e;
  }
  const ComplexMatrix defect = sum - ComplexMatrix::Identity(dim, dim);
  if (defect.cwiseAbs().maxCoeff() > completeness_tol) {
    throw std::runtime_error("Povm: elements do not sum to the identity");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw std::runtime_error("Povm: duplicate outcome label " + labels[i]);
      }
    }
  }
}

ComplexVector sample_gaussian_vector(Eigen::Index n, RngStream& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample_gaussian_vector: n must be >= 1");
  }
  ComplexVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.next_complex_gaussian();
  return v;
}

ComplexVector sample_unit_vector(Eigen::Index n, RngStream& rng) {
  for (;;) {
    ComplexVector v = sample_gaussian_vector(n, rng);
    const double norm = v.norm();
    if (norm >= 1e-300) return v / norm;
  }
}

namespace {

// Orthonormalizes `columns` in place. Two classical projection passes per
// column keep the orthogonality defect near machine precision.
void gram_schmidt_in_place(ComplexMatrix& columns) {
  const Eigen::Index count = columns.cols();
  for (Eigen::Index i = 0; i < count; ++i) {
    ComplexVector v = columns.col(i);
    const double input_norm = v.norm();
    if (i > 0) {
      const auto prefix = columns.leftCols(i);
      for (int pass = 0; pass < 2; ++pass) {
        v -= prefix * (prefix.adjoint() * v).eval();
      }
    }
    const double residual = v.norm();
    if (residual <= 1e-12 * std::max(1.0, input_norm)) {
      throw std::runtime_error("gram_schmidt: vector at index " +
                               std::to_string(i) +
                               " is linearly dependent on its predecessors");
    }
    columns.col(i) = v / residual;
  }
}

}  // namespace

std::vector<ComplexVector> gram_schmidt(const std::vector<ComplexVector>& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("gram_schmidt: empty input");
  }
  const Eigen::Index n = vectors.front().size();
  ComplexMatrix columns(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) {
      throw std::invalid_argument("gram_schmidt: inconsistent vector dimensions");
    }
    columns.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  gram_schmidt_in_place(columns);
  std::vector<ComplexVector> out;
  out.reserve(vectors.size());
  for (Eigen::Index i = 0; i < columns.cols(); ++i) out.push_back(columns.col(i));
  return out;
}

ComplexMatrix gram_schmidt_columns(const ComplexMatrix& columns) {
  ComplexMatrix out = columns;
  gram_schmidt_in_place(out);
  return out;
}

OrthonormalBasis sample_haar_basis(Eigen::Index n, RngStream& rng) {
  if (n < 1) {
    throw std::invalid_argument("sample_haar_basis: n must be >= 1");
  }
  ComplexMatrix gaussian(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    gaussian.col(col) = sample_gaussian_vector(n, rng);
  }
  gram_schmidt_in_place(gaussian);
  return OrthonormalBasis{std::move(gaussian)};
}

namespace {

// Shared tail of both POVM constructions: rank-one elements from matrix
// columns scaled by 1/ell, plus the completing element nu.
Povm povm_from_columns(const ComplexMatrix& columns, double ell) {
  const Eigen::Index dim = columns.rows();
  const Eigen::Index count = columns.cols();
  Povm povm;
  povm.dim = dim;
  povm.elements.reserve(static_cast<std::size_t>(count) + 1);
  povm.labels.reserve(static_cast<std::size_t>(count) + 1);
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < count; ++i) {
    ComplexMatrix e = (columns.col(i) * columns.col(i).adjoint()) / ell;
    sum += e;
    povm.elements.push_back(std::move(e));
    povm.labels.push_back("E" + std::to_string(i));
  }
  ComplexMatrix nu = ComplexMatrix::Identity(dim, dim) - sum;
  povm.elements.push_back(std::move(nu));
  povm.labels.push_back("nu");

  // ell is the spectral norm of the sum, so nu is PSD up to rounding;
  // this guards against a bad norm computation.
  const double nu_min = hermitian_eig(povm.elements.back()).eigenvalues.minCoeff();
  if (nu_min < -1e-9) {
    throw std::runtime_error("random povm: nu element is not PSD");
  }
  ComplexMatrix defect = sum + povm.elements.back() -
                         ComplexMatrix::Identity(dim, dim);
  if (defect.cwiseAbs().maxCoeff() > 1e-8) {
    throw std::runtime_error("random povm: completeness violated");
  }
  return povm;
}

}  // namespace

Povm build_random_povm_plain(Eigen::Index n, RngStream& rng) {
  if (n < 1) {
    throw std::invalid_argument("build_random_povm_plain: n must be >= 1");
  }
  ComplexMatrix b(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    b.col(col) = sample_gaussian_vector(n, rng);
  }
  // ell = ||sum_i b_i b_i^dag|| = ||B||^2.
  const ComplexMatrix outer_sum = b * b.adjoint();
  const double ell = spectral_norm(outer_sum);
  return povm_from_columns(b, ell);
}

Povm build_random_povm_ancilla(Eigen::Index n, Eigen::Index K, RngStream& rng) {
  if (n < 1 || K < 1) {
    throw std::invalid_argument("build_random_povm_ancilla: n and K must be >= 1");
  }
  const Eigen::Index m = n * K;
  ComplexMatrix b(m, m);
  for (Eigen::Index col = 0; col < m; ++col) {
    b.col(col) = sample_gaussian_vector(m, rng);
  }
  const ComplexMatrix outer_sum = b * b.adjoint();
  const double ell = spectral_norm(outer_sum);

  // Compress through the embedding P: C^n -> C^n (x) C^K, v -> v (x) |0>.
  // P^dag (b b^dag / ell) P keeps only the rows/columns at indices a*K, so
  // each compressed element is the outer product of the subsampled column.
  ComplexMatrix compressed(n, m);
  for (Eigen::Index a = 0; a < n; ++a) compressed.row(a) = b.row(a * K);
  return povm_from_columns(compressed, ell);
}

}  // namespace randmeas
