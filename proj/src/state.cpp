#include "randmeas/state.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace randmeas {

namespace {
constexpr double kHermTol = 1e-10;
constexpr double kEigTol = 1e-9;
constexpr double kTraceTol = 1e-10;
constexpr double kProbTol = 1e-12;
constexpr double kSumTol = 1e-9;
}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
  }
  if (hermiticity_defect(matrix_) > kHermTol) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  const HermitianEig eig = hermitian_eig(matrix_);
  if (eig.eigenvalues.minCoeff() < -kEigTol) {
    throw std::invalid_argument("DensityMatrix: matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& state) {
  const double norm = state.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("DensityMatrix::pure: zero state vector");
  }
  const ComplexVector unit = state / norm;
  return DensityMatrix(ComplexMatrix(unit * unit.adjoint()));
}

DensityMatrix DensityMatrix::completely_mixed(Eigen::Index n) {
  return DensityMatrix(
      ComplexMatrix(ComplexMatrix::Identity(n, n) / static_cast<double>(n)));
}

DensityMatrix DensityMatrix::mixed_on_coordinates(Eigen::Index n,
                                                  Eigen::Index offset,
                                                  Eigen::Index r) {
  if (r <= 0 || offset < 0 || offset + r > n) {
    throw std::invalid_argument(
        "DensityMatrix::mixed_on_coordinates: subspace out of range");
  }
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = offset; i < offset + r; ++i) {
    m(i, i) = Complex(1.0 / static_cast<double>(r), 0.0);
  }
  return DensityMatrix(std::move(m));
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> probs,
                                         std::vector<std::string> labels)
    : probs_(std::move(probs)), labels_(std::move(labels)) {
  if (probs_.empty() || probs_.size() != labels_.size()) {
    throw std::invalid_argument(
        "OutcomeDistribution: probs and labels must be nonempty and match");
  }
  double sum = 0.0;
  for (double& p : probs_) {
    if (p < -kProbTol) {
      throw std::invalid_argument("OutcomeDistribution: negative probability");
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol) {
    throw std::invalid_argument("OutcomeDistribution: probabilities sum to " +
                                std::to_string(sum) + ", not 1");
  }
  for (double& p : probs_) p /= sum;
}

double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  if (p.labels() != q.labels()) {
    throw std::invalid_argument("total_variation: outcome label sets differ");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sum += std::abs(p.probs()[i] - q.probs()[i]);
  }
  return sum;
}

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

}  // namespace randmeas
