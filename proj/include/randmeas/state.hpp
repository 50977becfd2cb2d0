#pragma once

#include <string>
#include <vector>

#include "randmeas/matrix.hpp"

namespace randmeas {

/// Hermitian, positive semidefinite, unit-trace matrix. Validated on
/// construction: hermiticity within 1e-10 entrywise, all eigenvalues
/// >= -1e-9 (small negatives are tolerated as rounding), trace within
/// 1e-10 of 1. Immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

  static DensityMatrix pure(const ComplexVector& state);
  static DensityMatrix completely_mixed(Eigen::Index n);
  /// 1/r times the projector onto coordinates [offset, offset + r).
  static DensityMatrix mixed_on_coordinates(Eigen::Index n, Eigen::Index offset,
                                            Eigen::Index r);

 private:
  ComplexMatrix matrix_;
};

/// Probability distribution over named outcomes. Probabilities below -1e-12
/// are rejected, tiny negatives are clamped to zero, and the vector is
/// renormalized when the total is within 1e-9 of 1; larger drift is an error.
class OutcomeDistribution {
 public:
  OutcomeDistribution(std::vector<double> probs, std::vector<std::string> labels);

  std::size_t size() const { return probs_.size(); }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<double> probs_;
  std::vector<std::string> labels_;
};

/// sum_i |p_i - q_i| over a shared label set -- the un-halved l1 convention,
/// range [0, 2]. Mismatched label sets are a contract violation.
double total_variation(const OutcomeDistribution& p, const OutcomeDistribution& q);

/// Labels "0", "1", ..., n-1 for index-named outcomes.
std::vector<std::string> index_labels(std::size_t n);

}  // namespace randmeas
