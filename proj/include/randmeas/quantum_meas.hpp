#pragma once

#include <string>
#include <vector>

#include "randmeas/random_measure.hpp"
#include "randmeas/report.hpp"
#include "randmeas/rng.hpp"
#include "randmeas/state.hpp"

namespace randmeas {

/// Named collection of equal-dimension states.
struct Ensemble {
  std::vector<DensityMatrix> states;
  std::vector<std::string> names;

  Eigen::Index dim() const { return states.front().dim(); }
  std::size_t size() const { return states.size(); }
  void validate() const;
};

/// Born rule for a basis measurement: p_t = <b_t| sigma |b_t>.
OutcomeDistribution measure_basis(const DensityMatrix& sigma,
                                  const OrthonormalBasis& basis);

/// Born rule for a POVM: p_i = Tr(sigma E_i).
OutcomeDistribution measure_povm(const DensityMatrix& sigma, const Povm& povm);

/// The rank-one projector POVM of a full orthonormal basis.
Povm povm_from_basis(const OrthonormalBasis& basis);

/// Minimum pairwise total variation the measurement induces on the ensemble.
double distinguishing_power(const Povm& povm, const Ensemble& ensemble);

enum class MeasurementKind { haar_basis, povm_plain, povm_ancilla };

struct MeasurementMode {
  MeasurementKind kind = MeasurementKind::haar_basis;
  Eigen::Index ancilla_k = 1;  // K for povm_ancilla

  std::string name() const;
  /// Accepts "haar-basis", "povm-plain", "povm-ancilla" (K given separately).
  static MeasurementMode parse(const std::string& text, Eigen::Index k = 1);
};

/// Draws one measurement of the requested kind and returns it as a POVM.
Povm draw_measurement(const MeasurementMode& mode, Eigen::Index dim, RngStream& rng);

/// Monte Carlo distribution of TV(M(s1), M(s2)) / f over `trials`
/// independent draws of the random measurement, where
/// f = frobenius_norm(s1 - s2). Trial i uses the stream
/// (rng.master_seed(), rng.stream_index() + i). Throws on a degenerate
/// pair (f < 1e-12).
ExperimentReport frobenius_tv_experiment(const DensityMatrix& s1,
                                         const DensityMatrix& s2,
                                         const MeasurementMode& mode,
                                         std::size_t trials, RngStream rng,
                                         unsigned threads = 1);

}  // namespace randmeas
