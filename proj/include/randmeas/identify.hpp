#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "randmeas/quantum_meas.hpp"
#include "randmeas/report.hpp"
#include "randmeas/rng.hpp"
#include "randmeas/state.hpp"

namespace randmeas {

/// t observed outcomes of one POVM, as indices into a shared label set.
struct ObservationRecord {
  std::vector<std::size_t> outcomes;
  std::vector<std::string> labels;

  ObservationRecord(std::vector<std::size_t> outcomes_in,
                    std::vector<std::string> labels_in);
};

/// Inverse-CDF sampler for repeated draws from one distribution.
class OutcomeSampler {
 public:
  explicit OutcomeSampler(const OutcomeDistribution& dist);
  std::size_t sample(RngStream& rng) const;

 private:
  std::vector<double> cumulative_;
};

/// Log-likelihood of the observations under dist, with zero-probability
/// outcomes contributing the floor value -745 (smallest representable
/// exponent) instead of -inf.
double log_likelihood(const ObservationRecord& obs, const OutcomeDistribution& dist);

enum class PairwiseWinner { first, second };

/// Maximum-likelihood comparison of two candidate distributions on the same
/// observations. Ties go to the first (lower-index) candidate.
PairwiseWinner pairwise_ml(const ObservationRecord& obs,
                           const OutcomeDistribution& p_first,
                           const OutcomeDistribution& p_second);

/// Champion-style minimum finding: m-1 sequential pairwise_ml comparisons,
/// current champion against the next candidate.
std::size_t tournament_identify(const ObservationRecord& obs,
                                const std::vector<OutcomeDistribution>& candidates);

/// ceil(c_cal * ln(m) / delta^2) copies for an m-way identification at
/// distinguishing power delta. Requires m >= 2 and 0 < delta <= 2.
std::size_t copies_for(std::size_t m, double delta, double c_cal = 16.0);

struct IdentificationReport {
  ExperimentReport report;   // one row per (run, state)
  double delta = 0.0;        // measured distinguishing power of the drawn POVM
  std::size_t copies = 0;    // t actually used
  std::vector<OutcomeDistribution> candidates;
  /// Raw outcome indices per (run, state), indexed run * k + state;
  /// kept so tests can replay the tournament against independent oracles.
  std::vector<std::vector<std::size_t>> observations;
  std::vector<std::size_t> champions;  // same indexing
};

/// Draws one random POVM (stream rng.stream_index()), measures the
/// distinguishing power delta it achieves on the ensemble, takes
/// t = copies_for(k, delta, c_cal) unless overridden, then for every state
/// and every run samples t outcomes ((run, state) uses stream
/// rng.stream_index() + 1 + run*k + state) and identifies by tournament.
IdentificationReport identification_experiment(
    const Ensemble& ensemble, const MeasurementMode& mode, std::size_t runs,
    RngStream rng, unsigned threads = 1,
    std::optional<std::size_t> copies_override = std::nullopt,
    double c_cal = 16.0);

}  // namespace randmeas
