#include "randmeas/quantum_meas.hpp"

#include <cmath>
#include <stdexcept>

#include "randmeas/parallel.hpp"

namespace randmeas {

void Ensemble::validate() const {
  if (states.empty() || states.size() != names.size()) {
    throw std::invalid_argument("Ensemble: states and names must be nonempty and match");
  }
  for (const auto& s : states) {
    if (s.dim() != states.front().dim()) {
      throw std::invalid_argument("Ensemble: state dimensions differ");
    }
  }
}

OutcomeDistribution measure_basis(const DensityMatrix& sigma,
                                  const OrthonormalBasis& basis) {
  if (sigma.dim() != basis.dim()) {
    throw std::invalid_argument("measure_basis: dimension mismatch");
  }
  const ComplexMatrix mapped = sigma.matrix() * basis.vectors;
  std::vector<double> probs(static_cast<std::size_t>(basis.count()));
  for (Eigen::Index t = 0; t < basis.count(); ++t) {
    probs[static_cast<std::size_t>(t)] =
        basis.vectors.col(t).dot(mapped.col(t)).real();
  }
  return OutcomeDistribution(std::move(probs),
                             index_labels(static_cast<std::size_t>(basis.count())));
}

OutcomeDistribution measure_povm(const DensityMatrix& sigma, const Povm& povm) {
  if (sigma.dim() != povm.dim) {
    throw std::invalid_argument("measure_povm: dimension mismatch");
  }
  std::vector<double> probs(povm.size());
  for (std::size_t i = 0; i < povm.size(); ++i) {
    // Tr(sigma E) = sum_{a,b} sigma(a,b) E(b,a).
    probs[i] =
        (sigma.matrix().transpose().cwiseProduct(povm.elements[i])).sum().real();
  }
  return OutcomeDistribution(std::move(probs), povm.labels);
}

Povm povm_from_basis(const OrthonormalBasis& basis) {
  if (basis.count() != basis.dim()) {
    throw std::invalid_argument("povm_from_basis: basis is not complete");
  }
  Povm povm;
  povm.dim = basis.dim();
  for (Eigen::Index t = 0; t < basis.count(); ++t) {
    povm.elements.emplace_back(basis.vectors.col(t) *
                               basis.vectors.col(t).adjoint());
    povm.labels.push_back(std::to_string(t));
  }
  return povm;
}

double distinguishing_power(const Povm& povm, const Ensemble& ensemble) {
  ensemble.validate();
  if (ensemble.size() < 2) {
    throw std::invalid_argument("distinguishing_power: ensemble has fewer than two states");
  }
  std::vector<OutcomeDistribution> dists;
  dists.reserve(ensemble.size());
  for (const auto& s : ensemble.states) dists.push_back(measure_povm(s, povm));
  double min_tv = 2.0;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (std::size_t j = i + 1; j < dists.size(); ++j) {
      min_tv = std::min(min_tv, total_variation(dists[i], dists[j]));
    }
  }
  return min_tv;
}

std::string MeasurementMode::name() const {
  switch (kind) {
    case MeasurementKind::haar_basis: return "haar-basis";
    case MeasurementKind::povm_plain: return "povm-plain";
    case MeasurementKind::povm_ancilla:
      return "povm-ancilla(K=" + std::to_string(ancilla_k) + ")";
  }
  return "?";
}

MeasurementMode MeasurementMode::parse(const std::string& text, Eigen::Index k) {
  MeasurementMode mode;
  mode.ancilla_k = k;
  if (text == "haar-basis") mode.kind = MeasurementKind::haar_basis;
  else if (text == "povm-plain") mode.kind = MeasurementKind::povm_plain;
  else if (text == "povm-ancilla") mode.kind = MeasurementKind::povm_ancilla;
  else throw std::invalid_argument("unknown measurement mode: " + text);
  if (mode.kind == MeasurementKind::povm_ancilla && k < 1) {
    throw std::invalid_argument("povm-ancilla requires K >= 1");
  }
  return mode;
}

Povm draw_measurement(const MeasurementMode& mode, Eigen::Index dim, RngStream& rng) {
  switch (mode.kind) {
    case MeasurementKind::haar_basis:
      return povm_from_basis(sample_haar_basis(dim, rng));
    case MeasurementKind::povm_plain:
      return build_random_povm_plain(dim, rng);
    case MeasurementKind::povm_ancilla:
      return build_random_povm_ancilla(dim, mode.ancilla_k, rng);
  }
  throw std::logic_error("draw_measurement: unreachable");
}

ExperimentReport frobenius_tv_experiment(const DensityMatrix& s1,
                                         const DensityMatrix& s2,
                                         const MeasurementMode& mode,
                                         std::size_t trials, RngStream rng,
                                         unsigned threads) {
  if (trials < 1) {
    throw std::invalid_argument("frobenius_tv_experiment: trials must be >= 1");
  }
  if (s1.dim() != s2.dim()) {
    throw std::invalid_argument("frobenius_tv_experiment: dimension mismatch");
  }
  const double f = frobenius_norm(s1.matrix() - s2.matrix());
  if (f < 1e-12) {
    throw std::invalid_argument(
        "frobenius_tv_experiment: degenerate pair (Frobenius distance ~ 0)");
  }

  std::vector<double> tv(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    if (mode.kind == MeasurementKind::haar_basis) {
      const OrthonormalBasis basis = sample_haar_basis(s1.dim(), trial_rng);
      tv[i] = total_variation(measure_basis(s1, basis), measure_basis(s2, basis));
    } else {
      const Povm povm = draw_measurement(mode, s1.dim(), trial_rng);
      tv[i] = total_variation(measure_povm(s1, povm), measure_povm(s2, povm));
    }
  });

  ExperimentReport report;
  report.experiment = "frobenius-tv";
  report.params = {{"mode", mode.name()},
                   {"n", std::to_string(s1.dim())}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.columns = {"tv", "tv_over_f"};
  report.rows.reserve(trials);
  std::vector<double> ratios;
  ratios.reserve(trials);
  for (double v : tv) {
    report.rows.push_back({v, v / f});
    ratios.push_back(v / f);
  }
  double min_ratio = ratios.front();
  for (double r : ratios) min_ratio = std::min(min_ratio, r);
  const double med = median(ratios);
  report.stats = {{"f", f}, {"min_ratio", min_ratio}, {"median_ratio", med}};
  for (double threshold : {0.01, 0.05, 0.10, 0.25}) {
    std::size_t above = 0;
    for (double r : ratios) {
      if (r >= threshold) ++above;
    }
    report.stats.emplace_back(
        "frac_ratio_ge_" + format_double(threshold),
        static_cast<double>(above) / static_cast<double>(trials));
  }
  return report;
}

}  // namespace randmeas
