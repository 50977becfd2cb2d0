#include "randmeas/identify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randmeas/parallel.hpp"

namespace randmeas {

namespace {
constexpr double kLogFloor = -745.0;
}

ObservationRecord::ObservationRecord(std::vector<std::size_t> outcomes_in,
                                     std::vector<std::string> labels_in)
    : outcomes(std::move(outcomes_in)), labels(std::move(labels_in)) {
  if (outcomes.empty()) {
    throw std::invalid_argument("ObservationRecord: needs at least one outcome");
  }
  for (std::size_t o : outcomes) {
    if (o >= labels.size()) {
      throw std::invalid_argument("ObservationRecord: outcome index out of range");
    }
  }
}

OutcomeSampler::OutcomeSampler(const OutcomeDistribution& dist) {
  cumulative_.reserve(dist.size());
  double acc = 0.0;
  for (double p : dist.probs()) {
    acc += p;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

std::size_t OutcomeSampler::sample(RngStream& rng) const {
  const double u = rng.next_uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<std::size_t>(std::min<std::ptrdiff_t>(
      it - cumulative_.begin(),
      static_cast<std::ptrdiff_t>(cumulative_.size()) - 1));
}

double log_likelihood(const ObservationRecord& obs, const OutcomeDistribution& dist) {
  if (dist.labels() != obs.labels) {
    throw std::invalid_argument("log_likelihood: label sets differ");
  }
  double sum = 0.0;
  for (std::size_t o : obs.outcomes) {
    const double p = dist.probs()[o];
    sum += p > 0.0 ? std::max(std::log(p), kLogFloor) : kLogFloor;
  }
  return sum;
}

PairwiseWinner pairwise_ml(const ObservationRecord& obs,
                           const OutcomeDistribution& p_first,
                           const OutcomeDistribution& p_second) {
  const double first = log_likelihood(obs, p_first);
  const double second = log_likelihood(obs, p_second);
  return second > first ? PairwiseWinner::second : PairwiseWinner::first;
}

std::size_t tournament_identify(const ObservationRecord& obs,
                                const std::vector<OutcomeDistribution>& candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("tournament_identify: no candidates");
  }
  std::size_t champion = 0;
  for (std::size_t next = 1; next < candidates.size(); ++next) {
    if (pairwise_ml(obs, candidates[champion], candidates[next]) ==
        PairwiseWinner::second) {
      champion = next;
    }
  }
  return champion;
}

std::size_t copies_for(std::size_t m, double delta, double c_cal) {
  if (m < 2) throw std::invalid_argument("copies_for: m must be >= 2");
  if (delta <= 0.0 || delta > 2.0) {
    throw std::invalid_argument("copies_for: delta must lie in (0, 2]");
  }
  return static_cast<std::size_t>(
      std::ceil(c_cal * std::log(static_cast<double>(m)) / (delta * delta)));
}

IdentificationReport identification_experiment(
    const Ensemble& ensemble, const MeasurementMode& mode, std::size_t runs,
    RngStream rng, unsigned threads, std::optional<std::size_t> copies_override,
    double c_cal) {
  ensemble.validate();
  const std::size_t k = ensemble.size();
  if (k < 2) {
    throw std::invalid_argument("identification_experiment: needs >= 2 states");
  }
  if (runs < 1) {
    throw std::invalid_argument("identification_experiment: runs must be >= 1");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double dist = trace_norm(ensemble.states[i].matrix() -
                                     ensemble.states[j].matrix());
      if (dist <= 1e-10) {
        throw std::invalid_argument(
            "identification_experiment: ensemble contains duplicate states");
      }
    }
  }

  RngStream povm_rng(rng.master_seed(), rng.stream_index());
  const Povm povm = draw_measurement(mode, ensemble.dim(), povm_rng);

  IdentificationReport out;
  out.candidates.reserve(k);
  for (const auto& s : ensemble.states) {
    out.candidates.push_back(measure_povm(s, povm));
  }
  double delta = 2.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      delta = std::min(delta, total_variation(out.candidates[i], out.candidates[j]));
    }
  }
  if (delta <= 0.0) {
    throw std::runtime_error(
        "identification_experiment: drawn POVM has zero distinguishing power");
  }
  out.delta = delta;
  out.copies = copies_override ? *copies_override : copies_for(k, delta, c_cal);

  std::vector<OutcomeSampler> samplers;
  samplers.reserve(k);
  for (const auto& c : out.candidates) samplers.emplace_back(c);

  out.observations.assign(runs * k, {});
  out.champions.assign(runs * k, 0);
  parallel_for(runs * k, threads, [&](std::size_t slot) {
    const std::size_t run = slot / k;
    const std::size_t state = slot % k;
    RngStream slot_rng(rng.master_seed(), rng.stream_index() + 1 + run * k + state);
    std::vector<std::size_t> outcomes(out.copies);
    for (std::size_t t = 0; t < out.copies; ++t) {
      outcomes[t] = samplers[state].sample(slot_rng);
    }
    const ObservationRecord obs(outcomes, out.candidates[state].labels());
    out.champions[slot] = tournament_identify(obs, out.candidates);
    out.observations[slot] = std::move(outcomes);
  });

  ExperimentReport& report = out.report;
  report.experiment = "identification";
  report.params = {{"mode", mode.name()},
                   {"n", std::to_string(ensemble.dim())},
                   {"k", std::to_string(k)},
                   {"c_cal", format_double(c_cal)}};
  report.seed = rng.master_seed();
  report.trials = runs * k;
  report.columns = {"run", "true_state", "champion", "success"};
  std::vector<std::size_t> successes(k, 0);
  for (std::size_t slot = 0; slot < runs * k; ++slot) {
    const std::size_t run = slot / k;
    const std::size_t state = slot % k;
    const bool ok = out.champions[slot] == state;
    if (ok) ++successes[state];
    report.rows.push_back({static_cast<double>(run), static_cast<double>(state),
                           static_cast<double>(out.champions[slot]),
                           ok ? 1.0 : 0.0});
  }
  double min_rate = 1.0;
  double total = 0.0;
  for (std::size_t state = 0; state < k; ++state) {
    const double rate = static_cast<double>(successes[state]) /
                        static_cast<double>(runs);
    report.stats.emplace_back("success_" + ensemble.names[state], rate);
    min_rate = std::min(min_rate, rate);
    total += rate;
  }
  report.stats.emplace_back("min_success", min_rate);
  report.stats.emplace_back("mean_success", total / static_cast<double>(k));
  report.stats.emplace_back("delta", delta);
  report.stats.emplace_back("copies", static_cast<double>(out.copies));
  report.pass = min_rate >= 0.75;
  return out;
}

}  // namespace randmeas
