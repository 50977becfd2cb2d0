#include "randmeas/hsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "randmeas/parallel.hpp"
#include "randmeas/quantum_meas.hpp"

namespace randmeas {

DensityMatrix coset_state(const FiniteGroup& group, const Subgroup& h) {
  const std::size_t n = group.order();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  const double weight = 1.0 / static_cast<double>(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (h.contains(group.mul(group.inverse(u), v))) {
        m(u, v) = weight;
      }
    }
  }
  DensityMatrix state(std::move(m));
  const Eigen::Index expected_rank =
      static_cast<Eigen::Index>(n / h.order());
  if (numerical_rank(state.matrix()) != expected_rank) {
    throw std::runtime_error("coset_state: rank != number of cosets");
  }
  return state;
}

ComplexMatrix FourierBlockForm::reassemble() const {
  Eigen::Index total = 0;
  for (const auto& b : blocks) total += b.dim * b.dim;
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  Eigen::Index offset = 0;
  for (const auto& b : blocks) {
    for (Eigen::Index i = 0; i < b.dim; ++i) {
      out.block(offset, offset, b.dim, b.dim) = b.block;
      offset += b.dim;
    }
  }
  return out;
}

FourierBlockForm fourier_block_form(const FiniteGroup& group,
                                    const std::vector<Irrep>& irreps,
                                    const Subgroup& h) {
  FourierBlockForm form;
  form.scale = static_cast<double>(h.order()) / static_cast<double>(group.order());
  form.blocks.reserve(irreps.size());
  for (const auto& rho : irreps) {
    FourierBlock block;
    block.irrep_label = rho.label;
    block.dim = rho.dim;
    block.block = form.scale * rho_projector(rho, group, h).conjugate();
    form.blocks.push_back(std::move(block));
  }
  return form;
}

std::vector<Eigen::Index> block_ranks(const FiniteGroup& group,
                                      const std::vector<Irrep>& irreps,
                                      const Subgroup& h) {
  std::vector<Eigen::Index> ranks;
  ranks.reserve(irreps.size());
  for (const auto& rho : irreps) {
    ranks.push_back(projector_rank(rho_projector(rho, group, h)));
  }
  return ranks;
}

CosetDistanceReport coset_trace_distance_check(const FiniteGroup& group) {
  const std::vector<Subgroup> subgroups = enumerate_subgroups(group);
  std::vector<DensityMatrix> states;
  states.reserve(subgroups.size());
  for (const auto& h : subgroups) states.push_back(coset_state(group, h));

  CosetDistanceReport report;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < subgroups.size(); ++j) {
      const double dist =
          trace_norm(states[i].matrix() - states[j].matrix());
      report.pairs.push_back({i, j, dist});
      report.min_trace_distance = std::min(report.min_trace_distance, dist);
    }
  }

  // Whenever H1 is not contained in H2, trace_norm(sigma_H1 - sigma_K) with
  // K = H1 cap H2 has the exact value 2(|H1| - |K|)/|H1|: off the shared
  // coset diagonal the two states occupy disjoint entries, and each H1-coset
  // block of the remainder is a (J - I) pattern with known spectrum.
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    for (std::size_t j = 0; j < subgroups.size(); ++j) {
      if (i == j) continue;
      const Subgroup common = intersection(group, subgroups[i], subgroups[j]);
      if (common.order() == subgroups[i].order()) continue;  // H1 <= H2
      const DensityMatrix common_state = coset_state(group, common);
      const double measured =
          trace_norm(states[i].matrix() - common_state.matrix());
      const double exact =
          2.0 *
          (static_cast<double>(subgroups[i].order()) -
           static_cast<double>(common.order())) /
          static_cast<double>(subgroups[i].order());
      report.max_exact_defect =
          std::max(report.max_exact_defect, std::abs(measured - exact));
    }
  }

  report.pass = report.min_trace_distance >= 1.0 - 1e-8 &&
                report.max_exact_defect <= 1e-8;
  return report;
}

HspInstance HspInstance::make(const FiniteGroup& group) {
  HspInstance instance{group, irreps_of(group), ComplexMatrix(), {}, {}};
  instance.qft = qft_matrix(group, instance.irreps);
  instance.subgroups = enumerate_subgroups(group);
  instance.coset_states.reserve(instance.subgroups.size());
  for (const auto& h : instance.subgroups) {
    instance.coset_states.push_back(coset_state(group, h));
  }
  return instance;
}

Povm random_fourier_povm(const HspInstance& instance, double C, RngStream& rng) {
  if (C < 1.0) {
    throw std::invalid_argument("random_fourier_povm: C must be >= 1");
  }
  const std::size_t n = instance.group.order();
  const double log2n = std::log2(static_cast<double>(n));

  Povm povm;
  povm.dim = static_cast<Eigen::Index>(n);
  Eigen::Index row_offset = 0;
  for (const auto& rho : instance.irreps) {
    const auto k_rho = static_cast<Eigen::Index>(
        std::ceil(C * log2n * log2n / static_cast<double>(rho.dim)));
    // One ancilla POVM per irrep, shared by all of its row indices.
    const Povm block_povm =
        build_random_povm_ancilla(rho.dim, std::max<Eigen::Index>(1, k_rho), rng);
    for (Eigen::Index i = 0; i < rho.dim; ++i) {
      const auto rows = instance.qft.middleRows(row_offset + i * rho.dim, rho.dim);
      for (std::size_t e = 0; e < block_povm.size(); ++e) {
        povm.elements.emplace_back(rows.adjoint() * block_povm.elements[e] * rows);
        povm.labels.push_back(rho.label + ":i" + std::to_string(i) + ":" +
                              block_povm.labels[e]);
      }
    }
    row_offset += rho.dim * rho.dim;
  }

  ComplexMatrix sum = ComplexMatrix::Zero(povm.dim, povm.dim);
  for (const auto& e : povm.elements) sum += e;
  const ComplexMatrix defect =
      sum - ComplexMatrix::Identity(povm.dim, povm.dim);
  if (defect.cwiseAbs().maxCoeff() > 1e-8) {
    throw std::runtime_error("random_fourier_povm: completeness violated");
  }
  return povm;
}

std::size_t hsp_identify(const HspInstance& instance, std::size_t hidden_index,
                         std::size_t copies, double C, RngStream& rng) {
  if (hidden_index >= instance.subgroups.size()) {
    throw std::invalid_argument("hsp_identify: hidden subgroup index out of range");
  }
  if (copies < 1) {
    throw std::invalid_argument("hsp_identify: copies must be >= 1");
  }
  const Povm povm = random_fourier_povm(instance, C, rng);
  std::vector<OutcomeDistribution> candidates;
  candidates.reserve(instance.subgroups.size());
  for (const auto& state : instance.coset_states) {
    candidates.push_back(measure_povm(state, povm));
  }
  const OutcomeSampler sampler(candidates[hidden_index]);
  std::vector<std::size_t> outcomes(copies);
  for (std::size_t t = 0; t < copies; ++t) outcomes[t] = sampler.sample(rng);
  const ObservationRecord obs(std::move(outcomes),
                              candidates[hidden_index].labels());
  return tournament_identify(obs, candidates);
}

Subgroup hsp_identify(const FiniteGroup& group, const Subgroup& hidden,
                      std::size_t copies, double C, RngStream& rng) {
  const HspInstance instance = HspInstance::make(group);
  std::size_t hidden_index = instance.subgroups.size();
  for (std::size_t i = 0; i < instance.subgroups.size(); ++i) {
    if (instance.subgroups[i] == hidden) {
      hidden_index = i;
      break;
    }
  }
  if (hidden_index == instance.subgroups.size()) {
    throw std::invalid_argument("hsp_identify: hidden set is not a known subgroup");
  }
  return instance.subgroups[hsp_identify(instance, hidden_index, copies, C, rng)];
}

ExperimentReport hsp_success_experiment(const HspInstance& instance,
                                        std::size_t runs, std::size_t copies,
                                        double C, double c_cal, RngStream rng,
                                        unsigned threads) {
  if (runs < 1) {
    throw std::invalid_argument("hsp_success_experiment: runs must be >= 1");
  }
  const std::size_t m = instance.subgroups.size();

  struct RunResult {
    std::size_t copies = 0;
    double delta = 0.0;
    std::vector<std::size_t> guesses;
  };
  std::vector<RunResult> results(runs);

  parallel_for(runs, threads, [&](std::size_t run) {
    RngStream run_rng(rng.master_seed(), rng.stream_index() + run);
    const Povm povm = random_fourier_povm(instance, C, run_rng);
    std::vector<OutcomeDistribution> candidates;
    candidates.reserve(m);
    for (const auto& state : instance.coset_states) {
      candidates.push_back(measure_povm(state, povm));
    }
    double delta = 2.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        delta = std::min(delta, total_variation(candidates[i], candidates[j]));
      }
    }
    RunResult& result = results[run];
    result.delta = delta;
    // Auto mode calibrates t to the drawn POVM; the cap keeps a freak
    // near-degenerate draw from stalling the run (it then just fails
    // identification honestly). The trivial group has a single candidate.
    if (copies > 0) {
      result.copies = copies;
    } else if (m < 2) {
      result.copies = 1;
    } else {
      result.copies = std::min<std::size_t>(
          copies_for(m, std::max(delta, 1e-6), c_cal), 200000);
    }
    result.guesses.resize(m);
    // The same draw serves every hidden subgroup: the POVM never depends
    // on which state it is measuring.
    for (std::size_t hidden = 0; hidden < m; ++hidden) {
      const OutcomeSampler sampler(candidates[hidden]);
      std::vector<std::size_t> outcomes(result.copies);
      for (std::size_t t = 0; t < result.copies; ++t) {
        outcomes[t] = sampler.sample(run_rng);
      }
      const ObservationRecord obs(std::move(outcomes), candidates[hidden].labels());
      result.guesses[hidden] = tournament_identify(obs, candidates);
    }
  });

  ExperimentReport report;
  report.experiment = "hsp-identify";
  report.params = {{"group", instance.group.family().descriptor()},
                   {"C", format_double(C)},
                   {"c_cal", format_double(c_cal)},
                   {"copies", copies > 0 ? std::to_string(copies) : "auto"}};
  report.seed = rng.master_seed();
  report.trials = runs;
  report.columns = {"copies", "delta"};
  for (std::size_t h = 0; h < m; ++h) {
    report.columns.push_back("success_H" + std::to_string(h));
  }
  std::vector<std::size_t> successes(m, 0);
  std::vector<double> copies_used;
  copies_used.reserve(runs);
  for (const auto& result : results) {
    std::vector<double> row = {static_cast<double>(result.copies), result.delta};
    for (std::size_t h = 0; h < m; ++h) {
      // Ties between identical states would also count, but distinct
      // subgroups always have distinct coset states (trace distance >= 1).
      const bool ok = result.guesses[h] == h;
      if (ok) ++successes[h];
      row.push_back(ok ? 1.0 : 0.0);
    }
    report.rows.push_back(std::move(row));
    copies_used.push_back(static_cast<double>(result.copies));
  }
  double min_rate = 1.0;
  for (std::size_t h = 0; h < m; ++h) {
    const double rate =
        static_cast<double>(successes[h]) / static_cast<double>(runs);
    report.stats.emplace_back("success_H" + std::to_string(h), rate);
    min_rate = std::min(min_rate, rate);
  }
  report.stats.emplace_back("min_success", min_rate);
  report.stats.emplace_back("t_star_median", median(copies_used));
  report.stats.emplace_back("t_star_max",
                            *std::max_element(copies_used.begin(), copies_used.end()));
  report.stats.emplace_back("subgroup_count", static_cast<double>(m));
  report.pass = min_rate >= 0.75;
  return report;
}

ExperimentReport hsp_tv_spectrum(const HspInstance& instance, double C,
                                 RngStream rng, std::size_t draws,
                                 unsigned threads) {
  if (draws < 1) {
    throw std::invalid_argument("hsp_tv_spectrum: draws must be >= 1");
  }
  const std::size_t m = instance.subgroups.size();
  if (m < 2) {
    throw std::invalid_argument("hsp_tv_spectrum: group has a single subgroup");
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<double> r_values;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      pairs.emplace_back(i, j);
      r_values.push_back(r_distance(instance.group, instance.irreps,
                                    instance.subgroups[i], instance.subgroups[j]));
    }
  }

  std::vector<std::vector<double>> tv_per_draw(draws);
  parallel_for(draws, threads, [&](std::size_t draw) {
    RngStream draw_rng(rng.master_seed(), rng.stream_index() + draw);
    const Povm povm = random_fourier_povm(instance, C, draw_rng);
    std::vector<OutcomeDistribution> dists;
    dists.reserve(m);
    for (const auto& state : instance.coset_states) {
      dists.push_back(measure_povm(state, povm));
    }
    std::vector<double>& tv = tv_per_draw[draw];
    tv.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
      tv.push_back(total_variation(dists[i], dists[j]));
    }
  });

  ExperimentReport report;
  report.experiment = "hsp-tv-spectrum";
  report.params = {{"group", instance.group.family().descriptor()},
                   {"C", format_double(C)},
                   {"draws", std::to_string(draws)}};
  report.seed = rng.master_seed();
  report.trials = draws * pairs.size();
  report.columns = {"draw", "subgroup_i", "subgroup_j", "tv", "r_distance",
                    "tv_over_r"};
  double min_ratio = std::numeric_limits<double>::infinity();
  std::size_t above = 0;
  for (std::size_t draw = 0; draw < draws; ++draw) {
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const double tv = tv_per_draw[draw][p];
      const double ratio = tv / r_values[p];
      min_ratio = std::min(min_ratio, ratio);
      if (tv >= 0.05 * r_values[p]) ++above;
      report.rows.push_back({static_cast<double>(draw),
                             static_cast<double>(pairs[p].first),
                             static_cast<double>(pairs[p].second), tv,
                             r_values[p], ratio});
    }
  }
  report.stats.emplace_back("min_ratio", min_ratio);
  report.stats.emplace_back(
      "frac_tv_ge_0.05r",
      static_cast<double>(above) / static_cast<double>(draws * pairs.size()));
  report.stats.emplace_back("pair_count", static_cast<double>(pairs.size()));
  report.pass = min_ratio > 0.0;
  return report;
}

}  // namespace randmeas
