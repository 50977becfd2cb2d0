#include "randmeas/cli.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "randmeas/concentration.hpp"
#include "randmeas/hsp.hpp"
#include "randmeas/identify.hpp"
#include "randmeas/parallel.hpp"
#include "randmeas/quantum_meas.hpp"

namespace randmeas {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number for " + what + ": " + s);
  }
}

std::size_t to_count(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v < 0 || v != std::floor(v)) {
    throw std::invalid_argument("bad count for " + what + ": " + s);
  }
  return static_cast<std::size_t>(v);
}

struct PairKind {
  enum class Kind { random_pure, orthogonal_pure, mixed_rank } kind;
  Eigen::Index rank = 1;
};

PairKind parse_pair_kind(const std::string& text) {
  if (text == "random-pure") return {PairKind::Kind::random_pure, 1};
  if (text == "orthogonal-pure") return {PairKind::Kind::orthogonal_pure, 1};
  const auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "mixed-rank") {
    const auto r = static_cast<Eigen::Index>(to_count(parts[1], "mixed-rank"));
    if (r < 1) throw std::invalid_argument("mixed-rank needs r >= 1");
    return {PairKind::Kind::mixed_rank, r};
  }
  throw std::invalid_argument("unknown pair kind: " + text);
}

DensityMatrix random_rank_state(Eigen::Index n, Eigen::Index r, RngStream& rng) {
  std::vector<ComplexVector> raw;
  raw.reserve(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) raw.push_back(sample_gaussian_vector(n, rng));
  const std::vector<ComplexVector> ortho = gram_schmidt(raw);
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& v : ortho) m += v * v.adjoint();
  return DensityMatrix(ComplexMatrix(m / static_cast<double>(r)));
}

std::pair<DensityMatrix, DensityMatrix> make_pair(const PairKind& kind,
                                                  Eigen::Index n,
                                                  RngStream& rng) {
  switch (kind.kind) {
    case PairKind::Kind::random_pure:
      return {DensityMatrix::pure(sample_unit_vector(n, rng)),
              DensityMatrix::pure(sample_unit_vector(n, rng))};
    case PairKind::Kind::orthogonal_pure: {
      std::vector<ComplexVector> raw = {sample_gaussian_vector(n, rng),
                                        sample_gaussian_vector(n, rng)};
      const std::vector<ComplexVector> ortho = gram_schmidt(raw);
      return {DensityMatrix::pure(ortho[0]), DensityMatrix::pure(ortho[1])};
    }
    case PairKind::Kind::mixed_rank: {
      if (2 * kind.rank > n) {
        throw std::invalid_argument("mixed-rank pair needs 2r <= n");
      }
      // One Haar draw, orthogonal column blocks for the two supports.
      const OrthonormalBasis basis = sample_haar_basis(n, rng);
      ComplexMatrix m1 = ComplexMatrix::Zero(n, n);
      ComplexMatrix m2 = ComplexMatrix::Zero(n, n);
      for (Eigen::Index i = 0; i < kind.rank; ++i) {
        m1 += basis.vectors.col(i) * basis.vectors.col(i).adjoint();
        m2 += basis.vectors.col(kind.rank + i) *
              basis.vectors.col(kind.rank + i).adjoint();
      }
      return {DensityMatrix(ComplexMatrix(m1 / static_cast<double>(kind.rank))),
              DensityMatrix(ComplexMatrix(m2 / static_cast<double>(kind.rank)))};
    }
  }
  throw std::logic_error("make_pair: unreachable");
}

}  // namespace

std::vector<double> parse_lambda_profile(const std::string& profile) {
  const auto parts = split(profile, ':');
  std::vector<double> lambdas;
  if (parts[0] == "uniform" && parts.size() == 2) {
    const std::size_t n = to_count(parts[1], "uniform count");
    if (n == 0) throw std::invalid_argument("uniform profile needs n >= 1");
    lambdas.assign(n, 1.0 / static_cast<double>(n));
  } else if (parts[0] == "geometric" && parts.size() == 3) {
    const double q = to_double(parts[1], "geometric ratio");
    const std::size_t n = to_count(parts[2], "geometric count");
    if (q <= 0.0 || q >= 1.0 || n == 0) {
      throw std::invalid_argument("geometric profile needs q in (0,1), n >= 1");
    }
    double term = 1.0 - q;
    for (std::size_t i = 0; i < n; ++i) {
      lambdas.push_back(term);
      term *= q;
    }
  } else if (parts[0] == "spike" && parts.size() == 4) {
    const double big = to_double(parts[1], "spike weight");
    const std::size_t n = to_count(parts[2], "spike count");
    const double small = to_double(parts[3], "spike dust");
    lambdas.push_back(big);
    for (std::size_t i = 0; i < n; ++i) lambdas.push_back(small);
  } else if (parts[0] == "two-scale" && parts.size() == 5) {
    const double a = to_double(parts[1], "two-scale weight a");
    const std::size_t na = to_count(parts[2], "two-scale count a");
    const double b = to_double(parts[3], "two-scale weight b");
    const std::size_t nb = to_count(parts[4], "two-scale count b");
    for (std::size_t i = 0; i < na; ++i) lambdas.push_back(a);
    for (std::size_t i = 0; i < nb; ++i) lambdas.push_back(b);
  } else {
    throw std::invalid_argument("unknown lambda profile: " + profile);
  }
  return lambdas;
}

RunArtifacts run_concentration(const ConcentrationConfig& config) {
  RngStream rng(config.seed, 0);
  TailReport report;
  if (config.exp == "chi-square") {
    report = chi_square_tail(static_cast<int>(config.n), config.eps, config.trials,
                             rng, config.threads);
  } else if (config.exp == "projection-upper") {
    report = projection_tail(config.n, config.k, config.t,
                             ProjectionTailSide::upper_t, config.trials, rng,
                             config.threads);
  } else if (config.exp == "projection-two-sided") {
    report = projection_tail(config.n, config.k, config.eps,
                             ProjectionTailSide::two_sided_eps, config.trials, rng,
                             config.threads);
  } else if (config.exp == "gram-schmidt") {
    report = gram_schmidt_perturbation(config.n, config.r, config.m_factor,
                                       config.trials, rng, config.threads);
  } else if (config.exp == "matrix-norm") {
    report = gaussian_matrix_norm(config.n, config.trials, rng, config.threads);
  } else if (config.exp == "weighted-chisquare") {
    report = weighted_chisquare_tails(parse_lambda_profile(config.profile),
                                      config.trials, rng, config.threads);
  } else if (config.exp == "high-rank") {
    report = high_rank_counterexample(config.n, config.r, config.trials, rng,
                                      config.threads);
  } else {
    throw std::invalid_argument("unknown concentration experiment: " + config.exp);
  }

  const std::vector<TailReport> reports = {report};
  RunArtifacts artifacts;
  artifacts.csv = tail_reports_per_trial_csv(reports);
  artifacts.summary_csv = tail_reports_csv(reports);
  artifacts.json = tail_reports_json(reports);
  artifacts.has_pass_rule = report.pass.has_value();
  artifacts.pass = report.pass.value_or(true);
  return artifacts;
}

RunArtifacts run_distinguish(const DistinguishConfig& config) {
  if (config.n < 1 || config.trials < 1 || config.pairs < 1) {
    throw std::invalid_argument("distinguish: n, trials and pairs must be >= 1");
  }
  const MeasurementMode mode =
      MeasurementMode::parse(config.mode, config.ancilla_k);
  const PairKind kind = parse_pair_kind(config.pair);
  const Eigen::Index n = config.n;

  // Stream layout: pair p owns the block [p*(trials+1), (p+1)*(trials+1));
  // the first stream generates the states, the rest one trial each.
  const std::size_t block = config.trials + 1;
  std::vector<std::pair<DensityMatrix, DensityMatrix>> state_pairs;
  std::vector<double> f_values;
  state_pairs.reserve(config.pairs);
  for (std::size_t p = 0; p < config.pairs; ++p) {
    RngStream pair_rng(config.seed, p * block);
    state_pairs.push_back(make_pair(kind, n, pair_rng));
    f_values.push_back(frobenius_norm(state_pairs.back().first.matrix() -
                                      state_pairs.back().second.matrix()));
    if (f_values.back() < 1e-12) {
      throw std::runtime_error("distinguish: degenerate state pair drawn");
    }
  }

  std::vector<double> tv(config.pairs * config.trials);
  parallel_for(tv.size(), config.threads, [&](std::size_t flat) {
    const std::size_t p = flat / config.trials;
    const std::size_t trial = flat % config.trials;
    RngStream trial_rng(config.seed, p * block + 1 + trial);
    const auto& [s1, s2] = state_pairs[p];
    if (mode.kind == MeasurementKind::haar_basis) {
      const OrthonormalBasis basis = sample_haar_basis(n, trial_rng);
      tv[flat] =
          total_variation(measure_basis(s1, basis), measure_basis(s2, basis));
    } else {
      const Povm povm = draw_measurement(mode, n, trial_rng);
      tv[flat] =
          total_variation(measure_povm(s1, povm), measure_povm(s2, povm));
    }
  });

  ExperimentReport report;
  report.experiment = "distinguish";
  report.params = {{"mode", mode.name()},
                   {"n", std::to_string(config.n)},
                   {"pair", config.pair},
                   {"pairs", std::to_string(config.pairs)}};
  report.seed = config.seed;
  report.trials = tv.size();
  report.columns = {"pair", "draw", "f", "tv", "tv_over_f"};
  std::vector<double> ratios(tv.size());
  for (std::size_t flat = 0; flat < tv.size(); ++flat) {
    const std::size_t p = flat / config.trials;
    ratios[flat] = tv[flat] / f_values[p];
    report.rows.push_back({static_cast<double>(p),
                           static_cast<double>(flat % config.trials),
                           f_values[p], tv[flat], ratios[flat]});
  }
  double min_ratio = ratios.front();
  for (double r : ratios) min_ratio = std::min(min_ratio, r);
  report.stats = {{"min_ratio", min_ratio}, {"median_ratio", median(ratios)}};
  for (double threshold : {0.01, 0.05, 0.10, 0.25}) {
    std::size_t above = 0;
    for (double r : ratios) {
      if (r >= threshold) ++above;
    }
    report.stats.emplace_back(
        "frac_ratio_ge_" + format_double(threshold),
        static_cast<double>(above) / static_cast<double>(ratios.size()));
  }

  if (mode.kind == MeasurementKind::povm_ancilla) {
    // Calibrated ancilla-mode rule: TV >= 0.05 f / log2(m) for at
    // least 95% of draws, m = n*K.
    const double log2m =
        std::log2(static_cast<double>(config.n * config.ancilla_k));
    std::size_t above = 0;
    for (double r : ratios) {
      if (r >= 0.05 / log2m) ++above;
    }
    const double frac = static_cast<double>(above) / static_cast<double>(ratios.size());
    report.stats.emplace_back("frac_tv_ge_0.05f_over_log2m", frac);
    report.pass = frac >= 0.95;
  }

  RunArtifacts artifacts;
  artifacts.csv = experiment_csv(report);
  artifacts.json = experiment_json(report);
  artifacts.has_pass_rule = report.pass.has_value();
  artifacts.pass = report.pass.value_or(true);
  return artifacts;
}

RunArtifacts run_hsp(const HspCliConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("hsp: runs must be >= 1");
  const FiniteGroup group = FiniteGroup::make(GroupFamily::parse(config.group));
  const HspInstance instance = HspInstance::make(group);
  const ExperimentReport report =
      hsp_success_experiment(instance, config.runs, config.copies, config.C,
                             config.c_cal, RngStream(config.seed, 0),
                             config.threads);
  RunArtifacts artifacts;
  artifacts.csv = experiment_csv(report);
  artifacts.json = experiment_json(report);
  artifacts.has_pass_rule = report.pass.has_value();
  artifacts.pass = report.pass.value_or(true);
  return artifacts;
}

RunArtifacts run_identify(const IdentifyCliConfig& config) {
  if (config.n < 1 || config.k < 2 || config.runs < 1) {
    throw std::invalid_argument("identify: need n >= 1, k >= 2, runs >= 1");
  }
  const MeasurementMode mode =
      MeasurementMode::parse(config.mode, config.ancilla_k);

  Ensemble ensemble;
  for (long i = 0; i < config.k; ++i) {
    RngStream state_rng(config.seed, static_cast<std::uint64_t>(i));
    if (config.kind == "random-pure") {
      ensemble.states.push_back(
          DensityMatrix::pure(sample_unit_vector(config.n, state_rng)));
    } else {
      const auto parts = split(config.kind, ':');
      if (parts.size() != 2 || parts[0] != "mixed-rank") {
        throw std::invalid_argument("unknown ensemble kind: " + config.kind);
      }
      const auto r = static_cast<Eigen::Index>(to_count(parts[1], "mixed-rank"));
      ensemble.states.push_back(random_rank_state(config.n, r, state_rng));
    }
    ensemble.names.push_back("s" + std::to_string(i));
  }

  const std::optional<std::size_t> copies =
      config.copies > 0 ? std::optional<std::size_t>(config.copies) : std::nullopt;
  const IdentificationReport result = identification_experiment(
      ensemble, mode, config.runs,
      RngStream(config.seed, static_cast<std::uint64_t>(config.k)),
      config.threads, copies, config.c_cal);

  RunArtifacts artifacts;
  artifacts.csv = experiment_csv(result.report);
  artifacts.json = experiment_json(result.report);
  artifacts.has_pass_rule = result.report.pass.has_value();
  artifacts.pass = result.report.pass.value_or(true);
  return artifacts;
}

std::string group_info_text(const std::string& descriptor) {
  const FiniteGroup group = FiniteGroup::make(GroupFamily::parse(descriptor));
  const HspInstance instance = HspInstance::make(group);
  std::ostringstream out;
  out << "group " << descriptor << "  order " << group.order() << "\n\n";

  out << "irreps (" << instance.irreps.size() << "):\n";
  std::size_t dim_sq = 0;
  for (const auto& rho : instance.irreps) {
    out << "  " << rho.label << "  dim " << rho.dim << "\n";
    dim_sq += static_cast<std::size_t>(rho.dim * rho.dim);
  }
  out << "  sum of squared dims = " << dim_sq << "\n\n";

  out << "subgroups (" << instance.subgroups.size() << "):\n";
  for (std::size_t i = 0; i < instance.subgroups.size(); ++i) {
    const auto& h = instance.subgroups[i];
    const Subgroup core = normal_core(group, h);
    std::size_t core_index = 0;
    for (std::size_t j = 0; j < instance.subgroups.size(); ++j) {
      if (instance.subgroups[j] == core) core_index = j;
    }
    Eigen::Index max_rank = 0;
    for (Eigen::Index rank : block_ranks(group, instance.irreps, h)) {
      max_rank = std::max(max_rank, rank);
    }
    out << "  H" << i << "  order " << h.order() << "  core H" << core_index
        << "  max block rank " << max_rank << "  " << h.to_string() << "\n";
  }
  out << "\nw/r distances:\n";
  for (std::size_t i = 0; i < instance.subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < instance.subgroups.size(); ++j) {
      const double w = w_distance(group, instance.irreps, instance.subgroups[i],
                                  instance.subgroups[j]);
      const double r = r_distance(group, instance.irreps, instance.subgroups[i],
                                  instance.subgroups[j]);
      out << "  H" << i << " H" << j << "  w=" << format_double(w)
          << "  r=" << format_double(r) << "\n";
    }
  }
  return out.str();
}

int write_artifacts(const RunArtifacts& artifacts, const std::string& csv_path) {
  std::string base = csv_path;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") {
    base = base.substr(0, base.size() - 4);
  }
  auto write = [](const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
  };
  write(csv_path, artifacts.csv);
  if (!artifacts.summary_csv.empty()) {
    write(base + ".summary.csv", artifacts.summary_csv);
  }
  write(base + ".json", artifacts.json);
  return artifacts.has_pass_rule && !artifacts.pass ? 2 : 0;
}

}  // namespace randmeas
