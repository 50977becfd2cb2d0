#include "randmeas/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "randmeas/parallel.hpp"
#include "randmeas/random_measure.hpp"
#include "randmeas/state.hpp"

namespace randmeas {

namespace {

double fraction(std::size_t count, std::size_t total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

// trace_norm(|psi><psi| - |phi><phi|) for unit vectors has the closed form
// 2 sqrt(1 - |<psi|phi>|^2); cross-checked against the generic trace_norm
// in the unit tests.
double projector_pair_trace_norm(const ComplexVector& psi, const ComplexVector& phi) {
  const double overlap_sq = std::norm(psi.dot(phi));
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap_sq));
}

}  // namespace

TailReport chi_square_tail(int n, double eps, std::size_t trials, RngStream rng,
                           unsigned threads) {
  if (n < 1) throw std::invalid_argument("chi_square_tail: n must be >= 1");
  if (eps <= -1.0) throw std::invalid_argument("chi_square_tail: eps must be > -1");
  if (trials < 1000) {
    throw std::invalid_argument("chi_square_tail: trials must be >= 1000");
  }

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double g = trial_rng.next_gaussian();
      sum += g * g;
    }
    values[i] = sum;
  });

  const double threshold = static_cast<double>(n) * (1.0 + eps);
  std::size_t hits = 0;
  double sum = 0.0;
  for (double v : values) {
    if (eps >= 0.0 ? v > threshold : v < threshold) ++hits;
    sum += v;
  }
  const double empirical = fraction(hits, trials);
  const double bound =
      std::pow(std::exp(-eps / 2.0) * std::sqrt(1.0 + eps), static_cast<double>(n));
  const double se = binomial_std_err(empirical, trials);

  TailReport report;
  report.experiment = "chi-square-tail";
  report.params = {{"n", static_cast<double>(n)}, {"eps", eps}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.statistic = empirical;
  report.bound = bound;
  report.std_err = se;
  report.pass = empirical <= bound + 3.0 * se;
  report.extra = {{"threshold", threshold},
                  {"mean", sum / static_cast<double>(trials)}};
  report.per_trial = std::move(values);
  return report;
}

TailReport projection_tail(Eigen::Index n, Eigen::Index k, double t_or_eps,
                           ProjectionTailSide side, std::size_t trials,
                           RngStream rng, unsigned threads) {
  if (n < 1 || k < 1 || k > n) {
    throw std::invalid_argument("projection_tail: need 1 <= k <= n");
  }
  if (trials < 1) throw std::invalid_argument("projection_tail: trials must be >= 1");
  const double kn = static_cast<double>(k) / static_cast<double>(n);
  if (side == ProjectionTailSide::upper_t) {
    if (4 * k > n) {
      throw std::invalid_argument("projection_tail: upper-t mode requires k <= n/4");
    }
    if (t_or_eps < 4.0 || t_or_eps > static_cast<double>(n) / static_cast<double>(k)) {
      throw std::invalid_argument("projection_tail: t must lie in [4, n/k]");
    }
  } else {
    if (t_or_eps < 0.0 || t_or_eps > 0.5) {
      throw std::invalid_argument("projection_tail: eps must lie in [0, 1/2]");
    }
  }

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    const ComplexVector v = sample_unit_vector(n, trial_rng);
    values[i] = v.head(k).squaredNorm();
  });

  TailReport report;
  report.seed = rng.master_seed();
  report.trials = trials;
  report.params = {{"n", static_cast<double>(n)},
                   {"k", static_cast<double>(k)}};
  std::size_t hits = 0;
  if (side == ProjectionTailSide::upper_t) {
    const double t = t_or_eps;
    const double threshold = t * kn;
    for (double v : values) {
      if (v > threshold) ++hits;
    }
    const double empirical = fraction(hits, trials);
    const double se = binomial_std_err(empirical, trials);
    report.experiment = "projection-tail-upper";
    report.params.emplace_back("t", t);
    report.statistic = empirical;
    report.bound = std::exp(-t * static_cast<double>(k) / kProjUpperRate);
    report.std_err = se;
    report.pass = empirical <= *report.bound + 3.0 * se;
    report.extra = {{"threshold", threshold}};
  } else {
    const double eps = t_or_eps;
    for (double v : values) {
      if (v >= (1.0 - eps) * kn && v <= (1.0 + eps) * kn) ++hits;
    }
    const double empirical = fraction(hits, trials);
    const double se = binomial_std_err(empirical, trials);
    report.experiment = "projection-tail-two-sided";
    report.params.emplace_back("eps", eps);
    report.statistic = empirical;
    report.bound =
        1.0 - std::exp(-eps * eps * static_cast<double>(k) / kProjTwoSidedRate);
    report.std_err = se;
    report.pass = empirical >= *report.bound - 3.0 * se;
    report.extra = {{"lo", (1.0 - eps) * kn}, {"hi", (1.0 + eps) * kn}};
  }
  report.per_trial = std::move(values);
  return report;
}

TailReport gram_schmidt_perturbation(Eigen::Index n, Eigen::Index r, double m_factor,
                                     std::size_t trials, RngStream rng,
                                     unsigned threads) {
  if (r < 1 || r > n) {
    throw std::invalid_argument("gram_schmidt_perturbation: need 1 <= r <= n");
  }
  if (m_factor <= 1.0) {
    throw std::invalid_argument("gram_schmidt_perturbation: M must be > 1");
  }
  if (trials < 1) {
    throw std::invalid_argument("gram_schmidt_perturbation: trials must be >= 1");
  }

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    std::vector<ComplexVector> raw;
    raw.reserve(static_cast<std::size_t>(r));
    for (Eigen::Index j = 0; j < r; ++j) {
      raw.push_back(sample_unit_vector(n, trial_rng));
    }
    const std::vector<ComplexVector> ortho = gram_schmidt(raw);
    double max_pert = 0.0;
    for (std::size_t j = 0; j < raw.size(); ++j) {
      max_pert = std::max(max_pert, projector_pair_trace_norm(raw[j], ortho[j]));
    }
    values[i] = max_pert;
  });

  const double bound =
      kGramSchmidtC0 * std::sqrt(m_factor * static_cast<double>(r) /
                                 static_cast<double>(n));
  std::size_t hits = 0;
  double max_stat = 0.0;
  for (double v : values) {
    if (v > bound) ++hits;
    max_stat = std::max(max_stat, v);
  }
  const double empirical = fraction(hits, trials);

  TailReport report;
  report.experiment = "gram-schmidt-perturbation";
  report.params = {{"n", static_cast<double>(n)},
                   {"r", static_cast<double>(r)},
                   {"M", m_factor}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.statistic = empirical;
  report.bound = bound;
  report.std_err = binomial_std_err(empirical, trials);
  report.pass = max_stat <= bound;
  report.extra = {{"max_perturbation", max_stat}, {"median_max", median(values)}};
  report.per_trial = std::move(values);
  return report;
}

TailReport gaussian_matrix_norm(Eigen::Index n, std::size_t trials, RngStream rng,
                                unsigned threads) {
  if (n < 2) throw std::invalid_argument("gaussian_matrix_norm: n must be >= 2");
  if (trials < 1) {
    throw std::invalid_argument("gaussian_matrix_norm: trials must be >= 1");
  }

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    ComplexMatrix m(n, n);
    for (Eigen::Index col = 0; col < n; ++col) {
      m.col(col) = sample_gaussian_vector(n, trial_rng);
    }
    values[i] = spectral_norm(m);
  });

  const double bound = kMatrixNormFactor *
                       std::sqrt(static_cast<double>(n) *
                                 std::log(static_cast<double>(n)));
  double max_norm = 0.0;
  for (double v : values) max_norm = std::max(max_norm, v);

  TailReport report;
  report.experiment = "gaussian-matrix-norm";
  report.params = {{"n", static_cast<double>(n)}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.statistic = max_norm;
  report.bound = bound;
  report.std_err = 0.0;
  report.pass = max_norm <= bound;
  report.extra = {{"median", median(values)},
                  {"max_over_sqrt_n", max_norm / std::sqrt(static_cast<double>(n))},
                  // random-matrix edge for complex entries of per-part unit
                  // variance sits near 2 sqrt(2n)
                  {"edge_reference", 2.0 * std::sqrt(2.0 * static_cast<double>(n))}};
  report.per_trial = std::move(values);
  return report;
}

TailReport weighted_chisquare_tails(const std::vector<double>& lambdas,
                                    std::size_t trials, RngStream rng,
                                    unsigned threads) {
  if (lambdas.empty()) {
    throw std::invalid_argument("weighted_chisquare_tails: empty weight vector");
  }
  double t = 0.0;
  double f_sq = 0.0;
  for (double l : lambdas) {
    if (l <= 0.0 || l > 1.0) {
      throw std::invalid_argument(
          "weighted_chisquare_tails: each lambda must lie in (0, 1]");
    }
    t += l;
    f_sq += l * l;
  }
  if (t > 1.0 + 1e-12) {
    throw std::invalid_argument("weighted_chisquare_tails: sum of lambdas exceeds 1");
  }
  if (trials < 10000) {
    throw std::invalid_argument("weighted_chisquare_tails: trials must be >= 10^4");
  }
  const double f = std::sqrt(f_sq);

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    double x = 0.0;
    for (double l : lambdas) {
      const double g = trial_rng.next_gaussian();
      x += l * g * g;
    }
    values[i] = x;
  });

  std::size_t upper_hits = 0;
  std::size_t lower_hits = 0;
  double sum = 0.0;
  for (double v : values) {
    if (v > t + f) ++upper_hits;
    if (v < t) ++lower_hits;
    sum += v;
  }
  const double upper_p = fraction(upper_hits, trials);
  const double lower_p = fraction(lower_hits, trials);
  const double mean = sum / static_cast<double>(trials);
  // Var(X) = 2 sum lambda^2 = 2 f^2.
  const double mean_se = std::sqrt(2.0) * f / std::sqrt(static_cast<double>(trials));
  const bool mean_ok = std::abs(mean - t) <= 3.0 * mean_se;

  TailReport report;
  report.experiment = "weighted-chisquare-tails";
  report.params = {{"count", static_cast<double>(lambdas.size())},
                   {"t", t},
                   {"f", f}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.statistic = upper_p;
  report.bound = kWeightedTailCMin;
  report.std_err = binomial_std_err(upper_p, trials);
  report.pass = upper_p >= kWeightedTailCMin && lower_p >= kWeightedTailCMin && mean_ok;
  report.extra = {{"lower_prob", lower_p},
                  {"mean", mean},
                  {"mean_std_err", mean_se}};
  report.per_trial = std::move(values);
  return report;
}

TailReport high_rank_counterexample(Eigen::Index n, Eigen::Index r,
                                    std::size_t trials, RngStream rng,
                                    unsigned threads) {
  if (r < 1 || 2 * r > n) {
    throw std::invalid_argument("high_rank_counterexample: need 1 <= r and 2r <= n");
  }
  if (trials < 1) {
    throw std::invalid_argument("high_rank_counterexample: trials must be >= 1");
  }

  const DensityMatrix s1 = DensityMatrix::mixed_on_coordinates(n, 0, r);
  const DensityMatrix s2 = DensityMatrix::mixed_on_coordinates(n, r, r);
  const ComplexMatrix diff = s1.matrix() - s2.matrix();
  const double frob = frobenius_norm(diff);
  const double tr = trace_norm(diff);
  const double frob_expected = std::sqrt(2.0 / static_cast<double>(r));
  if (std::abs(frob - frob_expected) > 1e-12 || std::abs(tr - 2.0) > 1e-10) {
    throw std::runtime_error(
        "high_rank_counterexample: exact norm identities violated");
  }

  std::vector<double> values(trials);
  parallel_for(trials, threads, [&](std::size_t i) {
    RngStream trial_rng(rng.master_seed(), rng.stream_index() + i);
    const OrthonormalBasis basis = sample_haar_basis(n, trial_rng);
    // <b|s1|b> - <b|s2|b> = (|b restricted to [0,r)|^2 - |b on [r,2r)|^2)/r.
    double tv = 0.0;
    for (Eigen::Index col = 0; col < n; ++col) {
      const double p1 = basis.vectors.col(col).head(r).squaredNorm();
      const double p2 = basis.vectors.col(col).segment(r, r).squaredNorm();
      tv += std::abs(p1 - p2) / static_cast<double>(r);
    }
    values[i] = tv;
  });

  const double med = median(values);
  const double bound =
      kHighRankC1 * std::pow(static_cast<double>(r), -0.25);
  double min_tv = values.front();
  double max_tv = values.front();
  for (double v : values) {
    min_tv = std::min(min_tv, v);
    max_tv = std::max(max_tv, v);
  }

  TailReport report;
  report.experiment = "high-rank-counterexample";
  report.params = {{"n", static_cast<double>(n)}, {"r", static_cast<double>(r)}};
  report.seed = rng.master_seed();
  report.trials = trials;
  report.statistic = med;
  report.bound = bound;
  report.std_err = 0.0;
  report.pass = med <= bound;
  report.extra = {{"min_tv", min_tv},
                  {"max_tv", max_tv},
                  {"frobenius_distance", frob},
                  {"trace_distance", tr}};
  report.per_trial = std::move(values);
  return report;
}

}  // namespace randmeas
