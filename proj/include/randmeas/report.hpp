#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace randmeas {

/// Summary of one Monte Carlo tail/bound verification.
/// Serializes to one CSV row with the canonical columns
/// (experiment, params, trials, statistic, bound, std_err, pass);
/// `per_trial` feeds the per-trial CSV and `extra` the JSON summary.
struct TailReport {
  std::string experiment;
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  double statistic = 0.0;
  std::optional<double> bound;
  double std_err = 0.0;
  std::optional<bool> pass;
  std::vector<std::pair<std::string, double>> extra;
  std::vector<double> per_trial;
};

/// Seeded Monte Carlo experiment summary with per-trial rows.
struct ExperimentReport {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<std::string> columns;       // names of per-trial values
  std::vector<std::vector<double>> rows;  // one entry per trial (or per pair)
  std::vector<std::pair<std::string, double>> stats;
  std::optional<bool> pass;
};

/// Shortest decimal representation that round-trips the double.
std::string format_double(double value);

/// RFC 4180 field escaping (quotes fields containing comma/quote/newline).
std::string csv_field(const std::string& raw);

std::string tail_reports_csv(const std::vector<TailReport>& reports);
std::string tail_reports_per_trial_csv(const std::vector<TailReport>& reports);
std::string tail_reports_json(const std::vector<TailReport>& reports);

std::string experiment_csv(const ExperimentReport& report);
std::string experiment_json(const ExperimentReport& report);

/// sqrt(p(1-p)/trials) for an empirical proportion.
double binomial_std_err(double p_hat, std::size_t trials);

/// Median of a copy of the values (empty input is an error).
double median(std::vector<double> values);

}  // namespace randmeas
