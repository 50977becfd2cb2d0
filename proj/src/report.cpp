#include "randmeas/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "randmeas/version.hpp"

namespace randmeas {

namespace {

const char* kCrlf = "\r\n";

std::string params_field(const std::vector<std::pair<std::string, double>>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ';';
    out += params[i].first;
    out += '=';
    out += format_double(params[i].second);
  }
  return out;
}

nlohmann::ordered_json base_json(const std::string& experiment) {
  nlohmann::ordered_json j;
  j["schema_version"] = 1;
  j["artifact"] = kArtifactVersion;
  j["experiment"] = experiment;
  return j;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string tail_reports_csv(const std::vector<TailReport>& reports) {
  std::string out = "experiment,params,trials,statistic,bound,std_err,pass";
  out += kCrlf;
  for (const auto& r : reports) {
    out += csv_field(r.experiment);
    out += ',';
    out += csv_field(params_field(r.params));
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += format_double(r.statistic);
    out += ',';
    if (r.bound) out += format_double(*r.bound);
    out += ',';
    out += format_double(r.std_err);
    out += ',';
    if (r.pass) out += *r.pass ? "true" : "false";
    out += kCrlf;
  }
  return out;
}

std::string tail_reports_per_trial_csv(const std::vector<TailReport>& reports) {
  std::string out = "experiment,trial,value";
  out += kCrlf;
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < r.per_trial.size(); ++i) {
      out += csv_field(r.experiment);
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += format_double(r.per_trial[i]);
      out += kCrlf;
    }
  }
  return out;
}

std::string tail_reports_json(const std::vector<TailReport>& reports) {
  nlohmann::ordered_json doc = base_json("concentration");
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    nlohmann::ordered_json params;
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["seed"] = r.seed;
    j["trials"] = r.trials;
    j["statistic"] = r.statistic;
    if (r.bound) j["bound"] = *r.bound;
    else j["bound"] = nullptr;
    j["std_err"] = r.std_err;
    if (r.pass) j["pass"] = *r.pass;
    else j["pass"] = nullptr;
    nlohmann::ordered_json extra;
    for (const auto& [k, v] : r.extra) extra[k] = v;
    j["extra"] = extra;
    doc["reports"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string experiment_csv(const ExperimentReport& report) {
  std::string out = "trial";
  for (const auto& c : report.columns) {
    out += ',';
    out += csv_field(c);
  }
  out += kCrlf;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    out += std::to_string(i);
    for (double v : report.rows[i]) {
      out += ',';
      out += format_double(v);
    }
    out += kCrlf;
  }
  return out;
}

std::string experiment_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc = base_json(report.experiment);
  nlohmann::ordered_json config;
  for (const auto& [k, v] : report.params) config[k] = v;
  config["seed"] = report.seed;
  config["trials"] = report.trials;
  doc["config"] = config;
  nlohmann::ordered_json stats;
  for (const auto& [k, v] : report.stats) stats[k] = v;
  doc["stats"] = stats;
  if (report.pass) doc["pass"] = *report.pass;
  else doc["pass"] = nullptr;
  return doc.dump(2) + "\n";
}

double binomial_std_err(double p_hat, std::size_t trials) {
  if (trials == 0) throw std::invalid_argument("binomial_std_err: zero trials");
  return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials));
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace randmeas
