#pragma once

#include <cstdint>
#include <string>

#include "randmeas/report.hpp"

namespace randmeas {

/// What an experiment run leaves behind: the per-trial CSV, the canonical
/// summary CSV (concentration runs only), the JSON summary, and the overall
/// pass verdict (true when no pass rule applies).
struct RunArtifacts {
  std::string csv;
  std::string summary_csv;
  std::string json;
  bool pass = true;
  bool has_pass_rule = false;
};

struct ConcentrationConfig {
  std::string exp;  // chi-square | projection-upper | projection-two-sided |
                    // gram-schmidt | matrix-norm | weighted-chisquare | high-rank
  long n = 0;
  long k = 0;
  long r = 0;
  double eps = 0.0;
  double t = 0.0;
  double m_factor = 0.0;
  std::string profile;  // weighted-chisquare weights, e.g. "uniform:100"
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct DistinguishConfig {
  long n = 0;
  std::string mode = "haar-basis";  // haar-basis | povm-plain | povm-ancilla
  long ancilla_k = 1;
  std::string pair = "random-pure";  // random-pure | orthogonal-pure | mixed-rank:<r>
  std::size_t pairs = 1;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct HspCliConfig {
  std::string group;  // descriptor, e.g. "dihedral:4"
  std::size_t runs = 0;
  std::size_t copies = 0;  // 0 = auto via copies_for(measured delta)
  double C = 1.0;
  double c_cal = 16.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct IdentifyCliConfig {
  long n = 0;
  long k = 0;
  std::string mode = "povm-ancilla";
  long ancilla_k = 4;
  std::string kind = "random-pure";  // random-pure | mixed-rank:<r>
  std::size_t runs = 0;
  std::size_t copies = 0;  // 0 = auto
  double c_cal = 16.0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

/// "uniform:N", "geometric:q:N", "spike:big:N:small", "two-scale:a:Na:b:Nb".
std::vector<double> parse_lambda_profile(const std::string& profile);

RunArtifacts run_concentration(const ConcentrationConfig& config);
RunArtifacts run_distinguish(const DistinguishConfig& config);
RunArtifacts run_hsp(const HspCliConfig& config);
RunArtifacts run_identify(const IdentifyCliConfig& config);

/// Irrep dimensions, subgroup lattice (with normal cores and block ranks),
/// and the w/r distance tables, as printable text.
std::string group_info_text(const std::string& descriptor);

/// Writes artifacts next to `csv_path` (summary CSV and JSON derive their
/// names from it). Returns the process exit code: 0 pass, 2 fail.
int write_artifacts(const RunArtifacts& artifacts, const std::string& csv_path);

}  // namespace randmeas
