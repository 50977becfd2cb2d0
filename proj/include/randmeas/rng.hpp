#pragma once

#include <complex>
#include <cstdint>

namespace randmeas {

/// Deterministic counter-style PRNG (splitmix64 over a Weyl sequence).
/// A stream is identified by (master_seed, stream_index): the same pair
/// replays the same sample sequence bit for bit, and distinct stream
/// indices give statistically independent streams. Experiments derive one
/// stream per trial, which makes results independent of the worker count.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1), 53-bit resolution.
  double next_uniform();
  /// Standard normal via Box-Muller; generates pairs and caches the spare.
  double next_gaussian();
  /// Real and imaginary parts i.i.d. standard normal.
  std::complex<double> next_complex_gaussian();

 private:
  std::uint64_t master_seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace randmeas
