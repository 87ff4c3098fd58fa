#pragma once

#include <cstdint>
#include <vector>

namespace duo::rng {

enum class Purpose : std::uint64_t {
  labels = 1,
  signal = 2,
  noise = 3,
  perturbation = 4,
  manifold = 5,
  resample = 6,
  kmeans = 7,
  oracle = 8,
  misc = 9,
};

// Counter-based stream: draw t is a pure function of (key, t), so streams
// for different (seed, dataset, purpose) never interact.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t dataset, Purpose purpose);

  std::uint64_t next_u64();
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // standard Gaussian, Box-Muller
  std::uint64_t below(std::uint64_t n);  // uniform on [0, n), unbiased

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t mix64(std::uint64_t z);

// Seed for replicate `rep` of an experiment seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep);

// k distinct indices from [0, n), in draw order (partial Fisher-Yates).
std::vector<std::int64_t> sample_without_replacement(Stream& s, std::int64_t n, std::int64_t k);

}  // namespace duo::rng
