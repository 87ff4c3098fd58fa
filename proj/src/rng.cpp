#include "duo/rng.hpp"

#include <cmath>
#include <numbers>

namespace duo::rng {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Stream::Stream(std::uint64_t seed, std::uint64_t dataset, Purpose purpose) {
  std::uint64_t k = mix64(seed + kGolden);
  k = mix64(k ^ (dataset * 0xD1B54A32D192ED03ULL + 1));
  k = mix64(k ^ (static_cast<std::uint64_t>(purpose) * 0x8CB92BA72F3D8DD7ULL + 2));
  key_ = k;
}

std::uint64_t Stream::next_u64() { return mix64(key_ + kGolden * ++counter_); }

double Stream::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double Stream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Stream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

std::uint64_t Stream::below(std::uint64_t n) {
  if (n <= 1) return 0;
  std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % n;
  while (true) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % n;
  }
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t rep) {
  return mix64(mix64(seed ^ 0x5851F42D4C957F2DULL) + rep * kGolden);
}

std::vector<std::int64_t> sample_without_replacement(Stream& s, std::int64_t n, std::int64_t k) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  for (std::int64_t i = 0; i < k; ++i) {
    auto j = i + static_cast<std::int64_t>(s.below(static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
  }
  pool.resize(static_cast<std::size_t>(k));
  return pool;
}

}  // namespace duo::rng
