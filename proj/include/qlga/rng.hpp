#pragma once

#include <cstdint>

namespace qlga {

// Counter-based generator (SplitMix64 finalizer over an arithmetic counter
// sequence).  (seed, stream) fully determine the output sequence; draws do
// not depend on call interleaving or thread scheduling, and the uint64 ->
// double conversion below is bit-exact across platforms.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 significant bits.
  double next_unit();

  // Uniform in [lo, hi).
  double next_in(double lo, double hi);

  // Uniform integer in [0, n).
  std::uint64_t next_below(std::uint64_t n);

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

}  // namespace qlga
