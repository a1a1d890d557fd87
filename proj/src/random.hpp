#pragma once

#include <cstdint>
#include <random>

namespace sweep::detail {

// Platform-independent draws on top of mt19937_64 (the std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : std::size_t(gen_() % n); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace sweep::detail
