#pragma once

#include <cmath>
#include <cstdint>

namespace vpk {

// splitmix64 step. Also used to fold tags into seeds when deriving
// independent streams.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives a stream seed from (seed, tag). Tags are small constants or
// sample indices; distinct tags give statistically independent streams.
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) {
  uint64_t s = seed;
  uint64_t a = splitmix64(s);
  s ^= (tag + 0x9e3779b97f4a7c15ULL) * 0xd1b54a32d192ed03ULL;
  uint64_t b = splitmix64(s);
  return a ^ (b + 0x715ea1d1ULL);
}

// Deterministic generator with hand-rolled distributions. std:: distributions
// are implementation-defined, which would break byte-stable artifacts.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {
    splitmix64(state_);
    splitmix64(state_);
  }

  uint64_t next_u64() { return splitmix64(state_); }

  // [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n)
  int uniform_int(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(next_u64()) *
                             static_cast<unsigned __int128>(n)) >> 64);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vpk
