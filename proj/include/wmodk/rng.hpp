#pragma once

#include <cstdint>
#include <random>

namespace wmodk {

// splitmix64 finalizer; used both as a seed mixer and to derive independent
// substream seeds so that (seed, tag) pairs never collide in practice.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
  return splitmix64(base ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

// One mt19937_64 stream exposing uniform doubles. All sampling in this
// project goes through this class so that a seed fully determines output.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : eng_(seed) {}

  // uniform on [0, 1), 53-bit resolution
  double unit() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // uniform on (0, 1): rejects exact zeros
  double unit_open() {
    double u = unit();
    while (u == 0.0) u = unit();
    return u;
  }

  // uniform integer in [0, n)
  int index(int n) {
    int i = static_cast<int>(unit() * n);
    return i < n ? i : n - 1;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace wmodk
