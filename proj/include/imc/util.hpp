#ifndef IMC_UTIL_HPP
#define IMC_UTIL_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

namespace imc {

// Deterministic PRNG (splitmix64). std::<distribution> types produce
// different streams across standard libraries; outputs here must be
// byte-identical for a given seed on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  // uniform in [lo, hi] inclusive
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

  // uniform in [0, 1) with 53-bit resolution
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(below(i + 1))]);
    }
  }

 private:
  std::uint64_t state_;
};

// Fixed-precision formatting used by every emitter: 9 decimal digits.
inline std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

}  // namespace imc

#endif
