#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ksys {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(msg);
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// Largest s with s*s <= n.
inline long isqrt_floor(long n) {
  if (n < 0) throw Error("isqrt of negative");
  long s = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && s * s > n) --s;
  while ((s + 1) * (s + 1) <= n) ++s;
  return s;
}

// splitmix64, used for deterministic seeded sampling.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  uint64_t below(uint64_t bound) { return next() % bound; }
  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

}  // namespace ksys
