#pragma once

// Seeded, splittable randomness. Every random object in the lab is derived
// from (base seed, run index, role tag), so any run can be replayed from its
// seed alone and Alice/Bob can rebuild the same shared randomness
// independently. Sampling is hand-rolled on top of mt19937_64 because the
// standard distributions are implementation-defined and would break
// byte-identical reruns across toolchains.

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace bindlab {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// FNV-1a, used to fold role tags ("sigma1", "bob-order", ...) into the seed.
inline uint64_t tag64(std::string_view tag) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : tag) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline uint64_t derive_seed(uint64_t base, uint64_t run, std::string_view role) {
  uint64_t s = splitmix64(base);
  s = splitmix64(s ^ (0x9e3779b97f4a7c15ull + run));
  s = splitmix64(s ^ tag64(role));
  return s;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  static Rng derived(uint64_t base, uint64_t run, std::string_view role) {
    return Rng(derive_seed(base, run, role));
  }

  uint64_t u64() { return eng_(); }

  // Uniform in [0, bound), unbiased via rejection. bound must be nonzero.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    uint64_t min = (-bound) % bound;  // 2^64 mod bound
    for (;;) {
      uint64_t r = eng_();
      if (r >= min) return r % bound;
    }
  }

  // Uniform integer in [lo, hi], inclusive.
  int int_in(int lo, int hi) {
    if (lo > hi) throw std::invalid_argument("Rng::int_in: empty range");
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi) - lo + 1));
  }

  bool bit() { return (eng_() >> 63) != 0; }

  double real01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Random bijection of [1..n], image form: result[i-1] = sigma(i).
  std::vector<int> permutation(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
    shuffle(p);
    return p;
  }

  // k distinct indices out of [0..m), uniform without replacement
  // (partial Fisher-Yates), returned in selection order.
  std::vector<size_t> sample_indices(size_t m, size_t k) {
    if (k > m) throw std::invalid_argument("Rng::sample_indices: k > m");
    std::vector<size_t> pool(m);
    for (size_t i = 0; i < m; ++i) pool[i] = i;
    for (size_t i = 0; i < k; ++i) {
      size_t j = i + static_cast<size_t>(below(m - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 eng_;
};

// Stateless keyed hash for per-edge coin flips (subsampling). Same (seed,u,v)
// always lands on the same side, so a later deletion sees the same decision.
inline uint64_t edge_hash(uint64_t seed, int u, int v) {
  uint64_t h = splitmix64(seed ^ 0x5bf03635deadbeefull);
  h = splitmix64(h ^ static_cast<uint64_t>(u));
  h = splitmix64(h ^ (static_cast<uint64_t>(v) << 32 | 0x1ull));
  return h;
}

}  // namespace bindlab
