#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlat {

// Thrown when an enumeration would exceed its configured cap.  The policy
// everywhere is: refuse loudly, never return a truncated (wrong) answer.
struct capacity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by inversion of a singular matrix; carries the rank so callers can
// report how far the elimination got.
struct singular_matrix_error : std::runtime_error {
  int rank;
  explicit singular_matrix_error(int r)
      : std::runtime_error("matrix not invertible (rank " + std::to_string(r) + ")"),
        rank(r) {}
};

inline void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

inline std::uint64_t hash_ints(const std::vector<int>& v) {
  std::uint64_t h = 1469598103934665603ULL;
  for (int x : v) hash_mix(h, static_cast<std::uint64_t>(x) + 1);
  return h;
}

inline bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Deterministic RNG for sampled checks; fixed seed keeps runs reproducible.
inline std::mt19937_64& test_rng() {
  static std::mt19937_64 rng(0x51a7e5ULL);
  return rng;
}

}  // namespace qlat
