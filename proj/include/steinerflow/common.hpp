#pragma once
// Shared utilities: error types, FNV-1a digest, binomial coefficients, and
// lexicographic t-subset ranking used by the validators.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace steinerflow {

// A block of a design / a triple; entries are 0-based point indices.
using Block = std::vector<int>;

// A mathematical hypothesis of the requested operation does not hold
// (maps to CLI exit code 2).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A bounded search ran out of nodes (maps to CLI exit code 3).
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what, long long nodes_explored = -1)
      : std::runtime_error(what), nodes(nodes_explored) {}
  long long nodes;
};

// 64-bit FNV-1a over a byte string.
inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string to_hex16(std::uint64_t x) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[x & 0xf];
    x >>= 4;
  }
  return s;
}

// Small Pascal triangle with saturation; values above `cap` are pinned to
// cap+1 so callers can detect "too large" without overflow.
class BinomialTable {
 public:
  BinomialTable(int max_n, int max_k, long long cap = (1LL << 62))
      : max_k_(max_k), cap_(cap), c_((max_n + 1) * (max_k + 1), 0) {
    for (int n = 0; n <= max_n; ++n) {
      at(n, 0) = 1;
      for (int k = 1; k <= max_k && k <= n; ++k) {
        long long a = (n - 1 >= k) ? at(n - 1, k) : 0;
        long long b = at(n - 1, k - 1);
        long long s = a + b;
        at(n, k) = (a > cap_ || b > cap_ || s > cap_) ? cap_ + 1 : s;
      }
    }
  }
  long long operator()(int n, int k) const {
    if (k < 0 || k > max_k_ || n < 0 || k > n) return 0;
    return c_[static_cast<size_t>(n) * (max_k_ + 1) + k];
  }

 private:
  long long& at(int n, int k) { return c_[static_cast<size_t>(n) * (max_k_ + 1) + k]; }
  int max_k_;
  long long cap_;
  std::vector<long long> c_;
};

// Rank of a strictly increasing t-subset of {0..v-1} in lexicographic order.
inline long long subset_rank(const std::vector<int>& s, int v, const BinomialTable& C) {
  long long rank = 0;
  int t = static_cast<int>(s.size());
  int prev = -1;
  for (int i = 0; i < t; ++i) {
    for (int x = prev + 1; x < s[i]; ++x) rank += C(v - 1 - x, t - 1 - i);
    prev = s[i];
  }
  return rank;
}

// Inverse of subset_rank.
inline std::vector<int> subset_unrank(long long rank, int v, int t, const BinomialTable& C) {
  std::vector<int> s;
  s.reserve(t);
  int x = 0;
  for (int i = 0; i < t; ++i) {
    while (true) {
      long long below = C(v - 1 - x, t - 1 - i);
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    s.push_back(x++);
  }
  return s;
}

}  // namespace steinerflow
