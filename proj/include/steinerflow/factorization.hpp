#pragma once
// Edge partitions of complete and complete bipartite graphs:
// 1-factorizations, k-null weighted 1-factorizations, and the
// triangles-plus-1-factors partition of K_n with its canonical weighting.
//
// Every weighted object is re-checked against its invariants after each
// construction and after each cache load; violations are logic errors, not
// preconditions, because the constructions are supposed to be total on their
// stated domains.

#include <algorithm>
#include <array>
#include <cstdlib>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "steinerflow/cache.hpp"
#include "steinerflow/common.hpp"

namespace steinerflow {

using Edge = std::pair<int, int>;

struct OneFactorization {
  int n = 0;          // vertices per side (bipartite) or total (complete)
  bool bipartite = false;
  std::vector<std::vector<Edge>> factors;
};

inline void ensure_one_factorization(const OneFactorization& of) {
  const int n = of.n;
  const std::size_t expect_factors = of.bipartite ? n : n - 1;
  const std::size_t expect_edges = of.bipartite ? n : n / 2;
  if (of.factors.size() != expect_factors)
    throw std::logic_error("one-factorization has the wrong number of factors");
  std::set<Edge> seen;
  for (const auto& f : of.factors) {
    if (f.size() != expect_edges)
      throw std::logic_error("a factor has the wrong number of edges");
    std::vector<int> left(n, 0), right(n, 0);
    for (const auto& [u, v] : f) {
      if (u < 0 || u >= n || v < 0 || v >= n || (!of.bipartite && u >= v))
        throw std::logic_error("factor edge out of range");
      if (!seen.insert({u, v}).second) throw std::logic_error("edge appears twice");
      ++left[u];
      ++(of.bipartite ? right : left)[v];
    }
    for (int x = 0; x < n; ++x) {
      if (left[x] != 1 || (of.bipartite && right[x] != 1))
        throw std::logic_error("a factor misses or repeats a vertex");
    }
  }
  const std::size_t total = of.bipartite ? static_cast<std::size_t>(n) * n
                                         : static_cast<std::size_t>(n) * (n - 1) / 2;
  if (seen.size() != total) throw std::logic_error("factors do not cover the edge set");
}

// Circle method: factor i pairs {n-1, i} and {(i+j) mod (n-1), (i-j) mod (n-1)}.
inline OneFactorization complete_one_factorization(int n) {
  if (n < 2 || n % 2 != 0)
    throw PreconditionError("a one-factorization of the complete graph needs even order >= 2");
  OneFactorization of;
  of.n = n;
  of.bipartite = false;
  const int m = n - 1;
  for (int i = 0; i < m; ++i) {
    std::vector<Edge> f;
    f.emplace_back(std::min(n - 1, i), std::max(n - 1, i));
    for (int j = 1; j <= n / 2 - 1; ++j) {
      int a = (i + j) % m, b = ((i - j) % m + m) % m;
      f.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(f.begin(), f.end());
    of.factors.push_back(std::move(f));
  }
  ensure_one_factorization(of);
  return of;
}

// F_i = {(a, (a+i) mod n)} on K_{n,n}.
inline OneFactorization bipartite_one_factorization(int n) {
  if (n < 1) throw PreconditionError("a bipartite one-factorization needs n >= 1");
  OneFactorization of;
  of.n = n;
  of.bipartite = true;
  for (int i = 0; i < n; ++i) {
    std::vector<Edge> f;
    for (int a = 0; a < n; ++a) f.emplace_back(a, (a + i) % n);
    of.factors.push_back(std::move(f));
  }
  ensure_one_factorization(of);
  return of;
}

// A 1-factorization whose edges carry nonzero integer weights with zero sum
// at every vertex and zero total in every factor; |weight| <= k-1.
struct WeightedOneFactorization {
  OneFactorization base;
  std::vector<std::vector<int>> weights;  // parallel to base.factors
  int k = 0;
};

inline void ensure_k_null(const WeightedOneFactorization& w) {
  ensure_one_factorization(w.base);
  const int n = w.base.n;
  if (w.weights.size() != w.base.factors.size())
    throw std::logic_error("weights are not parallel to the factors");
  std::vector<long long> left(n, 0), right(n, 0);
  for (std::size_t f = 0; f < w.weights.size(); ++f) {
    if (w.weights[f].size() != w.base.factors[f].size())
      throw std::logic_error("weights are not parallel to the factors");
    long long fsum = 0;
    for (std::size_t e = 0; e < w.weights[f].size(); ++e) {
      int val = w.weights[f][e];
      if (val == 0 || std::abs(val) > w.k - 1)
        throw std::logic_error("a weight is zero or exceeds k-1 in magnitude");
      fsum += val;
      const auto& [u, v] = w.base.factors[f][e];
      left[u] += val;
      (w.base.bipartite ? right : left)[v] += val;
    }
    if (fsum != 0) throw std::logic_error("a factor's total weight is nonzero");
  }
  for (int x = 0; x < n; ++x)
    if (left[x] != 0 || (w.base.bipartite && right[x] != 0))
      throw std::logic_error("a vertex's incident weight sum is nonzero");
}

namespace detail {

// weights[a][b] -> WeightedOneFactorization over the given bipartite factors.
inline WeightedOneFactorization pack_bipartite(OneFactorization base,
                                               const std::vector<std::vector<int>>& wmat, int k) {
  WeightedOneFactorization w;
  w.base = std::move(base);
  w.k = k;
  for (const auto& f : w.base.factors) {
    std::vector<int> row;
    row.reserve(f.size());
    for (const auto& [a, b] : f) row.push_back(wmat[a][b]);
    w.weights.push_back(std::move(row));
  }
  ensure_k_null(w);
  return w;
}

// n = 0 (mod 4): w(a, a+i) = (-1)^a * (+1 for i < n/2, -1 otherwise). Rows
// and factors balance by the sign split over i; columns balance because the
// alternating partial sums over each half of the i-range vanish (n/2 even).
inline WeightedOneFactorization knull_pairing(int n, int k) {
  std::vector<std::vector<int>> wmat(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      wmat[a][(a + i) % n] = (i < n / 2 ? 1 : -1) * (a % 2 == 0 ? 1 : -1);
  return pack_bipartite(bipartite_one_factorization(n), wmat, k);
}

// n = 2 (mod 4), n = 2m >= 6, width 3: factors i and i+m meet each row pair
// {a, a+m} in a 4-cycle; alternate +-(magnitude) around each cycle. Cycle
// a=0 contributes (+4,-4) to the factor pair, cycles a=1,2 contribute
// (-2,+2), and the remaining even count of cycles alternates (+2,-2).
inline WeightedOneFactorization knull_diagonal_pairs(int n, int k) {
  const int m = n / 2;
  std::vector<std::vector<int>> wmat(n, std::vector<int>(n));
  for (int c = 0; c < m; ++c)
    for (int a = 0; a < m; ++a) {
      int s, g;
      if (a == 0) {
        s = 1;
        g = 2;
      } else if (a <= 2) {
        s = -1;
        g = 1;
      } else {
        s = (a % 2 == 1) ? 1 : -1;
        g = 1;
      }
      wmat[a][(a + c) % n] = s * g;
      wmat[a][(a + c + m) % n] = -s * g;
      wmat[a + m][(a + c + m) % n] = s * g;
      wmat[a + m][(a + c) % n] = -s * g;
    }
  return pack_bipartite(bipartite_one_factorization(n), wmat, k);
}

// p x p blocks with zero rows, columns, and broken diagonals; tiling by
// residues mod p keeps all three invariant families zero for any n = 0 (mod p).
inline const std::vector<std::vector<int>>* knull_seed(int p) {
  static const std::vector<std::vector<int>> s3 = {{2, -1, -1}, {-1, -1, 2}, {-1, 2, -1}};
  static const std::vector<std::vector<int>> s5 = {{1, 1, 1, -1, -2},
                                                   {1, 1, -1, 1, -2},
                                                   {1, -1, -2, 1, 1},
                                                   {-1, 1, 1, -2, 1},
                                                   {-2, -2, 1, 1, 2}};
  static const std::vector<std::vector<int>> s7 = {
      {1, 1, 1, 1, -1, -1, -2},  {1, 1, 1, 1, -1, -1, -2}, {1, 1, 1, -1, -1, 1, -2},
      {2, -2, -2, -2, 1, 1, 2},  {-1, 2, 1, -2, -1, -1, 2}, {-2, -1, -1, 2, 2, -1, 1},
      {-2, -2, -1, 1, 1, 2, 1}};
  switch (p) {
    case 3: return &s3;
    case 5: return &s5;
    case 7: return &s7;
    default: return nullptr;
  }
}

inline WeightedOneFactorization knull_seed_tiling(int n, int p, int k) {
  const auto& S = *knull_seed(p);
  std::vector<std::vector<int>> wmat(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) wmat[a][b] = S[a % p][b % p];
  return pack_bipartite(bipartite_one_factorization(n), wmat, k);
}

// n = 2 (mod 4), n = 2m, m odd >= 5, width 2. The plain cyclic table admits
// no such weighting (a parity count over the even symbol classes obstructs
// it), so one intercalate {0,m} x {0,m} is flipped; the +1 cells on the
// diagonal a+b = s are A shifted by g(s), with the two flipped classes
// patched by hand.
inline WeightedOneFactorization knull_flipped_table(int n) {
  const int m = n / 2;
  std::vector<int> g(n, 0);
  for (int s = 0; s < m; ++s) g[s] = (2 * s) % n;
  for (int j = 0; j <= (m - 1) / 2; ++j) g[m + 2 * j] = (4 * j + 1) % n;
  for (int j = 0; j <= (m - 3) / 2; ++j) g[m + 1 + 2 * j] = (4 * j + 3) % n;
  std::set<int> A = {0, m - 1, 2 * m - 1};
  for (int j = 1; j <= (m - 3) / 2; ++j) {
    A.insert(j);
    A.insert(j + m);
  }
  std::vector<std::vector<int>> wmat(n, std::vector<int>(n, -1));
  for (int s = 0; s < n; ++s) {
    std::set<int> As;
    if (s == 0) {
      As = A;
      As.insert(m);
    } else if (s == m) {
      for (int x : A) As.insert((x + 1) % n);
      As.erase(m);
    } else {
      for (int x : A) As.insert((x + g[s]) % n);
    }
    for (int a : As) wmat[a][((s - a) % n + n) % n] = 1;
  }
  // factors are the symbol classes of the flipped table
  OneFactorization base;
  base.n = n;
  base.bipartite = true;
  base.factors.assign(n, {});
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int sym = (a + b) % n;
      if ((a == 0 || a == m) && (b == 0 || b == m)) sym = (sym == 0) ? m : 0;
      base.factors[sym].emplace_back(a, b);
    }
  return pack_bipartite(std::move(base), wmat, 2);
}

// Bounded lexicographic DFS over the cyclic table with values {1,-1,2,-2}
// and running row/column/diagonal sums; used only for odd n not divisible
// by 3, 5, or 7. Results are cached.
inline std::optional<std::vector<std::vector<int>>> knull_cell_search(int n, long long budget,
                                                                      long long* nodes_out) {
  std::vector<std::vector<int>> S(n, std::vector<int>(n, 0));
  std::vector<long long> row(n, 0), col(n, 0), diag(n, 0);
  long long nodes = 0;
  const int vals[4] = {1, -1, 2, -2};
  std::function<bool(int)> rec = [&](int pos) -> bool {
    if (pos == n * n) return true;
    int i = pos / n, j = pos % n;
    int d = ((j - i) % n + n) % n;
    long long rows_left = n - 1 - j;
    long long cols_left = n - 1 - i;
    long long diag_left = n - 1 - i;
    if (++nodes > budget) throw BudgetError("cell search exceeded its node budget", nodes);
    for (int v : vals) {
      if (std::abs(row[i] + v) > 2 * rows_left) continue;
      if (std::abs(col[j] + v) > 2 * cols_left) continue;
      if (std::abs(diag[d] + v) > 2 * diag_left) continue;
      S[i][j] = v;
      row[i] += v;
      col[j] += v;
      diag[d] += v;
      if (rec(pos + 1)) return true;
      row[i] -= v;
      col[j] -= v;
      diag[d] -= v;
      S[i][j] = 0;
    }
    return false;
  };
  bool ok = rec(0);
  if (nodes_out) *nodes_out = nodes;
  if (!ok) return std::nullopt;
  return S;
}

}  // namespace detail

// Weighted 1-factorization of K_{n,n} with all invariants of ensure_k_null.
// Domain: k=3 needs n >= 3; k=2 needs n even and n != 6. Outside that
// domain the call is refused without any claim about existence.
inline WeightedOneFactorization k_null_bipartite(int n, int k, long long budget = 50'000'000) {
  if (k != 2 && k != 3)
    throw PreconditionError("weighted factorizations are provided for widths 2 and 3 only");
  if (k == 2 && (n % 2 != 0 || n == 6))
    throw PreconditionError(
        "a 2-null one-factorization is guaranteed only for even n with n != 6");
  if (k == 3 && n < 3)
    throw PreconditionError("a 3-null one-factorization is guaranteed only for n >= 3");
  if (n == 2)
    throw PreconditionError(
        "K_{2,2} has a single one-factorization and its zero-sum equations force weight 0; no "
        "such weighting exists");
  if (n % 4 == 0) return detail::knull_pairing(n, k);
  if (n % 2 == 0) {
    // n = 2 (mod 4)
    if (k == 3) return detail::knull_diagonal_pairs(n, k);
    return detail::knull_flipped_table(n);  // k = 2, n >= 10
  }
  // odd n, k = 3
  for (int p : {3, 5, 7})
    if (n % p == 0) return detail::knull_seed_tiling(n, p, k);
  // remaining odd orders: bounded, cached search
  std::string key = "knull_n" + std::to_string(n) + "_k" + std::to_string(k);
  if (auto hit = cache_load(key, "knull-v1")) {
    auto wmat = (*hit)["weights"].get<std::vector<std::vector<int>>>();
    return detail::pack_bipartite(bipartite_one_factorization(n), wmat, k);
  }
  long long nodes = 0;
  std::optional<std::vector<std::vector<int>>> found;
  try {
    found = detail::knull_cell_search(n, budget, &nodes);
  } catch (const BudgetError& e) {
    throw BudgetError("weighted-factorization search for n = " + std::to_string(n) +
                          " exceeded " + std::to_string(budget) +
                          " nodes (cache miss; rerun with a larger budget)",
                      e.nodes);
  }
  if (!found)
    throw PreconditionError(
        "exhaustive search found no width-3 weighting of the cyclic table for this order");
  nlohmann::ordered_json payload;
  payload["n"] = n;
  payload["k"] = k;
  payload["weights"] = *found;
  cache_store(key, "knull-v1", payload);
  return detail::pack_bipartite(bipartite_one_factorization(n), *found, k);
}

// Partition of E(K_n) into n triangles (each vertex in exactly 3) and n-7
// perfect matchings.
struct TriangleFactorPartition {
  int n = 0;
  std::vector<Block> triangles;
  std::vector<std::vector<Edge>> factors;
};

inline void ensure_triangle_factor_partition(const TriangleFactorPartition& p) {
  const int n = p.n;
  if (static_cast<int>(p.triangles.size()) != n)
    throw std::logic_error("partition must contain exactly n triangles");
  if (static_cast<int>(p.factors.size()) != n - 7)
    throw std::logic_error("partition must contain exactly n-7 one-factors");
  std::set<Edge> seen;
  std::vector<int> tri_cnt(n, 0);
  auto add_edge = [&](int u, int v) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n)
      throw std::logic_error("edge out of range");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw std::logic_error("edge covered twice");
  };
  for (const auto& t : p.triangles) {
    if (t.size() != 3) throw std::logic_error("triangle must have three vertices");
    add_edge(t[0], t[1]);
    add_edge(t[0], t[2]);
    add_edge(t[1], t[2]);
    for (int x : t) ++tri_cnt[x];
  }
  for (int x = 0; x < n; ++x)
    if (tri_cnt[x] != 3) throw std::logic_error("a vertex is not in exactly 3 triangles");
  for (const auto& f : p.factors) {
    if (static_cast<int>(f.size()) != n / 2) throw std::logic_error("factor has wrong size");
    std::vector<int> deg(n, 0);
    for (const auto& [u, v] : f) {
      add_edge(u, v);
      ++deg[u];
      ++deg[v];
    }
    for (int x = 0; x < n; ++x)
      if (deg[x] != 1) throw std::logic_error("a factor misses or repeats a vertex");
  }
  if (seen.size() != static_cast<std::size_t>(n) * (n - 1) / 2)
    throw std::logic_error("partition does not cover the edge set");
}

namespace detail {

struct TfpSearch {
  int n, m;  // m = leave degree n-7
  long long budget, nodes = 0;
  std::vector<std::vector<char>> decided;   // 0 undecided, 'T', 'L'
  std::vector<int> tri_cnt, leave_cnt;
  std::vector<Block> triangles;

  explicit TfpSearch(int n_, long long budget_)
      : n(n_), m(n_ - 7), budget(budget_),
        decided(n_, std::vector<char>(n_, 0)), tri_cnt(n_, 0), leave_cnt(n_, 0) {}

  void bump() {
    if (++nodes > budget)
      throw BudgetError("triangle-factor search exceeded its node budget", nodes);
  }

  bool find_undecided(int& u, int& v) const {
    for (u = 0; u < n; ++u)
      for (v = u + 1; v < n; ++v)
        if (!decided[u][v]) return true;
    return false;
  }

  // Phase 2: color the leave graph into m perfect matchings.
  bool color_leave(std::vector<std::vector<Edge>>& factors_out) {
    std::vector<std::vector<int>> adj(n);
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (decided[u][v] == 'L') {
          adj[u].push_back(v);
          adj[v].push_back(u);
        }
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    std::vector<std::vector<Edge>> factors;
    std::function<bool(int)> fill = [&](int f) -> bool {
      if (f == m) return true;
      factors.emplace_back();
      std::vector<char> matched(n, 0);  // one scratch vector per factor level
      std::function<bool()> match = [&]() -> bool {
        int u = 0;
        while (u < n && matched[u]) ++u;
        if (u == n) return fill(f + 1);
        for (int v : adj[u]) {
          if (v < u || matched[v] || used[u][v]) continue;
          bump();
          matched[u] = matched[v] = 1;
          used[u][v] = 1;
          factors[f].emplace_back(u, v);
          if (match()) return true;
          factors[f].pop_back();
          matched[u] = matched[v] = 0;
          used[u][v] = 0;
        }
        return false;
      };
      if (match()) return true;
      factors.pop_back();
      return false;
    };
    if (!fill(0)) return false;
    factors_out = std::move(factors);
    return true;
  }

  bool rec(std::vector<std::vector<Edge>>& factors_out) {
    int u, v;
    if (!find_undecided(u, v)) {
      for (int x = 0; x < n; ++x)
        if (tri_cnt[x] != 3 || leave_cnt[x] != m) return false;
      return color_leave(factors_out);
    }
    bump();
    if (tri_cnt[u] < 3 && tri_cnt[v] < 3) {
      for (int w = 0; w < n; ++w) {
        if (w == u || w == v || tri_cnt[w] == 3) continue;
        int a1 = std::min(u, w), b1 = std::max(u, w);
        int a2 = std::min(v, w), b2 = std::max(v, w);
        if (decided[a1][b1] || decided[a2][b2]) continue;
        decided[u][v] = decided[a1][b1] = decided[a2][b2] = 'T';
        ++tri_cnt[u];
        ++tri_cnt[v];
        ++tri_cnt[w];
        Block t = {u, v, w};
        std::sort(t.begin(), t.end());
        triangles.push_back(t);
        if (rec(factors_out)) return true;
        triangles.pop_back();
        --tri_cnt[u];
        --tri_cnt[v];
        --tri_cnt[w];
        decided[u][v] = decided[a1][b1] = decided[a2][b2] = 0;
      }
    }
    if (leave_cnt[u] < m && leave_cnt[v] < m) {
      decided[u][v] = 'L';
      ++leave_cnt[u];
      ++leave_cnt[v];
      bool ok = true;
      for (int x : {u, v}) {
        int undecided = 0;
        for (int y = 0; y < n; ++y)
          if (y != x && !decided[std::min(x, y)][std::max(x, y)]) ++undecided;
        if (undecided < 2 * (3 - tri_cnt[x]) + (m - leave_cnt[x])) {
          ok = false;
          break;
        }
      }
      if (ok && rec(factors_out)) return true;
      --leave_cnt[u];
      --leave_cnt[v];
      decided[u][v] = 0;
    }
    return false;
  }
};

}  // namespace detail

inline TriangleFactorPartition triangle_factor_partition(int n, long long budget = 200'000'000) {
  if (n < 8 || n % 2 != 0)
    throw PreconditionError(
        "a triangles-plus-factors partition needs even order n >= 8 (n = v+7, v odd)");
  std::string key = "tfp_n" + std::to_string(n);
  if (auto hit = cache_load(key, "triangle-factor-v1")) {
    TriangleFactorPartition p;
    p.n = n;
    p.triangles = (*hit)["triangles"].get<std::vector<Block>>();
    p.factors = (*hit)["factors"].get<std::vector<std::vector<Edge>>>();
    ensure_triangle_factor_partition(p);
    return p;
  }
  detail::TfpSearch search(n, budget);
  TriangleFactorPartition p;
  p.n = n;
  try {
    if (!search.rec(p.factors))
      throw PreconditionError("search completed without finding a triangles-plus-factors "
                              "partition for this order");
  } catch (const BudgetError& e) {
    throw BudgetError("triangle-factor search for n = " + std::to_string(n) + " exceeded " +
                          std::to_string(budget) +
                          " nodes (cache miss; rerun with a larger budget)",
                      e.nodes);
  }
  p.triangles = search.triangles;
  ensure_triangle_factor_partition(p);
  nlohmann::ordered_json payload;
  payload["n"] = n;
  payload["triangles"] = p.triangles;
  payload["factors"] = p.factors;
  cache_store(key, "triangle-factor-v1", payload);
  return p;
}

// Canonical weighting of a triangle-factor partition: all triangles +1; with
// v = n-7 factors, v = 1 puts -3 on the single factor, otherwise the first
// three factors take -1 and factor j (1-based) takes (-1)^j for j >= 4.
// Every vertex then collects +3 from its triangles and -3 from its factors.
struct PartitionWeights {
  std::vector<int> triangle_weights;
  std::vector<int> factor_weights;
};

inline PartitionWeights decompose_partition_weights(const TriangleFactorPartition& p) {
  ensure_triangle_factor_partition(p);
  const int v = p.n - 7;
  PartitionWeights w;
  w.triangle_weights.assign(p.triangles.size(), 1);
  if (v == 1) {
    w.factor_weights = {-3};
  } else {
    w.factor_weights.assign(v, 0);
    for (int j = 1; j <= v; ++j)
      w.factor_weights[j - 1] = (j <= 3) ? -1 : (j % 2 == 0 ? 1 : -1);
  }
  long long total = 0;
  for (int x : w.factor_weights) total += x;
  if (total != -3) throw std::logic_error("factor weights must total -3 per vertex");
  return w;
}

}  // namespace steinerflow
