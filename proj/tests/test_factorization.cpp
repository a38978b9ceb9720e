// Latin squares, transversals, 1-factorizations, weighted factorizations,
// and the triangles-plus-factors partition.
#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "steinerflow/factorization.hpp"
#include "steinerflow/latin.hpp"

using namespace steinerflow;

namespace {

// Independent re-verification (the library self-checks; tests must not rely
// on that alone).
void check_transversal_partition(const LatinSquare& L, const std::vector<Transversal>& ts) {
  REQUIRE(static_cast<int>(ts.size()) == L.n);
  std::set<std::pair<int, int>> cells;
  for (const auto& t : ts) {
    REQUIRE(static_cast<int>(t.col_of_row.size()) == L.n);
    std::set<int> cols, syms;
    for (int i = 0; i < L.n; ++i) {
      cols.insert(t.col_of_row[i]);
      syms.insert(L(i, t.col_of_row[i]));
      cells.insert({i, t.col_of_row[i]});
    }
    REQUIRE(static_cast<int>(cols.size()) == L.n);
    REQUIRE(static_cast<int>(syms.size()) == L.n);
  }
  REQUIRE(cells.size() == static_cast<std::size_t>(L.n) * L.n);
}

void check_k_null(const WeightedOneFactorization& w, int expected_n, int declared_k) {
  const int n = w.base.n;
  REQUIRE(n == expected_n);
  REQUIRE(w.base.bipartite);
  REQUIRE(w.k == declared_k);
  std::vector<long long> left(n, 0), right(n, 0);
  std::set<Edge> seen;
  REQUIRE(w.base.factors.size() == static_cast<std::size_t>(n));
  for (std::size_t f = 0; f < w.base.factors.size(); ++f) {
    long long fsum = 0;
    std::set<int> ls, rs;
    REQUIRE(w.base.factors[f].size() == static_cast<std::size_t>(n));
    for (std::size_t e = 0; e < w.base.factors[f].size(); ++e) {
      auto [a, b] = w.base.factors[f][e];
      int val = w.weights[f][e];
      REQUIRE(val != 0);
      REQUIRE(std::abs(val) <= declared_k - 1);
      fsum += val;
      left[a] += val;
      right[b] += val;
      ls.insert(a);
      rs.insert(b);
      REQUIRE(seen.insert({a, b}).second);
    }
    REQUIRE(fsum == 0);
    REQUIRE(ls.size() == static_cast<std::size_t>(n));
    REQUIRE(rs.size() == static_cast<std::size_t>(n));
  }
  REQUIRE(seen.size() == static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    REQUIRE(left[x] == 0);
    REQUIRE(right[x] == 0);
  }
}

void check_tfp(const TriangleFactorPartition& p) {
  const int n = p.n;
  REQUIRE(static_cast<int>(p.triangles.size()) == n);
  REQUIRE(static_cast<int>(p.factors.size()) == n - 7);
  std::set<Edge> seen;
  std::vector<int> tri_cnt(n, 0);
  auto add = [&](int u, int v) {
    REQUIRE(u != v);
    REQUIRE(seen.insert({std::min(u, v), std::max(u, v)}).second);
  };
  for (const auto& t : p.triangles) {
    add(t[0], t[1]);
    add(t[0], t[2]);
    add(t[1], t[2]);
    for (int x : t) ++tri_cnt[x];
  }
  for (int x = 0; x < n; ++x) REQUIRE(tri_cnt[x] == 3);
  for (const auto& f : p.factors) {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : f) {
      add(u, v);
      ++deg[u];
      ++deg[v];
    }
    for (int x = 0; x < n; ++x) REQUIRE(deg[x] == 1);
  }
  REQUIRE(seen.size() == static_cast<std::size_t>(n) * (n - 1) / 2);
}

}  // namespace

TEST_CASE("cyclic Latin squares") {
  auto L3 = cyclic_square(3);
  REQUIRE(L3.cells == std::vector<std::vector<int>>{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
  REQUIRE(cyclic_square(1).cells == std::vector<std::vector<int>>{{0}});
  auto L5 = cyclic_square(5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) REQUIRE(L5(i, j) == (i + j) % 5);
  REQUIRE_THROWS_AS(make_latin_square({{0, 1}, {1, 1}}), PreconditionError);
  REQUIRE_THROWS_AS(make_latin_square({{0, 0}, {1, 1}}), PreconditionError);
}

TEST_CASE("orthogonality") {
  auto a = cyclic_square(3);
  std::vector<std::vector<int>> diff(3, std::vector<int>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) diff[i][j] = ((i - j) % 3 + 3) % 3;
  auto b = make_latin_square(diff);
  REQUIRE(are_orthogonal(a, b));
  REQUIRE_FALSE(are_orthogonal(a, a));
  // no pair of order-2 squares is orthogonal
  auto c2 = cyclic_square(2);
  auto other2 = make_latin_square({{1, 0}, {0, 1}});
  REQUIRE_FALSE(are_orthogonal(c2, c2));
  REQUIRE_FALSE(are_orthogonal(c2, other2));
  REQUIRE_FALSE(are_orthogonal(other2, other2));
  REQUIRE_THROWS_AS(are_orthogonal(a, c2), PreconditionError);
}

TEST_CASE("broken diagonals decompose odd cyclic squares") {
  for (int n : {1, 3, 5, 7, 9, 15}) {
    CAPTURE(n);
    auto L = cyclic_square(n);
    auto ts = transversal_decomposition(L);
    check_transversal_partition(L, ts);
    // canonical emission order: transversal c passes through cell (0, c)
    for (int c = 0; c < n; ++c) REQUIRE(ts[c].col_of_row[0] == c);
  }
}

TEST_CASE("even cyclic squares have no transversal decomposition") {
  REQUIRE_THROWS_AS(transversal_decomposition(cyclic_square(2)), PreconditionError);
  REQUIRE_THROWS_AS(transversal_decomposition(cyclic_square(4)), PreconditionError);
  REQUIRE_THROWS_AS(transversal_decomposition(cyclic_square(6)), PreconditionError);
}

TEST_CASE("generic backtracking decomposes a non-cyclic square") {
  // Klein four-group table: not cyclic, admits a transversal decomposition.
  auto K = make_latin_square({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
  auto ts = transversal_decomposition(K);
  check_transversal_partition(K, ts);
}

TEST_CASE("circle-method factorization of the complete graph") {
  auto f4 = complete_one_factorization(4);
  REQUIRE(f4.factors.size() == 3);
  auto f10 = complete_one_factorization(10);
  REQUIRE(f10.factors.size() == 9);
  std::set<Edge> all;
  for (const auto& f : f10.factors) {
    REQUIRE(f.size() == 5);
    for (auto e : f) REQUIRE(all.insert(e).second);
  }
  REQUIRE(all.size() == 45);
  REQUIRE_THROWS_AS(complete_one_factorization(7), PreconditionError);
}

TEST_CASE("cyclic bipartite factorization") {
  auto f3 = bipartite_one_factorization(3);
  REQUIRE(f3.factors.size() == 3);
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) REQUIRE(f3.factors[i][a] == Edge{a, (a + i) % 3});
  REQUIRE(bipartite_one_factorization(1).factors == std::vector<std::vector<Edge>>{{{0, 0}}});
  auto f10 = bipartite_one_factorization(10);
  REQUIRE(f10.factors.size() == 10);
  std::size_t edges = 0;
  for (const auto& f : f10.factors) edges += f.size();
  REQUIRE(edges == 100);
}

TEST_CASE("weighted bipartite factorizations across the construction regimes") {
  // width 2, n = 0 mod 4 (pairing)
  for (int n : {4, 8, 12, 16, 20, 24}) {
    CAPTURE(n);
    check_k_null(k_null_bipartite(n, 2), n, 2);
  }
  // width 2, n = 2 mod 4 (flipped-table construction)
  for (int n : {10, 14, 18, 22, 26, 30}) {
    CAPTURE(n);
    check_k_null(k_null_bipartite(n, 2), n, 2);
  }
  // width 3, even orders (pairing / diagonal pairs)
  for (int n : {4, 6, 10, 12, 14}) {
    CAPTURE(n);
    check_k_null(k_null_bipartite(n, 3), n, 3);
  }
  // width 3, odd orders divisible by 3, 5, or 7 (seed tilings)
  for (int n : {3, 5, 7, 9, 15, 21, 25, 27, 33, 35, 49}) {
    CAPTURE(n);
    check_k_null(k_null_bipartite(n, 3), n, 3);
  }
}

TEST_CASE("weighted factorization determinism") {
  auto a = k_null_bipartite(10, 2);
  auto b = k_null_bipartite(10, 2);
  REQUIRE(a.weights == b.weights);
  REQUIRE(a.base.factors == b.base.factors);
}

TEST_CASE("weighted factorization refusals") {
  REQUIRE_THROWS_AS(k_null_bipartite(5, 2), PreconditionError);   // odd order at width 2
  REQUIRE_THROWS_AS(k_null_bipartite(6, 2), PreconditionError);   // excluded order
  REQUIRE_THROWS_AS(k_null_bipartite(2, 2), PreconditionError);   // provably impossible
  REQUIRE_THROWS_AS(k_null_bipartite(2, 3), PreconditionError);   // below the guarantee
  REQUIRE_THROWS_AS(k_null_bipartite(10, 1), PreconditionError);  // unsupported width
  REQUIRE_THROWS_AS(k_null_bipartite(10, 4), PreconditionError);  // unsupported width
}

TEST_CASE("searched odd order either solves or reports its budget") {
  // 11 is the least odd order outside the seed tilings; the bounded search
  // must return a verified object or exhaust its budget, never hand back an
  // unchecked result.
  try {
    auto w = k_null_bipartite(11, 3, 2'000'000);
    check_k_null(w, 11, 3);
  } catch (const BudgetError& e) {
    REQUIRE(std::string(e.what()).find("budget") != std::string::npos);
  }
}

TEST_CASE("triangle-factor partitions at desk scale") {
  for (int n : {8, 10, 12, 14, 16, 20, 22}) {
    CAPTURE(n);
    auto p = triangle_factor_partition(n);
    check_tfp(p);
  }
  REQUIRE_THROWS_AS(triangle_factor_partition(7), PreconditionError);
  REQUIRE_THROWS_AS(triangle_factor_partition(6), PreconditionError);
}

TEST_CASE("triangle-factor cache round trip survives corruption") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sf-cache-test";
  fs::remove_all(dir);
  setenv("STEINERFLOW_CACHE", dir.c_str(), 1);
  auto p1 = triangle_factor_partition(10);
  check_tfp(p1);
  REQUIRE(fs::exists(dir / "tfp_n10.json"));
  auto p2 = triangle_factor_partition(10);  // cache hit
  check_tfp(p2);
  REQUIRE(p1.triangles == p2.triangles);
  REQUIRE(p1.factors == p2.factors);
  {
    std::ofstream out(dir / "tfp_n10.json");
    out << "{\"format\":\"triangle-factor-v1\",\"digest\":\"0000000000000000\",\"payload\":{}}";
  }
  auto p3 = triangle_factor_partition(10);  // digest mismatch -> recompute
  check_tfp(p3);
  REQUIRE(p1.triangles == p3.triangles);
  // restore the ctest-provided cache dir for later tests in this binary
  fs::remove_all(dir);
  unsetenv("STEINERFLOW_CACHE");
}

TEST_CASE("triangle-factor budget exhaustion is reported") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sf-cache-test2";
  fs::remove_all(dir);
  setenv("STEINERFLOW_CACHE", dir.c_str(), 1);
  REQUIRE_THROWS_AS(triangle_factor_partition(20, 10), BudgetError);
  unsetenv("STEINERFLOW_CACHE");
  fs::remove_all(dir);
}

TEST_CASE("canonical triangle/factor weighting balances every vertex") {
  for (int n : {8, 10, 12, 14}) {
    CAPTURE(n);
    auto p = triangle_factor_partition(n);
    auto w = decompose_partition_weights(p);
    REQUIRE(w.triangle_weights == std::vector<int>(n, 1));
    if (n == 8) REQUIRE(w.factor_weights == std::vector<int>{-3});
    if (n == 10) REQUIRE(w.factor_weights == std::vector<int>{-1, -1, -1});
    if (n == 12) REQUIRE(w.factor_weights == std::vector<int>{-1, -1, -1, 1, -1});
    std::vector<long long> sum(n, 0);
    for (std::size_t i = 0; i < p.triangles.size(); ++i)
      for (int x : p.triangles[i]) sum[x] += w.triangle_weights[i];
    for (int x = 0; x < n; ++x) REQUIRE(sum[x] == 3);
    for (std::size_t f = 0; f < p.factors.size(); ++f)
      for (auto [u, v] : p.factors[f]) {
        sum[u] += w.factor_weights[f];
        sum[v] += w.factor_weights[f];
      }
    for (int x = 0; x < n; ++x) REQUIRE(sum[x] == 0);
  }
}
