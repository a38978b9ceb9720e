#pragma once
// Latin squares, orthogonality, and transversal decompositions.

#include <functional>
#include <utility>
#include <vector>

#include "steinerflow/common.hpp"

namespace steinerflow {

struct LatinSquare {
  int n = 0;
  std::vector<std::vector<int>> cells;  // cells[row][col] in 0..n-1

  int operator()(int i, int j) const { return cells[i][j]; }
};

inline LatinSquare make_latin_square(std::vector<std::vector<int>> cells) {
  LatinSquare L;
  L.n = static_cast<int>(cells.size());
  if (L.n < 1) throw PreconditionError("a Latin square needs order at least 1");
  for (const auto& row : cells)
    if (static_cast<int>(row.size()) != L.n)
      throw PreconditionError("a Latin square must be an n-by-n array");
  for (int i = 0; i < L.n; ++i) {
    std::vector<bool> row_seen(L.n, false), col_seen(L.n, false);
    for (int j = 0; j < L.n; ++j) {
      int a = cells[i][j], b = cells[j][i];
      if (a < 0 || a >= L.n || b < 0 || b >= L.n)
        throw PreconditionError("Latin square symbols must lie in [0, n)");
      if (row_seen[a]) throw PreconditionError("a row repeats a symbol");
      if (col_seen[b]) throw PreconditionError("a column repeats a symbol");
      row_seen[a] = col_seen[b] = true;
    }
  }
  L.cells = std::move(cells);
  return L;
}

// L(i,j) = (i+j) mod n.
inline LatinSquare cyclic_square(int n) {
  if (n < 1) throw PreconditionError("a Latin square needs order at least 1");
  std::vector<std::vector<int>> cells(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cells[i][j] = (i + j) % n;
  return make_latin_square(std::move(cells));
}

inline bool are_orthogonal(const LatinSquare& a, const LatinSquare& b) {
  if (a.n != b.n) throw PreconditionError("orthogonality needs squares of equal order");
  std::vector<bool> seen(static_cast<std::size_t>(a.n) * a.n, false);
  for (int i = 0; i < a.n; ++i)
    for (int j = 0; j < a.n; ++j) {
      std::size_t key = static_cast<std::size_t>(a(i, j)) * a.n + b(i, j);
      if (seen[key]) return false;
      seen[key] = true;
    }
  return true;
}

// One cell per row; rows, columns, and symbols all distinct.
struct Transversal {
  std::vector<int> col_of_row;  // cell (i, col_of_row[i])
};

namespace detail {
// Backtracking decomposer for arbitrary squares: assign each row-index layer
// greedily with lexicographic DFS over which transversal each cell joins.
// Used only for non-cyclic squares; bounded by `budget` nodes.
inline bool decompose_generic(const LatinSquare& L, std::vector<Transversal>& out,
                              long long budget) {
  const int n = L.n;
  // transversal t picks column pick[t][i] in row i; build row by row.
  std::vector<std::vector<int>> pick(n, std::vector<int>(n, -1));
  // used_col[t][j], used_sym[t][s]
  std::vector<std::vector<bool>> used_col(n, std::vector<bool>(n, false));
  std::vector<std::vector<bool>> used_sym(n, std::vector<bool>(n, false));
  long long nodes = 0;
  // In row i, assign each column j to some transversal t.
  std::function<bool(int, int, int)> rec = [&](int i, int j, int) -> bool {
    if (j == n) return i + 1 == n ? true : rec(i + 1, 0, 0);
    if (++nodes > budget)
      throw BudgetError("transversal decomposition search exceeded its node budget", nodes);
    for (int t = 0; t < n; ++t) {
      if (pick[t][i] != -1 || used_col[t][j] || used_sym[t][L(i, j)]) continue;
      pick[t][i] = j;
      used_col[t][j] = used_sym[t][L(i, j)] = true;
      if (rec(i, j + 1, 0)) return true;
      pick[t][i] = -1;
      used_col[t][j] = used_sym[t][L(i, j)] = false;
      // symmetry break: in row 0, transversal t is the one containing column t
      if (i == 0) break;
    }
    return false;
  };
  // row 0: transversal t takes column t (canonical labeling)
  for (int t = 0; t < n; ++t) {
    pick[t][0] = t;
    used_col[t][t] = used_sym[t][L(0, t)] = true;
  }
  bool ok = n == 1 ? true : rec(1, 0, 0);
  if (!ok) return false;
  out.assign(n, Transversal{});
  for (int t = 0; t < n; ++t) out[t].col_of_row = pick[t];
  return true;
}

inline bool is_cyclic_square(const LatinSquare& L) {
  for (int i = 0; i < L.n; ++i)
    for (int j = 0; j < L.n; ++j)
      if (L(i, j) != (i + j) % L.n) return false;
  return true;
}
}  // namespace detail

// Partition of all cells into n disjoint transversals, emitted in canonical
// order. Odd cyclic squares use the broken diagonals T_c = {(i, (i+c) mod n)}
// (symbols 2i+c are distinct because gcd(2,n)=1); even cyclic squares are
// rejected (the symbol-sum of any transversal would be n/2 mod n, not 0).
inline std::vector<Transversal> transversal_decomposition(const LatinSquare& L,
                                                          long long budget = 20'000'000) {
  const int n = L.n;
  if (detail::is_cyclic_square(L)) {
    if (n % 2 == 0 && n > 1)
      throw PreconditionError(
          "the cyclic square of even order has no transversal: transversal symbols sum to "
          "n(n-1)/2 = n/2 (mod n), but row and column indices force the sum 0 (mod n)");
    std::vector<Transversal> out(n);
    for (int c = 0; c < n; ++c) {
      out[c].col_of_row.resize(n);
      for (int i = 0; i < n; ++i) out[c].col_of_row[i] = (i + c) % n;
    }
    return out;
  }
  std::vector<Transversal> out;
  if (!detail::decompose_generic(L, out, budget))
    throw PreconditionError("the square has no decomposition into disjoint transversals");
  return out;
}

}  // namespace steinerflow
