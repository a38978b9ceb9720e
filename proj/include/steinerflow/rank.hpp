#pragma once
// Exact integer matrix rank via fraction-free (Bareiss) elimination with
// arbitrary-precision entries, so incidence ranks are never subject to
// floating-point error.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

namespace steinerflow {

using BigInt = boost::multiprecision::cpp_int;

inline int matrix_rank(std::vector<std::vector<int>> m_in) {
  const std::size_t rows = m_in.size();
  if (rows == 0) return 0;
  const std::size_t cols = m_in[0].size();
  std::vector<std::vector<BigInt>> m(rows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m[i][j] = m_in[i][j];

  BigInt prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return static_cast<int>(rank);
}

// The rank of an integer matrix over the rationals (fraction-free, so the
// name states the field the answer is exact over).
inline int rational_rank(const std::vector<std::vector<int>>& m) { return matrix_rank(m); }

}  // namespace steinerflow
