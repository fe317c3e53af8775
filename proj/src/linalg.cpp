#include "qpsurf/linalg.hpp"

#include <algorithm>
#include <utility>

namespace qpsurf {

namespace {

// Row echelon form in place; returns the pivot columns.
std::vector<int> echelonize(std::vector<std::vector<Rational>>& m) {
  std::vector<int> pivot_columns;
  if (m.empty()) return pivot_columns;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot == -1) continue;
    std::swap(m[row], m[pivot]);
    const Rational inv = Rational(1) / m[row][col];
    for (int c = col; c < cols; ++c) m[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational factor = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivot_columns.push_back(col);
    ++row;
  }
  return pivot_columns;
}

}  // namespace

int rational_rank(std::vector<std::vector<Rational>> m) {
  return static_cast<int>(echelonize(m).size());
}

Integer integer_determinant(std::vector<std::vector<Integer>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row == -1) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // exact division
    prev = m[k][k];
  }
  return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

std::vector<std::vector<Rational>> rational_nullspace(
    const std::vector<std::vector<Rational>>& m) {
  if (m.empty()) return {};
  auto work = m;
  const int cols = static_cast<int>(m[0].size());
  const auto pivot_columns = echelonize(work);

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_columns) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, 0);
    v[free] = 1;
    // Back-substitute: pivot row r has its 1 in pivot_columns[r].
    for (std::size_t r = 0; r < pivot_columns.size(); ++r)
      v[pivot_columns[r]] = -work[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace qpsurf
