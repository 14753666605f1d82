#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace knotforge {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Gaussian elimination with partial pivoting. Exact zero for a singular
// pivot column.
template <class T>
T determinant(Matrix<T> a) {
  using std::abs;
  const std::size_t n = a.size();
  T det = T(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (abs(a[r][col]) > abs(a[piv][col])) piv = r;
    if (a[piv][col] == 0) return T(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const T factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

}  // namespace knotforge
