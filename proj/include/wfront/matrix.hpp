#pragma once

#include <utility>
#include <vector>

#include "wfront/common.hpp"
#include "wfront/mpoly.hpp"

namespace wfront {

template <class K>
struct Matrix {
  size_t n = 0;
  std::vector<K> a;

  Matrix() = default;
  explicit Matrix(size_t size, K fill = K{}) : n(size), a(size * size, fill) {}
  K& at(size_t i, size_t j) { return a[i * n + j]; }
  const K& at(size_t i, size_t j) const { return a[i * n + j]; }
};

// Fraction-free Bareiss elimination. Every interior division is exact over an
// integral domain; k_div enforces that. Row pivoting only (sign tracked).
template <class K>
K bareiss_det(Matrix<K> m, const K& one) {
  if (m.n == 0) return one;
  int sign = 1;
  K prev = one;
  for (size_t k = 0; k + 1 < m.n; ++k) {
    if (k_is_zero(m.at(k, k))) {
      size_t swap_row = m.n;
      for (size_t i = k + 1; i < m.n; ++i) {
        if (!k_is_zero(m.at(i, k))) {
          swap_row = i;
          break;
        }
      }
      if (swap_row == m.n) return k_zero_like(one);  // singular
      for (size_t j = 0; j < m.n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (size_t i = k + 1; i < m.n; ++i) {
      for (size_t j = k + 1; j < m.n; ++j) {
        K t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = k_div(t, prev);
      }
      m.at(i, k) = k_zero_like(one);
    }
    prev = m.at(k, k);
  }
  K det = m.at(m.n - 1, m.n - 1);
  return sign < 0 ? -det : det;
}

}  // namespace wfront
