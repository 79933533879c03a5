#pragma once

// Symbolic matrices over the Laurent-polynomial ring and their exact
// determinants.  The determinant uses cofactor expansion with memoization on
// column subsets (rows are pre-sorted by sparsity so zero entries prune
// early); about 2^n * n polynomial multiplications, which is why matrix sizes
// are capped at 12.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "bloch/laurent.hpp"

namespace bloch {

using PolyMatrix = std::vector<std::vector<LaurentPoly>>;

inline constexpr int kMaxDeterminantSize = 12;

inline LaurentPoly determinant(const PolyMatrix& m, int dim) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return LaurentPoly::constant(dim, Rational(1));
  if (n > kMaxDeterminantSize)
    throw std::invalid_argument("determinant: matrix larger than supported limit (12)");
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("determinant: matrix is not square");

  // expand along the sparsest rows first
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto nonzeros = [&](int r) {
    int k = 0;
    for (const auto& e : m[r]) if (!e.isZero()) ++k;
    return k;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return nonzeros(a) < nonzeros(b); });
  int permSign = 1;
  {
    std::vector<int> p = order;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[j] < p[i]) permSign = -permSign;
  }

  std::unordered_map<std::uint32_t, LaurentPoly> memo;
  auto rec = [&](auto&& self, std::uint32_t mask) -> const LaurentPoly& {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    LaurentPoly det(dim);
    const int k = std::popcount(mask);
    if (k == 0) {
      det = LaurentPoly::constant(dim, Rational(1));
    } else {
      const auto& row = m[order[k - 1]];
      int pos = 0;
      for (std::uint32_t bits = mask; bits; bits &= bits - 1, ++pos) {
        int col = std::countr_zero(bits);
        const LaurentPoly& e = row[col];
        if (e.isZero()) continue;
        const LaurentPoly& sub = self(self, mask & ~(std::uint32_t(1) << col));
        if (((k - 1) + pos) % 2 == 0) det += e * sub;
        else det -= e * sub;
      }
    }
    return memo.emplace(mask, std::move(det)).first->second;
  };
  LaurentPoly result = rec(rec, (std::uint32_t(1) << n) - 1);
  if (permSign < 0) result = -result;
  return result;
}

}  // namespace bloch
