#pragma once

#include "torsion_lab/types.hpp"

#include <algorithm>
#include <vector>

namespace torsion_lab {

/// Basis conventions for the exterior algebra Λ(C^n).
///
/// Basis vectors e_I are indexed by strictly increasing subsets I of
/// {0, ..., n-1}; for each cardinality k the subsets are enumerated in
/// lexicographic order. The interior product dual to wedging with e_j acts by
///   eps*_j(e_I) = (-1)^p e_{I \ {j}}    (p = 0-based position of j in I),
/// and 0 when j is not in I.

inline long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// All size-k subsets of {0,...,n-1}, each sorted increasingly, enumerated in
/// lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// Position of subset I in the lexicographic enumeration; -1 if absent.
inline int subset_position(const std::vector<std::vector<int>>& list, const std::vector<int>& I) {
  auto it = std::lower_bound(list.begin(), list.end(), I);
  if (it == list.end() || *it != I) return -1;
  return static_cast<int>(it - list.begin());
}

struct InteriorTerm {
  int sign = 0;              // 0 when j not in I
  std::vector<int> rest;     // I with j removed
};

/// eps*_j(e_I): sign and remaining subset.
inline InteriorTerm interior_mult(const std::vector<int>& I, int j) {
  InteriorTerm t;
  auto it = std::find(I.begin(), I.end(), j);
  if (it == I.end()) return t;
  int p = static_cast<int>(it - I.begin());
  t.sign = (p % 2 == 0) ? 1 : -1;
  t.rest.reserve(I.size() - 1);
  for (int x : I)
    if (x != j) t.rest.push_back(x);
  return t;
}

/// Sign of e_j ∧ e_I relative to the sorted basis vector e_{I ∪ {j}}:
/// (-1)^{#{i in I : i < j}}. Zero-sign when j already lies in I.
inline int wedge_sign(int j, const std::vector<int>& I) {
  int below = 0;
  for (int x : I) {
    if (x == j) return 0;
    if (x < j) ++below;
  }
  return (below % 2 == 0) ? 1 : -1;
}

}  // namespace torsion_lab
