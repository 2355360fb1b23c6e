#pragma once

#include <algorithm>
#include <array>
#include <utility>

namespace qsixj {

// Edge labels in storage order a, b, c, d, e, f.  Each edge joins two of four
// abstract nodes; opposite edges are {a,d}, {b,c}, {e,f}, and the four
// triangles are (a,b,e), (a,c,f), (b,d,f), (c,d,e).
inline constexpr std::array<std::pair<int, int>, 6> kEdgeNodes = {{
    {0, 1},  // a
    {0, 2},  // b
    {1, 3},  // c
    {2, 3},  // d
    {1, 2},  // e
    {0, 3},  // f
}};

inline constexpr std::array<std::array<int, 3>, 4> kTriangles = {{
    {0, 1, 4},  // a b e
    {0, 2, 5},  // a c f
    {1, 3, 5},  // b d f
    {2, 3, 4},  // c d e
}};

// Opposite-edge pairs; T_k is the sum over the four edges outside pair k.
inline constexpr std::array<std::pair<int, int>, 3> kOppositePairs = {{
    {4, 5},  // T1 = a + b + c + d
    {1, 2},  // T2 = a + d + e + f
    {0, 3},  // T3 = b + c + e + f
}};

inline int edge_index(int u, int v) {
  if (u > v) std::swap(u, v);
  for (int i = 0; i < 6; ++i) {
    if (kEdgeNodes[i].first == u && kEdgeNodes[i].second == v) return i;
  }
  return -1;
}

// Relabel edge data by a permutation of the four nodes.
template <class T>
std::array<T, 6> permute_edges(const std::array<T, 6>& x, const std::array<int, 4>& perm) {
  std::array<T, 6> out{};
  for (int i = 0; i < 6; ++i) {
    auto [u, v] = kEdgeNodes[i];
    out[edge_index(perm[u], perm[v])] = x[i];
  }
  return out;
}

inline std::array<std::array<int, 4>, 24> node_permutations() {
  std::array<std::array<int, 4>, 24> out{};
  std::array<int, 4> p = {0, 1, 2, 3};
  int k = 0;
  do {
    out[k++] = p;
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace qsixj
