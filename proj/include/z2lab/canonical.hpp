#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "z2lab/grid.hpp"

namespace z2lab {

/// All cell relabelings induced by row permutations composed with column
/// permutations of an m-by-n grid. The transpose is deliberately not part of
/// the group; compare keys of g and transpose(g) for that.
struct PermGroup {
  int m = 0, n = 0;
  std::vector<std::vector<std::uint8_t>> cell_maps;  // identity first
};

/// Group enumeration is brute force over m! * n! elements; keep it to sizes
/// where that is tractable.
inline bool perm_group_feasible(int m, int n) {
  auto fact = [](int k) {
    long long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
  };
  if (m > 12 || n > 12) return false;
  return fact(m) * fact(n) <= 2'000'000;
}

namespace detail {

inline std::vector<std::vector<int>> all_permutations(int k) {
  std::vector<int> p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace detail

/// Cached per (m,n). Throws DimensionError when the group is too large to
/// enumerate.
inline const PermGroup& perm_group(int m, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<PermGroup>> cache;
  if (!perm_group_feasible(m, n))
    throw DimensionError("relabeling group of the " + std::to_string(m) + "x" +
                         std::to_string(n) + " grid is too large to enumerate");
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, n}];
  if (!slot) {
    auto grp = std::make_unique<PermGroup>();
    grp->m = m;
    grp->n = n;
    const auto rows = detail::all_permutations(m);
    const auto cols = detail::all_permutations(n);
    grp->cell_maps.reserve(rows.size() * cols.size());
    for (const auto& rp : rows)
      for (const auto& cp : cols) {
        std::vector<std::uint8_t> map(static_cast<size_t>(m * n));
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < n; ++j)
            map[static_cast<size_t>(i * n + j)] =
                static_cast<std::uint8_t>(rp[static_cast<size_t>(i)] * n +
                                          cp[static_cast<size_t>(j)]);
        grp->cell_maps.push_back(std::move(map));
      }
    slot = std::move(grp);
  }
  return *slot;
}

/// Opaque byte string; equal keys iff the graphs are related by a row
/// permutation composed with a column permutation.
struct CanonicalKey {
  std::string bytes;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

namespace detail {

// Deterministic encoding of a labeled graph: dims, e1 bitmask (big-endian),
// then the sorted normalized 2-edge index pairs.
inline std::string encode_graph(int m, int n, std::uint64_t e1,
                                std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  std::string out;
  out.reserve(11 + 2 * pairs.size());
  out.push_back(static_cast<char>(m));
  out.push_back(static_cast<char>(n));
  for (int b = 7; b >= 0; --b) out.push_back(static_cast<char>((e1 >> (8 * b)) & 0xFF));
  out.push_back(static_cast<char>(pairs.size()));
  for (auto [a, b] : pairs) {
    out.push_back(static_cast<char>(a));
    out.push_back(static_cast<char>(b));
  }
  return out;
}

inline std::string encode_graph(const BiGraph& g) {
  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs;
  pairs.reserve(g.two_edges().size());
  for (const TwoEdge& e : g.two_edges())
    pairs.emplace_back(static_cast<std::uint8_t>(g.cell_index(e.a())),
                       static_cast<std::uint8_t>(g.cell_index(e.b())));
  return encode_graph(g.rows(), g.cols(), g.one_edge_bits(), std::move(pairs));
}

inline BiGraph decode_graph(const std::string& bytes) {
  if (bytes.size() < 11) throw ParseError("graph encoding too short");
  const int m = static_cast<unsigned char>(bytes[0]);
  const int n = static_cast<unsigned char>(bytes[1]);
  std::uint64_t e1 = 0;
  for (int b = 0; b < 8; ++b)
    e1 = (e1 << 8) | static_cast<unsigned char>(bytes[static_cast<size_t>(2 + b)]);
  BiGraph g(m, n);
  for (std::uint64_t bits = e1; bits; bits &= bits - 1)
    g = add_one_edge(g, g.cell_at(std::countr_zero(bits)));
  const int k = static_cast<unsigned char>(bytes[10]);
  if (bytes.size() != 11 + 2 * static_cast<size_t>(k))
    throw ParseError("graph encoding length mismatch");
  for (int i = 0; i < k; ++i) {
    const int a = static_cast<unsigned char>(bytes[static_cast<size_t>(11 + 2 * i)]);
    const int b = static_cast<unsigned char>(bytes[static_cast<size_t>(12 + 2 * i)]);
    g = add_two_edge(g, TwoEdge{g.cell_at(a), g.cell_at(b)});
  }
  return g;
}

}  // namespace detail

inline CanonicalKey canonical_key(const BiGraph& g) {
  const PermGroup& grp = perm_group(g.rows(), g.cols());
  std::vector<std::pair<std::uint8_t, std::uint8_t>> e2idx;
  e2idx.reserve(g.two_edges().size());
  for (const TwoEdge& e : g.two_edges())
    e2idx.emplace_back(static_cast<std::uint8_t>(g.cell_index(e.a())),
                       static_cast<std::uint8_t>(g.cell_index(e.b())));

  std::string best;
  std::vector<std::pair<std::uint8_t, std::uint8_t>> pairs(e2idx.size());
  for (const auto& map : grp.cell_maps) {
    std::uint64_t e1 = 0;
    for (std::uint64_t bits = g.one_edge_bits(); bits; bits &= bits - 1)
      e1 |= std::uint64_t{1} << map[static_cast<size_t>(std::countr_zero(bits))];
    for (size_t i = 0; i < e2idx.size(); ++i) {
      std::uint8_t a = map[e2idx[i].first], b = map[e2idx[i].second];
      if (a > b) std::swap(a, b);
      pairs[i] = {a, b};
    }
    std::string cand = detail::encode_graph(g.rows(), g.cols(), e1, pairs);
    if (best.empty() || cand < best) best = std::move(cand);
  }
  return CanonicalKey{std::move(best)};
}

}  // namespace z2lab
