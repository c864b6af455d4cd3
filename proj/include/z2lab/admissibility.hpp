#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <tuple>
#include <vector>

#include "z2lab/grid.hpp"

namespace z2lab {

enum class WitnessKind { ClassicalC4, Condition2, Condition3 };

inline const char* to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::ClassicalC4: return "ClassicalC4";
    case WitnessKind::Condition2: return "Condition2";
    case WitnessKind::Condition3: return "Condition3";
  }
  return "?";
}

/// Machine-checkable record of one forbidden pattern.
///  - ClassicalC4: four 1-edges forming a 2x2 submatrix.
///  - Condition2: a 2-edge whose two opposite cells are both occupied; cells
///    holds the opposites, two_edge the edge.
///  - Condition3: a 2-edge (i,j;p,q) and a cell (k,l) such that the five
///    pairwise distinct cells (k,l),(k,j),(k,q),(i,l),(p,l) are all occupied;
///    cells holds them in that order.
struct Witness {
  WitnessKind kind;
  std::vector<Cell> cells;
  std::optional<TwoEdge> two_edge;
};

namespace detail {

struct OccMasks {
  std::uint32_t row_occ[32] = {};
  std::uint32_t row_e1[32] = {};
  std::uint32_t col_occ[32] = {};
};

inline OccMasks build_masks(const BiGraph& g) {
  OccMasks mk;
  const int n = g.cols();
  for (std::uint64_t bits = g.occupancy_bits(); bits; bits &= bits - 1) {
    const int idx = std::countr_zero(bits);
    mk.row_occ[idx / n] |= 1u << (idx % n);
    mk.col_occ[idx % n] |= 1u << (idx / n);
  }
  for (std::uint64_t bits = g.one_edge_bits(); bits; bits &= bits - 1) {
    const int idx = std::countr_zero(bits);
    mk.row_e1[idx / n] |= 1u << (idx % n);
  }
  return mk;
}

}  // namespace detail

/// Least 2x2 submatrix fully contained in the 1-edge set (halves excluded).
/// Witness cells come back as [(i,j),(i,l),(k,j),(k,l)], minimizing
/// (i,j,l,k), which orders witnesses by their sorted cell lists.
inline std::optional<Witness> find_classical_c4(const BiGraph& g) {
  const auto mk = detail::build_masks(g);
  for (int i = 0; i < g.rows(); ++i) {
    bool found = false;
    int bj = 0, bl = 0, bk = 0;
    for (int k = i + 1; k < g.rows(); ++k) {
      const std::uint32_t share = mk.row_e1[i] & mk.row_e1[k];
      if (std::popcount(share) < 2) continue;
      const int j = std::countr_zero(share);
      const int l = std::countr_zero(share & (share - 1));
      if (!found || std::tuple(j, l, k) < std::tuple(bj, bl, bk)) {
        bj = j;
        bl = l;
        bk = k;
        found = true;
      }
    }
    if (found)
      return Witness{WitnessKind::ClassicalC4,
                     {{i + 1, bj + 1}, {i + 1, bl + 1}, {bk + 1, bj + 1}, {bk + 1, bl + 1}},
                     std::nullopt};
  }
  return std::nullopt;
}

/// First 2-edge (in normalized order) whose opposite cells are both occupied.
/// "Occupied" means membership in the occupancy set, so halves count.
inline std::optional<Witness> find_condition2(const BiGraph& g) {
  for (const TwoEdge& e : g.two_edges()) {
    auto [o1, o2] = e.opposites();
    if (g.occupied(o1) && g.occupied(o2)) {
      std::vector<Cell> cells{o1, o2};
      if (cells[1] < cells[0]) std::swap(cells[0], cells[1]);
      return Witness{WitnessKind::Condition2, std::move(cells), e};
    }
  }
  return std::nullopt;
}

/// First (2-edge, cell) pair realizing the five-distinct-cell pattern. For a
/// 2-edge with halves (i,j),(p,q) the five cells are pairwise distinct exactly
/// when k is outside {i,p} and l outside {j,q}; the scan uses the normalized
/// half order, and swapping the halves yields the same cell set.
inline std::optional<Witness> find_condition3(const BiGraph& g) {
  for (const TwoEdge& e : g.two_edges()) {
    const Cell A = e.a(), B = e.b();
    for (int k = 1; k <= g.rows(); ++k) {
      if (k == A.row || k == B.row) continue;
      for (int l = 1; l <= g.cols(); ++l) {
        if (l == A.col || l == B.col) continue;
        const Cell kl{k, l}, kj{k, A.col}, kq{k, B.col}, il{A.row, l}, pl{B.row, l};
        if (g.occupied(kl) && g.occupied(kj) && g.occupied(kq) && g.occupied(il) &&
            g.occupied(pl))
          return Witness{WitnessKind::Condition3, {kl, kj, kq, il, pl}, e};
      }
    }
  }
  return std::nullopt;
}

struct AdmissibilityVerdict {
  bool admissible = false;
  std::optional<Witness> witness;  // set iff inadmissible
};

/// Admissible iff none of the three forbidden patterns is present.
inline AdmissibilityVerdict is_admissible(const BiGraph& g) {
  if (auto w = find_classical_c4(g)) return {false, std::move(w)};
  if (auto w = find_condition2(g)) return {false, std::move(w)};
  if (auto w = find_condition3(g)) return {false, std::move(w)};
  return {true, std::nullopt};
}

/// Re-validate a witness against a graph: the named cells must be occupied and
/// realize the claimed pattern.
inline bool check_witness(const BiGraph& g, const Witness& w) {
  for (Cell c : w.cells)
    if (!g.in_range(c)) return false;
  switch (w.kind) {
    case WitnessKind::ClassicalC4: {
      if (w.cells.size() != 4 || w.two_edge) return false;
      for (Cell c : w.cells)
        if (!g.has_one_edge(c)) return false;
      const Cell a = w.cells[0], b = w.cells[1], c = w.cells[2], d = w.cells[3];
      return a.row == b.row && c.row == d.row && a.row != c.row && a.col == c.col &&
             b.col == d.col && a.col != b.col;
    }
    case WitnessKind::Condition2: {
      if (w.cells.size() != 2 || !w.two_edge) return false;
      const auto& e2s = g.two_edges();
      if (std::find(e2s.begin(), e2s.end(), *w.two_edge) == e2s.end()) return false;
      auto [o1, o2] = w.two_edge->opposites();
      if (o2 < o1) std::swap(o1, o2);
      return w.cells[0] == o1 && w.cells[1] == o2 && g.occupied(o1) && g.occupied(o2);
    }
    case WitnessKind::Condition3: {
      if (w.cells.size() != 5 || !w.two_edge) return false;
      const auto& e2s = g.two_edges();
      if (std::find(e2s.begin(), e2s.end(), *w.two_edge) == e2s.end()) return false;
      for (size_t i = 0; i < 5; ++i)
        for (size_t j = i + 1; j < 5; ++j)
          if (w.cells[i] == w.cells[j]) return false;
      for (Cell c : w.cells)
        if (!g.occupied(c)) return false;
      const Cell A = w.two_edge->a(), B = w.two_edge->b();
      const Cell kl = w.cells[0];
      return w.cells[1] == Cell{kl.row, A.col} && w.cells[2] == Cell{kl.row, B.col} &&
             w.cells[3] == Cell{A.row, kl.col} && w.cells[4] == Cell{B.row, kl.col};
    }
  }
  return false;
}

}  // namespace z2lab
