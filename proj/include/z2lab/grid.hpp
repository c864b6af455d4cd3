#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "z2lab/errors.hpp"

namespace z2lab {

/// 1-based cell of an m-by-n grid: row in [1..m], column in [1..n].
struct Cell {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

inline std::string to_string(Cell c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

/// Unordered pair of cells on distinct rows and distinct columns.
/// Normalized: `a` is the lexicographically smaller half, so (a;b) and (b;a)
/// compare equal.
class TwoEdge {
 public:
  TwoEdge(Cell x, Cell y) : a_(x), b_(y) {
    if (x.row == y.row || x.col == y.col)
      throw DegenerateError("degenerate 2-edge " + to_string(x) + ";" + to_string(y) +
                            ": halves must differ in both row and column");
    if (b_ < a_) std::swap(a_, b_);
  }

  Cell a() const { return a_; }
  Cell b() const { return b_; }

  /// The two cells completing the 2x2 submatrix spanned by the halves.
  std::pair<Cell, Cell> opposites() const {
    return {Cell{a_.row, b_.col}, Cell{b_.row, a_.col}};
  }

  friend auto operator<=>(const TwoEdge&, const TwoEdge&) = default;

 private:
  Cell a_, b_;
};

inline std::string to_string(const TwoEdge& e) {
  return "(" + std::to_string(e.a().row) + "," + std::to_string(e.a().col) + ";" +
         std::to_string(e.b().row) + "," + std::to_string(e.b().col) + ")";
}

/// An m-by-n grid graph with 1-edges (occupied single cells) and 2-edges
/// (disjoint nondegenerate cell pairs). Every instance satisfies the
/// simplicity invariant: the halves of the 2-edges are pairwise distinct and
/// disjoint from the 1-edges, so |occupancy| = |e1| + 2|e2| always holds.
///
/// Value type: the add operations return a new graph and never mutate their
/// input. Requires m, n >= 2 and m*n <= 64 so occupancy fits a machine word;
/// the occupancy bit of cell (i,j) is (i-1)*n + (j-1).
class BiGraph {
 public:
  BiGraph(int m, int n) : m_(m), n_(n) {
    if (m < 2 || n < 2)
      throw DimensionError("grid must be at least 2x2, got " + std::to_string(m) + "x" +
                           std::to_string(n));
    if (static_cast<long long>(m) * n > 64)
      throw DimensionError("grid " + std::to_string(m) + "x" + std::to_string(n) +
                           " exceeds the 64-cell limit");
  }

  int rows() const { return m_; }
  int cols() const { return n_; }

  bool in_range(Cell c) const {
    return 1 <= c.row && c.row <= m_ && 1 <= c.col && c.col <= n_;
  }

  int cell_index(Cell c) const { return (c.row - 1) * n_ + (c.col - 1); }
  Cell cell_at(int idx) const { return {idx / n_ + 1, idx % n_ + 1}; }

  bool occupied(Cell c) const { return in_range(c) && ((occ_ >> cell_index(c)) & 1u); }
  bool has_one_edge(Cell c) const { return in_range(c) && ((e1_ >> cell_index(c)) & 1u); }

  /// 1-edges in ascending (row, col) order.
  std::vector<Cell> one_edges() const {
    std::vector<Cell> out;
    out.reserve(static_cast<size_t>(std::popcount(e1_)));
    for (std::uint64_t bits = e1_; bits; bits &= bits - 1)
      out.push_back(cell_at(std::countr_zero(bits)));
    return out;
  }

  /// 2-edges, normalized and sorted ascending.
  const std::vector<TwoEdge>& two_edges() const { return e2_; }

  int one_edge_count() const { return std::popcount(e1_); }
  int two_edge_count() const { return static_cast<int>(e2_.size()); }
  int total_edges() const { return one_edge_count() + two_edge_count(); }
  int occupied_count() const { return std::popcount(occ_); }

  std::uint64_t occupancy_bits() const { return occ_; }
  std::uint64_t one_edge_bits() const { return e1_; }

  friend bool operator==(const BiGraph&, const BiGraph&) = default;

  friend BiGraph add_one_edge(const BiGraph& g, Cell c);
  friend BiGraph add_two_edge(const BiGraph& g, TwoEdge e);

 private:
  int m_, n_;
  std::uint64_t e1_ = 0;
  std::uint64_t occ_ = 0;
  std::vector<TwoEdge> e2_;
};

inline BiGraph add_one_edge(const BiGraph& g, Cell c) {
  if (!g.in_range(c))
    throw RangeError("cell " + to_string(c) + " outside " + std::to_string(g.rows()) + "x" +
                     std::to_string(g.cols()) + " grid");
  if (g.occupied(c)) throw OverlapError("cell " + to_string(c) + " is already occupied");
  BiGraph out = g;
  const std::uint64_t bit = std::uint64_t{1} << g.cell_index(c);
  out.e1_ |= bit;
  out.occ_ |= bit;
  return out;
}

inline BiGraph add_two_edge(const BiGraph& g, TwoEdge e) {
  for (Cell c : {e.a(), e.b()}) {
    if (!g.in_range(c))
      throw RangeError("2-edge half " + to_string(c) + " outside " + std::to_string(g.rows()) +
                       "x" + std::to_string(g.cols()) + " grid");
    if (g.occupied(c))
      throw OverlapError("2-edge half " + to_string(c) + " is already occupied");
  }
  BiGraph out = g;
  out.occ_ |= std::uint64_t{1} << g.cell_index(e.a());
  out.occ_ |= std::uint64_t{1} << g.cell_index(e.b());
  out.e2_.insert(std::upper_bound(out.e2_.begin(), out.e2_.end(), e), e);
  return out;
}

/// Swap rows and columns; 2-edge (i,j;k,l) maps to (j,i;l,k).
inline BiGraph transpose(const BiGraph& g) {
  BiGraph out(g.cols(), g.rows());
  for (Cell c : g.one_edges()) out = add_one_edge(out, {c.col, c.row});
  for (const TwoEdge& e : g.two_edges())
    out = add_two_edge(out, TwoEdge{{e.a().col, e.a().row}, {e.b().col, e.b().row}});
  return out;
}

/// Relabel rows and columns: row i maps to row_map[i-1]+1, column j to
/// col_map[j-1]+1 (both maps are 0-based permutations).
inline BiGraph permuted(const BiGraph& g, const std::vector<int>& row_map,
                        const std::vector<int>& col_map) {
  if (static_cast<int>(row_map.size()) != g.rows() ||
      static_cast<int>(col_map.size()) != g.cols())
    throw DimensionError("permutation size does not match the grid");
  auto map_cell = [&](Cell c) { return Cell{row_map[c.row - 1] + 1, col_map[c.col - 1] + 1}; };
  BiGraph out(g.rows(), g.cols());
  for (Cell c : g.one_edges()) out = add_one_edge(out, map_cell(c));
  for (const TwoEdge& e : g.two_edges())
    out = add_two_edge(out, TwoEdge{map_cell(e.a()), map_cell(e.b())});
  return out;
}

/// ASCII rendering: '.' empty, '1' one-edge, matching letters for the two
/// halves of each 2-edge.
inline std::string to_text_grid(const BiGraph& g) {
  std::vector<char> glyph(static_cast<size_t>(g.rows() * g.cols()), '.');
  for (Cell c : g.one_edges()) glyph[static_cast<size_t>(g.cell_index(c))] = '1';
  char tag = 'a';
  for (const TwoEdge& e : g.two_edges()) {
    glyph[static_cast<size_t>(g.cell_index(e.a()))] = tag;
    glyph[static_cast<size_t>(g.cell_index(e.b()))] = tag;
    tag = tag == 'z' ? 'a' : static_cast<char>(tag + 1);
  }
  std::string out;
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) {
      if (j) out += ' ';
      out += glyph[static_cast<size_t>(i * g.cols() + j)];
    }
    out += '\n';
  }
  return out;
}

}  // namespace z2lab
