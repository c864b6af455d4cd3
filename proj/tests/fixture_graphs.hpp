// In-code builders for the shipped example graphs, used to cross-check the
// JSON fixtures and to exercise modules without file I/O.
#pragma once

#include <string>
#include <vector>

#include "z2lab/grid.hpp"

namespace z2lab::testing {

inline BiGraph make(int m, int n, std::initializer_list<Cell> e1,
                    std::initializer_list<std::pair<Cell, Cell>> e2) {
  BiGraph g(m, n);
  for (Cell c : e1) g = add_one_edge(g, c);
  for (const auto& [a, b] : e2) g = add_two_edge(g, TwoEdge{a, b});
  return g;
}

// 4x3, total 8
inline BiGraph graph_4x3() {
  return make(4, 3, {{1, 1}, {2, 2}, {3, 3}, {1, 2}, {2, 3}, {3, 1}, {4, 1}},
              {{{4, 2}, {1, 3}}});
}

// 4x4, total 10
inline BiGraph graph_4x4() {
  return make(4, 4,
              {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 1}, {3, 4}, {4, 2}, {4, 3}, {4, 4}},
              {{{1, 3}, {2, 4}}});
}

// 5x3, total 9
inline BiGraph graph_5x3() {
  return make(5, 3, {{1, 1}, {1, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 3}, {4, 1}, {5, 2}},
              {{{1, 3}, {4, 2}}});
}

// 5x4, total 11
inline BiGraph graph_5x4() {
  return make(
      5, 4,
      {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 4}, {3, 2}, {3, 4}, {4, 3}, {4, 4}, {5, 1}},
      {{{2, 3}, {5, 4}}});
}

// 5x5, total 14
inline BiGraph graph_5x5() {
  return make(5, 5,
              {{1, 1},
               {1, 2},
               {1, 3},
               {2, 1},
               {2, 4},
               {3, 2},
               {3, 4},
               {3, 5},
               {4, 3},
               {4, 5},
               {5, 1},
               {5, 5}},
              {{{1, 4}, {5, 2}}, {{2, 3}, {4, 2}}});
}

struct NamedFixture {
  const char* name;
  BiGraph graph;
  int expected_total;
};

inline std::vector<NamedFixture> all_fixtures() {
  return {{"thm2_2", graph_4x3(), 8},
          {"thm3_1", graph_4x4(), 10},
          {"thm4_1", graph_5x3(), 9},
          {"thm5_1", graph_5x4(), 11},
          {"thm6_1", graph_5x5(), 14}};
}

}  // namespace z2lab::testing
