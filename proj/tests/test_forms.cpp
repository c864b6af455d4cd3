#include <doctest.h>

#include <cmath>
#include <random>

#include "fixture_graphs.hpp"
#include "oracles.hpp"
#include "z2lab/forms.hpp"
#include "z2lab/json_io.hpp"

using namespace z2lab;

namespace {

Point random_point(std::mt19937_64& rng, int m, int n) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Point p;
  p.x.resize(static_cast<size_t>(m));
  p.y.resize(static_cast<size_t>(n));
  for (auto& v : p.x) v = dist(rng);
  for (auto& v : p.y) v = dist(rng);
  return p;
}

// Independent evaluation straight from the defining squares.
double sum_of_squares_value(const BiGraph& g, const Point& p) {
  double total = 0.0;
  for (Cell c : g.one_edges()) {
    const double t = p.x[static_cast<size_t>(c.row - 1)] * p.y[static_cast<size_t>(c.col - 1)];
    total += t * t;
  }
  for (const TwoEdge& e : g.two_edges()) {
    const double t =
        p.x[static_cast<size_t>(e.a().row - 1)] * p.y[static_cast<size_t>(e.a().col - 1)] +
        p.x[static_cast<size_t>(e.b().row - 1)] * p.y[static_cast<size_t>(e.b().col - 1)];
    total += t * t;
  }
  return total;
}

}  // namespace

TEST_CASE("the 4x3 form has 7 diagonal terms plus one expanded square") {
  const auto f = build_form(testing::graph_4x3());
  CHECK(f.pure_term_count() == 9);  // 7 one-edges + the two squared halves
  CHECK(f.cross_term_count() == 1);
  CHECK(f.coefficient(1, 1, 1, 1) == 1);
  CHECK(f.coefficient(4, 2, 1, 3) == 2);
  CHECK(f.coefficient(1, 3, 4, 2) == f.coefficient(4, 2, 1, 3));
  CHECK(f.coefficient(2, 1, 3, 2) == 0);
}

TEST_CASE("coefficient accessor respects the index symmetries") {
  const auto f = build_form(testing::graph_4x3());
  // the full symmetry orbit of the cross term returns one value
  CHECK(f.coefficient(4, 2, 1, 3) == 2);
  CHECK(f.coefficient(1, 2, 4, 3) == 2);
  CHECK(f.coefficient(4, 3, 1, 2) == 2);
  CHECK(f.coefficient(1, 3, 4, 2) == 2);
  CHECK_THROWS_AS(f.coefficient(0, 1, 1, 1), RangeError);
  CHECK_THROWS_AS(f.coefficient(1, 4, 1, 1), RangeError);
}

TEST_CASE("evaluation at simple points") {
  const auto f = build_form(testing::graph_4x3());
  const Point ones{{1, 1, 1, 1}, {1, 1, 1}};
  CHECK(f.evaluate(ones) == doctest::Approx(11.0));  // 7 pure + (1+1)^2

  const Point zero_x{{0, 0, 0, 0}, {1, 1, 1}};
  CHECK(f.evaluate(zero_x) == 0.0);

  CHECK_THROWS_AS(f.evaluate(Point{{1, 1}, {1, 1, 1}}), DimensionError);
}

TEST_CASE("tensor reconstruction equals the sum-of-squares definition") {
  std::mt19937_64 rng(71);
  for (const auto& fx : testing::all_fixtures()) {
    const auto f = build_form(fx.graph);
    for (int i = 0; i < 1000; ++i) {
      const Point p = random_point(rng, fx.graph.rows(), fx.graph.cols());
      const double via_tensor = f.evaluate(p);
      const double via_squares = sum_of_squares_value(fx.graph, p);
      CHECK(std::abs(via_tensor - via_squares) <= 1e-12 * (1.0 + std::abs(via_squares)));
    }
  }
}

TEST_CASE("forms are nonnegative everywhere sampled") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 100; ++i) {
    const BiGraph g = oracle::random_graph(rng);
    const auto f = build_form(g);
    for (int s = 0; s < 50; ++s)
      CHECK(f.evaluate(random_point(rng, g.rows(), g.cols())) >= 0.0);
  }
}

TEST_CASE("relabeling equivariance") {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 50; ++iter) {
    const BiGraph g = oracle::random_graph(rng);
    const auto rp = oracle::random_permutation(rng, g.rows());
    const auto cp = oracle::random_permutation(rng, g.cols());
    const auto f = build_form(g);
    const auto fp = build_form(permuted(g, rp, cp));
    const Point p = random_point(rng, g.rows(), g.cols());
    // evaluating the relabeled form at relabeled coordinates matches
    Point q;
    q.x.resize(p.x.size());
    q.y.resize(p.y.size());
    for (size_t i = 0; i < p.x.size(); ++i) q.x[static_cast<size_t>(rp[i])] = p.x[i];
    for (size_t j = 0; j < p.y.size(); ++j) q.y[static_cast<size_t>(cp[j])] = p.y[j];
    CHECK(fp.evaluate(q) == doctest::Approx(f.evaluate(p)).epsilon(1e-12));
  }
}

TEST_CASE("the 5x5 form has the expected term structure") {
  const auto f = build_form(testing::graph_5x5());
  CHECK(f.pure_term_count() == 16);  // 12 one-edges + 4 halves
  CHECK(f.cross_term_count() == 2);
}

TEST_CASE("text emitter is deterministic with pure terms first") {
  BiGraph g(2, 2);
  g = add_one_edge(g, {2, 2});
  g = add_two_edge(g, TwoEdge{{1, 2}, {2, 1}});
  const auto f = build_form(g);
  CHECK(f.to_text() == "x1^2 y2^2 + x2^2 y1^2 + x2^2 y2^2 + 2 x1 x2 y2 y1");
  CHECK(build_form(BiGraph(2, 2)).to_text() == "0");
}

TEST_CASE("JSON coefficient dump") {
  const auto f = build_form(testing::graph_4x3());
  const auto j = form_to_json(f);
  REQUIRE(j.contains("terms"));
  CHECK(j["terms"].size() == 10);
  // every term carries the five fields
  for (const auto& t : j["terms"]) {
    CHECK(t.contains("i"));
    CHECK(t.contains("j"));
    CHECK(t.contains("k"));
    CHECK(t.contains("l"));
    CHECK(t.contains("c"));
  }
}
