#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "z2lab/grid.hpp"

namespace z2lab {

/// Evaluation point: x in R^m, y in R^n.
struct Point {
  std::vector<double> x;
  std::vector<double> y;
};

/// Quartic polynomial homogeneous of degree 2 in x and in y, stored as a
/// sparse map from unordered cell pairs to exact integer coefficients. The
/// pair {(i,j),(k,l)} stands for the monomial x_i x_k y_j y_l (the product of
/// the bilinear monomials of its two cells); a cell paired with itself is the
/// pure term x_i^2 y_j^2.
class BiquadraticForm {
 public:
  using Key = std::pair<Cell, Cell>;  // first <= second

  BiquadraticForm(int m, int n) : m_(m), n_(n) {
    if (m < 1 || n < 1) throw DimensionError("form dimensions must be positive");
  }

  int rows() const { return m_; }
  int cols() const { return n_; }

  void add_term(Cell a, Cell b, long long coeff) {
    for (Cell c : {a, b})
      if (c.row < 1 || c.row > m_ || c.col < 1 || c.col > n_)
        throw RangeError("term cell " + to_string(c) + " outside the form's grid");
    if (b < a) std::swap(a, b);
    auto it = coeffs_.find({a, b});
    if (it == coeffs_.end()) {
      if (coeff != 0) coeffs_.emplace(Key{a, b}, coeff);
    } else {
      it->second += coeff;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  /// Sorted (pure terms and cross terms interleaved by cell order).
  const std::map<Key, long long>& terms() const { return coeffs_; }

  int pure_term_count() const {
    int k = 0;
    for (const auto& [key, c] : coeffs_) k += key.first == key.second;
    return k;
  }
  int cross_term_count() const { return static_cast<int>(coeffs_.size()) - pure_term_count(); }

  /// Coefficient of the monomial x_i x_k y_j y_l. Invariant under swapping
  /// i<->k, swapping j<->l, and swapping the (i,j)/(k,l) pairing: for a proper
  /// 2x2 block both diagonal pairings contribute.
  long long coefficient(int i, int j, int k, int l) const {
    check_index(i, m_, "row");
    check_index(k, m_, "row");
    check_index(j, n_, "column");
    check_index(l, n_, "column");
    long long total = lookup({i, j}, {k, l});
    if (i != k && j != l) total += lookup({i, l}, {k, j});
    return total;
  }

  double evaluate(const Point& p) const {
    if (static_cast<int>(p.x.size()) != m_ || static_cast<int>(p.y.size()) != n_)
      throw DimensionError("point dimensions do not match the form");
    double total = 0.0;
    for (const auto& [key, c] : coeffs_) {
      const auto& [a, b] = key;
      total += static_cast<double>(c) * p.x[static_cast<size_t>(a.row - 1)] *
               p.x[static_cast<size_t>(b.row - 1)] * p.y[static_cast<size_t>(a.col - 1)] *
               p.y[static_cast<size_t>(b.col - 1)];
    }
    return total;
  }

  /// Deterministic plain-text rendering: pure terms by cell, then cross terms.
  std::string to_text() const {
    std::string out;
    auto append = [&](const Key& key, long long c) {
      if (!out.empty()) out += " + ";
      if (c != 1) out += std::to_string(c) + " ";
      const auto& [a, b] = key;
      if (a == b) {
        out += "x" + std::to_string(a.row) + "^2 y" + std::to_string(a.col) + "^2";
      } else {
        out += "x" + std::to_string(a.row) + " x" + std::to_string(b.row) + " y" +
               std::to_string(a.col) + " y" + std::to_string(b.col);
      }
    };
    for (const auto& [key, c] : coeffs_)
      if (key.first == key.second) append(key, c);
    for (const auto& [key, c] : coeffs_)
      if (key.first != key.second) append(key, c);
    if (out.empty()) out = "0";
    return out;
  }

  friend bool operator==(const BiquadraticForm&, const BiquadraticForm&) = default;

 private:
  static void check_index(int v, int hi, const char* what) {
    if (v < 1 || v > hi)
      throw RangeError(std::string(what) + " index " + std::to_string(v) + " out of range");
  }

  long long lookup(Cell a, Cell b) const {
    if (b < a) std::swap(a, b);
    auto it = coeffs_.find({a, b});
    return it == coeffs_.end() ? 0 : it->second;
  }

  int m_, n_;
  std::map<Key, long long> coeffs_;
};

/// The sum-of-squares form attached to a graph: x_i^2 y_j^2 per 1-edge (i,j)
/// plus (x_i y_j + x_k y_l)^2 per 2-edge (i,j;k,l). Each square expands to its
/// two pure terms and a cross term with coefficient 2. Admissibility is not
/// required.
inline BiquadraticForm build_form(const BiGraph& g) {
  BiquadraticForm f(g.rows(), g.cols());
  for (Cell c : g.one_edges()) f.add_term(c, c, 1);
  for (const TwoEdge& e : g.two_edges()) {
    f.add_term(e.a(), e.a(), 1);
    f.add_term(e.b(), e.b(), 1);
    f.add_term(e.a(), e.b(), 2);
  }
  return f;
}

}  // namespace z2lab
