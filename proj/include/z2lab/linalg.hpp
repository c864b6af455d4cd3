#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "z2lab/errors.hpp"

namespace z2lab {

/// Dense symmetric matrix, full row-major storage.
class SymMatrix {
 public:
  explicit SymMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, 0.0) {
    if (dim < 0) throw DimensionError("matrix dimension must be nonnegative");
  }

  int dim() const { return dim_; }
  double operator()(int i, int j) const { return a_[idx(i, j)]; }
  double& operator()(int i, int j) { return a_[idx(i, j)]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  void set_sym(int i, int j, double v) {
    a_[idx(i, j)] = v;
    a_[idx(j, i)] = v;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  bool is_symmetric(double tol) const {
    for (int i = 0; i < dim_; ++i)
      for (int j = i + 1; j < dim_; ++j)
        if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
    return true;
  }

  double frobenius_distance(const SymMatrix& other) const {
    if (other.dim_ != dim_) throw DimensionError("matrix dimensions differ");
    double s = 0.0;
    for (size_t k = 0; k < a_.size(); ++k) {
      const double d = a_[k] - other.a_[k];
      s += d * d;
    }
    return std::sqrt(s);
  }

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  size_t idx(int i, int j) const { return static_cast<size_t>(i) * dim_ + j; }

  int dim_;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;           // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
/// Throws NonSymmetricError if the input is not symmetric to within
/// 1e-12 * max|entry|.
inline EigenDecomposition jacobi_eigen(const SymMatrix& input, int max_sweeps = 100) {
  const int n = input.dim();
  if (!input.is_symmetric(1e-12 * std::max(1.0, input.max_abs())))
    throw NonSymmetricError("jacobi_eigen requires a symmetric matrix");

  SymMatrix a = input;
  std::vector<std::vector<double>> v(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off <= 1e-30 * std::max(1.0, a.max_abs() * a.max_abs())) break;

    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p), aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a.set_sym(k, p, c * akp - s * akq);
          a.set_sym(k, q, s * akp + c * akq);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a.set_sym(p, q, 0.0);
        for (int k = 0; k < n; ++k) {
          const double vkp = v[static_cast<size_t>(k)][static_cast<size_t>(p)];
          const double vkq = v[static_cast<size_t>(k)][static_cast<size_t>(q)];
          v[static_cast<size_t>(k)][static_cast<size_t>(p)] = c * vkp - s * vkq;
          v[static_cast<size_t>(k)][static_cast<size_t>(q)] = s * vkp + c * vkq;
        }
      }
  }

  EigenDecomposition out;
  out.values.resize(static_cast<size_t>(n));
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
  out.vectors.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(n)));
  for (int k = 0; k < n; ++k) {
    out.values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
    for (int r = 0; r < n; ++r)
      out.vectors[static_cast<size_t>(k)][static_cast<size_t>(r)] =
          v[static_cast<size_t>(r)][static_cast<size_t>(order[static_cast<size_t>(k)])];
  }
  return out;
}

/// Rank-revealing factorization of a PSD matrix with diagonal pivoting:
/// returns columns l_p with G ~= sum_p l_p l_p^T. Stops when the largest
/// remaining diagonal drops below tol.
inline std::vector<std::vector<double>> pivoted_cholesky(const SymMatrix& g, double tol = 1e-10) {
  const int n = g.dim();
  SymMatrix r = g;  // residual
  std::vector<std::vector<double>> cols;
  for (int step = 0; step < n; ++step) {
    int piv = 0;
    for (int i = 1; i < n; ++i)
      if (r(i, i) > r(piv, piv)) piv = i;
    const double d = r(piv, piv);
    if (d <= tol) break;
    std::vector<double> l(static_cast<size_t>(n));
    const double root = std::sqrt(d);
    for (int i = 0; i < n; ++i) l[static_cast<size_t>(i)] = r(i, piv) / root;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        r(i, j) -= l[static_cast<size_t>(i)] * l[static_cast<size_t>(j)];
    cols.push_back(std::move(l));
  }
  return cols;
}

}  // namespace z2lab
