#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <thread>
#include <vector>

#include "z2lab/forms.hpp"
#include "z2lab/grid.hpp"
#include "z2lab/linalg.hpp"

namespace z2lab {

/// Symmetric matrix over the bilinear monomial basis x_i y_j, cells in
/// row-major order: basis index of (i,j) is (i-1)*n + (j-1).
struct GramMatrix {
  int m = 0, n = 0;
  SymMatrix mat{0};

  int dim() const { return m * n; }
};

/// The Gram matrix read directly off the defining squares: u_c u_c^T per
/// 1-edge plus (u_a + u_b)(u_a + u_b)^T per 2-edge, with u the standard basis.
/// The participating cells are pairwise distinct, so the summand vectors are
/// independent and the rank is exactly |E1| + |E2|.
inline GramMatrix canonical_gram(const BiGraph& g) {
  GramMatrix out{g.rows(), g.cols(), SymMatrix(g.rows() * g.cols())};
  for (Cell c : g.one_edges()) {
    const int p = g.cell_index(c);
    out.mat(p, p) += 1.0;
  }
  for (const TwoEdge& e : g.two_edges()) {
    const int p = g.cell_index(e.a()), q = g.cell_index(e.b());
    out.mat(p, p) += 1.0;
    out.mat(q, q) += 1.0;
    out.mat(p, q) += 1.0;
    out.mat(q, p) += 1.0;
  }
  return out;
}

struct PsdRankResult {
  int rank = 0;
  double min_eig = 0.0;
};

/// Numerical rank (eigenvalues above eig_tol * max(1, |lambda|_max)) and the
/// minimum eigenvalue; PSD iff min_eig >= -eig_tol.
inline PsdRankResult psd_rank(const GramMatrix& g, double eig_tol = 1e-9) {
  const auto eig = jacobi_eigen(g.mat);
  PsdRankResult out;
  if (eig.values.empty()) return out;
  double amax = 0.0;
  for (double v : eig.values) amax = std::max(amax, std::abs(v));
  const double thresh = eig_tol * std::max(1.0, amax);
  for (double v : eig.values)
    if (v > thresh) ++out.rank;
  out.min_eig = eig.values.front();
  return out;
}

namespace detail {

// Entries of a symmetric dim x dim matrix grouped by the quartic monomial they
// induce: entry (p,q) contributes (p==q ? 1 : 2) * G_pq to the coefficient of
// x_{r_p} x_{r_q} y_{c_p} y_{c_q}. Classes have at most two entries (the two
// diagonal pairings of a 2x2 block).
struct CoeffClass {
  int p1, q1;
  double w1;
  int p2 = -1, q2 = -1;  // second entry when present
  double w2 = 0.0;
  double target = 0.0;
  double wnorm2 = 0.0;
};

inline std::vector<CoeffClass> coefficient_classes(const BiquadraticForm& f) {
  const int m = f.rows(), n = f.cols();
  std::map<std::array<int, 4>, CoeffClass> classes;
  for (int p = 0; p < m * n; ++p)
    for (int q = p; q < m * n; ++q) {
      const int rp = p / n, cp = p % n, rq = q / n, cq = q % n;
      const std::array<int, 4> key{std::min(rp, rq), std::max(rp, rq), std::min(cp, cq),
                                   std::max(cp, cq)};
      const double w = p == q ? 1.0 : 2.0;
      auto it = classes.find(key);
      if (it == classes.end()) {
        CoeffClass cls{p, q, w};
        cls.target = static_cast<double>(
            f.coefficient(key[0] + 1, key[2] + 1, key[1] + 1, key[3] + 1));
        classes.emplace(key, cls);
      } else {
        it->second.p2 = p;
        it->second.q2 = q;
        it->second.w2 = w;
      }
    }
  std::vector<CoeffClass> out;
  out.reserve(classes.size());
  for (auto& [key, cls] : classes) {
    cls.wnorm2 = cls.w1 * cls.w1 + cls.w2 * cls.w2;
    out.push_back(cls);
  }
  return out;
}

inline double class_sum(const SymMatrix& g, const CoeffClass& cls) {
  double s = cls.w1 * g(cls.p1, cls.q1);
  if (cls.p2 >= 0) s += cls.w2 * g(cls.p2, cls.q2);
  return s;
}

// Least-squares projection onto the affine subspace of symmetric matrices
// whose induced quartic matches the targets; the classes partition the
// entries, so each hyperplane projects independently in closed form.
inline void project_affine(SymMatrix& g, const std::vector<CoeffClass>& classes) {
  for (const auto& cls : classes) {
    const double lambda = (class_sum(g, cls) - cls.target) / cls.wnorm2;
    g.set_sym(cls.p1, cls.q1, g(cls.p1, cls.q1) - lambda * cls.w1);
    if (cls.p2 >= 0) g.set_sym(cls.p2, cls.q2, g(cls.p2, cls.q2) - lambda * cls.w2);
  }
}

// Eigenvalue clipping; returns the decomposition of the projected matrix.
inline EigenDecomposition project_psd(SymMatrix& g) {
  EigenDecomposition eig = jacobi_eigen(g);
  const int n = g.dim();
  for (auto& v : g.data()) v = 0.0;
  for (int k = 0; k < n; ++k) {
    double lam = eig.values[static_cast<size_t>(k)];
    if (lam <= 0.0) {
      eig.values[static_cast<size_t>(k)] = 0.0;
      continue;
    }
    const auto& vec = eig.vectors[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const double add = lam * vec[static_cast<size_t>(i)] * vec[static_cast<size_t>(j)];
        g(i, j) += add;
        if (i != j) g(j, i) += add;
      }
  }
  return eig;
}

inline double coeff_residual_l1(const SymMatrix& g, const std::vector<CoeffClass>& classes) {
  double r = 0.0;
  for (const auto& cls : classes) r += std::abs(class_sum(g, cls) - cls.target);
  return r;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Sampled identity b(p)^T G b(p) == f(p) within tol*(1+|value|), where b(p)
/// stacks the bilinear monomials x_i y_j; when both sides are integral an
/// exact monomial-by-monomial comparison is run as well.
inline bool gram_matches_form(const GramMatrix& g, const BiquadraticForm& f, int samples = 256,
                              double tol = 1e-9, std::uint64_t seed = 0x5eed) {
  if (g.m != f.rows() || g.n != f.cols())
    throw DimensionError("Gram matrix and form dimensions differ");

  bool integral = true;
  for (double v : g.mat.data())
    if (std::abs(v - std::round(v)) > 1e-12) {
      integral = false;
      break;
    }
  if (integral) {
    for (const auto& cls : detail::coefficient_classes(f))
      if (std::abs(detail::class_sum(g.mat, cls) - cls.target) > 1e-12) return false;
    return true;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const int dim = g.dim();
  std::vector<double> b(static_cast<size_t>(dim));
  for (int s = 0; s < samples; ++s) {
    Point p;
    p.x.resize(static_cast<size_t>(g.m));
    p.y.resize(static_cast<size_t>(g.n));
    for (auto& v : p.x) v = dist(rng);
    for (auto& v : p.y) v = dist(rng);
    for (int i = 0; i < g.m; ++i)
      for (int j = 0; j < g.n; ++j)
        b[static_cast<size_t>(i * g.n + j)] =
            p.x[static_cast<size_t>(i)] * p.y[static_cast<size_t>(j)];
    double quad = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        quad += b[static_cast<size_t>(i)] * g.mat(i, j) * b[static_cast<size_t>(j)];
    const double val = f.evaluate(p);
    if (std::abs(quad - val) > tol * (1.0 + std::abs(val))) return false;
  }
  return true;
}

enum class ProbeMethod {
  Averaged,     // averaged alternating reflections (Douglas-Rachford splitting)
  Alternating,  // plain projection-projection
  Dykstra,      // Dykstra-corrected alternating projections
};

struct ProbeOptions {
  int n_probes = 100;
  int max_iter = 100000;
  double tol = 1e-7;
  std::uint64_t seed = 0;
  ProbeMethod method = ProbeMethod::Averaged;
  int threads = 0;  // 0 = hardware concurrency
  bool keep_matrices = false;
};

struct ProbeRecord {
  std::uint64_t seed = 0;
  int iterations = 0;
  double residual = 0.0;  // PSD violation of the coefficient-exact iterate
  bool converged = false;
  int rank = 0;
  double distance_to_canonical = 0.0;
  std::vector<double> matrix;  // full-basis row-major, only when keep_matrices
};

/// Numerical evidence, not a proof: converged probes witness feasible points
/// of the Gram spectrahedron, and min_rank_found is the smallest numerical
/// rank seen among them (-1 when nothing converged).
struct ProbeReport {
  int n_probes = 0;
  int n_converged = 0;
  int min_rank_found = -1;
  double max_distance_to_canonical = 0.0;
  double tolerance = 0.0;
  std::vector<ProbeRecord> probes;
};

/// Random-start feasibility probes of the Gram spectrahedron of f: points in
/// the affine coefficient subspace intersected with the PSD cone.
///
/// Cells without a pure term are eliminated first: their diagonal entry is 0
/// in any feasible Gram, and PSD-ness then forces the whole row to zero, so
/// the probe runs in the occupied-cell subspace (an exact reformulation).
/// Starts are G0 plus symmetric Gaussian noise at scales 0.1 / 1 / 10 cycled
/// by probe index; each probe is deterministic given (seed, index) and probes
/// run independently in parallel.
///
/// Each iterate reported is the affine-projected point, so its coefficients
/// match f exactly; a probe converges when that iterate's minimum eigenvalue
/// is >= -tol. The default method is averaged alternating reflections, which
/// handles the tangential intersections these spectrahedra exhibit; plain
/// alternating projections and Dykstra's variant are available behind the
/// method option.
inline ProbeReport probe_spectrahedron(const BiquadraticForm& f, const ProbeOptions& opts = {}) {
  const int n = f.cols(), full_dim = f.rows() * f.cols();

  // supported = cells carrying a pure term; map full indices to the subspace
  std::vector<int> full_of;  // reduced -> full
  std::vector<int> red_of(static_cast<size_t>(full_dim), -1);
  for (const auto& [key, c] : f.terms()) {
    if (!(key.first == key.second)) continue;
    const int p = (key.first.row - 1) * n + (key.first.col - 1);
    red_of[static_cast<size_t>(p)] = static_cast<int>(full_of.size());
    full_of.push_back(p);
  }
  const int dim = static_cast<int>(full_of.size());

  // coefficient classes restricted to supported entries (eliminated entries
  // are exactly zero in every feasible Gram)
  std::vector<detail::CoeffClass> classes;
  {
    std::map<std::array<int, 4>, detail::CoeffClass> grouped;
    for (int p = 0; p < dim; ++p)
      for (int q = p; q < dim; ++q) {
        const int fp = full_of[static_cast<size_t>(p)], fq = full_of[static_cast<size_t>(q)];
        const int rp = fp / n, cp = fp % n, rq = fq / n, cq = fq % n;
        const std::array<int, 4> key{std::min(rp, rq), std::max(rp, rq), std::min(cp, cq),
                                     std::max(cp, cq)};
        const double w = p == q ? 1.0 : 2.0;
        auto it = grouped.find(key);
        if (it == grouped.end()) {
          detail::CoeffClass cls{p, q, w};
          cls.target = static_cast<double>(
              f.coefficient(key[0] + 1, key[2] + 1, key[1] + 1, key[3] + 1));
          grouped.emplace(key, cls);
        } else {
          it->second.p2 = p;
          it->second.q2 = q;
          it->second.w2 = w;
        }
      }
    classes.reserve(grouped.size());
    for (auto& [key, cls] : grouped) {
      cls.wnorm2 = cls.w1 * cls.w1 + cls.w2 * cls.w2;
      classes.push_back(cls);
    }
  }

  // the defining-squares Gram in the reduced basis
  SymMatrix g0(dim);
  for (const auto& [key, c] : f.terms()) {
    const auto& [a, b] = key;
    const int p = red_of[static_cast<size_t>((a.row - 1) * n + (a.col - 1))];
    const int q = red_of[static_cast<size_t>((b.row - 1) * n + (b.col - 1))];
    if (p == q)
      g0(p, p) = static_cast<double>(c);
    else
      g0.set_sym(p, q, static_cast<double>(c) / 2.0);
  }

  ProbeReport report;
  report.n_probes = opts.n_probes;
  report.tolerance = opts.tol;
  report.probes.resize(static_cast<size_t>(std::max(0, opts.n_probes)));

  auto finish = [&](ProbeRecord& rec, const SymMatrix& feasible,
                    const EigenDecomposition& eig) {
    double amax = 0.0;
    for (double v : eig.values) amax = std::max(amax, std::abs(v));
    const double thresh = std::sqrt(opts.tol) * std::max(1.0, amax);
    rec.rank = 0;
    for (double v : eig.values)
      if (v > thresh) ++rec.rank;
    rec.distance_to_canonical = feasible.frobenius_distance(g0);
    if (opts.keep_matrices) {
      rec.matrix.assign(static_cast<size_t>(full_dim) * full_dim, 0.0);
      for (int p = 0; p < dim; ++p)
        for (int q = 0; q < dim; ++q)
          rec.matrix[static_cast<size_t>(full_of[static_cast<size_t>(p)]) * full_dim +
                     full_of[static_cast<size_t>(q)]] = feasible(p, q);
    }
  };

  auto run_probe = [&](int index) {
    ProbeRecord& rec = report.probes[static_cast<size_t>(index)];
    rec.seed = detail::splitmix64(opts.seed + static_cast<std::uint64_t>(index));
    if (dim == 0) {  // zero form: the spectrahedron is the zero matrix
      rec.converged = true;
      rec.iterations = 0;
      rec.residual = 0.0;
      rec.rank = 0;
      if (opts.keep_matrices)
        rec.matrix.assign(static_cast<size_t>(full_dim) * full_dim, 0.0);
      return;
    }
    std::mt19937_64 rng(rec.seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const double scale = index % 3 == 0 ? 0.1 : (index % 3 == 1 ? 1.0 : 10.0);

    SymMatrix z = g0;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) z.set_sym(i, j, z(i, j) + scale * noise(rng));

    SymMatrix p_corr(dim), q_corr(dim);  // Dykstra corrections
    const int check_every = 10;
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
      rec.iterations = iter;
      SymMatrix y = z;
      detail::project_affine(y, classes);
      if (iter % check_every == 0 || iter == opts.max_iter || iter == 1) {
        const auto eig = jacobi_eigen(y);
        const double viol = std::max(0.0, -eig.values.front());
        rec.residual = viol;
        if (viol <= opts.tol) {
          rec.converged = true;
          finish(rec, y, eig);
          return;
        }
      }
      switch (opts.method) {
        case ProbeMethod::Averaged: {
          SymMatrix r = y;
          for (size_t k = 0; k < r.data().size(); ++k)
            r.data()[k] = 2.0 * y.data()[k] - z.data()[k];
          detail::project_psd(r);
          for (size_t k = 0; k < z.data().size(); ++k)
            z.data()[k] += r.data()[k] - y.data()[k];
          break;
        }
        case ProbeMethod::Alternating: {
          detail::project_psd(y);
          z = std::move(y);
          break;
        }
        case ProbeMethod::Dykstra: {
          // standard two-set Dykstra on (affine, cone)
          SymMatrix a = z;
          for (size_t k = 0; k < a.data().size(); ++k) a.data()[k] += p_corr.data()[k];
          SymMatrix ya = a;
          detail::project_affine(ya, classes);
          for (size_t k = 0; k < a.data().size(); ++k)
            p_corr.data()[k] = a.data()[k] - ya.data()[k];
          SymMatrix b = ya;
          for (size_t k = 0; k < b.data().size(); ++k) b.data()[k] += q_corr.data()[k];
          SymMatrix zb = b;
          detail::project_psd(zb);
          for (size_t k = 0; k < b.data().size(); ++k)
            q_corr.data()[k] = b.data()[k] - zb.data()[k];
          z = std::move(zb);
          break;
        }
      }
    }
  };

  int nthreads = opts.threads > 0 ? opts.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, std::max(1, opts.n_probes)));
  if (nthreads == 1) {
    for (int i = 0; i < opts.n_probes; ++i) run_probe(i);
  } else {
    std::atomic<int> next{0};
    auto work = [&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= opts.n_probes) break;
        run_probe(i);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  for (const auto& rec : report.probes) {
    if (!rec.converged) continue;
    ++report.n_converged;
    if (report.min_rank_found < 0 || rec.rank < report.min_rank_found)
      report.min_rank_found = rec.rank;
    report.max_distance_to_canonical =
        std::max(report.max_distance_to_canonical, rec.distance_to_canonical);
  }
  return report;
}

}  // namespace z2lab
