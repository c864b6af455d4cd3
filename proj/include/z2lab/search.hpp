#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <climits>
#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "z2lab/admissibility.hpp"
#include "z2lab/canonical.hpp"
#include "z2lab/grid.hpp"

namespace z2lab {

struct SearchOptions {
  int threads = 1;
  std::optional<double> time_limit_secs;
  bool collect_witnesses = true;
  int max_witnesses = 1000;
  std::uint64_t seed = 0;  // work-split shuffling only
  int split_depth = 4;     // tasks are generated at this tree depth
  int iso_depth = 5;       // lex-min isomorph rejection applied up to this depth
  bool debug_recheck = false;  // re-validate every node with the reference checkers
};

struct SearchResult {
  int value = 0;
  std::vector<BiGraph> witnesses;  // canonical representatives, sorted
  std::uint64_t nodes_explored = 0;
  bool exhausted = true;
  double elapsed_secs = 0.0;
};

namespace detail {

constexpr int kMaxSide = 32;
constexpr int kMaxTwoEdges = 32;
constexpr int kMaxSeedDepth = 8;

// Atom ids order augmentations by (min cell, 1-edge before 2-edge, partner):
// 1-edge at cell c -> c*65, 2-edge on cells c<d -> c*65 + 1 + d.
inline std::uint16_t one_atom(int c) { return static_cast<std::uint16_t>(c * 65); }
inline std::uint16_t two_atom(int c, int d) { return static_cast<std::uint16_t>(c * 65 + 1 + d); }

struct SearchState {
  std::uint64_t occ = 0;
  std::uint64_t e1 = 0;
  std::uint32_t row_occ[kMaxSide] = {};
  std::uint32_t col_occ[kMaxSide] = {};
  std::uint32_t row_e1[kMaxSide] = {};
  std::uint32_t col_e1[kMaxSide] = {};
  std::uint64_t used_pairs = 0;
  int pairs_used = 0;
  int e1_count = 0;
  int e2_count = 0;
  int total = 0;
  struct Edge2 {
    std::uint8_t a, b;    // cell indices, a < b
    std::uint8_t o1, o2;  // opposite cell indices
    std::uint8_t ra, ca, rb, cb;
  };
  Edge2 e2[kMaxTwoEdges];
  std::uint16_t atoms[64];
  int atom_count = 0;
};

enum class Phase { Value, Collect };

struct Task {
  std::uint16_t atoms[kMaxSeedDepth];
  int len = 0;
};

struct WorkerOut {
  std::uint64_t nodes = 0;
  std::set<std::string> found;  // canonical encodings of collected graphs
};

class Engine {
 public:
  Engine(int m, int n, bool allow_two, int z_cap, const SearchOptions& opts,
         std::chrono::steady_clock::time_point deadline, bool has_deadline)
      : m_(m),
        n_(n),
        mn_(m * n),
        allow_two_(allow_two),
        z_cap_(z_cap),
        opts_(opts),
        iso_depth_(std::min(opts.iso_depth, kMaxSeedDepth + 1)),
        deadline_(deadline),
        has_deadline_(has_deadline) {
    full_mask_ = mn_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << mn_) - 1);
    if (perm_group_feasible(m, n)) group_ = &perm_group(m, n);
    track_pairs_ = n_ <= 11;
    if (track_pairs_) {
      total_pairs_ = n_ * (n_ - 1) / 2;
      for (int c1 = 0; c1 < n_; ++c1)
        for (int c2 = c1 + 1; c2 < n_; ++c2)
          pair_idx_[c1][c2] = pair_idx_[c2][c1] =
              static_cast<std::uint8_t>(c2 * (c2 - 1) / 2 + c1);
      build_pair_bound_table();
    }
    // partner cells for 2-edges: strictly after p, different row and column
    for (int p = 0; p < mn_; ++p) {
      std::uint64_t mask = 0;
      for (int d = p + 1; d < mn_; ++d)
        if (d / n_ != p / n_ && d % n_ != p % n_) mask |= std::uint64_t{1} << d;
      partner_mask_[p] = mask;
    }
    memo_rows_ = !allow_two_ && n_ <= 6;
    if (memo_rows_) {
      const auto cols = detail::all_permutations(n_);
      colperm_mask_map_.resize(cols.size());
      for (size_t s = 0; s < cols.size(); ++s) {
        auto& tbl = colperm_mask_map_[s];
        tbl.resize(std::size_t{1} << n_);
        for (std::uint32_t mask = 0; mask < tbl.size(); ++mask) {
          std::uint32_t img = 0;
          for (int j = 0; j < n_; ++j)
            if ((mask >> j) & 1u) img |= 1u << cols[s][static_cast<size_t>(j)];
          tbl[mask] = static_cast<std::uint8_t>(img);
        }
      }
    }
  }

  // Phase 1: prove the exact maximum total (improvement-only pruning).
  int run_value(int seed_best, std::uint64_t& nodes) {
    best_.store(seed_best, std::memory_order_relaxed);
    run<Phase::Value>(0, nodes, nullptr);
    return best_.load(std::memory_order_relaxed);
  }

  // Phase 2: enumerate every graph with the given total, deduplicated up to
  // row x column relabeling (canonical encodings, sorted).
  std::set<std::string> run_collect(int floor_total, std::uint64_t& nodes) {
    floor_ = floor_total;
    std::set<std::string> found;
    run<Phase::Collect>(floor_total, nodes, &found);
    return found;
  }

  bool expired() const { return expired_.load(std::memory_order_relaxed); }
  std::optional<BiGraph> incumbent() const {
    std::lock_guard<std::mutex> lock(incumbent_mu_);
    return incumbent_;
  }

 private:
  template <Phase PHASE>
  void run(int floor_total, std::uint64_t& nodes, std::set<std::string>* found) {
    floor_ = floor_total;
    WorkerOut seed_out;
    std::vector<Task> tasks = seed_tasks<PHASE>(seed_out);
    nodes += seed_out.nodes;
    if (found)
      for (auto& key : seed_out.found) found->insert(key);

    if (!tasks.empty() && !expired()) {
      std::mt19937_64 rng(opts_.seed);
      std::shuffle(tasks.begin(), tasks.end(), rng);
      const int nthreads =
          std::max(1, std::min<int>(opts_.threads, static_cast<int>(tasks.size())));
      std::vector<WorkerOut> outs(static_cast<size_t>(nthreads));
      std::atomic<size_t> next{0};
      auto work = [&](int wid) {
        WorkerOut& out = outs[static_cast<size_t>(wid)];
        SearchState s;
        for (;;) {
          const size_t i = next.fetch_add(1, std::memory_order_relaxed);
          if (i >= tasks.size() || expired()) break;
          std::unordered_set<std::string> memo;
          s = SearchState{};
          const int pos = replay(tasks[i], s);
          dfs<PHASE>(s, pos, out, memo);
        }
      };
      if (nthreads == 1) {
        work(0);
      } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(nthreads));
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
      }
      for (auto& out : outs) {
        nodes += out.nodes;
        if (found)
          for (auto& key : out.found) found->insert(key);
      }
    }
  }

  // Breadth-first expansion down to split_depth with lex-min isomorph
  // rejection; the surviving nodes become the parallel tasks.
  template <Phase PHASE>
  std::vector<Task> seed_tasks(WorkerOut& out) {
    std::vector<Task> cur, nxt;
    cur.push_back(Task{});
    {
      SearchState s;
      ++out.nodes;
      visit<PHASE>(s, out);  // the empty graph is a node too
    }
    const int depth_cap = std::min(opts_.split_depth, kMaxSeedDepth);
    for (int depth = 1; depth <= depth_cap && !cur.empty(); ++depth) {
      nxt.clear();
      SearchState s;
      for (const Task& task : cur) {
        check_deadline();
        if (expired()) return {};
        s = SearchState{};
        const int pos = replay(task, s);
        expand_children<PHASE>(s, pos, out, [&](SearchState& child, int /*child_pos*/) {
          Task t = task;
          t.atoms[t.len] = child.atoms[child.atom_count - 1];
          ++t.len;
          nxt.push_back(t);
        });
      }
      cur.swap(nxt);
    }
    return cur;
  }

  // Generates admissible children of a node in deterministic order (cells
  // row-major, 1-edge before 2-edges) with bound pruning and, while shallow,
  // lex-min rejection; `sink` sees each surviving child with state applied.
  template <Phase PHASE, typename Sink>
  void expand_children(SearchState& s, int pos, WorkerOut& out, Sink&& sink) {
    int free_ahead = std::popcount((~s.occ & full_mask_) >> pos);
    for (int p = pos; p < mn_; ++p) {
      if ((s.occ >> p) & 1u) continue;
      const int need = PHASE == Phase::Value
                           ? best_.load(std::memory_order_relaxed) + 1
                           : floor_;
      if (s.total + max_gain(s, free_ahead) < need) break;
      const int r = p / n_, c = p % n_;
      if (try_one(s, p, r, c)) {
        if (iso_ok(s)) {
          ++out.nodes;
          if ((out.nodes & 0xFFF) == 0) check_deadline();
          visit<PHASE>(s, out);
          if (PHASE != Phase::Collect || s.total < floor_) sink(s, p + 1);
        }
        undo_one(s, p, r, c);
        if (expired()) return;
      }
      if (allow_two_ && s.e2_count < kMaxTwoEdges) {
        std::uint64_t cand = partner_mask_[p] & ~s.occ;
        while (cand) {
          const int d = std::countr_zero(cand);
          cand &= cand - 1;
          if (try_two(s, p, d)) {
            if (iso_ok(s)) {
              ++out.nodes;
              if ((out.nodes & 0xFFF) == 0) check_deadline();
              visit<PHASE>(s, out);
              if (PHASE != Phase::Collect || s.total < floor_) sink(s, p + 1);
            }
            undo_two(s, p, d);
            if (expired()) return;
          }
        }
      }
      --free_ahead;
    }
  }

  template <Phase PHASE>
  void dfs(SearchState& s, int pos, WorkerOut& out, std::unordered_set<std::string>& memo) {
    if (expired()) return;
    if (memo_rows_ && pos > 0 && pos < mn_ && pos % n_ == 0) {
      if (!memo.insert(memo_key(s, pos / n_)).second) return;
    }
    if (opts_.debug_recheck) debug_validate(s);
    expand_children<PHASE>(s, pos, out,
                           [&](SearchState& child, int child_pos) {
                             dfs<PHASE>(child, child_pos, out, memo);
                           });
  }

  template <Phase PHASE>
  void visit(SearchState& s, WorkerOut& out) {
    if constexpr (PHASE == Phase::Value) {
      int cur = best_.load(std::memory_order_relaxed);
      bool improved = false;
      while (s.total > cur) {
        if (best_.compare_exchange_weak(cur, s.total, std::memory_order_relaxed)) {
          improved = true;
          break;
        }
      }
      if (improved) {
        std::lock_guard<std::mutex> lock(incumbent_mu_);
        if (!incumbent_ || incumbent_->total_edges() < s.total) incumbent_ = to_graph(s);
      }
    } else {
      if (s.total == floor_ && out.found.size() < kFoundCap) {
        const BiGraph g = to_graph(s);
        out.found.insert(group_ ? canonical_key(g).bytes : detail::encode_graph(g));
      }
    }
  }

  static constexpr size_t kFoundCap = 1 << 20;

  BiGraph to_graph(const SearchState& s) const {
    BiGraph g(m_, n_);
    for (int i = 0; i < s.atom_count; ++i) {
      const int c = s.atoms[i] / 65, rem = s.atoms[i] % 65;
      if (rem == 0) {
        g = add_one_edge(g, g.cell_at(c));
      } else {
        g = add_two_edge(g, TwoEdge{g.cell_at(c), g.cell_at(rem - 1)});
      }
    }
    return g;
  }

  int replay(const Task& task, SearchState& s) {
    int pos = 0;
    for (int i = 0; i < task.len; ++i) {
      const int c = task.atoms[i] / 65, rem = task.atoms[i] % 65;
      const bool ok = rem == 0 ? try_one(s, c, c / n_, c % n_) : try_two(s, c, rem - 1);
      if (!ok) throw Error("internal: task replay failed");
      pos = c + 1;
    }
    return pos;
  }

  // ---- admissibility-preserving augmentation with undo ----

  bool try_one(SearchState& s, int p, int r, int c) {
    if (s.e1_count >= z_cap_) return false;
    // a classical C4 appears iff another row with a 1-edge in column c already
    // shares a column with row r
    std::uint32_t rows2 = s.col_e1[c];
    while (rows2) {
      const int r2 = std::countr_zero(rows2);
      rows2 &= rows2 - 1;
      if (s.row_e1[r2] & s.row_e1[r]) return false;
    }
    const std::uint64_t bit = std::uint64_t{1} << p;
    s.occ |= bit;
    s.e1 |= bit;
    s.row_occ[r] |= 1u << c;
    s.col_occ[c] |= 1u << r;
    if (!check_two_edge_conditions_after_cell(s, r, c)) {
      s.occ &= ~bit;
      s.e1 &= ~bit;
      s.row_occ[r] &= ~(1u << c);
      s.col_occ[c] &= ~(1u << r);
      return false;
    }
    if (track_pairs_) {
      for (std::uint32_t cols = s.row_e1[r]; cols; cols &= cols - 1) {
        s.used_pairs |= std::uint64_t{1} << pair_idx_[c][std::countr_zero(cols)];
        ++s.pairs_used;
      }
    }
    s.row_e1[r] |= 1u << c;
    s.col_e1[c] |= 1u << r;
    ++s.e1_count;
    ++s.total;
    s.atoms[s.atom_count++] = one_atom(p);
    return true;
  }

  void undo_one(SearchState& s, int p, int r, int c) {
    --s.atom_count;
    --s.total;
    --s.e1_count;
    s.row_e1[r] &= ~(1u << c);
    s.col_e1[c] &= ~(1u << r);
    if (track_pairs_) {
      for (std::uint32_t cols = s.row_e1[r]; cols; cols &= cols - 1) {
        s.used_pairs &= ~(std::uint64_t{1} << pair_idx_[c][std::countr_zero(cols)]);
        --s.pairs_used;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << p;
    s.occ &= ~bit;
    s.e1 &= ~bit;
    s.row_occ[r] &= ~(1u << c);
    s.col_occ[c] &= ~(1u << r);
  }

  bool try_two(SearchState& s, int a, int b) {
    const int ra = a / n_, ca = a % n_, rb = b / n_, cb = b % n_;
    const std::uint64_t bits = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
    s.occ |= bits;
    s.row_occ[ra] |= 1u << ca;
    s.col_occ[ca] |= 1u << ra;
    s.row_occ[rb] |= 1u << cb;
    s.col_occ[cb] |= 1u << rb;
    auto& e = s.e2[s.e2_count];
    e = {static_cast<std::uint8_t>(a),
         static_cast<std::uint8_t>(b),
         static_cast<std::uint8_t>(ra * n_ + cb),
         static_cast<std::uint8_t>(rb * n_ + ca),
         static_cast<std::uint8_t>(ra),
         static_cast<std::uint8_t>(ca),
         static_cast<std::uint8_t>(rb),
         static_cast<std::uint8_t>(cb)};
    ++s.e2_count;
    bool ok = true;
    for (int i = 0; i < s.e2_count && ok; ++i) {
      const auto& t = s.e2[i];
      if (((s.occ >> t.o1) & 1u) && ((s.occ >> t.o2) & 1u)) ok = false;
      if (ok && five_cell_pattern(s, t)) ok = false;
    }
    if (!ok) {
      --s.e2_count;
      s.occ &= ~bits;
      s.row_occ[ra] &= ~(1u << ca);
      s.col_occ[ca] &= ~(1u << ra);
      s.row_occ[rb] &= ~(1u << cb);
      s.col_occ[cb] &= ~(1u << rb);
      return false;
    }
    ++s.total;
    s.atoms[s.atom_count++] = two_atom(a, b);
    return true;
  }

  void undo_two(SearchState& s, int a, int b) {
    --s.atom_count;
    --s.total;
    --s.e2_count;
    const int ra = a / n_, ca = a % n_, rb = b / n_, cb = b % n_;
    s.occ &= ~((std::uint64_t{1} << a) | (std::uint64_t{1} << b));
    s.row_occ[ra] &= ~(1u << ca);
    s.col_occ[ca] &= ~(1u << ra);
    s.row_occ[rb] &= ~(1u << cb);
    s.col_occ[cb] &= ~(1u << rb);
  }

  // New cell (r,c) was just added; check conditions 2 and 3 against every
  // 2-edge. A fresh five-cell pattern must use (r,c) in one of its five
  // roles: the full rescan handles the row/column-sharing roles, the direct
  // test handles (r,c) acting as the free corner (k,l).
  bool check_two_edge_conditions_after_cell(const SearchState& s, int r, int c) {
    for (int i = 0; i < s.e2_count; ++i) {
      const auto& e = s.e2[i];
      if (((s.occ >> e.o1) & 1u) && ((s.occ >> e.o2) & 1u)) return false;
      if (r == e.ra || r == e.rb || c == e.ca || c == e.cb) {
        if (five_cell_pattern(s, e)) return false;
      } else if (((s.row_occ[r] >> e.ca) & 1u) && ((s.row_occ[r] >> e.cb) & 1u) &&
                 ((s.col_occ[c] >> e.ra) & 1u) && ((s.col_occ[c] >> e.rb) & 1u)) {
        return false;
      }
    }
    return true;
  }

  bool five_cell_pattern(const SearchState& s, const SearchState::Edge2& e) const {
    std::uint32_t kmask =
        s.col_occ[e.ca] & s.col_occ[e.cb] & ~((1u << e.ra) | (1u << e.rb));
    if (!kmask) return false;
    const std::uint32_t lmask =
        s.row_occ[e.ra] & s.row_occ[e.rb] & ~((1u << e.ca) | (1u << e.cb));
    if (!lmask) return false;
    while (kmask) {
      const int k = std::countr_zero(kmask);
      kmask &= kmask - 1;
      if (s.row_occ[k] & lmask) return true;
    }
    return false;
  }

  // Optimistic upper bound on additional edges using F free cells at or after
  // the frontier: 1-edges are capped by the classical value and the free
  // column-pair budget, every two leftover cells could host a 2-edge.
  int max_gain(const SearchState& s, int free_ahead) const {
    int room = z_cap_ >= INT_MAX / 2 ? free_ahead : z_cap_ - s.e1_count;
    if (track_pairs_) {
      const int budget = total_pairs_ - s.pairs_used;
      room = std::min(room, pair_bound_tbl_[budget]);
    }
    int x = std::min(free_ahead, std::max(0, room));
    return allow_two_ ? x + ((free_ahead - x) >> 1) : x;
  }

  bool iso_ok(const SearchState& s) const {
    if (!group_ || s.atom_count > iso_depth_) return true;
    return is_lexmin(s.atoms, s.atom_count);
  }

  bool is_lexmin(const std::uint16_t* atoms, int len) const {
    std::uint16_t img[kMaxSeedDepth + 1];
    for (const auto& map : group_->cell_maps) {
      for (int i = 0; i < len; ++i) {
        const std::uint16_t a = atoms[i];
        const int c = a / 65, rem = a % 65;
        std::uint16_t v;
        if (rem == 0) {
          v = one_atom(map[static_cast<size_t>(c)]);
        } else {
          int mc = map[static_cast<size_t>(c)], md = map[static_cast<size_t>(rem - 1)];
          if (mc > md) std::swap(mc, md);
          v = two_atom(mc, md);
        }
        int k = i;
        while (k > 0 && img[k - 1] > v) {
          img[k] = img[k - 1];
          --k;
        }
        img[k] = v;
      }
      for (int i = 0; i < len; ++i) {
        if (img[i] != atoms[i]) {
          if (img[i] < atoms[i]) return false;
          break;
        }
      }
    }
    return true;
  }

  // Classical mode only: after each completed row the reachable extensions
  // depend on the multiset of row masks up to a column permutation, so
  // isomorphic prefixes can be skipped (their completions are relabelings).
  std::string memo_key(const SearchState& s, int rows_done) const {
    std::string best;
    std::uint8_t masks[kMaxSide];
    for (const auto& tbl : colperm_mask_map_) {
      for (int r = 0; r < rows_done; ++r) masks[r] = tbl[s.row_e1[r]];
      std::sort(masks, masks + rows_done);
      std::string cand(1, static_cast<char>(rows_done));
      cand.append(reinterpret_cast<const char*>(masks), static_cast<size_t>(rows_done));
      if (best.empty() || cand < best) best = std::move(cand);
    }
    return best;
  }

  void debug_validate(const SearchState& s) const {
    const BiGraph g = to_graph(s);
    const auto verdict = is_admissible(g);
    if (!verdict.admissible)
      throw Error("internal: incremental state disagrees with reference checkers");
  }

  void check_deadline() {
    if (has_deadline_ && !expired_.load(std::memory_order_relaxed) &&
        std::chrono::steady_clock::now() >= deadline_)
      expired_.store(true, std::memory_order_relaxed);
  }

  void build_pair_bound_table() {
    // pair_bound_tbl_[B]: most 1-edges addable across m rows when only B
    // unused column pairs remain (adding x cells to a row burns >= C(x,2))
    for (int budget = 0; budget <= total_pairs_; ++budget) {
      std::vector<int> best(static_cast<size_t>(budget) + 1, 0);
      for (int row = 0; row < m_; ++row) {
        std::vector<int> nxt(best);
        for (int b = 0; b <= budget; ++b)
          for (int x = 1; x <= n_; ++x) {
            const int cost = x * (x - 1) / 2;
            if (cost > b) break;
            nxt[static_cast<size_t>(b)] =
                std::max(nxt[static_cast<size_t>(b)], x + best[static_cast<size_t>(b - cost)]);
          }
        best.swap(nxt);
      }
      pair_bound_tbl_[budget] = best[static_cast<size_t>(budget)];
    }
  }

  const int m_, n_, mn_;
  const bool allow_two_;
  const int z_cap_;
  const SearchOptions opts_;
  const int iso_depth_;
  const std::chrono::steady_clock::time_point deadline_;
  const bool has_deadline_;
  std::uint64_t full_mask_ = 0;
  const PermGroup* group_ = nullptr;
  bool track_pairs_ = false;
  int total_pairs_ = 0;
  std::uint8_t pair_idx_[kMaxSide][kMaxSide] = {};
  int pair_bound_tbl_[64] = {};
  std::uint64_t partner_mask_[64] = {};
  bool memo_rows_ = false;
  std::vector<std::vector<std::uint8_t>> colperm_mask_map_;

  std::atomic<int> best_{0};
  int floor_ = 0;
  std::atomic<bool> expired_{false};
  mutable std::mutex incumbent_mu_;
  std::optional<BiGraph> incumbent_;
};

inline std::chrono::steady_clock::time_point make_deadline(const SearchOptions& opts,
                                                           bool& has_deadline) {
  has_deadline = opts.time_limit_secs.has_value();
  if (!has_deadline) return std::chrono::steady_clock::time_point::max();
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(*opts.time_limit_secs));
}

inline SearchResult run_search(int m, int n, bool allow_two, const SearchOptions& opts) {
  BiGraph probe(m, n);  // validates dimensions
  (void)probe;
  const auto t0 = std::chrono::steady_clock::now();
  bool has_deadline = false;
  const auto deadline = make_deadline(opts, has_deadline);

  SearchResult result;
  int z_cap = INT_MAX / 2;
  int seed_best = 0;
  if (allow_two) {
    // the 1-edges of an admissible graph form a C4-free graph, so the
    // classical value both caps |E1| and seeds the lower bound
    Engine zeng(m, n, false, INT_MAX / 2, opts, deadline, has_deadline);
    std::uint64_t znodes = 0;
    const int z = zeng.run_value(0, znodes);
    result.nodes_explored += znodes;
    if (!zeng.expired()) {
      z_cap = z;
      seed_best = z;
    }
  }

  Engine eng(m, n, allow_two, z_cap, opts, deadline, has_deadline);
  std::uint64_t nodes = 0;
  const int value = eng.run_value(seed_best, nodes);
  result.nodes_explored += nodes;
  result.value = value;
  result.exhausted = !eng.expired();

  if (result.exhausted && opts.collect_witnesses) {
    std::uint64_t wnodes = 0;
    const auto found = eng.run_collect(value, wnodes);
    result.nodes_explored += wnodes;
    result.exhausted = !eng.expired();
    result.witnesses.reserve(found.size());
    for (const auto& key : found) {
      if (static_cast<int>(result.witnesses.size()) >= opts.max_witnesses) break;
      result.witnesses.push_back(detail::decode_graph(key));
    }
  } else if (!result.exhausted) {
    if (auto g = eng.incumbent()) result.witnesses.push_back(std::move(*g));
  }
  result.elapsed_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace detail

/// Exact classical Zarankiewicz number z(m,n): maximum 1-edges with no 2x2
/// submatrix fully occupied. Exhaustive unless the time limit interrupts, in
/// which case exhausted=false and value holds the best total seen.
inline SearchResult classical_zarankiewicz(int m, int n, const SearchOptions& opts = {}) {
  return detail::run_search(m, n, false, opts);
}

/// Exact double Zarankiewicz number z2(m,n): maximum |E1|+|E2| over admissible
/// graphs, by depth-first search over mixed 1-edge/2-edge augmentations.
inline SearchResult double_zarankiewicz(int m, int n, const SearchOptions& opts = {}) {
  return detail::run_search(m, n, true, opts);
}

/// Certificate check, no search: g is admissible and has at least t edges.
inline bool verify_at_least(const BiGraph& g, int t) {
  return is_admissible(g).admissible && g.total_edges() >= t;
}

/// All admissible graphs with |E1|+|E2| == t, up to row x column relabeling,
/// sorted by canonical key. Set include_two_edges=false to restrict to
/// classical (1-edge only) graphs. Throws TimeLimitExceeded on interruption.
inline std::vector<BiGraph> extremal_census(int m, int n, int t, const SearchOptions& opts = {},
                                            bool include_two_edges = true) {
  BiGraph probe(m, n);
  (void)probe;
  if (t < 0) return {};
  bool has_deadline = false;
  const auto deadline = detail::make_deadline(opts, has_deadline);
  detail::Engine eng(m, n, include_two_edges, INT_MAX / 2, opts, deadline, has_deadline);
  std::uint64_t nodes = 0;
  const auto found = eng.run_collect(t, nodes);
  if (eng.expired()) throw TimeLimitExceeded("census interrupted by time limit");
  std::vector<BiGraph> out;
  out.reserve(found.size());
  for (const auto& key : found) out.push_back(detail::decode_graph(key));
  return out;
}

}  // namespace z2lab
