// z2lab command line: exhaustive Zarankiewicz-type searches, admissibility
// verification with witnesses, and Gram matrix construction/probing for the
// associated sum-of-squares forms.
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "z2lab/fixtures.hpp"
#include "z2lab/json_io.hpp"
#include "z2lab/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 2;
constexpr int kExitTimeLimit = 3;
constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

struct GlobalOpts {
  int threads = 0;
  std::optional<double> time_limit;
  std::string output = "text";
  std::uint64_t seed = 0;

  z2lab::SearchOptions search() const {
    z2lab::SearchOptions o;
    o.threads = threads;
    o.time_limit_secs = time_limit;
    o.seed = seed;
    return o;
  }
  bool json() const { return output == "json"; }
};

int default_threads() {
  if (const char* env = std::getenv("Z2LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

void emit(const nlohmann::json& j) { std::printf("%s\n", j.dump().c_str()); }

int report_search(const z2lab::SearchResult& r, int m, int n, const GlobalOpts& g,
                  const char* label) {
  if (g.json()) {
    emit(z2lab::search_result_to_json(r, m, n));
  } else {
    std::printf("%s(%d,%d) = %d%s  [nodes=%llu, %.3fs, %zu witness%s]\n", label, m, n, r.value,
                r.exhausted ? "" : " (lower bound, search interrupted)",
                static_cast<unsigned long long>(r.nodes_explored), r.elapsed_secs,
                r.witnesses.size(), r.witnesses.size() == 1 ? "" : "es");
    if (!r.witnesses.empty()) {
      std::printf("witness:\n%s", z2lab::to_text_grid(r.witnesses.front()).c_str());
      std::printf("%s\n", z2lab::bigraph_to_json_string(r.witnesses.front()).c_str());
    }
  }
  return r.exhausted ? kExitOk : kExitTimeLimit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double Zarankiewicz numbers, admissibility witnesses, and Gram certificates"};
  app.require_subcommand(1);

  GlobalOpts global;
  global.threads = default_threads();
  app.add_option("--threads", global.threads, "worker threads (env Z2LAB_THREADS)")
      ->check(CLI::PositiveNumber);
  double time_limit = 0.0;
  auto* tl = app.add_option("--time-limit", time_limit, "wall-clock limit in seconds");
  app.add_option("--output", global.output, "output mode")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", global.seed, "seed for work-split shuffling and probes");

  int m = 0, n = 0, census_t = 0;
  std::string graph_file, emit_mode = "text";
  int expect_t = -1;
  bool classical_only = false;
  int probe_n = 100;
  double probe_tol = 1e-7;

  auto* cmd_classical = app.add_subcommand("classical", "exact z(m,n) by exhaustive search");
  cmd_classical->add_option("m", m)->required()->check(CLI::PositiveNumber);
  cmd_classical->add_option("n", n)->required()->check(CLI::PositiveNumber);

  auto* cmd_z2 = app.add_subcommand("z2", "exact z2(m,n) by exhaustive search");
  cmd_z2->add_option("m", m)->required()->check(CLI::PositiveNumber);
  cmd_z2->add_option("n", n)->required()->check(CLI::PositiveNumber);

  auto* cmd_table = app.add_subcommand("table", "z and z2 for all 2<=m,n<=bounds");
  cmd_table->add_option("max_m", m)->required()->check(CLI::PositiveNumber);
  cmd_table->add_option("max_n", n)->required()->check(CLI::PositiveNumber);

  auto* cmd_verify = app.add_subcommand("verify", "check a graph file for admissibility");
  cmd_verify->add_option("graph-file", graph_file)->required();
  cmd_verify->add_option("--expect-t", expect_t, "require at least this many edges");

  auto* cmd_census = app.add_subcommand("census", "all admissible graphs with a given total");
  cmd_census->add_option("m", m)->required()->check(CLI::PositiveNumber);
  cmd_census->add_option("n", n)->required()->check(CLI::PositiveNumber);
  cmd_census->add_option("t", census_t)->required()->check(CLI::NonNegativeNumber);
  cmd_census->add_flag("--classical", classical_only, "1-edges only");

  auto* cmd_form = app.add_subcommand("form", "emit the sum-of-squares form of a graph");
  cmd_form->add_option("graph-file", graph_file)->required();
  cmd_form->add_option("--emit", emit_mode)->check(CLI::IsMember({"text", "json"}));

  auto* cmd_gram = app.add_subcommand("gram", "canonical Gram matrix with PSD/rank report");
  cmd_gram->add_option("graph-file", graph_file)->required();

  auto* cmd_probe = app.add_subcommand("probe", "random feasibility probes of the Gram set");
  cmd_probe->add_option("graph-file", graph_file)->required();
  cmd_probe->add_option("--n", probe_n, "number of probes")->check(CLI::PositiveNumber);
  cmd_probe->add_option("--tol", probe_tol, "convergence tolerance");
  std::string probe_method = "averaged";
  cmd_probe->add_option("--method", probe_method, "projection scheme")
      ->check(CLI::IsMember({"averaged", "alternating", "dykstra"}));

  for (CLI::App* sub : {cmd_classical, cmd_z2, cmd_table, cmd_verify, cmd_census, cmd_form,
                        cmd_gram, cmd_probe})
    sub->fallthrough();  // global flags may follow the subcommand

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (tl->count() > 0) global.time_limit = time_limit;

  try {
    if (*cmd_classical) {
      return report_search(z2lab::classical_zarankiewicz(m, n, global.search()), m, n, global,
                           "z");
    }

    if (*cmd_z2) {
      return report_search(z2lab::double_zarankiewicz(m, n, global.search()), m, n, global,
                           "z2");
    }

    if (*cmd_table) {
      nlohmann::json entries = nlohmann::json::array();
      bool all_exhausted = true;
      z2lab::SearchOptions opts = global.search();
      for (int mm = 2; mm <= m; ++mm)
        for (int nn = 2; nn <= n; ++nn) {
          const auto zr = z2lab::classical_zarankiewicz(mm, nn, opts);
          const auto z2r = z2lab::double_zarankiewicz(mm, nn, opts);
          all_exhausted = all_exhausted && zr.exhausted && z2r.exhausted;
          if (global.json()) {
            entries.push_back({{"m", mm},
                               {"n", nn},
                               {"z", zr.value},
                               {"z2", z2r.value},
                               {"exhausted", zr.exhausted && z2r.exhausted}});
          } else {
            std::printf("z(%d,%d) = %-3d  z2(%d,%d) = %-3d%s\n", mm, nn, zr.value, mm, nn,
                        z2r.value,
                        zr.exhausted && z2r.exhausted ? "" : "  (interrupted)");
          }
        }
      if (global.json()) emit({{"entries", entries}});
      return all_exhausted ? kExitOk : kExitTimeLimit;
    }

    if (*cmd_verify) {
      const z2lab::BiGraph g = z2lab::load_fixture(graph_file);
      const auto verdict = z2lab::is_admissible(g);
      nlohmann::json j{{"admissible", verdict.admissible},
                       {"total_edges", g.total_edges()},
                       {"witness", verdict.witness ? z2lab::witness_to_json(*verdict.witness)
                                                   : nlohmann::json(nullptr)}};
      if (expect_t >= 0) j["expect_t"] = expect_t;
      const bool meets = verdict.admissible && (expect_t < 0 || g.total_edges() >= expect_t);
      j["verified"] = meets;
      if (global.json()) {
        emit(j);
      } else if (!verdict.admissible) {
        std::printf("inadmissible: %s witness %s\n", z2lab::to_string(verdict.witness->kind),
                    z2lab::witness_to_json(*verdict.witness).dump().c_str());
      } else {
        std::printf("admissible, %d edges%s\n", g.total_edges(),
                    meets ? "" : " (below the expected total)");
      }
      return meets ? kExitOk : kExitRefuted;
    }

    if (*cmd_census) {
      const auto graphs = z2lab::extremal_census(m, n, census_t, global.search(),
                                                 !classical_only);
      if (global.json()) {
        nlohmann::json j{{"m", m}, {"n", n}, {"t", census_t}, {"count", graphs.size()}};
        j["graphs"] = nlohmann::json::array();
        for (const auto& g : graphs) j["graphs"].push_back(z2lab::bigraph_to_json(g));
        emit(j);
      } else {
        std::printf("%zu canonical graph%s with %d edges on %dx%d\n", graphs.size(),
                    graphs.size() == 1 ? "" : "s", census_t, m, n);
        for (const auto& g : graphs) std::printf("%s\n", z2lab::to_text_grid(g).c_str());
      }
      return kExitOk;
    }

    if (*cmd_form) {
      const auto f = z2lab::build_form(z2lab::load_fixture(graph_file));
      if (emit_mode == "json" || global.json())
        emit(z2lab::form_to_json(f));
      else
        std::printf("%s\n", f.to_text().c_str());
      return kExitOk;
    }

    if (*cmd_gram) {
      const z2lab::BiGraph g = z2lab::load_fixture(graph_file);
      const auto g0 = z2lab::canonical_gram(g);
      const auto pr = z2lab::psd_rank(g0, 1e-9);
      if (global.json()) {
        nlohmann::json j = z2lab::gram_to_json(g0);
        j["rank"] = pr.rank;
        j["min_eig"] = pr.min_eig;
        j["total_edges"] = g.total_edges();
        emit(j);
      } else {
        std::printf("dim %d, rank %d, min eigenvalue %.3e (edges: %d)\n", g0.dim(), pr.rank,
                    pr.min_eig, g.total_edges());
        const auto cols = z2lab::pivoted_cholesky(g0.mat);
        std::printf("factorization into %zu squares of bilinear forms:\n", cols.size());
        for (const auto& l : cols) {
          std::string line = "  (";
          bool first = true;
          for (int i = 0; i < g0.dim(); ++i) {
            const double c = l[static_cast<size_t>(i)];
            if (std::abs(c) < 1e-12) continue;
            char buf[64];
            if (std::abs(c - 1.0) < 1e-12)
              std::snprintf(buf, sizeof buf, "%sx%d y%d", first ? "" : " + ", i / g0.n + 1,
                            i % g0.n + 1);
            else
              std::snprintf(buf, sizeof buf, "%s%.6g x%d y%d", first ? "" : " + ", c,
                            i / g0.n + 1, i % g0.n + 1);
            line += buf;
            first = false;
          }
          std::printf("%s)^2\n", line.c_str());
        }
      }
      return kExitOk;
    }

    if (*cmd_probe) {
      const z2lab::BiGraph g = z2lab::load_fixture(graph_file);
      z2lab::ProbeOptions popts;
      popts.n_probes = probe_n;
      popts.tol = probe_tol;
      popts.seed = global.seed;
      popts.threads = global.threads;
      popts.method = probe_method == "alternating" ? z2lab::ProbeMethod::Alternating
                     : probe_method == "dykstra"   ? z2lab::ProbeMethod::Dykstra
                                                   : z2lab::ProbeMethod::Averaged;
      const auto rep = z2lab::probe_spectrahedron(z2lab::build_form(g), popts);
      const bool red_flag = rep.n_converged > 0 && rep.min_rank_found < g.total_edges();
      nlohmann::json j = z2lab::probe_report_to_json(rep);
      j["expected_rank"] = g.total_edges();
      j["red_flag"] = red_flag;
      if (global.json()) {
        emit(j);
      } else {
        std::printf("%d/%d probes converged; min rank %d (expected %d); max distance %.3e\n",
                    rep.n_converged, rep.n_probes, rep.min_rank_found, g.total_edges(),
                    rep.max_distance_to_canonical);
        if (red_flag)
          std::printf("RED FLAG: a feasible Gram matrix of rank below the edge total was "
                      "found; this contradicts the rank certificate\n");
      }
      return red_flag ? kExitRefuted : kExitOk;
    }
  } catch (const z2lab::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return kExitParse;
  } catch (const z2lab::TimeLimitExceeded& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitTimeLimit;
  } catch (const z2lab::IOError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitParse;
  } catch (const z2lab::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
