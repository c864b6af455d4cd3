#pragma once

#include <string>

#include <json.hpp>

#include "z2lab/admissibility.hpp"
#include "z2lab/forms.hpp"
#include "z2lab/gram.hpp"
#include "z2lab/grid.hpp"
#include "z2lab/search.hpp"

namespace z2lab {

/// Schema: {"m": int, "n": int, "e1": [[i,j],...], "e2": [[[i,j],[k,l]],...]}
/// with 1-based indices, e1 sorted lexicographically and each 2-edge listed
/// with its lexicographically smaller half first.
inline nlohmann::json bigraph_to_json(const BiGraph& g) {
  nlohmann::json j;
  j["m"] = g.rows();
  j["n"] = g.cols();
  j["e1"] = nlohmann::json::array();
  for (Cell c : g.one_edges()) j["e1"].push_back({c.row, c.col});
  j["e2"] = nlohmann::json::array();
  for (const TwoEdge& e : g.two_edges())
    j["e2"].push_back({{e.a().row, e.a().col}, {e.b().row, e.b().col}});
  return j;
}

inline std::string bigraph_to_json_string(const BiGraph& g) { return bigraph_to_json(g).dump(); }

namespace detail {

inline int json_int(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw ParseError("field " + where + ": expected an integer, got " + j.dump());
  return j.get<int>();
}

inline Cell json_cell(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("field " + where + ": expected a cell [i,j], got " + j.dump());
  return Cell{json_int(j[0], where + "[0]"), json_int(j[1], where + "[1]")};
}

}  // namespace detail

inline BiGraph bigraph_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object describing a graph");
  for (const char* field : {"m", "n", "e1", "e2"})
    if (!j.contains(field)) throw ParseError(std::string("missing field \"") + field + "\"");
  try {
    BiGraph g(detail::json_int(j["m"], "m"), detail::json_int(j["n"], "n"));
    if (!j["e1"].is_array()) throw ParseError("field e1: expected an array");
    size_t idx = 0;
    for (const auto& item : j["e1"]) {
      g = add_one_edge(g, detail::json_cell(item, "e1[" + std::to_string(idx) + "]"));
      ++idx;
    }
    if (!j["e2"].is_array()) throw ParseError("field e2: expected an array");
    idx = 0;
    for (const auto& item : j["e2"]) {
      const std::string where = "e2[" + std::to_string(idx) + "]";
      if (!item.is_array() || item.size() != 2)
        throw ParseError("field " + where + ": expected a pair of cells [[i,j],[k,l]], got " +
                         item.dump());
      g = add_two_edge(g, TwoEdge{detail::json_cell(item[0], where + "[0]"),
                                  detail::json_cell(item[1], where + "[1]")});
      ++idx;
    }
    return g;
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

inline BiGraph bigraph_from_json_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  return bigraph_from_json(j);
}

/// {"kind": "...", "cells": [[i,j],...], "two_edge": [[i,j],[k,l]] | null}
inline nlohmann::json witness_to_json(const Witness& w) {
  nlohmann::json j;
  j["kind"] = to_string(w.kind);
  j["cells"] = nlohmann::json::array();
  for (Cell c : w.cells) j["cells"].push_back({c.row, c.col});
  if (w.two_edge) {
    j["two_edge"] = {{w.two_edge->a().row, w.two_edge->a().col},
                     {w.two_edge->b().row, w.two_edge->b().col}};
  } else {
    j["two_edge"] = nullptr;
  }
  return j;
}

inline nlohmann::json search_result_to_json(const SearchResult& r, int m, int n) {
  nlohmann::json j;
  j["m"] = m;
  j["n"] = n;
  j["value"] = r.value;
  j["exhausted"] = r.exhausted;
  j["nodes"] = r.nodes_explored;
  j["elapsed_secs"] = r.elapsed_secs;
  j["witnesses"] = nlohmann::json::array();
  for (const BiGraph& g : r.witnesses) j["witnesses"].push_back(bigraph_to_json(g));
  return j;
}

/// {"terms":[{"i":..,"j":..,"k":..,"l":..,"c":..},...]} with (i,j) and (k,l)
/// the two cells of each term; pure terms have (i,j) == (k,l).
inline nlohmann::json form_to_json(const BiquadraticForm& f) {
  nlohmann::json j;
  j["terms"] = nlohmann::json::array();
  for (const auto& [key, c] : f.terms()) {
    const auto& [a, b] = key;
    j["terms"].push_back(
        {{"i", a.row}, {"j", a.col}, {"k", b.row}, {"l", b.col}, {"c", c}});
  }
  return j;
}

/// {"dim":..,"entries":[...]} row-major.
inline nlohmann::json gram_to_json(const GramMatrix& g) {
  nlohmann::json j;
  j["dim"] = g.dim();
  j["entries"] = g.mat.data();
  return j;
}

inline nlohmann::json probe_report_to_json(const ProbeReport& r) {
  nlohmann::json j;
  j["label"] = "numerical evidence (feasibility probes, not a proof)";
  j["n_probes"] = r.n_probes;
  j["n_converged"] = r.n_converged;
  j["min_rank_found"] = r.min_rank_found;
  j["max_distance_to_canonical"] = r.max_distance_to_canonical;
  j["tolerance"] = r.tolerance;
  j["probes"] = nlohmann::json::array();
  for (const auto& p : r.probes) {
    j["probes"].push_back({{"seed", p.seed},
                           {"iterations", p.iterations},
                           {"residual", p.residual},
                           {"converged", p.converged},
                           {"rank", p.rank},
                           {"distance_to_canonical", p.distance_to_canonical}});
  }
  return j;
}

}  // namespace z2lab
