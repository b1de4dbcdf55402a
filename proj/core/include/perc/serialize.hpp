#pragma once

#include <cstdio>
#include <string>

#include "json.hpp"
#include "perc/graph.hpp"
#include "perc/oracle.hpp"

namespace perc {

/// Graph wire format: {family, params, n_vertices, edges, edge_orbits,
/// transitive}. Round-trips bit-exactly through graph_from_json.
inline nlohmann::json graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["family"] = g.family_tag();
  j["params"] = nlohmann::json::parse(g.params_json());
  j["n_vertices"] = g.n_vertices();
  auto edges = nlohmann::json::array();
  for (const Edge& e : g.edges()) edges.push_back({e.u, e.v});
  j["edges"] = std::move(edges);
  if (g.edge_orbits()) {
    j["edge_orbits"] = *g.edge_orbits();
  } else {
    j["edge_orbits"] = nullptr;
  }
  j["transitive"] = g.transitive();
  return j;
}

inline Graph graph_from_json(const nlohmann::json& j) {
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges"))
    edges.push_back({e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>()});
  std::optional<EdgeOrbits> orbits;
  if (j.contains("edge_orbits") && !j.at("edge_orbits").is_null())
    orbits = j.at("edge_orbits").get<EdgeOrbits>();
  return Graph::from_edges(j.at("n_vertices").get<std::uint32_t>(), std::move(edges),
                           j.at("family").get<std::string>(),
                           j.at("transitive").get<bool>(), std::move(orbits),
                           j.at("params").dump());
}

/// Level counts wire format: counts as decimal strings so consumers are not
/// forced into 64-bit integers.
inline nlohmann::json level_counts_to_json(const LevelCounts& lc) {
  nlohmann::json j;
  j["m_edges"] = lc.m_edges;
  auto counts = nlohmann::json::array();
  for (std::uint64_t c : lc.counts) counts.push_back(std::to_string(c));
  j["counts"] = std::move(counts);
  return j;
}

inline LevelCounts level_counts_from_json(const nlohmann::json& j) {
  LevelCounts lc;
  lc.m_edges = j.at("m_edges").get<int>();
  for (const auto& c : j.at("counts"))
    lc.counts.push_back(std::stoull(c.get<std::string>()));
  return lc;
}

/// FNV-1a digest of a serialized graph, recorded in experiment outputs.
inline std::string graph_digest(const Graph& g) {
  const std::string s = graph_to_json(g).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace perc
