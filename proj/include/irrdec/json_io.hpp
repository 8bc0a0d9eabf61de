#pragma once

#include <string>

#include <json.hpp>

#include "audit.hpp"
#include "decompose.hpp"
#include "factor.hpp"
#include "graph.hpp"
#include "labeling.hpp"
#include "lll.hpp"
#include "oracle.hpp"

namespace irrdec {

using json = nlohmann::ordered_json;

inline std::string edge_key(const Edge& e) { return std::to_string(e.u) + "-" + std::to_string(e.v); }

inline json to_json(const LabelPair& l) { return {{"c1", l.c1}, {"c2", l.c2}}; }

inline LabelPair labels_from_json(const json& j) {
  LabelPair l;
  l.c1 = j.at("c1").get<std::vector<std::int64_t>>();
  l.c2 = j.at("c2").get<std::vector<std::int64_t>>();
  if (l.c1.size() != l.c2.size()) throw std::invalid_argument("c1 and c2 differ in length");
  return l;
}

inline json to_json(const AuditEntry& a) {
  return {{"claim_id", a.claim_id}, {"formula", a.formula}, {"computed", a.computed},
          {"printed", a.printed},   {"pass", a.pass},       {"detail", a.detail}};
}

inline json to_json(const DegreeTargetSpec& s) {
  json allowed = json::object();
  for (std::size_t v = 0; v < s.allowed.size(); ++v) allowed[std::to_string(v)] = s.allowed[v];
  return {{"allowed", allowed}};
}

inline json to_json(const ModularTargetSpec& s) { return {{"t", s.t}, {"lambda", s.lambda}}; }

inline json colour_map(const Decomposition& d) {
  json m = json::object();
  for (EdgeId e = 0; e < d.graph().edge_count(); ++e) m[edge_key(d.graph().edge(e))] = d.colour(e);
  return m;
}

inline json to_json(const Decomposition& d) { return {{"k", d.k()}, {"colour", colour_map(d)}}; }

inline Decomposition decomposition_from_json(const Graph& g, const json& j) {
  std::vector<int> colour(g.edges().size(), 0);
  for (const auto& [key, c] : j.at("colour").items()) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("bad edge key " + key);
    const EdgeId e = g.find_edge(std::stoi(key.substr(0, dash)), std::stoi(key.substr(dash + 1)));
    if (e < 0) throw std::invalid_argument("edge " + key + " not in graph");
    colour[e] = c.get<int>();
  }
  return Decomposition(g, j.at("k").get<int>(), std::move(colour));
}

inline json to_json(const OracleResult& r) {
  json j;
  j["k"] = r.feasible_k ? json(*r.feasible_k) : json(nullptr);
  j["witness"] = r.witness ? colour_map(*r.witness) : json(nullptr);
  j["nodes_explored"] = r.nodes_explored;
  j["exhausted"] = r.exhausted;
  return j;
}

inline json to_json(const Diagnostic& d) {
  return {{"diagnostic", to_string(d.kind)}, {"stage", d.stage}, {"message", d.message},
          {"vertices", d.vertices},          {"edges", d.edges}};
}

inline json to_json(const PipelineTrace& t) {
  json stages = json::array();
  for (const auto& s : t.stages) {
    json js = {{"stage", s.stage}, {"ok", s.ok}, {"edges", s.edges}};
    if (!s.note.empty()) js["note"] = s.note;
    if (!s.relaxed_vertices.empty()) js["relaxed_vertices"] = s.relaxed_vertices.size();
    stages.push_back(std::move(js));
  }
  json j = {{"stages", stages}, {"mt_rounds", t.mt_rounds}, {"complete", t.complete}};
  if (t.complete) {
    j["edge_counts"] = {{"G'", mask_size(t.g_prime)}, {"H1", mask_size(t.h1)},   {"G''", mask_size(t.g_second)},
                        {"C", mask_size(t.c)},        {"F", mask_size(t.f)},     {"H2", mask_size(t.h2)},
                        {"H2'", mask_size(t.h2_prime)}, {"H3'", mask_size(t.h3_prime)}};
  }
  return j;
}

inline json to_json(const Rational& r) { return {{"num", r.num}, {"den", r.den}, {"value", static_cast<double>(r.value())}}; }

inline json to_json(const RiskBoundCheck& c) {
  return {{"bound", c.name},
          {"conditioned_on", c.conditioned_on},
          {"worst", c.worst.str()},
          {"worst_value", static_cast<double>(c.worst.value())},
          {"limit", static_cast<double>(c.bound_value)},
          {"pass", c.pass}};
}

}  // namespace irrdec
