#pragma once

// JSON and DOT serialization.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qrc1/calculus.hpp"
#include "qrc1/countermodel.hpp"
#include "qrc1/parser.hpp"
#include "qrc1/semantics.hpp"

namespace qrc1 {

using Json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Signatures

inline Json signature_to_json(const Signature& sig) {
  Json j;
  j["constants"] = sig.constants;
  j["relations"] = Json::object();
  for (const auto& [s, n] : sig.relations) j["relations"][s] = n;
  return j;
}

inline Signature signature_from_json(const Json& j) {
  Signature sig;
  try {
    if (j.contains("constants"))
      for (const auto& c : j.at("constants")) sig.add_constant(c.get<std::string>());
    if (j.contains("relations"))
      for (const auto& [s, n] : j.at("relations").items()) {
        if (!is_relation_name(s)) throw FormatError("invalid relation symbol " + s);
        sig.add_relation(s, n.get<std::size_t>());
      }
  } catch (const Json::exception& e) {
    throw FormatError(std::string("signature: ") + e.what());
  }
  return sig;
}

// ---------------------------------------------------------------------------
// Derivations

inline Json term_to_json(const Term& t) {
  Json j;
  j[t.is_variable() ? "var" : "const"] = t.name;
  return j;
}

inline Term term_from_json(const Json& j) {
  if (j.contains("var")) return Term::variable(j.at("var").get<std::string>());
  if (j.contains("const")) return Term::constant(j.at("const").get<std::string>());
  throw FormatError("term needs 'var' or 'const'");
}

namespace detail {

inline Json derivation_node_to_json(const Derivation& d) {
  Json j;
  j["rule"] = std::string(rule_tag(d.rule));
  j["lhs"] = d.conclusion.lhs.to_string();
  j["rhs"] = d.conclusion.rhs.to_string();
  if (!d.witness.empty()) {
    Json w = Json::object();
    if (d.witness.variable) w["variable"] = *d.witness.variable;
    if (d.witness.term) w["term"] = term_to_json(*d.witness.term);
    j["witness"] = w;
  }
  j["premises"] = Json::array();
  for (const auto& p : d.premises) j["premises"].push_back(derivation_node_to_json(p));
  return j;
}

inline Derivation derivation_node_from_json(const Json& j, const Signature& parent) {
  Derivation d;
  auto rule = rule_from_tag(j.at("rule").get<std::string>());
  if (!rule) throw FormatError("unknown rule tag " + j.at("rule").get<std::string>());
  d.rule = *rule;
  Signature sig = parent;
  d.conclusion.lhs = parse_formula_extending(j.at("lhs").get<std::string>(), sig);
  d.conclusion.rhs = parse_formula_extending(j.at("rhs").get<std::string>(), sig);
  d.conclusion.signature = sig;
  if (j.contains("witness")) {
    const Json& w = j.at("witness");
    if (w.contains("variable")) d.witness.variable = w.at("variable").get<std::string>();
    if (w.contains("term")) d.witness.term = term_from_json(w.at("term"));
  }
  if (j.contains("premises"))
    for (const auto& p : j.at("premises")) d.premises.push_back(derivation_node_from_json(p, sig));
  return d;
}

}  // namespace detail

/// The root carries the signature; premises inherit it and add the constants
/// they mention.
inline Json derivation_to_json(const Derivation& d) {
  Json j = detail::derivation_node_to_json(d);
  Json out;
  out["signature"] = signature_to_json(d.conclusion.signature);
  for (auto& [k, v] : j.items()) out[k] = v;
  return out;
}

inline Derivation derivation_from_json(const Json& j) {
  try {
    Signature sig = j.contains("signature") ? signature_from_json(j.at("signature")) : Signature{};
    return detail::derivation_node_from_json(j, sig);
  } catch (const Json::exception& e) {
    throw FormatError(std::string("derivation: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Models

namespace detail {

inline bool uniform_constants(const KripkeModel& m) {
  for (const auto& i : m.I)
    if (i != m.I[0]) return false;
  return true;
}

}  // namespace detail

/// Constant-domain identity-eta models with uniform constants use the compact
/// form {"worlds","R","domain","I","J"}; anything else adds "domains", "eta"
/// and per-world "I".
inline Json model_to_json(const KripkeModel& m) {
  Json j;
  const bool compact = m.size() > 0 && has_constant_domain(m) && detail::uniform_constants(m);
  j["worlds"] = m.worlds;
  j["R"] = Json::array();
  for (std::size_t w = 0; w < m.size(); ++w)
    for (auto v : m.succ[w]) j["R"].push_back({m.worlds[w], m.worlds[v]});
  if (compact) {
    j["domain"] = m.domains[0];
    j["I"] = Json::object();
    for (const auto& [c, e] : m.I[0]) j["I"][c] = m.domains[0][e];
  } else {
    j["domains"] = Json::object();
    for (std::size_t w = 0; w < m.size(); ++w) j["domains"][m.worlds[w]] = m.domains[w];
    j["eta"] = Json::array();
    for (const auto& [edge, map] : m.eta) {
      Json e;
      e["from"] = m.worlds[edge.first];
      e["to"] = m.worlds[edge.second];
      e["map"] = Json::array();
      for (auto x : map) e["map"].push_back(m.domains[edge.second][x]);
      j["eta"].push_back(e);
    }
    j["I"] = Json::object();
    for (std::size_t w = 0; w < m.size(); ++w) {
      Json iw = Json::object();
      for (const auto& [c, e] : m.I[w]) iw[c] = m.domains[w][e];
      j["I"][m.worlds[w]] = iw;
    }
  }
  Json J = Json::object();
  std::set<std::string> symbols;
  for (const auto& jw : m.J)
    for (const auto& [s, ts] : jw) symbols.insert(s);
  for (const auto& s : symbols) {
    Json per = Json::object();
    for (std::size_t w = 0; w < m.size(); ++w) {
      auto it = m.J[w].find(s);
      if (it == m.J[w].end() || it->second.empty()) continue;
      Json tuples = Json::array();
      for (const auto& t : it->second) {
        Json tuple = Json::array();
        for (auto e : t) tuple.push_back(m.domains[w][e]);
        tuples.push_back(tuple);
      }
      per[m.worlds[w]] = tuples;
    }
    J[s] = per;
  }
  j["J"] = J;
  return j;
}

inline KripkeModel model_from_json(const Json& j) {
  try {
    KripkeModel m;
    std::vector<std::string> worlds = j.at("worlds").get<std::vector<std::string>>();
    const bool general = j.contains("domains");
    for (const auto& w : worlds) {
      std::vector<std::string> dom = general ? j.at("domains").at(w).get<std::vector<std::string>>()
                                             : j.at("domain").get<std::vector<std::string>>();
      m.add_world(w, dom);
    }
    auto world = [&](const Json& name) {
      auto idx = m.world_index(name.get<std::string>());
      if (!idx) throw FormatError("unknown world " + name.get<std::string>());
      return *idx;
    };
    auto element = [&](std::size_t w, const Json& name) {
      auto idx = m.element_index(w, name.get<std::string>());
      if (!idx) throw FormatError("unknown element " + name.get<std::string>() + " at " + m.worlds[w]);
      return *idx;
    };
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> maps;
    if (j.contains("eta"))
      for (const auto& e : j.at("eta")) {
        std::size_t from = world(e.at("from"));
        std::size_t to = world(e.at("to"));
        std::vector<std::size_t> map;
        for (const auto& x : e.at("map")) map.push_back(element(to, x));
        maps[{from, to}] = std::move(map);
      }
    for (const auto& edge : j.at("R")) {
      std::size_t w = world(edge.at(0));
      std::size_t v = world(edge.at(1));
      auto it = maps.find({w, v});
      if (it != maps.end()) {
        m.add_edge(w, v, it->second);
      } else {
        if (m.domains[w] != m.domains[v]) throw FormatError("missing eta map for an edge between different domains");
        m.add_identity_edge(w, v);
      }
    }
    if (j.contains("I")) {
      const Json& I = j.at("I");
      for (std::size_t w = 0; w < m.size(); ++w) {
        const Json* iw = &I;
        if (general || (I.contains(m.worlds[w]) && I.at(m.worlds[w]).is_object())) {
          if (!I.contains(m.worlds[w])) continue;
          iw = &I.at(m.worlds[w]);
        }
        for (const auto& [c, e] : iw->items()) m.set_constant(w, c, element(w, e));
      }
    }
    if (j.contains("J"))
      for (const auto& [s, per] : j.at("J").items())
        for (const auto& [wname, tuples] : per.items()) {
          std::size_t w = world(Json(wname));
          for (const auto& t : tuples) {
            Tuple tuple;
            for (const auto& e : t) tuple.push_back(element(w, e));
            m.add_tuple(w, s, std::move(tuple));
          }
        }
    return m;
  } catch (const Json::exception& e) {
    throw FormatError(std::string("model: ") + e.what());
  }
}

/// Atoms true at a world, printed over element names.
inline std::vector<std::string> true_atoms(const KripkeModel& m, std::size_t w) {
  std::vector<std::string> out;
  for (const auto& [s, ts] : m.J[w])
    for (const auto& t : ts) {
      std::string a = s + "(";
      for (std::size_t k = 0; k < t.size(); ++k) a += (k ? ", " : "") + m.domains[w][t[k]];
      out.push_back(a + ")");
    }
  return out;
}

/// Graphviz digraph; with `cover_only` only edges not implied by transitivity
/// are drawn.
inline std::string model_to_dot(const KripkeModel& m, bool cover_only = false) {
  std::ostringstream os;
  os << "digraph model {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t w = 0; w < m.size(); ++w) {
    std::string label = m.worlds[w];
    for (const auto& a : true_atoms(m, w)) label += "\\n" + a;
    os << "  \"" << m.worlds[w] << "\" [label=\"" << label << "\"];\n";
  }
  for (std::size_t w = 0; w < m.size(); ++w)
    for (auto v : m.succ[w]) {
      if (cover_only) {
        bool implied = false;
        for (auto u : m.succ[w])
          if (u != v && m.related(u, v)) implied = true;
        if (implied) continue;
      }
      os << "  \"" << m.worlds[w] << "\" -> \"" << m.worlds[v] << "\";\n";
    }
  os << "}\n";
  return os.str();
}

inline Json formula_set_to_json(const FormulaSet& s) {
  Json j = Json::array();
  for (const auto& f : s) j.push_back(f.to_string());
  return j;
}

inline Json pair_to_json(const Pair& p) {
  Json j;
  j["positive"] = formula_set_to_json(p.positive);
  j["negative"] = formula_set_to_json(p.negative);
  return j;
}

inline Json assignment_to_json(const KripkeModel& m, std::size_t w, const Assignment& g) {
  Json j = Json::object();
  for (const auto& [x, d] : g.values) j[x] = m.domains[w].at(d);
  return j;
}

}  // namespace qrc1
