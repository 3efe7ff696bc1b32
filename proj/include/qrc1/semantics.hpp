#pragma once

// Relational models with per-edge domain maps, satisfaction, adequacy checks,
// bounded model enumeration and the semantic decision procedure.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qrc1/calculus.hpp"
#include "qrc1/syntax.hpp"

namespace qrc1 {

class ModelError : public Error {
 public:
  using Error::Error;
};

using Tuple = std::vector<std::size_t>;

/// Worlds and elements are addressed by index; names are kept for output.
struct KripkeModel {
  std::vector<std::string> worlds;
  std::vector<std::vector<std::string>> domains;
  std::vector<std::vector<std::size_t>> succ;  // sorted
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> eta;
  std::vector<std::map<std::string, std::size_t>> I;
  std::vector<std::map<std::string, std::set<Tuple>>> J;

  std::size_t size() const { return worlds.size(); }

  std::size_t add_world(std::string name, std::vector<std::string> domain) {
    if (domain.empty()) throw ModelError("world " + name + " has an empty domain");
    worlds.push_back(std::move(name));
    domains.push_back(std::move(domain));
    succ.emplace_back();
    I.emplace_back();
    J.emplace_back();
    return worlds.size() - 1;
  }

  void add_edge(std::size_t w, std::size_t v, std::vector<std::size_t> map) {
    if (w >= size() || v >= size()) throw ModelError("edge between unknown worlds");
    if (map.size() != domains[w].size()) throw ModelError("eta map has the wrong length");
    for (auto e : map)
      if (e >= domains[v].size()) throw ModelError("eta map leaves the target domain");
    auto& s = succ[w];
    auto it = std::lower_bound(s.begin(), s.end(), v);
    if (it == s.end() || *it != v) s.insert(it, v);
    eta[{w, v}] = std::move(map);
  }

  /// Edge whose eta map sends element k to element k.
  void add_identity_edge(std::size_t w, std::size_t v) {
    std::vector<std::size_t> map(domains[w].size());
    for (std::size_t k = 0; k < map.size(); ++k) map[k] = k;
    add_edge(w, v, std::move(map));
  }

  bool related(std::size_t w, std::size_t v) const {
    return std::binary_search(succ[w].begin(), succ[w].end(), v);
  }

  const std::vector<std::size_t>& eta_map(std::size_t w, std::size_t v) const {
    auto it = eta.find({w, v});
    if (it == eta.end()) throw ModelError("no eta map for " + worlds[w] + " -> " + worlds[v]);
    return it->second;
  }

  void set_constant(std::size_t w, const std::string& c, std::size_t e) {
    if (e >= domains[w].size()) throw ModelError("constant " + c + " outside the domain of " + worlds[w]);
    I[w][c] = e;
  }

  void add_tuple(std::size_t w, const std::string& symbol, Tuple t) {
    for (auto e : t)
      if (e >= domains[w].size()) throw ModelError("tuple outside the domain of " + worlds[w]);
    J[w][symbol].insert(std::move(t));
  }

  bool holds(std::size_t w, const std::string& symbol, const Tuple& t) const {
    auto it = J[w].find(symbol);
    return it != J[w].end() && it->second.count(t) > 0;
  }

  std::optional<std::size_t> world_index(const std::string& name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> element_index(std::size_t w, const std::string& name) const {
    const auto& d = domains[w];
    for (std::size_t i = 0; i < d.size(); ++i)
      if (d[i] == name) return i;
    return std::nullopt;
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ) n += s.size();
    return n;
  }
};

// ---------------------------------------------------------------------------
// Frame properties

struct AdequacyReport {
  bool transitive = true;
  bool eta_coherent = true;
  bool concordant = true;
  std::vector<std::string> transitivity_witnesses;
  std::vector<std::string> eta_witnesses;
  std::vector<std::string> concordance_witnesses;

  bool ok() const { return transitive && eta_coherent && concordant; }
};

inline AdequacyReport check_adequate(const KripkeModel& m) {
  AdequacyReport r;
  const auto& W = m.worlds;
  for (std::size_t w = 0; w < m.size(); ++w) {
    for (auto u : m.succ[w]) {
      auto e = m.eta.find({w, u});
      if (e == m.eta.end() || e->second.size() != m.domains[w].size()) {
        r.eta_witnesses.push_back("missing or malformed eta(" + W[w] + "," + W[u] + ")");
        continue;
      }
      for (const auto& [c, d] : m.I[w]) {
        auto cu = m.I[u].find(c);
        if (cu == m.I[u].end() || cu->second != e->second[d])
          r.concordance_witnesses.push_back("(" + W[w] + "," + W[u] + "," + c + ")");
      }
      for (auto v : m.succ[u]) {
        if (!m.related(w, v)) {
          r.transitivity_witnesses.push_back("(" + W[w] + "," + W[u] + "," + W[v] + ")");
          continue;
        }
        auto uv = m.eta.find({u, v});
        auto wv = m.eta.find({w, v});
        if (uv == m.eta.end() || wv == m.eta.end()) continue;  // reported on their own edges
        if (uv->second.size() != m.domains[u].size() || wv->second.size() != m.domains[w].size()) continue;
        for (std::size_t d = 0; d < m.domains[w].size(); ++d) {
          if (wv->second[d] != uv->second[e->second[d]]) {
            r.eta_witnesses.push_back("(" + W[w] + "," + W[u] + "," + W[v] + "," + m.domains[w][d] + ")");
            break;
          }
        }
      }
    }
  }
  for (const auto& [edge, map] : m.eta)
    if (edge.first >= m.size() || edge.second >= m.size() || !m.related(edge.first, edge.second))
      r.eta_witnesses.push_back("eta defined off R");
  r.transitive = r.transitivity_witnesses.empty();
  r.eta_coherent = r.eta_witnesses.empty();
  r.concordant = r.concordance_witnesses.empty();
  return r;
}

inline bool is_irreflexive(const KripkeModel& m) {
  for (std::size_t w = 0; w < m.size(); ++w)
    if (m.related(w, w)) return false;
  return true;
}

inline bool is_transitive(const KripkeModel& m) { return check_adequate(m).transitive; }

/// Every world has the same domain and every eta map is the identity.
inline bool has_constant_domain(const KripkeModel& m) {
  if (m.size() == 0) return true;
  for (const auto& d : m.domains)
    if (d != m.domains[0]) return false;
  for (const auto& [edge, map] : m.eta)
    for (std::size_t k = 0; k < map.size(); ++k)
      if (map[k] != k) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Satisfaction

/// A w-assignment: variables not listed take `fallback`.
struct Assignment {
  std::map<std::string, std::size_t> values;
  std::size_t fallback = 0;

  std::size_t operator()(const std::string& x) const {
    auto it = values.find(x);
    return it == values.end() ? fallback : it->second;
  }

  Assignment with(const std::string& x, std::size_t d) const {
    Assignment g = *this;
    g.values[x] = d;
    return g;
  }

  /// g^eta: the assignment carried along an edge.
  Assignment rebase(const std::vector<std::size_t>& eta) const {
    Assignment g;
    g.fallback = eta.at(fallback);
    for (const auto& [x, d] : values) g.values[x] = eta.at(d);
    return g;
  }

  bool operator==(const Assignment&) const = default;
};

/// Evaluates formulas on one model. The adequacy check runs once.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m) : m_(m) {
    AdequacyReport r = check_adequate(m);
    if (!r.ok()) throw ModelError("model is not adequate");
  }

  bool eval(std::size_t w, const Assignment& g, const Formula& f) const {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Rel: {
        Tuple t;
        t.reserve(f.args().size());
        for (const auto& a : f.args()) t.push_back(value(w, g, a));
        return m_.holds(w, f.symbol(), t);
      }
      case Formula::Kind::And:
        return eval(w, g, f.left()) && eval(w, g, f.right());
      case Formula::Kind::Diamond:
        for (auto v : m_.succ[w])
          if (eval(v, g.rebase(m_.eta_map(w, v)), f.body())) return true;
        return false;
      case Formula::Kind::Forall:
        for (std::size_t d = 0; d < m_.domains[w].size(); ++d)
          if (!eval(w, g.with(f.var(), d), f.body())) return false;
        return true;
    }
    return false;
  }

  std::size_t value(std::size_t w, const Assignment& g, const Term& t) const {
    if (t.is_variable()) {
      std::size_t d = g(t.name);
      if (d >= m_.domains[w].size()) throw ModelError("assignment leaves the domain of " + m_.worlds[w]);
      return d;
    }
    auto it = m_.I[w].find(t.name);
    if (it == m_.I[w].end()) throw ModelError("constant " + t.name + " is not interpreted at " + m_.worlds[w]);
    return it->second;
  }

  const KripkeModel& model() const { return m_; }

 private:
  const KripkeModel& m_;
};

inline bool satisfies(const KripkeModel& m, std::size_t w, const Assignment& g, const Formula& f) {
  if (w >= m.size()) throw ModelError("unknown world");
  return Evaluator(m).eval(w, g, f);
}

/// Calls `fn` with every assignment of `vars` into the domain of world w.
inline void for_each_assignment(const KripkeModel& m, std::size_t w, const std::vector<std::string>& vars,
                                const std::function<void(const Assignment&)>& fn) {
  const std::size_t n = m.domains[w].size();
  std::vector<std::size_t> idx(vars.size(), 0);
  while (true) {
    Assignment g;
    for (std::size_t i = 0; i < vars.size(); ++i) g.values[vars[i]] = idx[i];
    fn(g);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == n) idx[k++] = 0;
    if (k == idx.size()) return;
  }
}

// ---------------------------------------------------------------------------
// Enumeration of constant-domain tree models

enum class EnumerationStatus { Completed, Stopped, Capped };

struct EnumerationOptions {
  std::size_t model_cap = 10'000'000;
  std::size_t level_cap = 20'000'000;  // subtree shapes kept in memory per height
};

namespace detail {

struct AtomTable {
  std::vector<std::pair<std::string, Tuple>> atoms;

  AtomTable(const Signature& sig, std::size_t domain_size) {
    for (const auto& [symbol, arity] : sig.relations) {
      Tuple t(arity, 0);
      while (true) {
        atoms.emplace_back(symbol, t);
        std::size_t k = arity;
        while (k > 0) {
          if (++t[k - 1] < domain_size) break;
          t[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    if (atoms.size() > 62) throw ModelError("too many ground atoms to enumerate valuations");
  }
};

struct TreeShape {
  std::uint64_t valuation = 0;
  std::vector<std::uint32_t> kids;  // indices into the previous level
};

/// Advances a non-decreasing index sequence over [0, n); false when exhausted.
inline bool next_multiset(std::vector<std::uint32_t>& seq, std::size_t n) {
  std::size_t k = seq.size();
  while (k > 0) {
    if (seq[k - 1] + 1 < n) {
      std::uint32_t v = seq[k - 1] + 1;
      for (std::size_t j = k - 1; j < seq.size(); ++j) seq[j] = v;
      return true;
    }
    --k;
  }
  return false;
}

}  // namespace detail

/// Streams every tree of height at most `depth` and branching at most `width`,
/// over the constant domain `domain` with identity eta and each constant
/// interpreted as itself, transitively closed. Order: number of root children,
/// then the multiset of child trees, then the root valuation. The visitor
/// returns false to stop.
inline EnumerationStatus enumerate_models(const Signature& sig, const std::vector<std::string>& domain,
                                          std::size_t depth, std::size_t width,
                                          const std::function<bool(const KripkeModel&)>& visitor,
                                          EnumerationOptions opts = {}) {
  if (domain.empty()) throw ModelError("empty domain");
  for (const auto& c : sig.constants)
    if (std::find(domain.begin(), domain.end(), c) == domain.end())
      throw ModelError("signature constant " + c + " missing from the domain");
  detail::AtomTable atoms(sig, domain.size());
  const std::uint64_t valuations = std::uint64_t{1} << atoms.atoms.size();

  std::vector<std::vector<detail::TreeShape>> levels;
  auto materialize = [&](std::size_t d) -> bool {
    std::vector<detail::TreeShape> level;
    const std::size_t prev = d == 0 ? 0 : levels[d - 1].size();
    for (std::size_t k = 0; k <= (d == 0 ? 0 : width); ++k) {
      std::vector<std::uint32_t> seq(k, 0);
      do {
        for (std::uint64_t v = 0; v < valuations; ++v) {
          level.push_back({v, seq});
          if (level.size() > opts.level_cap) return false;
        }
      } while (k > 0 && detail::next_multiset(seq, prev));
      if (k > 0 && prev == 0) break;
    }
    levels.push_back(std::move(level));
    return true;
  };
  for (std::size_t d = 0; d < depth; ++d)
    if (!materialize(d)) return EnumerationStatus::Capped;

  auto build = [&](std::uint64_t root_val, const std::vector<std::uint32_t>& kids) {
    KripkeModel m;
    std::vector<std::size_t> ancestors;
    std::function<void(std::uint64_t, const std::vector<std::uint32_t>&, std::size_t)> add =
        [&](std::uint64_t val, const std::vector<std::uint32_t>& children, std::size_t level) {
          std::size_t w = m.add_world("w" + std::to_string(m.size()), domain);
          for (std::size_t k = 0; k < domain.size(); ++k) m.set_constant(w, domain[k], k);
          for (std::size_t a = 0; a < atoms.atoms.size(); ++a)
            if (val >> a & 1) m.add_tuple(w, atoms.atoms[a].first, atoms.atoms[a].second);
          for (auto anc : ancestors) m.add_identity_edge(anc, w);
          ancestors.push_back(w);
          for (auto c : children) {
            const auto& shape = levels[level - 1][c];
            add(shape.valuation, shape.kids, level - 1);
          }
          ancestors.pop_back();
        };
    add(root_val, kids, depth);
    return m;
  };

  std::size_t produced = 0;
  const std::size_t top_width = depth == 0 ? 0 : width;
  const std::size_t prev = depth == 0 ? 0 : levels[depth - 1].size();
  for (std::size_t k = 0; k <= top_width; ++k) {
    if (k > 0 && prev == 0) break;
    std::vector<std::uint32_t> seq(k, 0);
    do {
      for (std::uint64_t v = 0; v < valuations; ++v) {
        if (produced++ >= opts.model_cap) return EnumerationStatus::Capped;
        if (!visitor(build(v, seq))) return EnumerationStatus::Stopped;
      }
    } while (k > 0 && detail::next_multiset(seq, prev));
  }
  return EnumerationStatus::Completed;
}

// ---------------------------------------------------------------------------
// Decision procedure

struct Derivable {
  std::optional<Derivation> certificate;
};

struct Refuted {
  KripkeModel model;
  std::size_t world = 0;
  Assignment assignment;
};

struct Inconclusive {
  std::string reason;
};

using Verdict = std::variant<Derivable, Refuted, Inconclusive>;

inline bool is_derivable(const Verdict& v) { return std::holds_alternative<Derivable>(v); }
inline bool is_refuted(const Verdict& v) { return std::holds_alternative<Refuted>(v); }
inline bool is_inconclusive(const Verdict& v) { return std::holds_alternative<Inconclusive>(v); }

enum class Strategy {
  /// Builds the least model of the closed left side and tests the right side.
  Canonical,
  /// Scans enumerate_models for the first countermodel.
  Enumeration,
};

struct DecideOptions {
  Strategy strategy = Strategy::Canonical;
  std::size_t model_cap = 10'000'000;
  std::size_t world_cap = 200'000;
  bool attach_certificate = true;
  std::size_t depth_budget = 12;
  bool minimize = true;
};

/// The closed form of a sequent together with the constant domain the
/// decision procedure works over.
struct ClosedSequent {
  Formula lhs;
  Formula rhs;
  Signature signature;                         // includes closing and padding constants
  std::map<std::string, std::string> naming;  // free variable -> closing constant
  std::vector<std::string> domain;             // C
};

/// Replaces free variables by fresh constants and picks C with
/// |C| >= 2 cdepth + 2 udepth + 1 containing every signature constant.
inline ClosedSequent close_sequent(const Sequent& s) {
  ClosedSequent out;
  out.signature = s.signature;
  absorb(out.signature, s.lhs);
  absorb(out.signature, s.rhs);
  std::set<std::string> fv = free_variables(s.lhs);
  for (const auto& x : free_variables(s.rhs)) fv.insert(x);
  for (const auto& x : fv) {
    std::string c = out.signature.fresh_constant();
    out.signature.add_constant(c);
    out.naming[x] = c;
  }
  out.lhs = close_with_constants(s.lhs, out.naming);
  out.rhs = close_with_constants(s.rhs, out.naming);
  const std::size_t bound = witness_domain_bound(std::vector<Formula>{out.lhs, out.rhs});
  while (out.signature.constants.size() < bound) out.signature.add_constant(out.signature.fresh_constant());
  out.domain = out.signature.constants;
  return out;
}

namespace detail {

/// Finite tree of worlds labelled with ground atoms over the domain indices.
class CanonicalTree {
 public:
  struct Node {
    std::set<std::pair<std::string, Tuple>> atoms;
    std::vector<std::size_t> children;
    std::map<std::string, std::size_t> child_by_key;
    std::size_t parent = 0;
    bool alive = true;
  };

  CanonicalTree(const std::vector<std::string>& domain, std::size_t world_cap)
      : domain_(domain), cap_(world_cap) {
    for (std::size_t k = 0; k < domain.size(); ++k) index_[domain[k]] = k;
    nodes.emplace_back();
  }

  /// Makes `f` true at node `n` in the least way. False when the cap is hit.
  bool expand(std::size_t n, const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return true;
      case Formula::Kind::Rel: {
        Tuple t;
        for (const auto& a : f.args()) t.push_back(index_.at(a.name));
        nodes[n].atoms.emplace(f.symbol(), std::move(t));
        return true;
      }
      case Formula::Kind::And:
        return expand(n, f.left()) && expand(n, f.right());
      case Formula::Kind::Diamond: {
        const std::string& k = f.body().key();
        auto it = nodes[n].child_by_key.find(k);
        if (it != nodes[n].child_by_key.end()) return true;
        if (nodes.size() >= cap_) return false;
        std::size_t child = nodes.size();
        nodes.emplace_back();
        nodes[child].parent = n;
        nodes[n].children.push_back(child);
        nodes[n].child_by_key.emplace(k, child);
        return expand(child, f.body());
      }
      case Formula::Kind::Forall:
        for (const auto& c : domain_)
          if (!expand(n, substitute_unchecked(f.body(), f.var(), Term::constant(c)))) return false;
        return true;
    }
    return false;
  }

  KripkeModel to_model() const {
    KripkeModel m;
    std::vector<std::size_t> ancestors;
    std::function<void(std::size_t)> add = [&](std::size_t n) {
      std::size_t w = m.add_world("w" + std::to_string(m.size()), domain_);
      for (std::size_t k = 0; k < domain_.size(); ++k) m.set_constant(w, domain_[k], k);
      for (const auto& [s, t] : nodes[n].atoms) m.add_tuple(w, s, t);
      for (auto a : ancestors) m.add_identity_edge(a, w);
      ancestors.push_back(w);
      for (auto c : nodes[n].children)
        if (nodes[c].alive) add(c);
      ancestors.pop_back();
    };
    add(0);
    return m;
  }

  std::vector<Node> nodes;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, std::size_t> index_;
  std::size_t cap_;
};

inline bool root_refutes(const CanonicalTree& t, const Formula& lhs, const Formula& rhs) {
  KripkeModel m = t.to_model();
  Evaluator ev(m);
  return ev.eval(0, {}, lhs) && !ev.eval(0, {}, rhs);
}

/// Greedy shrinking: drop subtrees and atoms while the left side stays true
/// (the right side stays false by monotonicity), then merge sibling subtrees
/// while the right side stays false.
inline void minimize(CanonicalTree& t, const Formula& lhs, const Formula& rhs) {
  if (t.nodes.size() > 256) return;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = 1; n < t.nodes.size(); ++n) {
      if (!t.nodes[n].alive) continue;
      t.nodes[n].alive = false;
      if (root_refutes(t, lhs, rhs)) {
        changed = true;
      } else {
        t.nodes[n].alive = true;
      }
    }
    for (std::size_t n = 0; n < t.nodes.size(); ++n) {
      if (!t.nodes[n].alive) continue;
      auto atoms = t.nodes[n].atoms;
      for (const auto& a : atoms) {
        t.nodes[n].atoms.erase(a);
        if (root_refutes(t, lhs, rhs)) {
          changed = true;
        } else {
          t.nodes[n].atoms.insert(a);
        }
      }
    }
    for (std::size_t n = 0; n < t.nodes.size() && !changed; ++n) {
      if (!t.nodes[n].alive) continue;
      std::vector<std::size_t> kids;
      for (auto c : t.nodes[n].children)
        if (t.nodes[c].alive) kids.push_back(c);
      for (std::size_t i = 0; i < kids.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < kids.size() && !changed; ++j) {
          auto saved = t.nodes;
          CanonicalTree::Node& a = t.nodes[kids[i]];
          CanonicalTree::Node& b = t.nodes[kids[j]];
          a.atoms.insert(b.atoms.begin(), b.atoms.end());
          for (auto c : b.children) {
            a.children.push_back(c);
            t.nodes[c].parent = kids[i];
          }
          b.alive = false;
          if (root_refutes(t, lhs, rhs)) {
            changed = true;
          } else {
            t.nodes = std::move(saved);
          }
        }
      }
    }
  }
}

inline Refuted make_refuted(KripkeModel m, const ClosedSequent& cs) {
  Refuted r;
  r.model = std::move(m);
  r.world = 0;
  for (const auto& [x, c] : cs.naming) r.assignment.values[x] = *r.model.element_index(0, c);
  return r;
}

}  // namespace detail

/// Decides derivability of a sequent. Free variables are closed with fresh
/// constants and the question is answered over constant-domain, identity-eta,
/// transitive irreflexive trees on the domain C. A Refuted payload is
/// re-verified against the original open sequent before it is returned.
inline Verdict decide(const Sequent& s, const DecideOptions& opts = {}) {
  ClosedSequent cs = close_sequent(s);
  std::optional<Refuted> refuted;

  if (opts.strategy == Strategy::Canonical) {
    detail::CanonicalTree tree(cs.domain, opts.world_cap);
    if (!tree.expand(0, cs.lhs))
      return Inconclusive{"canonical model exceeds " + std::to_string(opts.world_cap) + " worlds"};
    if (detail::root_refutes(tree, cs.lhs, cs.rhs)) {
      if (opts.minimize) detail::minimize(tree, cs.lhs, cs.rhs);
      refuted = detail::make_refuted(tree.to_model(), cs);
    }
  } else {
    Signature rels;
    for (const auto& f : {cs.lhs, cs.rhs}) {
      std::map<std::string, std::size_t> r;
      collect_relations(f, r);
      for (const auto& [sym, n] : r) rels.add_relation(sym, n);
    }
    const FormulaSet cl = closure(std::vector<Formula>{cs.lhs, cs.rhs}, cs.domain);
    std::size_t width = 0;
    for (const auto& f : cl)
      if (f.is_diamond()) ++width;
    const std::size_t depth = std::max(cs.lhs.mdepth(), cs.rhs.mdepth());
    EnumerationStatus st;
    try {
      st = enumerate_models(
          rels, cs.domain, depth, width,
          [&](const KripkeModel& m) {
            Evaluator ev(m);
            if (ev.eval(0, {}, cs.lhs) && !ev.eval(0, {}, cs.rhs)) {
              refuted = detail::make_refuted(m, cs);
              return false;
            }
            return true;
          },
          {opts.model_cap});
    } catch (const ModelError& e) {
      return Inconclusive{e.what()};
    }
    if (st == EnumerationStatus::Capped)
      return Inconclusive{"model cap of " + std::to_string(opts.model_cap) + " reached"};
  }

  if (refuted) {
    Evaluator ev(refuted->model);
    if (!ev.eval(refuted->world, refuted->assignment, s.lhs) || ev.eval(refuted->world, refuted->assignment, s.rhs))
      throw std::logic_error("countermodel failed re-verification for " + s.to_string());
    return std::move(*refuted);
  }
  Derivable d;
  if (opts.attach_certificate) d.certificate = prove(s, opts.depth_budget);
  return d;
}

inline Verdict decide(const Formula& lhs, const Formula& rhs, const Signature& sig = {},
                      const DecideOptions& opts = {}) {
  return decide(Sequent{lhs, rhs, sig}, opts);
}

}  // namespace qrc1
