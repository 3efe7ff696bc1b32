#pragma once

// Seeded random formulas, sequents and adequate models.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qrc1/calculus.hpp"
#include "qrc1/semantics.hpp"
#include "qrc1/syntax.hpp"

namespace qrc1 {

struct CorpusParams {
  std::vector<std::pair<std::string, std::size_t>> relations{{"S", 1}, {"R", 2}};
  std::vector<std::string> constants{"c", "d"};
  std::vector<std::string> variables{"x", "x1"};
  std::size_t max_mdepth = 2;
  std::size_t max_udepth = 1;
  std::size_t max_size = 9;
  bool allow_free = false;

  Signature signature() const {
    Signature sig;
    for (const auto& c : constants) sig.add_constant(c);
    for (const auto& [s, n] : relations) sig.add_relation(s, n);
    return sig;
  }
};

class FormulaGenerator {
 public:
  FormulaGenerator(CorpusParams params, std::uint64_t seed) : p_(std::move(params)), rng_(seed) {}

  Formula formula() {
    std::vector<std::string> bound;
    return gen(p_.max_mdepth, p_.max_udepth, p_.max_size, bound);
  }

  /// Half of the time the right side is a weakening of the left side, so the
  /// corpus mixes derivable and underivable sequents.
  Sequent sequent() {
    Formula lhs = formula();
    Formula rhs = pick(2) == 0 ? weaken(lhs) : formula();
    return Sequent{lhs, rhs, p_.signature()};
  }

  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::mt19937_64& rng() { return rng_; }
  const CorpusParams& params() const { return p_; }

 private:
  Term term(const std::vector<std::string>& bound) {
    std::vector<Term> options;
    for (const auto& x : bound) options.push_back(Term::variable(x));
    // Bound variables are drawn twice as often to keep quantifiers relevant.
    for (const auto& x : bound) options.push_back(Term::variable(x));
    for (const auto& c : p_.constants) options.push_back(Term::constant(c));
    if (p_.allow_free)
      for (const auto& x : p_.variables) options.push_back(Term::variable(x));
    if (options.empty()) {
      if (p_.variables.empty()) throw Error("corpus has no terms");
      return Term::variable(p_.variables.front());
    }
    return options[pick(options.size())];
  }

  Formula atom(const std::vector<std::string>& bound) {
    if (p_.relations.empty()) return Formula::top();
    const auto& [symbol, arity] = p_.relations[pick(p_.relations.size())];
    std::vector<Term> args;
    for (std::size_t k = 0; k < arity; ++k) args.push_back(term(bound));
    return Formula::rel(symbol, std::move(args));
  }

  Formula gen(std::size_t md, std::size_t ud, std::size_t size, std::vector<std::string>& bound) {
    enum Choice { Top, Atom, And, Dia, All };
    std::vector<Choice> choices{Top, Atom, Atom, Atom};
    if (size >= 3) choices.insert(choices.end(), {And, And, And});
    if (md > 0 && size >= 2) choices.insert(choices.end(), {Dia, Dia, Dia});
    if (ud > 0 && size >= 2 && !p_.variables.empty()) choices.insert(choices.end(), {All, All, All});
    switch (choices[pick(choices.size())]) {
      case Top:
        return Formula::top();
      case Atom:
        return atom(bound);
      case And: {
        std::size_t left = 1 + pick(size - 2);
        Formula a = gen(md, ud, left, bound);
        Formula b = gen(md, ud, size - 1 - left, bound);
        return Formula::conj(a, b);
      }
      case Dia:
        return Formula::diamond(gen(md - 1, ud, size - 1, bound));
      case All: {
        std::string x = p_.variables[pick(p_.variables.size())];
        bound.push_back(x);
        Formula body = gen(md, ud - 1, size - 1, bound);
        bound.pop_back();
        return Formula::forall(x, body);
      }
    }
    return Formula::top();
  }

  /// A formula that usually follows from f.
  Formula weaken(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Top:
        return f;
      case Formula::Kind::Rel:
        return pick(4) == 0 ? Formula::top() : f;
      case Formula::Kind::And:
        switch (pick(3)) {
          case 0:
            return weaken(f.left());
          case 1:
            return weaken(f.right());
          default:
            return Formula::conj(weaken(f.right()), weaken(f.left()));
        }
      case Formula::Kind::Diamond:
        if (f.body().is_diamond() && pick(2) == 0) return weaken(f.body());
        return Formula::diamond(weaken(f.body()));
      case Formula::Kind::Forall:
        if (!p_.constants.empty() && pick(2) == 0)
          return weaken(substitute(f.body(), f.var(), Term::constant(p_.constants[pick(p_.constants.size())])));
        return Formula::forall(f.var(), weaken(f.body()));
    }
    return f;
  }

  CorpusParams p_;
  std::mt19937_64 rng_;
};

struct RandomModelParams {
  std::size_t max_worlds = 4;
  std::size_t max_domain = 3;
  bool constant_domain = false;
  bool identity_eta = false;
};

/// A random adequate model: a tree with random domains and random eta maps on
/// tree edges, composed along paths, transitively closed; constants are
/// placed at the root and carried forward so the model is concordant.
inline KripkeModel random_adequate_model(std::mt19937_64& rng, const Signature& sig, const RandomModelParams& p) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const std::size_t n = 1 + pick(p.max_worlds);
  const std::size_t base = 1 + pick(p.max_domain);
  KripkeModel m;
  std::vector<std::size_t> parent(n, 0);
  for (std::size_t w = 0; w < n; ++w) {
    std::size_t size = p.constant_domain || p.identity_eta ? base : 1 + pick(p.max_domain);
    std::vector<std::string> dom;
    for (std::size_t k = 0; k < size; ++k) dom.push_back("e" + std::to_string(k));
    m.add_world("w" + std::to_string(w), dom);
    if (w > 0) parent[w] = pick(w);
  }
  // eta along tree edges, then composition to every ancestor.
  std::vector<std::vector<std::size_t>> up(n);
  for (std::size_t w = 1; w < n; ++w) {
    const std::size_t from = m.domains[parent[w]].size();
    const std::size_t to = m.domains[w].size();
    up[w].resize(from);
    for (std::size_t k = 0; k < from; ++k) up[w][k] = p.identity_eta ? k : pick(to);
  }
  for (std::size_t w = 1; w < n; ++w) {
    std::vector<std::size_t> chain{w};
    while (chain.back() != 0) chain.push_back(parent[chain.back()]);
    // chain = w, parent(w), ..., 0
    for (std::size_t a = 1; a < chain.size(); ++a) {
      const std::size_t anc = chain[a];
      std::vector<std::size_t> map(m.domains[anc].size());
      for (std::size_t k = 0; k < map.size(); ++k) {
        std::size_t e = k;
        for (std::size_t b = a; b-- > 0;) e = up[chain[b]][e];
        map[k] = e;
      }
      m.add_edge(anc, w, std::move(map));
    }
  }
  for (const auto& c : sig.constants) {
    m.set_constant(0, c, pick(m.domains[0].size()));
    for (std::size_t w = 1; w < n; ++w) m.set_constant(w, c, m.eta_map(0, w)[m.I[0].at(c)]);
  }
  for (std::size_t w = 0; w < n; ++w)
    for (const auto& [s, arity] : sig.relations) {
      const std::size_t d = m.domains[w].size();
      Tuple t(arity, 0);
      while (true) {
        if (pick(2) == 0) m.add_tuple(w, s, t);
        std::size_t k = arity;
        while (k > 0) {
          if (++t[k - 1] < d) break;
          t[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
  return m;
}

}  // namespace qrc1
