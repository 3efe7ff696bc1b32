#pragma once

// Arithmetic-shaped formulas: the provability realization (star), the
// Solovay-style interpretation over a finite model, and a finite "shadow"
// evaluator for the latter where Solovay sentences are world indicators and
// the consistency modality ranges over successors.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qrc1/semantics.hpp"
#include "qrc1/syntax.hpp"

namespace qrc1 {

class ArithError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Terms

struct ArithTerm {
  enum class Kind : unsigned char { Var, Numeral, Mod, Coded };

  Kind kind = Kind::Numeral;
  std::string name;                          // Var
  std::size_t value = 0;                     // Numeral, Coded; modulus for Mod
  std::shared_ptr<const ArithTerm> operand;  // Mod

  static ArithTerm var(std::string n) { return {Kind::Var, std::move(n), 0, nullptr}; }
  static ArithTerm numeral(std::size_t n) { return {Kind::Numeral, {}, n, nullptr}; }
  static ArithTerm coded(std::size_t n) { return {Kind::Coded, {}, n, nullptr}; }
  static ArithTerm mod(ArithTerm t, std::size_t m) {
    return {Kind::Mod, {}, m, std::make_shared<const ArithTerm>(std::move(t))};
  }

  friend bool operator==(const ArithTerm& a, const ArithTerm& b) {
    if (a.kind != b.kind || a.name != b.name || a.value != b.value) return false;
    if (!a.operand || !b.operand) return !a.operand && !b.operand;
    return *a.operand == *b.operand;
  }
};

// ---------------------------------------------------------------------------
// Formulas

enum class TauTag : unsigned char { ISigma1, Tau };

struct ArithFormula {
  enum class Kind : unsigned char {
    Truth,
    Falsity,
    Eq,
    LambdaAtom,
    TauAxiom,
    GodelEq,
    SigmaAtom,
    Schematic,
    Not,
    And,
    Or,
    Implies,
    Forall,
    Exists,
    Box,
    Diamond,
  };

  Kind kind = Kind::Truth;
  std::vector<ArithTerm> terms;        // Eq: {lhs, rhs}; SigmaAtom: arguments after u
  std::size_t world = 0;               // LambdaAtom
  TauTag tag = TauTag::ISigma1;        // TauAxiom
  std::string name;                    // bound variable, SigmaAtom symbol, TauAxiom/GodelEq variable, Schematic
  std::vector<ArithFormula> children;  // connectives, quantifier and modal bodies
  // Box/Diamond: the axiomatization formula, or null for tau.
  // GodelEq: the quoted formula.
  std::shared_ptr<const ArithFormula> attached;

  bool is(Kind k) const { return kind == k; }

  friend bool operator==(const ArithFormula& a, const ArithFormula& b) {
    if (a.kind != b.kind || a.world != b.world || a.tag != b.tag || a.name != b.name) return false;
    if (a.terms != b.terms || a.children != b.children) return false;
    if (!a.attached || !b.attached) return !a.attached && !b.attached;
    return *a.attached == *b.attached;
  }
};

namespace arith {

inline ArithFormula truth() { return {}; }

inline ArithFormula falsity() {
  ArithFormula f;
  f.kind = ArithFormula::Kind::Falsity;
  return f;
}

inline ArithFormula eq(ArithTerm a, ArithTerm b) {
  ArithFormula f;
  f.kind = ArithFormula::Kind::Eq;
  f.terms = {std::move(a), std::move(b)};
  return f;
}

inline ArithFormula lambda(std::size_t i) {
  ArithFormula f;
  f.kind = ArithFormula::Kind::LambdaAtom;
  f.world = i;
  return f;
}

inline ArithFormula tau_axiom(TauTag tag, std::string var = "u") {
  ArithFormula f;
  f.kind = ArithFormula::Kind::TauAxiom;
  f.tag = tag;
  f.name = std::move(var);
  return f;
}

inline ArithFormula godel_eq(std::string var, ArithFormula quoted) {
  ArithFormula f;
  f.kind = ArithFormula::Kind::GodelEq;
  f.name = std::move(var);
  f.attached = std::make_shared<const ArithFormula>(std::move(quoted));
  return f;
}

inline ArithFormula sigma(std::string symbol, std::vector<ArithTerm> args) {
  ArithFormula f;
  f.kind = ArithFormula::Kind::SigmaAtom;
  f.name = std::move(symbol);
  f.terms = std::move(args);
  return f;
}

inline ArithFormula schematic(std::string name = "theta") {
  ArithFormula f;
  f.kind = ArithFormula::Kind::Schematic;
  f.name = std::move(name);
  return f;
}

inline ArithFormula unary(ArithFormula::Kind k, ArithFormula a) {
  ArithFormula f;
  f.kind = k;
  f.children.push_back(std::move(a));
  return f;
}

inline ArithFormula negate(ArithFormula a) { return unary(ArithFormula::Kind::Not, std::move(a)); }

inline ArithFormula binary(ArithFormula::Kind k, ArithFormula a, ArithFormula b) {
  ArithFormula f;
  f.kind = k;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

inline ArithFormula conj(ArithFormula a, ArithFormula b) {
  return binary(ArithFormula::Kind::And, std::move(a), std::move(b));
}
inline ArithFormula disj(ArithFormula a, ArithFormula b) {
  return binary(ArithFormula::Kind::Or, std::move(a), std::move(b));
}
inline ArithFormula implies(ArithFormula a, ArithFormula b) {
  return binary(ArithFormula::Kind::Implies, std::move(a), std::move(b));
}

/// n-ary conjunction; true when empty, the item itself when single.
inline ArithFormula big_and(std::vector<ArithFormula> items) {
  if (items.empty()) return truth();
  if (items.size() == 1) return std::move(items.front());
  ArithFormula f;
  f.kind = ArithFormula::Kind::And;
  f.children = std::move(items);
  return f;
}

/// n-ary disjunction; false when empty, the item itself when single.
inline ArithFormula big_or(std::vector<ArithFormula> items) {
  if (items.empty()) return falsity();
  if (items.size() == 1) return std::move(items.front());
  ArithFormula f;
  f.kind = ArithFormula::Kind::Or;
  f.children = std::move(items);
  return f;
}

inline ArithFormula forall(std::string var, ArithFormula body) {
  ArithFormula f = unary(ArithFormula::Kind::Forall, std::move(body));
  f.name = std::move(var);
  return f;
}

inline ArithFormula exists(std::string var, ArithFormula body) {
  ArithFormula f = unary(ArithFormula::Kind::Exists, std::move(body));
  f.name = std::move(var);
  return f;
}

/// Box over tau when `index` is empty, else over the theory axiomatized by it.
inline ArithFormula box(ArithFormula body, std::optional<ArithFormula> index = std::nullopt) {
  ArithFormula f = unary(ArithFormula::Kind::Box, std::move(body));
  if (index) f.attached = std::make_shared<const ArithFormula>(std::move(*index));
  return f;
}

inline ArithFormula diamond(ArithFormula body, std::optional<ArithFormula> index = std::nullopt) {
  ArithFormula f = unary(ArithFormula::Kind::Diamond, std::move(body));
  if (index) f.attached = std::make_shared<const ArithFormula>(std::move(*index));
  return f;
}

}  // namespace arith

// ---------------------------------------------------------------------------
// Variable correspondence

/// The arithmetic variable for a modal variable: x... becomes y....
inline std::string arith_variable(const std::string& x) {
  if (!is_variable_name(x)) throw ArithError("not a variable: " + x);
  return "y" + x.substr(1);
}

/// The arithmetic variable for a constant: c... becomes z...; other declared
/// names become z[name].
inline std::string arith_constant_variable(const std::string& c) {
  if (!c.empty() && c[0] == 'c') return "z" + c.substr(1);
  return "z[" + c + "]";
}

// ---------------------------------------------------------------------------
// Printing

inline std::string to_string(const ArithTerm& t) {
  switch (t.kind) {
    case ArithTerm::Kind::Var:
      return t.name;
    case ArithTerm::Kind::Numeral:
      return std::to_string(t.value);
    case ArithTerm::Kind::Coded:
      return "godel<" + std::to_string(t.value) + ">";
    case ArithTerm::Kind::Mod:
      return "(" + to_string(*t.operand) + " mod " + std::to_string(t.value) + ")";
  }
  return "?";
}

inline std::string to_string(const ArithFormula& f) {
  using K = ArithFormula::Kind;
  auto join = [&](const char* op) {
    std::string s = "(";
    for (std::size_t i = 0; i < f.children.size(); ++i) {
      if (i) s += std::string(" ") + op + " ";
      s += to_string(f.children[i]);
    }
    return s + ")";
  };
  auto index = [&]() { return f.attached ? to_string(*f.attached) : std::string("tau"); };
  switch (f.kind) {
    case K::Truth:
      return "true";
    case K::Falsity:
      return "false";
    case K::Eq:
      return to_string(f.terms[0]) + " = " + to_string(f.terms[1]);
    case K::LambdaAtom:
      return "Lam(" + std::to_string(f.world) + ")";
    case K::TauAxiom:
      return std::string(f.tag == TauTag::ISigma1 ? "TauISigma1" : "Tau") + "(" + f.name + ")";
    case K::GodelEq:
      return f.name + " = godel<" + to_string(*f.attached) + ">";
    case K::SigmaAtom: {
      std::string s = "sigma_" + f.name + "(u";
      for (const auto& t : f.terms) s += ", " + to_string(t);
      return s + ")";
    }
    case K::Schematic:
      return f.name;
    case K::Not:
      return "~" + to_string(f.children[0]);
    case K::And:
      return join("&");
    case K::Or:
      return join("|");
    case K::Implies:
      return join("->");
    case K::Forall:
      return "forall " + f.name + " . " + to_string(f.children[0]);
    case K::Exists:
      return "exists " + f.name + " . " + to_string(f.children[0]);
    case K::Box:
      return "Box[" + index() + "] " + to_string(f.children[0]);
    case K::Diamond:
      return "Dia[" + index() + "] " + to_string(f.children[0]);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Free variables, substitution, numeral reduction

inline void collect_free(const ArithTerm& t, std::set<std::string>& out) {
  if (t.kind == ArithTerm::Kind::Var) out.insert(t.name);
  if (t.operand) collect_free(*t.operand, out);
}

/// Free variables. The theory variable of an axiomatization index is bound by
/// the modality; variables inside a quote count as free (dotted).
inline std::set<std::string> free_variables(const ArithFormula& f) {
  using K = ArithFormula::Kind;
  std::set<std::string> out;
  for (const auto& t : f.terms) collect_free(t, out);
  switch (f.kind) {
    case K::TauAxiom:
      out.insert(f.name);
      break;
    case K::GodelEq: {
      out.insert(f.name);
      auto q = free_variables(*f.attached);
      out.insert(q.begin(), q.end());
      break;
    }
    case K::Forall:
    case K::Exists: {
      auto b = free_variables(f.children[0]);
      b.erase(f.name);
      out.insert(b.begin(), b.end());
      return out;
    }
    case K::Box:
    case K::Diamond:
      if (f.attached) {
        auto idx = free_variables(*f.attached);
        idx.erase("u");
        out.insert(idx.begin(), idx.end());
      }
      break;
    default:
      break;
  }
  for (const auto& c : f.children) {
    auto s = free_variables(c);
    out.insert(s.begin(), s.end());
  }
  return out;
}

inline ArithTerm substitute(const ArithTerm& t, const std::string& var, const ArithTerm& by) {
  if (t.kind == ArithTerm::Kind::Var) return t.name == var ? by : t;
  if (t.kind == ArithTerm::Kind::Mod) return ArithTerm::mod(substitute(*t.operand, var, by), t.value);
  return t;
}

/// Replaces free occurrences of `var` in terms. Quotes and axiomatization
/// indices are left untouched.
inline ArithFormula substitute(const ArithFormula& f, const std::string& var, const ArithTerm& by) {
  using K = ArithFormula::Kind;
  if ((f.kind == K::Forall || f.kind == K::Exists) && f.name == var) return f;
  ArithFormula g = f;
  for (auto& t : g.terms) t = substitute(t, var, by);
  for (auto& c : g.children) c = substitute(c, var, by);
  return g;
}

inline ArithTerm reduce_numerals(const ArithTerm& t) {
  if (t.kind != ArithTerm::Kind::Mod) return t;
  ArithTerm inner = reduce_numerals(*t.operand);
  if (inner.kind == ArithTerm::Kind::Numeral) return ArithTerm::numeral(inner.value % t.value);
  if (inner.kind == ArithTerm::Kind::Coded) return ArithTerm::coded(inner.value % t.value);
  return ArithTerm::mod(std::move(inner), t.value);
}

/// Evaluates `n mod m` for closed numeral arguments everywhere.
inline ArithFormula reduce_numerals(const ArithFormula& f) {
  ArithFormula g = f;
  for (auto& t : g.terms) t = reduce_numerals(t);
  for (auto& c : g.children) c = reduce_numerals(c);
  return g;
}

// ---------------------------------------------------------------------------
// Provability realization

/// The star realization: formulas as axiomatizations parametrized by u.
inline ArithFormula star_realization(const Formula& phi) {
  using namespace arith;
  switch (phi.kind()) {
    case Formula::Kind::Top:
      return tau_axiom(TauTag::ISigma1);
    case Formula::Kind::Rel: {
      std::vector<ArithTerm> args;
      for (const auto& t : phi.args())
        args.push_back(ArithTerm::var(t.is_variable() ? arith_variable(t.name) : arith_constant_variable(t.name)));
      return disj(sigma(phi.symbol(), std::move(args)), tau_axiom(TauTag::ISigma1));
    }
    case Formula::Kind::And:
      return disj(star_realization(phi.left()), star_realization(phi.right()));
    case Formula::Kind::Diamond:
      return disj(tau_axiom(TauTag::ISigma1), godel_eq("u", diamond(truth(), star_realization(phi.body()))));
    case Formula::Kind::Forall:
      return exists(arith_variable(phi.var()), star_realization(phi.body()));
  }
  return truth();
}

/// forall theta forall y.. forall z.. (Box[psi*] theta -> Box[phi*] theta).
inline ArithFormula qrc1_T_statement(const Formula& phi, const Formula& psi) {
  using namespace arith;
  ArithFormula body =
      implies(box(schematic(), star_realization(psi)), box(schematic(), star_realization(phi)));
  std::set<std::string> ys;
  std::set<std::string> zs;
  for (const auto& f : {phi, psi}) {
    for (const auto& x : qrc1::free_variables(f)) ys.insert(arith_variable(x));
    for (const auto& c : constants_of(f)) zs.insert(arith_constant_variable(c));
  }
  for (auto it = zs.rbegin(); it != zs.rend(); ++it) body = forall(*it, std::move(body));
  for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = forall(*it, std::move(body));
  return forall("theta", std::move(body));
}

// ---------------------------------------------------------------------------
// Shadow structure and the Solovay interpretation

/// A finite constant-domain, identity-eta model with an extra root 0 that sees
/// every other world and copies the old root. World i >= 1 is world i-1 of
/// the source model. Element k is coded by code[k].
struct ShadowStructure {
  KripkeModel model;
  std::size_t m = 0;
  std::vector<std::size_t> code;
  std::vector<std::size_t> decode;

  std::size_t top_world() const { return model.size() - 1; }  // N
};

inline ShadowStructure make_shadow(const KripkeModel& source, std::optional<std::vector<std::size_t>> coding = {}) {
  if (source.size() == 0) throw ArithError("empty model");
  if (!has_constant_domain(source)) throw ArithError("shadow structures need constant domain and identity eta");
  if (!check_adequate(source).ok()) throw ArithError("shadow structures need an adequate model");
  ShadowStructure s;
  const auto& domain = source.domains[0];
  s.m = domain.size();
  if (coding) {
    s.code = *coding;
  } else {
    for (std::size_t k = 0; k < s.m; ++k) s.code.push_back(k);
  }
  if (s.code.size() != s.m) throw ArithError("coding has the wrong size");
  s.decode.assign(s.m, s.m);
  for (std::size_t k = 0; k < s.m; ++k) {
    if (s.code[k] >= s.m || s.decode[s.code[k]] != s.m) throw ArithError("coding is not a bijection");
    s.decode[s.code[k]] = k;
  }
  KripkeModel& M = s.model;
  M.add_world("0", domain);
  for (std::size_t w = 0; w < source.size(); ++w) M.add_world(std::to_string(w + 1), domain);
  M.I[0] = source.I[0];
  M.J[0] = source.J[0];
  for (std::size_t w = 0; w < source.size(); ++w) {
    M.I[w + 1] = source.I[w];
    M.J[w + 1] = source.J[w];
    M.add_identity_edge(0, w + 1);
    for (auto v : source.succ[w]) M.add_identity_edge(w + 1, v + 1);
  }
  return s;
}

namespace detail {

inline ArithFormula atom_family(const Formula& atom, const ShadowStructure& s, std::size_t i, bool constants_as_z) {
  if (!atom.is_rel()) throw ArithError("atom expected");
  const KripkeModel& M = s.model;
  std::vector<ArithFormula> disjuncts;
  auto rel = M.J[i].find(atom.symbol());
  if (rel != M.J[i].end()) {
    for (const auto& tuple : rel->second) {
      if (tuple.size() != atom.args().size()) throw ArithError("arity mismatch for " + atom.symbol());
      std::vector<ArithFormula> conjuncts;
      for (std::size_t l = 0; l < tuple.size(); ++l) {
        const Term& t = atom.args()[l];
        ArithTerm lhs = ArithTerm::coded(s.code[tuple[l]]);
        ArithTerm rhs;
        if (t.is_variable()) {
          rhs = ArithTerm::mod(ArithTerm::var(arith_variable(t.name)), s.m);
        } else if (constants_as_z) {
          rhs = ArithTerm::mod(ArithTerm::var(arith_constant_variable(t.name)), s.m);
        } else {
          auto it = M.I[i].find(t.name);
          if (it == M.I[i].end()) throw ArithError("constant " + t.name + " is not interpreted");
          rhs = ArithTerm::coded(s.code[it->second]);
        }
        conjuncts.push_back(arith::eq(std::move(lhs), std::move(rhs)));
      }
      disjuncts.push_back(arith::big_and(std::move(conjuncts)));
    }
  }
  return arith::big_or(std::move(disjuncts));
}

}  // namespace detail

/// Phi_i for an atom: one disjunct per tuple of S at world i.
inline ArithFormula phi_family(const Formula& atom, const ShadowStructure& s, std::size_t i) {
  return detail::atom_family(atom, s, i, false);
}

/// Psi_i: as Phi_i with constants read through z-variables mod m.
inline ArithFormula psi_family(const Formula& atom, const ShadowStructure& s, std::size_t i) {
  return detail::atom_family(atom, s, i, true);
}

/// Psi_i with every z-variable replaced by the code of the constant at world 0,
/// after numeral reduction.
inline ArithFormula psi_instantiated(const Formula& atom, const ShadowStructure& s, std::size_t i) {
  ArithFormula f = psi_family(atom, s, i);
  for (const auto& t : atom.args()) {
    if (!t.is_constant()) continue;
    auto it = s.model.I[0].find(t.name);
    if (it == s.model.I[0].end()) throw ArithError("constant " + t.name + " is not interpreted");
    f = substitute(f, arith_constant_variable(t.name), ArithTerm::coded(s.code[it->second]));
  }
  return reduce_numerals(f);
}

inline ArithFormula solovay_star(const Formula& phi, const ShadowStructure& s) {
  using namespace arith;
  switch (phi.kind()) {
    case Formula::Kind::Top:
      return truth();
    case Formula::Kind::Rel: {
      std::vector<ArithFormula> parts;
      for (std::size_t i = 0; i < s.model.size(); ++i) parts.push_back(conj(lambda(i), phi_family(phi, s, i)));
      return big_or(std::move(parts));
    }
    case Formula::Kind::And:
      return conj(solovay_star(phi.left(), s), solovay_star(phi.right(), s));
    case Formula::Kind::Diamond:
      return diamond(solovay_star(phi.body(), s));
    case Formula::Kind::Forall:
      return forall(arith_variable(phi.var()), solovay_star(phi.body(), s));
  }
  return truth();
}

// ---------------------------------------------------------------------------
// Shadow evaluation

using ArithEnv = std::map<std::string, std::size_t>;

inline std::size_t shadow_value(const ArithTerm& t, const ArithEnv& env) {
  switch (t.kind) {
    case ArithTerm::Kind::Var: {
      auto it = env.find(t.name);
      if (it == env.end()) throw ArithError("unbound variable " + t.name);
      return it->second;
    }
    case ArithTerm::Kind::Numeral:
    case ArithTerm::Kind::Coded:
      return t.value;
    case ArithTerm::Kind::Mod:
      if (t.value == 0) throw ArithError("mod 0");
      return shadow_value(*t.operand, env) % t.value;
  }
  return 0;
}

/// Evaluates a formula of the Solovay fragment at world i: Lam(j) holds iff
/// j = i, the tau modalities range over successors, quantifiers over 0..m-1.
inline bool shadow_eval(const ShadowStructure& s, std::size_t i, const ArithEnv& env, const ArithFormula& f) {
  using K = ArithFormula::Kind;
  switch (f.kind) {
    case K::Truth:
      return true;
    case K::Falsity:
      return false;
    case K::Eq:
      return shadow_value(f.terms[0], env) == shadow_value(f.terms[1], env);
    case K::LambdaAtom:
      return f.world == i;
    case K::Not:
      return !shadow_eval(s, i, env, f.children[0]);
    case K::And:
      for (const auto& c : f.children)
        if (!shadow_eval(s, i, env, c)) return false;
      return true;
    case K::Or:
      for (const auto& c : f.children)
        if (shadow_eval(s, i, env, c)) return true;
      return false;
    case K::Implies:
      return !shadow_eval(s, i, env, f.children[0]) || shadow_eval(s, i, env, f.children[1]);
    case K::Forall:
    case K::Exists: {
      ArithEnv e = env;
      for (std::size_t v = 0; v < s.m; ++v) {
        e[f.name] = v;
        bool b = shadow_eval(s, i, e, f.children[0]);
        if (f.kind == K::Forall && !b) return false;
        if (f.kind == K::Exists && b) return true;
      }
      return f.kind == K::Forall;
    }
    case K::Box:
    case K::Diamond: {
      if (f.attached) throw ArithError("modality indexed by a realization is outside the shadow fragment");
      for (auto j : s.model.succ[i]) {
        bool b = shadow_eval(s, j, env, f.children[0]);
        if (f.kind == K::Box && !b) return false;
        if (f.kind == K::Diamond && b) return true;
      }
      return f.kind == K::Box;
    }
    case K::TauAxiom:
    case K::GodelEq:
    case K::SigmaAtom:
    case K::Schematic:
      throw ArithError("formula outside the shadow fragment: " + to_string(f));
  }
  return false;
}

/// The arithmetic environment y_k -> code(g(x_k)) for the given variables.
inline ArithEnv shadow_env(const ShadowStructure& s, const Assignment& g, const std::set<std::string>& vars) {
  ArithEnv env;
  for (const auto& x : vars) env[arith_variable(x)] = s.code.at(g(x));
  return env;
}

struct ShadowAuditReport {
  bool ok = true;
  std::size_t checked = 0;
  bool embedding = true;  // some 0-successor satisfies phi* and falsifies psi*
  std::vector<std::string> failures;
};

/// Compares shadow evaluation of phi* with Kripke satisfaction for every
/// world i >= 1, every assignment of the free variables and every formula.
inline ShadowAuditReport shadow_truth_audit(const ShadowStructure& s, const FormulaSet& formulas) {
  ShadowAuditReport r;
  Evaluator ev(s.model);
  for (const auto& f : formulas) {
    ArithFormula star = solovay_star(f, s);
    std::set<std::string> fv = qrc1::free_variables(f);
    std::vector<std::string> vars(fv.begin(), fv.end());
    for (std::size_t i = 1; i < s.model.size(); ++i) {
      for_each_assignment(s.model, i, vars, [&](const Assignment& g) {
        ++r.checked;
        bool kripke = ev.eval(i, g, f);
        bool shadow = shadow_eval(s, i, shadow_env(s, g, fv), star);
        if (kripke != shadow) {
          r.ok = false;
          if (r.failures.size() < 20)
            r.failures.push_back("world " + s.model.worlds[i] + ": " + f.to_string() +
                                 (kripke ? " holds but its shadow fails" : " fails but its shadow holds"));
        }
      });
    }
  }
  return r;
}

/// Embedding check at the extra root: some successor of world 0 makes
/// phi* true and psi* false under the assignment g.
inline bool shadow_embedding_holds(const ShadowStructure& s, const Formula& phi, const Formula& psi,
                                   const Assignment& g) {
  std::set<std::string> fv = qrc1::free_variables(phi);
  for (const auto& x : qrc1::free_variables(psi)) fv.insert(x);
  ArithEnv env = shadow_env(s, g, fv);
  ArithFormula a = solovay_star(phi, s);
  ArithFormula b = solovay_star(psi, s);
  for (auto j : s.model.succ[0])
    if (shadow_eval(s, j, env, a) && !shadow_eval(s, j, env, b)) return true;
  return false;
}

}  // namespace qrc1
