#pragma once

// Sequent calculus certificates: rule schemas (i)-(x), the six derived rules,
// a certificate checker, and a bounded goal-directed proof search.

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qrc1/syntax.hpp"

namespace qrc1 {

struct Sequent {
  Formula lhs;
  Formula rhs;
  Signature signature;

  std::string to_string() const { return lhs.to_string() + " |- " + rhs.to_string(); }
  /// Canonical (alpha-normalised) key of the two formulas.
  std::string key() const { return lhs.key() + " |- " + rhs.key(); }
};

enum class Rule : unsigned char {
  TopIntro,     // (i)   phi |- T
  Reflexivity,  // (i)   phi |- phi
  AndElimLeft,  // (ii)  phi & psi |- phi
  AndElimRight, // (ii)  phi & psi |- psi
  AndIntro,     // (iii)
  Cut,          // (iv)
  Necessitation,// (v)
  Transitivity, // (vi)  <><>phi |- <>phi
  ForallRight,  // (vii)
  ForallLeft,   // (viii)
  TermInstance, // (ix)
  Constants,    // (x)
  DiamondForall,       // derived (i)
  ForallSwap,          // derived (ii)
  Instantiation,       // derived (iii)
  ForallRename,        // derived (iv)
  RightInstance,       // derived (v)
  ForallRightConstant, // derived (vi)
};

inline constexpr std::array<std::pair<Rule, std::string_view>, 18> kRuleTags{{
    {Rule::TopIntro, "i-left"},
    {Rule::Reflexivity, "i-refl"},
    {Rule::AndElimLeft, "ii-left"},
    {Rule::AndElimRight, "ii-right"},
    {Rule::AndIntro, "iii"},
    {Rule::Cut, "iv"},
    {Rule::Necessitation, "v"},
    {Rule::Transitivity, "vi"},
    {Rule::ForallRight, "vii"},
    {Rule::ForallLeft, "viii"},
    {Rule::TermInstance, "ix"},
    {Rule::Constants, "x"},
    {Rule::DiamondForall, "L2.i"},
    {Rule::ForallSwap, "L2.ii"},
    {Rule::Instantiation, "L2.iii"},
    {Rule::ForallRename, "L2.iv"},
    {Rule::RightInstance, "L2.v"},
    {Rule::ForallRightConstant, "L2.vi"},
}};

inline std::string_view rule_tag(Rule r) {
  for (const auto& [rule, tag] : kRuleTags)
    if (rule == r) return tag;
  return "?";
}

inline std::optional<Rule> rule_from_tag(std::string_view tag) {
  for (const auto& [rule, t] : kRuleTags)
    if (t == tag) return rule;
  return std::nullopt;
}

inline bool is_derived_rule(Rule r) { return r >= Rule::DiamondForall; }

/// Extra data a rule instance needs to be checkable: the variable of
/// (vii)/(ix)/(x), the term of (viii)/(ix), the constant of (x).
struct Witness {
  std::optional<std::string> variable;
  std::optional<Term> term;

  bool empty() const { return !variable && !term; }
};

struct Derivation {
  Sequent conclusion;
  Rule rule = Rule::Reflexivity;
  std::vector<Derivation> premises;
  Witness witness;

  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& p : premises) h = std::max(h, p.height());
    return h + 1;
  }

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.node_count();
    return n;
  }

  bool primitive() const {
    if (is_derived_rule(rule)) return false;
    for (const auto& p : premises)
      if (!p.primitive()) return false;
    return true;
  }
};

/// Result of check_derivation. `path` lists premise indices from the root to
/// the offending node.
struct CheckResult {
  bool ok = true;
  std::vector<std::size_t> path;
  std::string message;

  explicit operator bool() const { return ok; }

  std::string describe() const {
    if (ok) return "ok";
    std::string p = "root";
    for (auto i : path) p += "." + std::to_string(i);
    return p + ": " + message;
  }
};

// ---------------------------------------------------------------------------
// Checker

namespace detail {

class DerivationChecker {
 public:
  CheckResult run(const Derivation& d) {
    path_.clear();
    result_ = {};
    visit(d, nullptr);
    return result_;
  }

 private:
  bool fail(std::string msg) {
    if (result_.ok) {
      result_.ok = false;
      result_.path = path_;
      result_.message = std::move(msg);
    }
    return false;
  }

  bool premises(const Derivation& d, std::size_t n) {
    if (d.premises.size() != n)
      return fail(std::string(rule_tag(d.rule)) + " expects " + std::to_string(n) + " premise(s), got " +
                  std::to_string(d.premises.size()));
    return true;
  }

  bool well_formed(const Derivation& d, const Derivation* parent) {
    const Sequent& s = d.conclusion;
    try {
      check_well_formed(s.lhs, s.signature);
      check_well_formed(s.rhs, s.signature);
    } catch (const SignatureError& e) {
      return fail(std::string("ill-formed sequent: ") + e.what());
    }
    if (parent) {
      const Signature& up = parent->conclusion.signature;
      if (up.relations != s.signature.relations)
        return fail("premise changes the relation signature");
      for (const auto& c : up.constants)
        if (!s.signature.has_constant(c)) return fail("premise drops constant " + c + " from the signature");
    }
    return true;
  }

  bool visit(const Derivation& d, const Derivation* parent) {
    if (!well_formed(d, parent)) return false;
    if (!instance(d)) return false;
    for (std::size_t i = 0; i < d.premises.size(); ++i) {
      path_.push_back(i);
      bool ok = visit(d.premises[i], &d);
      path_.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  bool need_variable(const Derivation& d) {
    if (!d.witness.variable) return fail(std::string(rule_tag(d.rule)) + " needs a variable witness");
    return true;
  }

  bool need_term(const Derivation& d) {
    if (!d.witness.term) return fail(std::string(rule_tag(d.rule)) + " needs a term witness");
    return true;
  }

  bool instance(const Derivation& d) {
    const Formula& lhs = d.conclusion.lhs;
    const Formula& rhs = d.conclusion.rhs;
    auto prem = [&](std::size_t i) -> const Sequent& { return d.premises[i].conclusion; };
    switch (d.rule) {
      case Rule::TopIntro:
        if (!premises(d, 0)) return false;
        if (!rhs.is_top()) return fail("i-left concludes phi |- T");
        return true;
      case Rule::Reflexivity:
        if (!premises(d, 0)) return false;
        if (lhs != rhs) return fail("i-refl needs identical sides");
        return true;
      case Rule::AndElimLeft:
      case Rule::AndElimRight: {
        if (!premises(d, 0)) return false;
        if (!lhs.is_and()) return fail("conjunction elimination needs a conjunction on the left");
        const Formula& kept = d.rule == Rule::AndElimLeft ? lhs.left() : lhs.right();
        if (kept != rhs) return fail("conclusion is not the selected conjunct");
        return true;
      }
      case Rule::AndIntro:
        if (!premises(d, 2)) return false;
        if (!rhs.is_and()) return fail("iii concludes a conjunction");
        if (prem(0).lhs != lhs || prem(1).lhs != lhs) return fail("iii premises must share the left side");
        if (prem(0).rhs != rhs.left() || prem(1).rhs != rhs.right())
          return fail("iii premises must prove the two conjuncts");
        return true;
      case Rule::Cut:
        if (!premises(d, 2)) return false;
        if (prem(0).lhs != lhs) return fail("cut: first premise has the wrong left side");
        if (prem(0).rhs != prem(1).lhs) return fail("cut: premises do not chain");
        if (prem(1).rhs != rhs) return fail("cut: second premise has the wrong right side");
        return true;
      case Rule::Necessitation:
        if (!premises(d, 1)) return false;
        if (!lhs.is_diamond() || !rhs.is_diamond()) return fail("v concludes <>phi |- <>psi");
        if (prem(0).lhs != lhs.body() || prem(0).rhs != rhs.body()) return fail("v premise mismatch");
        return true;
      case Rule::Transitivity:
        if (!premises(d, 0)) return false;
        if (!lhs.is_diamond() || !lhs.body().is_diamond() || !rhs.is_diamond())
          return fail("vi is <><>phi |- <>phi");
        if (lhs.body().body() != rhs.body()) return fail("vi body mismatch");
        return true;
      case Rule::ForallRight: {
        if (!premises(d, 1)) return false;
        if (!rhs.is_forall()) return fail("vii concludes a universal formula");
        const std::string& x = rhs.var();
        if (d.witness.variable && *d.witness.variable != x) return fail("vii witness is not the bound variable");
        if (occurs_free(lhs, x)) return fail("vii side condition: " + x + " is free in the left side");
        if (prem(0).lhs != lhs) return fail("vii premise has the wrong left side");
        if (prem(0).rhs != rhs.body()) return fail("vii premise must prove the body");
        return true;
      }
      case Rule::ForallLeft: {
        if (!premises(d, 1) || !need_term(d)) return false;
        if (!lhs.is_forall()) return fail("viii needs a universal formula on the left");
        const Term& t = *d.witness.term;
        if (!free_for(lhs.body(), lhs.var(), t)) return fail("viii side condition: term not free for variable");
        if (prem(0).lhs != substitute(lhs.body(), lhs.var(), t)) return fail("viii premise is not the instance");
        if (prem(0).rhs != rhs) return fail("viii premise has the wrong right side");
        return true;
      }
      case Rule::TermInstance: {
        if (!premises(d, 1) || !need_variable(d) || !need_term(d)) return false;
        const std::string& x = *d.witness.variable;
        const Term& t = *d.witness.term;
        if (!free_for(prem(0).lhs, x, t) || !free_for(prem(0).rhs, x, t))
          return fail("ix side condition: term not free for variable");
        if (substitute(prem(0).lhs, x, t) != lhs || substitute(prem(0).rhs, x, t) != rhs)
          return fail("ix conclusion is not the substitution instance of the premise");
        return true;
      }
      case Rule::Constants: {
        if (!premises(d, 1) || !need_variable(d) || !need_term(d)) return false;
        const std::string& x = *d.witness.variable;
        const Term& c = *d.witness.term;
        if (!c.is_constant()) return fail("x needs a constant witness");
        if (constants_of(lhs).count(c.name) || constants_of(rhs).count(c.name))
          return fail("x side condition: " + c.name + " occurs in the conclusion");
        if (substitute(lhs, x, c) != prem(0).lhs || substitute(rhs, x, c) != prem(0).rhs)
          return fail("x premise is not the constant instance of the conclusion");
        return true;
      }
      case Rule::DiamondForall: {
        if (!premises(d, 0)) return false;
        if (!lhs.is_diamond() || !lhs.body().is_forall()) return fail("L2.i left side is <>Ax phi");
        const std::string& x = lhs.body().var();
        if (rhs != Formula::forall(x, Formula::diamond(lhs.body().body())))
          return fail("L2.i right side is Ax <>phi");
        return true;
      }
      case Rule::ForallSwap: {
        if (!premises(d, 0)) return false;
        if (!lhs.is_forall() || !lhs.body().is_forall()) return fail("L2.ii left side is Ax Ay phi");
        const std::string& x = lhs.var();
        const std::string& y = lhs.body().var();
        if (rhs != Formula::forall(y, Formula::forall(x, lhs.body().body())))
          return fail("L2.ii right side is Ay Ax phi");
        return true;
      }
      case Rule::Instantiation: {
        if (!premises(d, 0) || !need_term(d)) return false;
        if (!lhs.is_forall()) return fail("L2.iii left side is Ax phi");
        const Term& t = *d.witness.term;
        if (!free_for(lhs.body(), lhs.var(), t)) return fail("L2.iii side condition: term not free");
        if (substitute(lhs.body(), lhs.var(), t) != rhs) return fail("L2.iii right side is the instance");
        return true;
      }
      case Rule::ForallRename: {
        if (!premises(d, 0)) return false;
        if (!lhs.is_forall() || !rhs.is_forall()) return fail("L2.iv relates two universal formulas");
        const std::string& x = lhs.var();
        const std::string& y = rhs.var();
        Term ty = Term::variable(y);
        if (!free_for(lhs.body(), x, ty)) return fail("L2.iv side condition: y not free for x");
        if (x != y && occurs_free(lhs.body(), y)) return fail("L2.iv side condition: y free in phi");
        if (substitute(lhs.body(), x, ty) != rhs.body()) return fail("L2.iv body mismatch");
        return true;
      }
      case Rule::RightInstance: {
        if (!premises(d, 1) || !need_variable(d) || !need_term(d)) return false;
        const std::string& x = *d.witness.variable;
        const Term& t = *d.witness.term;
        if (occurs_free(prem(0).lhs, x)) return fail("L2.v side condition: x free in phi");
        if (!free_for(prem(0).rhs, x, t)) return fail("L2.v side condition: term not free");
        if (prem(0).lhs != lhs || substitute(prem(0).rhs, x, t) != rhs) return fail("L2.v instance mismatch");
        return true;
      }
      case Rule::ForallRightConstant: {
        if (!premises(d, 1) || !need_term(d)) return false;
        if (!rhs.is_forall()) return fail("L2.vi concludes a universal formula");
        const Term& c = *d.witness.term;
        if (!c.is_constant()) return fail("L2.vi needs a constant witness");
        const std::string& x = rhs.var();
        if (occurs_free(lhs, x)) return fail("L2.vi side condition: x free in phi");
        if (constants_of(lhs).count(c.name) || constants_of(rhs).count(c.name))
          return fail("L2.vi side condition: constant occurs in conclusion");
        if (prem(0).lhs != lhs || prem(0).rhs != substitute(rhs.body(), x, c))
          return fail("L2.vi premise mismatch");
        return true;
      }
    }
    return fail("unknown rule");
  }

  std::vector<std::size_t> path_;
  CheckResult result_;
};

}  // namespace detail

/// Verifies every node is an instance of its rule schema with side conditions.
/// Formulas are compared up to renaming of bound variables. Premises may add
/// constants to the signature (signature extension is conservative) but must
/// keep the relation symbols.
inline CheckResult check_derivation(const Derivation& d) {
  try {
    return detail::DerivationChecker().run(d);
  } catch (const CaptureError& e) {
    CheckResult r;
    r.ok = false;
    r.message = e.what();
    return r;
  }
}

// ---------------------------------------------------------------------------
// Construction helpers

namespace detail {

inline Signature signature_with(const Signature& base, const Formula& a, const Formula& b) {
  Signature s = base;
  for (const auto& c : constants_of(a)) s.add_constant(c);
  for (const auto& c : constants_of(b)) s.add_constant(c);
  return s;
}

inline Derivation node(const Signature& sig, Formula lhs, Formula rhs, Rule rule,
                       std::vector<Derivation> premises = {}, Witness w = {}) {
  Derivation d;
  d.conclusion.signature = signature_with(sig, lhs, rhs);
  d.conclusion.lhs = std::move(lhs);
  d.conclusion.rhs = std::move(rhs);
  d.rule = rule;
  d.premises = std::move(premises);
  d.witness = std::move(w);
  return d;
}

inline Witness var_witness(std::string x) { return {std::move(x), std::nullopt}; }
inline Witness term_witness(Term t) { return {std::nullopt, std::move(t)}; }
inline Witness var_term_witness(std::string x, Term t) { return {std::move(x), std::move(t)}; }

/// Recomputes node signatures top-down so premises extend their parent.
inline void rebase_signatures(Derivation& d, const Signature& parent) {
  d.conclusion.signature = signature_with(parent, d.conclusion.lhs, d.conclusion.rhs);
  for (auto& p : d.premises) rebase_signatures(p, d.conclusion.signature);
}

inline std::string fresh_variable(const std::set<std::string>& avoid) {
  for (std::size_t k = 0;; ++k) {
    std::string v = "x" + std::to_string(k);
    if (!avoid.count(v)) return v;
  }
}

}  // namespace detail

// Derived rules compiled to primitive rules.

/// <>Ax phi |- Ax <>phi  via vii( v( viii[t:=x]( refl ) ) ).
inline Derivation derive_diamond_forall(const Formula& phi, const std::string& x, const Signature& sig) {
  using detail::node;
  Formula all = Formula::forall(x, phi);
  Derivation refl = node(sig, phi, phi, Rule::Reflexivity);
  Derivation inst = node(sig, all, phi, Rule::ForallLeft, {refl}, detail::term_witness(Term::variable(x)));
  Derivation nec = node(sig, Formula::diamond(all), Formula::diamond(phi), Rule::Necessitation, {inst});
  return node(sig, Formula::diamond(all), Formula::forall(x, Formula::diamond(phi)), Rule::ForallRight, {nec},
              detail::var_witness(x));
}

/// Ax Ay phi |- Ay Ax phi.
inline Derivation derive_forall_swap(const Formula& phi, const std::string& x, const std::string& y,
                                     const Signature& sig) {
  using detail::node;
  Formula lhs = Formula::forall(x, Formula::forall(y, phi));
  if (x == y) return node(sig, lhs, lhs, Rule::Reflexivity);
  Formula inner = Formula::forall(y, phi);
  Derivation refl = node(sig, phi, phi, Rule::Reflexivity);
  Derivation drop_y = node(sig, inner, phi, Rule::ForallLeft, {refl}, detail::term_witness(Term::variable(y)));
  Derivation drop_x = node(sig, lhs, phi, Rule::ForallLeft, {drop_y}, detail::term_witness(Term::variable(x)));
  Derivation gen_x = node(sig, lhs, Formula::forall(x, phi), Rule::ForallRight, {drop_x}, detail::var_witness(x));
  return node(sig, lhs, Formula::forall(y, Formula::forall(x, phi)), Rule::ForallRight, {gen_x},
              detail::var_witness(y));
}

/// Ax phi |- phi[x/t].
inline Derivation derive_instantiation(const Formula& phi, const std::string& x, const Term& t,
                                       const Signature& sig) {
  using detail::node;
  Formula inst = substitute(phi, x, t);
  Derivation refl = node(sig, inst, inst, Rule::Reflexivity);
  return node(sig, Formula::forall(x, phi), inst, Rule::ForallLeft, {refl}, detail::term_witness(t));
}

/// Ax phi |- Ay phi[x/y].
inline Derivation derive_rename(const Formula& phi, const std::string& x, const std::string& y,
                                const Signature& sig) {
  using detail::node;
  Formula all = Formula::forall(x, phi);
  Derivation inst = derive_instantiation(phi, x, Term::variable(y), sig);
  return node(sig, all, Formula::forall(y, inst.conclusion.rhs), Rule::ForallRight, {inst},
              detail::var_witness(y));
}

/// From phi |- psi (x not free in phi) conclude phi |- psi[x/t] via ix.
inline Derivation derive_right_instance(Derivation premise, const std::string& x, const Term& t) {
  using detail::node;
  const Sequent s = premise.conclusion;
  if (occurs_free(s.lhs, x)) throw Error("derived rule (v): " + x + " is free in the left side");
  return node(s.signature, s.lhs, substitute(s.rhs, x, t), Rule::TermInstance, {std::move(premise)},
              detail::var_term_witness(x, t));
}

/// From phi |- psi[x/c] conclude phi |- Ax psi via vii over x.
inline Derivation derive_forall_constant(Derivation premise, const Formula& psi, const std::string& x,
                                         const std::string& c) {
  using detail::node;
  const Sequent s = premise.conclusion;
  if (occurs_free(s.lhs, x)) throw Error("derived rule (vi): " + x + " is free in the left side");
  if (constants_of(s.lhs).count(c) || constants_of(psi).count(c))
    throw Error("derived rule (vi): " + c + " occurs in the conclusion");
  if (substitute(psi, x, Term::constant(c)) != s.rhs) throw Error("derived rule (vi): premise is not psi[x/c]");
  Signature outer = s.signature;
  Derivation open = node(outer, s.lhs, psi, Rule::Constants, {std::move(premise)},
                         detail::var_term_witness(x, Term::constant(c)));
  return node(outer, s.lhs, Formula::forall(x, psi), Rule::ForallRight, {std::move(open)},
              detail::var_witness(x));
}

/// Replaces every derived-rule node by its primitive expansion.
inline Derivation expand_derived(const Derivation& d) {
  std::vector<Derivation> premises;
  for (const auto& p : d.premises) premises.push_back(expand_derived(p));
  const Sequent& s = d.conclusion;
  Derivation out;
  switch (d.rule) {
    case Rule::DiamondForall:
      out = derive_diamond_forall(s.lhs.body().body(), s.lhs.body().var(), s.signature);
      break;
    case Rule::ForallSwap:
      out = derive_forall_swap(s.lhs.body().body(), s.lhs.var(), s.lhs.body().var(), s.signature);
      break;
    case Rule::Instantiation:
      out = derive_instantiation(s.lhs.body(), s.lhs.var(), *d.witness.term, s.signature);
      break;
    case Rule::ForallRename:
      out = derive_rename(s.lhs.body(), s.lhs.var(), s.rhs.var(), s.signature);
      break;
    case Rule::RightInstance:
      out = derive_right_instance(std::move(premises.at(0)), *d.witness.variable, *d.witness.term);
      break;
    case Rule::ForallRightConstant:
      out = derive_forall_constant(std::move(premises.at(0)), s.rhs.body(), s.rhs.var(), d.witness.term->name);
      break;
    default:
      out = d;
      out.premises = std::move(premises);
      return out;
  }
  // The expansion may prove an alpha-variant of the stated sequent.
  detail::rebase_signatures(out, s.signature);
  return out;
}

// ---------------------------------------------------------------------------
// Proof search

struct ProveOptions {
  std::size_t depth_budget = 12;
};

/// Backward search for closed goals. Right conjunctions and quantifiers are
/// decomposed first; atoms and diamonds on the right are matched against one
/// conjunct of the left side, instantiating left quantifiers with the
/// constants of the goal plus one fresh constant.
class Prover {
 public:
  explicit Prover(Signature sig) : sig_(std::move(sig)) {}

  std::optional<Derivation> prove(const Sequent& goal, std::size_t budget) {
    memo_.clear();
    if (goal.lhs.mdepth() < goal.rhs.mdepth()) return std::nullopt;
    for (std::size_t limit = 1; limit <= budget; ++limit) {
      if (auto d = prove_open(goal.lhs, goal.rhs, limit)) {
        detail::rebase_signatures(*d, goal.signature);
        return d;
      }
    }
    return std::nullopt;
  }

  std::size_t explored() const { return explored_; }

 private:
  struct Entry {
    std::optional<Derivation> proof;
    std::size_t failed_below = 0;  // every limit <= this failed
    bool in_progress = false;
  };

  std::string fresh_constant(const Formula& a, const Formula& b) const {
    std::set<std::string> avoid = constants_of(a);
    for (const auto& c : constants_of(b)) avoid.insert(c);
    return sig_.fresh_constant(avoid);
  }

  // Rule (x) closes free variables one at a time.
  std::optional<Derivation> prove_open(const Formula& lhs, const Formula& rhs, std::size_t limit) {
    std::set<std::string> fv = free_variables(lhs);
    for (const auto& v : free_variables(rhs)) fv.insert(v);
    if (fv.empty()) return search(lhs, rhs, limit);
    if (limit < 2) return std::nullopt;
    const std::string x = *fv.begin();
    const std::string c = fresh_constant(lhs, rhs);
    Term tc = Term::constant(c);
    auto sub = prove_open(detail::substitute_unchecked(lhs, x, tc), detail::substitute_unchecked(rhs, x, tc),
                          limit - 1);
    if (!sub) return std::nullopt;
    return detail::node(sig_, lhs, rhs, Rule::Constants, {std::move(*sub)}, detail::var_term_witness(x, tc));
  }

  std::optional<Derivation> search(const Formula& lhs, const Formula& rhs, std::size_t limit) {
    if (limit == 0) return std::nullopt;
    if (lhs.mdepth() < rhs.mdepth()) return std::nullopt;
    const std::string k = lhs.key() + " |- " + rhs.key();
    Entry& e = memo_[k];
    if (e.proof && e.proof->height() <= limit) return e.proof;
    if (limit <= e.failed_below || e.in_progress) return std::nullopt;
    e.in_progress = true;
    ++explored_;
    auto found = expand(lhs, rhs, limit);
    Entry& after = memo_[k];
    after.in_progress = false;
    if (found) {
      if (!after.proof || found->height() < after.proof->height()) after.proof = found;
    } else {
      after.failed_below = std::max(after.failed_below, limit);
    }
    return found;
  }

  std::optional<Derivation> expand(const Formula& lhs, const Formula& rhs, std::size_t limit) {
    using detail::node;
    if (rhs.is_top()) return node(sig_, lhs, rhs, Rule::TopIntro);
    if (lhs == rhs) return node(sig_, lhs, rhs, Rule::Reflexivity);
    if (lhs.is_and() && lhs.left() == rhs) return node(sig_, lhs, rhs, Rule::AndElimLeft);
    if (lhs.is_and() && lhs.right() == rhs) return node(sig_, lhs, rhs, Rule::AndElimRight);
    if (lhs.is_diamond() && lhs.body().is_diamond() && rhs.is_diamond() && lhs.body().body() == rhs.body())
      return node(sig_, lhs, rhs, Rule::Transitivity);
    if (limit < 2) return std::nullopt;

    if (rhs.is_and()) {
      auto a = search(lhs, rhs.left(), limit - 1);
      if (!a) return std::nullopt;
      auto b = search(lhs, rhs.right(), limit - 1);
      if (!b) return std::nullopt;
      return node(sig_, lhs, rhs, Rule::AndIntro, {std::move(*a), std::move(*b)});
    }

    if (rhs.is_forall()) {
      const std::string& x = rhs.var();
      if (!occurs_free(rhs.body(), x)) {
        auto p = search(lhs, rhs.body(), limit - 1);
        if (!p) return std::nullopt;
        return node(sig_, lhs, rhs, Rule::ForallRight, {std::move(*p)}, detail::var_witness(x));
      }
      if (limit < 3) return std::nullopt;
      Term c = Term::constant(fresh_constant(lhs, rhs));
      auto p = search(lhs, detail::substitute_unchecked(rhs.body(), x, c), limit - 2);
      if (!p) return std::nullopt;
      Derivation open = node(sig_, lhs, rhs.body(), Rule::Constants, {std::move(*p)}, detail::var_term_witness(x, c));
      return node(sig_, lhs, rhs, Rule::ForallRight, {std::move(open)}, detail::var_witness(x));
    }

    // Right side is an atom or a diamond.
    switch (lhs.kind()) {
      case Formula::Kind::And: {
        for (Rule pick : {Rule::AndElimLeft, Rule::AndElimRight}) {
          const Formula& part = pick == Rule::AndElimLeft ? lhs.left() : lhs.right();
          if (part.mdepth() < rhs.mdepth()) continue;
          auto p = search(part, rhs, limit - 1);
          if (!p) continue;
          Derivation elim = node(sig_, lhs, part, pick);
          return node(sig_, lhs, rhs, Rule::Cut, {std::move(elim), std::move(*p)});
        }
        return std::nullopt;
      }
      case Formula::Kind::Forall: {
        const std::string& x = lhs.var();
        std::vector<Term> candidates;
        if (!occurs_free(lhs.body(), x)) {
          candidates.push_back(Term::variable(x));
        } else {
          std::set<std::string> cs = constants_of(lhs);
          for (const auto& c : constants_of(rhs)) cs.insert(c);
          for (const auto& c : sig_.constants)
            if (cs.count(c)) candidates.push_back(Term::constant(c));
          for (const auto& c : cs)
            if (!sig_.has_constant(c)) candidates.push_back(Term::constant(c));
          candidates.push_back(Term::constant(fresh_constant(lhs, rhs)));
        }
        for (const auto& t : candidates) {
          auto p = search(detail::substitute_unchecked(lhs.body(), x, t), rhs, limit - 1);
          if (!p) continue;
          return node(sig_, lhs, rhs, Rule::ForallLeft, {std::move(*p)}, detail::term_witness(t));
        }
        return std::nullopt;
      }
      case Formula::Kind::Diamond: {
        if (!rhs.is_diamond()) return std::nullopt;
        if (auto p = search(lhs.body(), rhs.body(), limit - 1))
          return node(sig_, lhs, rhs, Rule::Necessitation, {std::move(*p)});
        if (limit < 3) return std::nullopt;
        // <>chi |- <><>psi |- <>psi
        if (auto p = search(lhs.body(), rhs, limit - 2)) {
          Formula dd = Formula::diamond(rhs);
          Derivation nec = node(sig_, lhs, dd, Rule::Necessitation, {std::move(*p)});
          Derivation trans = node(sig_, dd, rhs, Rule::Transitivity);
          return node(sig_, lhs, rhs, Rule::Cut, {std::move(nec), std::move(trans)});
        }
        return std::nullopt;
      }
      case Formula::Kind::Top:
      case Formula::Kind::Rel:
        return std::nullopt;
    }
    return std::nullopt;
  }

  Signature sig_;
  std::unordered_map<std::string, Entry> memo_;
  std::size_t explored_ = 0;
};

/// Searches for a certificate of height at most `depth_budget`. Absence means
/// the budget ran out or the goal violates the modal-depth bound; it is not a
/// non-derivability claim.
inline std::optional<Derivation> prove(const Sequent& s, std::size_t depth_budget = 12) {
  Signature sig = s.signature;
  absorb(sig, s.lhs);
  absorb(sig, s.rhs);
  return Prover(sig).prove(s, depth_budget);
}

/// Expansions of every derived-rule schema the sequent is an instance of.
/// Axiom-like schemas (i)-(iv) are matched syntactically; the rule schemas
/// (v) and (vi) need a premise, which is searched for with `prove`.
inline std::vector<Derivation> derived_rule_instances(const Sequent& s, std::size_t depth_budget = 12) {
  std::vector<Derivation> out;
  const Formula& lhs = s.lhs;
  const Formula& rhs = s.rhs;
  Signature sig = s.signature;
  absorb(sig, lhs);
  absorb(sig, rhs);
  auto keep = [&](Derivation d) {
    d.conclusion.lhs = lhs;
    d.conclusion.rhs = rhs;
    detail::rebase_signatures(d, s.signature);
    if (check_derivation(d)) out.push_back(std::move(d));
  };

  if (lhs.is_diamond() && lhs.body().is_forall()) {
    const Formula& all = lhs.body();
    if (rhs == Formula::forall(all.var(), Formula::diamond(all.body())))
      keep(derive_diamond_forall(all.body(), all.var(), sig));
  }
  if (lhs.is_forall() && lhs.body().is_forall()) {
    const std::string& x = lhs.var();
    const std::string& y = lhs.body().var();
    if (rhs == Formula::forall(y, Formula::forall(x, lhs.body().body())))
      keep(derive_forall_swap(lhs.body().body(), x, y, sig));
  }
  if (lhs.is_forall()) {
    const std::string& x = lhs.var();
    const Formula& body = lhs.body();
    std::vector<Term> candidates;
    for (const auto& c : constants_of(rhs)) candidates.push_back(Term::constant(c));
    for (const auto& v : free_variables(rhs)) candidates.push_back(Term::variable(v));
    candidates.push_back(Term::variable(x));
    for (const auto& t : candidates) {
      if (!free_for(body, x, t)) continue;
      if (substitute(body, x, t) == rhs) {
        keep(derive_instantiation(body, x, t, sig));
        break;
      }
    }
    if (rhs.is_forall()) {
      const std::string& y = rhs.var();
      Term ty = Term::variable(y);
      if (free_for(body, x, ty) && (x == y || !occurs_free(body, y)) && substitute(body, x, ty) == rhs.body())
        keep(derive_rename(body, x, y, sig));
    }
  }
  // (vi): phi |- Ax psi from phi |- psi[x/c] with c fresh.
  if (rhs.is_forall() && !occurs_free(lhs, rhs.var())) {
    std::set<std::string> avoid = constants_of(lhs);
    for (const auto& c : constants_of(rhs)) avoid.insert(c);
    std::string c = sig.fresh_constant(avoid);
    Formula inst = substitute(rhs.body(), rhs.var(), Term::constant(c));
    Signature ext = sig;
    ext.add_constant(c);
    if (auto premise = prove(Sequent{lhs, inst, ext}, depth_budget))
      keep(derive_forall_constant(std::move(*premise), rhs.body(), rhs.var(), c));
  }
  // (v): abstract one term t of the right side to a fresh x, prove phi |- psi,
  // then instantiate back.
  {
    std::set<std::string> names;
    collect_variable_names(lhs, names);
    collect_variable_names(rhs, names);
    const std::string x = detail::fresh_variable(names);
    std::vector<Term> terms;
    for (const auto& c : constants_of(rhs)) terms.push_back(Term::constant(c));
    for (const auto& v : free_variables(rhs)) terms.push_back(Term::variable(v));
    for (const auto& t : terms) {
      Formula abstracted = rhs;
      if (t.is_constant()) {
        // Replace the constant by x everywhere; x is fresh so nothing is captured.
        std::map<std::string, std::string> none;
        std::function<Formula(const Formula&)> swap = [&](const Formula& f) -> Formula {
          switch (f.kind()) {
            case Formula::Kind::Top:
              return f;
            case Formula::Kind::Rel: {
              auto args = f.args();
              for (auto& a : args)
                if (a == t) a = Term::variable(x);
              return Formula::rel(f.symbol(), args);
            }
            case Formula::Kind::And:
              return Formula::conj(swap(f.left()), swap(f.right()));
            case Formula::Kind::Diamond:
              return Formula::diamond(swap(f.body()));
            case Formula::Kind::Forall:
              return Formula::forall(f.var(), swap(f.body()));
          }
          return f;
        };
        abstracted = swap(rhs);
      } else {
        abstracted = substitute(rhs, t.name, Term::variable(x));
      }
      if (!free_for(abstracted, x, t) || substitute(abstracted, x, t) != rhs) continue;
      if (auto premise = prove(Sequent{lhs, abstracted, sig}, depth_budget)) {
        keep(derive_right_instance(std::move(*premise), x, t));
        break;
      }
    }
  }
  if (out.empty()) throw Error("sequent " + s.to_string() + " matches no derived-rule schema");
  return out;
}

// ---------------------------------------------------------------------------
// Human-readable tree

inline std::string witness_text(const Witness& w) {
  std::string out;
  if (w.variable) out += *w.variable;
  if (w.term) out += (w.variable ? ":=" : "t=") + w.term->name;
  return out;
}

inline void print_derivation(std::ostream& os, const Derivation& d, std::size_t indent = 0) {
  os << std::string(indent * 2, ' ') << d.conclusion.to_string() << "   [" << rule_tag(d.rule);
  if (!d.witness.empty()) os << ' ' << witness_text(d.witness);
  os << "]\n";
  for (const auto& p : d.premises) print_derivation(os, p, indent + 1);
}

inline std::string derivation_to_text(const Derivation& d) {
  std::ostringstream os;
  print_derivation(os, d);
  return os.str();
}

}  // namespace qrc1
