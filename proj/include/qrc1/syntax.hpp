#pragma once

// Strictly positive first-order modal formulas: terms, signatures, the
// immutable Formula AST, substitution and the closure/depth measures used by
// the completeness construction.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qrc1 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Raised by substitute() when the term is not free for the variable.
class CaptureError : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation that needs closed formulas receives an open one.
class OpenFormulaError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline bool is_name_tail(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char ch) {
    return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') || ch == '_';
  });
}

}  // namespace detail

/// Variables are `x[0-9a-z_]*`.
inline bool is_variable_name(std::string_view s) {
  return !s.empty() && s.front() == 'x' && detail::is_name_tail(s.substr(1));
}

/// Constants are `c[0-9a-z_]*`, or generated `c#k`. Other declared names are
/// constants too, but only a signature knows about those.
inline bool is_constant_name(std::string_view s) {
  if (s.empty() || s.front() != 'c') return false;
  if (s.size() > 2 && s[1] == '#') {
    return std::all_of(s.begin() + 2, s.end(),
                       [](char ch) { return ch >= '0' && ch <= '9'; });
  }
  return detail::is_name_tail(s.substr(1));
}

inline bool is_relation_name(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_';
  };
  if (!alpha(s.front())) return false;
  return std::all_of(s.begin(), s.end(), [&](char ch) {
    return alpha(ch) || (ch >= '0' && ch <= '9');
  });
}

struct Term {
  enum class Kind : unsigned char { Variable, Constant };

  Kind kind = Kind::Variable;
  std::string name;

  static Term variable(std::string n) { return {Kind::Variable, std::move(n)}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n)}; }

  bool is_variable() const noexcept { return kind == Kind::Variable; }
  bool is_constant() const noexcept { return kind == Kind::Constant; }

  auto operator<=>(const Term&) const = default;
};

/// Constants in declaration order plus relation arities. The constant order
/// drives every "least constant" choice, so it is part of the identity.
struct Signature {
  std::vector<std::string> constants;
  std::map<std::string, std::size_t> relations;

  bool has_constant(std::string_view c) const {
    return std::find(constants.begin(), constants.end(), c) != constants.end();
  }

  std::optional<std::size_t> arity(std::string_view symbol) const {
    auto it = relations.find(std::string(symbol));
    if (it == relations.end()) return std::nullopt;
    return it->second;
  }

  void add_constant(const std::string& c) {
    if (is_variable_name(c))
      throw SignatureError("constant name '" + c + "' collides with the variable namespace");
    if (!has_constant(c)) constants.push_back(c);
  }

  void add_relation(const std::string& symbol, std::size_t n) {
    if (!is_relation_name(symbol))
      throw SignatureError("invalid relation symbol '" + symbol + "'");
    auto [it, inserted] = relations.emplace(symbol, n);
    if (!inserted && it->second != n)
      throw SignatureError("relation " + symbol + " used with arity " + std::to_string(n) +
                           " but declared with arity " + std::to_string(it->second));
  }

  /// Least `c#k` absent from the signature and from `avoid`.
  std::string fresh_constant(const std::set<std::string>& avoid = {}) const {
    for (std::size_t k = 0;; ++k) {
      std::string c = "c#" + std::to_string(k);
      if (!has_constant(c) && !avoid.count(c)) return c;
    }
  }

  bool operator==(const Signature&) const = default;
};

/// Immutable formula handle. Copies share structure. Equality and ordering are
/// by canonical key, i.e. up to renaming of bound variables.
class Formula {
 public:
  enum class Kind : unsigned char { Top, Rel, And, Diamond, Forall };

  Formula();

  static Formula top() { return Formula(); }
  static Formula rel(std::string symbol, std::vector<Term> args);
  static Formula conj(Formula a, Formula b);
  static Formula diamond(Formula body);
  static Formula forall(std::string var, Formula body);

  Kind kind() const noexcept;
  bool is_top() const noexcept { return kind() == Kind::Top; }
  bool is_rel() const noexcept { return kind() == Kind::Rel; }
  bool is_and() const noexcept { return kind() == Kind::And; }
  bool is_diamond() const noexcept { return kind() == Kind::Diamond; }
  bool is_forall() const noexcept { return kind() == Kind::Forall; }

  const std::string& symbol() const;       // Rel
  const std::vector<Term>& args() const;   // Rel
  const Formula& left() const;             // And
  const Formula& right() const;            // And
  const Formula& body() const;             // Diamond, Forall
  const std::string& var() const;          // Forall

  std::size_t mdepth() const noexcept;
  std::size_t udepth() const noexcept;
  std::size_t size() const noexcept;

  /// Canonical text with bound variables renumbered in traversal order.
  const std::string& key() const noexcept;
  /// Concrete text using the actual variable names; parses back to this AST.
  std::string to_string() const;

  /// Exact syntactic identity, bound variable names included.
  bool identical(const Formula& other) const;

  friend bool operator==(const Formula& a, const Formula& b) { return a.key() == b.key(); }
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    return a.key().compare(b.key()) <=> 0;
  }

  struct Node;  // implementation detail

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

using FormulaSet = std::set<Formula>;

struct Formula::Node {
  Kind kind = Kind::Top;
  std::string name;  // relation symbol or bound variable
  std::vector<Term> args;
  Formula a;  // left / body
  Formula b;  // right
  std::size_t mdepth = 0;
  std::size_t udepth = 0;
  std::size_t size = 1;
  std::string key;
  std::string text;

  // Top node only; avoids infinite recursion of default-constructed children.
  struct TopTag {};
  explicit Node(TopTag) : a(nullptr), b(nullptr), key("T"), text("T") {}
  Node() : a(nullptr), b(nullptr) {}
};

namespace detail {

inline const std::shared_ptr<const Formula::Node>& top_node();

inline void render(const Formula& f, bool canonical, std::vector<std::pair<std::string, std::string>>& env,
                   std::size_t& counter, std::string& out) {
  auto term_text = [&](const Term& t) -> std::string {
    if (t.is_variable()) {
      for (auto it = env.rbegin(); it != env.rend(); ++it)
        if (it->first == t.name) return it->second;
    }
    return t.name;
  };
  switch (f.kind()) {
    case Formula::Kind::Top:
      out += 'T';
      return;
    case Formula::Kind::Rel:
      out += f.symbol();
      out += '(';
      for (std::size_t i = 0; i < f.args().size(); ++i) {
        if (i) out += ", ";
        out += term_text(f.args()[i]);
      }
      out += ')';
      return;
    case Formula::Kind::And:
      out += '(';
      render(f.left(), canonical, env, counter, out);
      out += " & ";
      render(f.right(), canonical, env, counter, out);
      out += ')';
      return;
    case Formula::Kind::Diamond:
      out += "<>";
      render(f.body(), canonical, env, counter, out);
      return;
    case Formula::Kind::Forall: {
      std::string shown = canonical ? "#" + std::to_string(counter++) : f.var();
      out += "A ";
      out += shown;
      out += " . ";
      env.emplace_back(f.var(), shown);
      render(f.body(), canonical, env, counter, out);
      env.pop_back();
      return;
    }
  }
}

inline std::string render(const Formula& f, bool canonical) {
  std::vector<std::pair<std::string, std::string>> env;
  std::size_t counter = 0;
  std::string out;
  render(f, canonical, env, counter, out);
  return out;
}

}  // namespace detail

inline const std::shared_ptr<const Formula::Node>& detail::top_node() {
  static const std::shared_ptr<const Formula::Node> node =
      std::make_shared<const Formula::Node>(Formula::Node::TopTag{});
  return node;
}

inline Formula::Formula() : node_(detail::top_node()) {}

inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline std::size_t Formula::mdepth() const noexcept { return node_->mdepth; }
inline std::size_t Formula::udepth() const noexcept { return node_->udepth; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline const std::string& Formula::key() const noexcept { return node_->key; }
inline std::string Formula::to_string() const { return node_->text; }

inline const std::string& Formula::symbol() const {
  if (!is_rel()) throw std::logic_error("symbol() on non-relational formula");
  return node_->name;
}
inline const std::vector<Term>& Formula::args() const {
  if (!is_rel()) throw std::logic_error("args() on non-relational formula");
  return node_->args;
}
inline const Formula& Formula::left() const {
  if (!is_and()) throw std::logic_error("left() on non-conjunction");
  return node_->a;
}
inline const Formula& Formula::right() const {
  if (!is_and()) throw std::logic_error("right() on non-conjunction");
  return node_->b;
}
inline const Formula& Formula::body() const {
  if (!is_diamond() && !is_forall()) throw std::logic_error("body() on formula without body");
  return node_->a;
}
inline const std::string& Formula::var() const {
  if (!is_forall()) throw std::logic_error("var() on non-quantifier");
  return node_->name;
}

inline Formula Formula::rel(std::string symbol, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rel;
  n->name = std::move(symbol);
  n->args = std::move(args);
  Formula f(n);
  n->key = detail::render(f, true);
  n->text = n->key;  // no binders inside an atom
  return f;
}

inline Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->mdepth = std::max(a.mdepth(), b.mdepth());
  n->udepth = std::max(a.udepth(), b.udepth());
  n->size = 1 + a.size() + b.size();
  n->a = std::move(a);
  n->b = std::move(b);
  Formula f(n);
  n->key = detail::render(f, true);
  n->text = detail::render(f, false);
  return f;
}

inline Formula Formula::diamond(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Diamond;
  n->mdepth = body.mdepth() + 1;
  n->udepth = body.udepth();
  n->size = 1 + body.size();
  n->key = "<>" + body.key();
  n->text = "<>" + body.to_string();
  n->a = std::move(body);
  return Formula(n);
}

inline Formula Formula::forall(std::string var, Formula body) {
  if (!is_variable_name(var)) throw Error("cannot quantify over non-variable '" + var + "'");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Forall;
  n->name = std::move(var);
  n->mdepth = body.mdepth();
  n->udepth = body.udepth() + 1;
  n->size = 1 + body.size();
  n->a = std::move(body);
  Formula f(n);
  n->key = detail::render(f, true);
  n->text = detail::render(f, false);
  return f;
}

inline bool Formula::identical(const Formula& other) const {
  if (node_ == other.node_) return true;
  return node_->text == other.node_->text;
}

inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conj(a, b); }

// ---------------------------------------------------------------------------
// Free variables, constants, substitution

inline void collect_free_variables(const Formula& f, std::vector<std::string>& bound,
                                   std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Rel:
      for (const auto& t : f.args())
        if (t.is_variable() && std::find(bound.begin(), bound.end(), t.name) == bound.end())
          out.insert(t.name);
      return;
    case Formula::Kind::And:
      collect_free_variables(f.left(), bound, out);
      collect_free_variables(f.right(), bound, out);
      return;
    case Formula::Kind::Diamond:
      collect_free_variables(f.body(), bound, out);
      return;
    case Formula::Kind::Forall:
      bound.push_back(f.var());
      collect_free_variables(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

inline std::set<std::string> free_variables(const Formula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  collect_free_variables(f, bound, out);
  return out;
}

inline bool is_closed(const Formula& f) { return free_variables(f).empty(); }

inline bool occurs_free(const Formula& f, const std::string& x) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return false;
    case Formula::Kind::Rel:
      return std::any_of(f.args().begin(), f.args().end(),
                         [&](const Term& t) { return t.is_variable() && t.name == x; });
    case Formula::Kind::And:
      return occurs_free(f.left(), x) || occurs_free(f.right(), x);
    case Formula::Kind::Diamond:
      return occurs_free(f.body(), x);
    case Formula::Kind::Forall:
      return f.var() != x && occurs_free(f.body(), x);
  }
  return false;
}

inline void collect_constants(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Rel:
      for (const auto& t : f.args())
        if (t.is_constant()) out.insert(t.name);
      return;
    case Formula::Kind::And:
      collect_constants(f.left(), out);
      collect_constants(f.right(), out);
      return;
    case Formula::Kind::Diamond:
    case Formula::Kind::Forall:
      collect_constants(f.body(), out);
      return;
  }
}

inline std::set<std::string> constants_of(const Formula& f) {
  std::set<std::string> out;
  collect_constants(f, out);
  return out;
}

inline void collect_relations(const Formula& f, std::map<std::string, std::size_t>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Rel:
      out.emplace(f.symbol(), f.args().size());
      return;
    case Formula::Kind::And:
      collect_relations(f.left(), out);
      collect_relations(f.right(), out);
      return;
    case Formula::Kind::Diamond:
    case Formula::Kind::Forall:
      collect_relations(f.body(), out);
      return;
  }
}

/// Every variable name occurring anywhere, bound or free.
inline void collect_variable_names(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Rel:
      for (const auto& t : f.args())
        if (t.is_variable()) out.insert(t.name);
      return;
    case Formula::Kind::And:
      collect_variable_names(f.left(), out);
      collect_variable_names(f.right(), out);
      return;
    case Formula::Kind::Diamond:
      collect_variable_names(f.body(), out);
      return;
    case Formula::Kind::Forall:
      out.insert(f.var());
      collect_variable_names(f.body(), out);
      return;
  }
}

/// True iff no free occurrence of `x` in `f` sits under a binder of a
/// variable occurring in `t`.
inline bool free_for(const Formula& f, const std::string& x, const Term& t) {
  if (t.is_constant()) return true;
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Rel:
      return true;
    case Formula::Kind::And:
      return free_for(f.left(), x, t) && free_for(f.right(), x, t);
    case Formula::Kind::Diamond:
      return free_for(f.body(), x, t);
    case Formula::Kind::Forall:
      if (f.var() == x) return true;
      if (f.var() == t.name && occurs_free(f.body(), x)) return false;
      return free_for(f.body(), x, t);
  }
  return true;
}

namespace detail {

inline Formula substitute_unchecked(const Formula& f, const std::string& x, const Term& t) {
  switch (f.kind()) {
    case Formula::Kind::Top:
      return f;
    case Formula::Kind::Rel: {
      bool touched = false;
      std::vector<Term> args = f.args();
      for (auto& a : args)
        if (a.is_variable() && a.name == x) {
          a = t;
          touched = true;
        }
      return touched ? Formula::rel(f.symbol(), std::move(args)) : f;
    }
    case Formula::Kind::And:
      return Formula::conj(substitute_unchecked(f.left(), x, t),
                           substitute_unchecked(f.right(), x, t));
    case Formula::Kind::Diamond:
      return Formula::diamond(substitute_unchecked(f.body(), x, t));
    case Formula::Kind::Forall:
      if (f.var() == x) return f;
      return Formula::forall(f.var(), substitute_unchecked(f.body(), x, t));
  }
  return f;
}

}  // namespace detail

/// phi[x/t]. Throws CaptureError when t is not free for x in phi.
inline Formula substitute(const Formula& f, const std::string& x, const Term& t) {
  if (!free_for(f, x, t))
    throw CaptureError("term " + t.name + " is not free for " + x + " in " + f.to_string());
  if (!occurs_free(f, x)) return f;
  return detail::substitute_unchecked(f, x, t);
}

/// phi^g: every free variable replaced by its constant under `naming`.
inline Formula close_with_constants(const Formula& f, const std::map<std::string, std::string>& naming) {
  Formula out = f;
  for (const auto& x : free_variables(f)) {
    auto it = naming.find(x);
    if (it == naming.end()) throw Error("naming does not cover free variable " + x);
    out = detail::substitute_unchecked(out, x, Term::constant(it->second));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Depth measures

struct Depths {
  std::size_t mdepth = 0;
  std::size_t udepth = 0;
  std::size_t cdepth = 0;
  bool operator==(const Depths&) const = default;
};

inline std::size_t cdepth(const Formula& f) { return constants_of(f).size(); }

inline Depths depths(const Formula& f) { return {f.mdepth(), f.udepth(), cdepth(f)}; }

template <class Range>
Depths depths_of_set(const Range& formulas) {
  Depths d;
  for (const Formula& f : formulas) {
    d.mdepth = std::max(d.mdepth, f.mdepth());
    d.udepth = std::max(d.udepth, f.udepth());
    d.cdepth = std::max(d.cdepth, cdepth(f));
  }
  return d;
}

/// Domain size used by the term model: 2 cdepth + 2 udepth + 1.
template <class Range>
std::size_t witness_domain_bound(const Range& formulas) {
  Depths d = depths_of_set(formulas);
  return 2 * d.cdepth + 2 * d.udepth + 1;
}

// ---------------------------------------------------------------------------
// Closure under a constant set

namespace detail {

inline void close_into(const Formula& f, const std::vector<std::string>& constants, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::Top:
      return;
    case Formula::Kind::Rel:
      out.insert(Formula::top());
      return;
    case Formula::Kind::And:
      close_into(f.left(), constants, out);
      close_into(f.right(), constants, out);
      return;
    case Formula::Kind::Diamond:
      close_into(f.body(), constants, out);
      return;
    case Formula::Kind::Forall:
      for (const auto& c : constants)
        close_into(substitute_unchecked(f.body(), f.var(), Term::constant(c)), constants, out);
      return;
  }
}

}  // namespace detail

/// Cl_C(gamma). All members of gamma must be closed.
template <class Range>
FormulaSet closure(const Range& gamma, const std::vector<std::string>& constants) {
  FormulaSet out;
  for (const Formula& f : gamma) {
    if (!is_closed(f)) throw OpenFormulaError("closure of open formula " + f.to_string());
    detail::close_into(f, constants, out);
  }
  return out;
}

inline FormulaSet closure(const Formula& f, const std::vector<std::string>& constants) {
  return closure(std::vector<Formula>{f}, constants);
}

/// Right-nested conjunction in set order; T for the empty set.
template <class Range>
Formula conjoin(const Range& formulas) {
  std::vector<Formula> items(formulas.begin(), formulas.end());
  if (items.empty()) return Formula::top();
  Formula out = items.back();
  for (std::size_t i = items.size() - 1; i-- > 0;) out = Formula::conj(items[i], out);
  return out;
}

/// All subformula occurrences (open ones included), deduplicated.
inline void subformulas(const Formula& f, FormulaSet& out) {
  if (!out.insert(f).second) return;
  switch (f.kind()) {
    case Formula::Kind::Top:
    case Formula::Kind::Rel:
      return;
    case Formula::Kind::And:
      subformulas(f.left(), out);
      subformulas(f.right(), out);
      return;
    case Formula::Kind::Diamond:
    case Formula::Kind::Forall:
      subformulas(f.body(), out);
      return;
  }
}

/// Signature check: every relation declared with matching arity and every
/// constant declared.
inline void check_well_formed(const Formula& f, const Signature& sig) {
  std::map<std::string, std::size_t> rels;
  collect_relations(f, rels);
  for (const auto& [s, n] : rels) {
    auto a = sig.arity(s);
    if (!a) throw SignatureError("unknown relation symbol " + s);
    if (*a != n)
      throw SignatureError("relation " + s + " has arity " + std::to_string(*a) + ", used with " +
                           std::to_string(n));
  }
  for (const auto& c : constants_of(f))
    if (!sig.has_constant(c)) throw SignatureError("unknown constant " + c);
}

/// Extends `sig` with every relation and constant used in `f`.
inline void absorb(Signature& sig, const Formula& f) {
  std::map<std::string, std::size_t> rels;
  collect_relations(f, rels);
  for (const auto& [s, n] : rels) sig.add_relation(s, n);
  for (const auto& c : constants_of(f)) sig.add_constant(c);
}

}  // namespace qrc1
