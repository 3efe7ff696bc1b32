#pragma once

// Term-model construction: maximal consistent fully witnessed pairs, their
// saturation, successor pairs, and the constant-domain model M[p] with a
// truth-lemma self check.

#include <algorithm>
#include <cstddef>
#include <future>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "qrc1/semantics.hpp"
#include "qrc1/syntax.hpp"

namespace qrc1 {

class PairError : public Error {
 public:
  using Error::Error;
};

struct Pair {
  FormulaSet positive;
  FormulaSet negative;

  bool operator==(const Pair&) const = default;

  FormulaSet all() const {
    FormulaSet out = positive;
    out.insert(negative.begin(), negative.end());
    return out;
  }

  std::size_t positive_mdepth() const {
    std::size_t d = 0;
    for (const auto& f : positive) d = std::max(d, f.mdepth());
    return d;
  }
};

/// Memoized derivability oracle for closed sequents backed by the semantic
/// decider. Safe for concurrent use.
class DerivabilityOracle {
 public:
  explicit DerivabilityOracle(std::size_t world_cap = 200'000) : world_cap_(world_cap) {}

  bool derivable(const Formula& lhs, const Formula& rhs) {
    const std::string key = lhs.key() + " |- " + rhs.key();
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    DecideOptions opts;
    opts.attach_certificate = false;
    opts.minimize = false;
    opts.world_cap = world_cap_;
    Verdict v = decide(Sequent{lhs, rhs, {}}, opts);
    if (auto* inc = std::get_if<Inconclusive>(&v)) throw PairError("derivability oracle: " + inc->reason);
    bool result = is_derivable(v);
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(key, result);
    ++calls_;
    return result;
  }

  std::size_t calls() const {
    std::lock_guard<std::mutex> lock(mu_);
    return calls_;
  }

 private:
  std::size_t world_cap_;
  mutable std::mutex mu_;
  std::map<std::string, bool> memo_;
  std::size_t calls_ = 0;
};

/// p R^ q: every <>phi in p- has phi, <>phi in q-, and some <>psi is in p+ and q-.
inline bool r_hat(const Pair& p, const Pair& q) {
  for (const auto& f : p.negative)
    if (f.is_diamond() && (!q.negative.count(f.body()) || !q.negative.count(f))) return false;
  for (const auto& f : p.positive)
    if (f.is_diamond() && q.negative.count(f)) return true;
  return false;
}

inline bool is_consistent(const Pair& p, DerivabilityOracle& oracle) {
  Formula conj = conjoin(p.positive);
  for (const auto& d : p.negative)
    if (oracle.derivable(conj, d)) return false;
  return true;
}

/// Least constant of C (in order) occurring neither in `positive` nor in `f`.
inline std::optional<std::string> witness_constant(const FormulaSet& positive, const Formula& f,
                                                   const std::vector<std::string>& C) {
  std::set<std::string> used = constants_of(f);
  for (const auto& g : positive) {
    auto cs = constants_of(g);
    used.insert(cs.begin(), cs.end());
  }
  for (const auto& c : C)
    if (!used.count(c)) return c;
  return std::nullopt;
}

struct McwReport {
  bool closed = true;
  bool maximal = true;
  bool consistent = true;
  bool fully_witnessed = true;
  std::vector<std::string> problems;

  bool ok() const { return closed && maximal && consistent && fully_witnessed; }
};

inline McwReport check_mcw(const Pair& p, const FormulaSet& closure_set, const std::vector<std::string>& C,
                           DerivabilityOracle& oracle) {
  McwReport r;
  for (const auto& f : p.all())
    if (!is_closed(f)) {
      r.closed = false;
      r.problems.push_back("open formula " + f.to_string());
    }
  for (const auto& f : closure_set) {
    bool pos = p.positive.count(f) > 0;
    bool neg = p.negative.count(f) > 0;
    if (pos == neg) {
      r.maximal = false;
      r.problems.push_back("not decided exactly once: " + f.to_string());
    }
  }
  for (const auto& f : p.all())
    if (!closure_set.count(f)) {
      r.maximal = false;
      r.problems.push_back("outside the closure: " + f.to_string());
    }
  if (!is_consistent(p, oracle)) {
    r.consistent = false;
    r.problems.push_back("inconsistent");
  }
  for (const auto& f : p.negative) {
    if (!f.is_forall()) continue;
    bool found = false;
    for (const auto& c : C)
      if (p.negative.count(substitute(f.body(), f.var(), Term::constant(c)))) {
        found = true;
        break;
      }
    if (!found) {
      r.fully_witnessed = false;
      r.problems.push_back("no witness for " + f.to_string());
    }
  }
  return r;
}

/// Saturates p inside Cl_C(Phi): chi goes positive iff the conjunction of
/// p+ derives it.
inline Pair lindenbaum(const Pair& p, const FormulaSet& Phi, const std::vector<std::string>& C,
                       DerivabilityOracle& oracle) {
  Depths d = depths_of_set(Phi);
  if (C.size() <= 2 * d.cdepth + 2 * d.udepth)
    throw PairError("constant set too small: need more than " + std::to_string(2 * d.cdepth + 2 * d.udepth));
  if (p.positive.size() != 1) throw PairError("positive part must be a singleton");
  const FormulaSet cl = closure(Phi, C);
  for (const auto& f : p.all())
    if (!cl.count(f)) throw PairError("pair member outside the closure: " + f.to_string());
  if (!is_consistent(p, oracle)) throw PairError("inconsistent pair");
  const Formula& phi = *p.positive.begin();
  Pair q;
  for (const auto& chi : cl) {
    if (oracle.derivable(phi, chi))
      q.positive.insert(chi);
    else
      q.negative.insert(chi);
  }
  return q;
}

/// The successor pair for <>phi in p+.
inline Pair pair_successor(const Pair& p, const Formula& diamond_phi, const FormulaSet& Phi,
                           const std::vector<std::string>& C, DerivabilityOracle& oracle) {
  if (!diamond_phi.is_diamond() || !p.positive.count(diamond_phi))
    throw PairError("pair_successor needs a diamond formula of p+");
  Pair r;
  r.positive.insert(diamond_phi.body());
  for (const auto& f : p.negative)
    if (f.is_diamond()) {
      r.negative.insert(f.body());
      r.negative.insert(f);
    }
  r.negative.insert(diamond_phi);
  return lindenbaum(r, Phi, C, oracle);
}

struct BuildOptions {
  std::size_t worker_count = 1;
  std::size_t world_cap = 100'000;
};

/// M[p] together with the construction data.
struct TermModel {
  KripkeModel model;
  std::vector<Pair> labels;          // world -> pair
  std::vector<std::size_t> parent;   // stage-tree parent; npos for the root
  std::vector<std::size_t> stage;    // stage at which the world was added
  std::vector<Formula> via;          // the <>phi that produced the world (T for the root)
  std::vector<std::string> domain;   // C
  FormulaSet Phi;
  FormulaSet closure_set;
  Signature signature;

  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::size_t stage_count() const {
    std::size_t s = 0;
    for (auto x : stage) s = std::max(s, x + 1);
    return s;
  }
};

/// Domain for M[p]: signature constants, constants of Phi, then fresh ones up
/// to 2 cdepth + 2 udepth + 1.
inline std::vector<std::string> choose_domain(const FormulaSet& Phi, Signature sig) {
  for (const auto& f : Phi) absorb(sig, f);
  const std::size_t bound = witness_domain_bound(Phi);
  while (sig.constants.size() < bound) sig.add_constant(sig.fresh_constant());
  return sig.constants;
}

inline TermModel build_model(const Pair& p, const Signature& sig = {}, const BuildOptions& opts = {},
                             DerivabilityOracle* shared_oracle = nullptr) {
  DerivabilityOracle local;
  DerivabilityOracle& oracle = shared_oracle ? *shared_oracle : local;
  if (p.positive.size() != 1) throw PairError("positive part must be a singleton");
  TermModel tm;
  tm.Phi = p.all();
  for (const auto& f : tm.Phi)
    if (!is_closed(f)) throw PairError("open formula in pair: " + f.to_string());
  tm.domain = choose_domain(tm.Phi, sig);
  tm.signature = sig;
  for (const auto& f : tm.Phi) absorb(tm.signature, f);
  for (const auto& c : tm.domain) tm.signature.add_constant(c);
  tm.closure_set = closure(tm.Phi, tm.domain);

  tm.labels.push_back(lindenbaum(p, tm.Phi, tm.domain, oracle));
  tm.parent.push_back(TermModel::npos);
  tm.stage.push_back(0);
  tm.via.push_back(Formula::top());

  std::vector<std::size_t> frontier{0};
  for (std::size_t st = 1; !frontier.empty(); ++st) {
    struct Job {
      std::size_t parent;
      Formula diamond;
    };
    std::vector<Job> jobs;
    for (auto w : frontier)
      for (const auto& f : tm.labels[w].positive)
        if (f.is_diamond()) jobs.push_back({w, f});
    if (tm.labels.size() + jobs.size() > opts.world_cap)
      throw PairError("term model exceeds " + std::to_string(opts.world_cap) + " worlds");
    std::vector<Pair> results(jobs.size());
    auto run = [&](std::size_t from, std::size_t to) {
      for (std::size_t j = from; j < to; ++j)
        results[j] = pair_successor(tm.labels[jobs[j].parent], jobs[j].diamond, tm.Phi, tm.domain, oracle);
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(opts.worker_count, jobs.size()));
    if (workers == 1) {
      run(0, jobs.size());
    } else {
      std::vector<std::future<void>> pending;
      const std::size_t chunk = (jobs.size() + workers - 1) / workers;
      for (std::size_t from = 0; from < jobs.size(); from += chunk)
        pending.push_back(std::async(std::launch::async, run, from, std::min(jobs.size(), from + chunk)));
      for (auto& f : pending) f.get();
    }
    std::vector<std::size_t> next;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      tm.labels.push_back(std::move(results[j]));
      tm.parent.push_back(jobs[j].parent);
      tm.stage.push_back(st);
      tm.via.push_back(jobs[j].diamond);
      next.push_back(tm.labels.size() - 1);
    }
    frontier = std::move(next);
  }

  KripkeModel& m = tm.model;
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < tm.domain.size(); ++k) index[tm.domain[k]] = k;
  for (std::size_t w = 0; w < tm.labels.size(); ++w) {
    m.add_world("w" + std::to_string(w), tm.domain);
    for (std::size_t k = 0; k < tm.domain.size(); ++k) m.set_constant(w, tm.domain[k], k);
    for (const auto& f : tm.labels[w].positive) {
      if (!f.is_rel()) continue;
      Tuple t;
      for (const auto& a : f.args()) t.push_back(index.at(a.name));
      m.add_tuple(w, f.symbol(), std::move(t));
    }
  }
  for (std::size_t w = 1; w < tm.labels.size(); ++w)
    for (std::size_t a = tm.parent[w]; a != TermModel::npos; a = tm.parent[a]) m.add_identity_edge(a, w);
  return tm;
}

/// The root pair of a sequent after closing its free variables.
inline std::pair<Pair, ClosedSequent> root_pair(const Sequent& s) {
  ClosedSequent cs = close_sequent(s);
  Pair p;
  p.positive.insert(cs.lhs);
  p.negative.insert(cs.rhs);
  return {p, cs};
}

struct TruthLemmaReport {
  bool ok = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
};

/// For every world w and closure formula chi: w satisfies chi iff chi in w+.
/// The closure is read off the labels, which are maximal over it.
inline TruthLemmaReport truth_lemma_check(const KripkeModel& m, const std::vector<Pair>& labels) {
  TruthLemmaReport r;
  if (labels.size() != m.size()) {
    r.ok = false;
    r.failures.push_back("label count differs from world count");
    return r;
  }
  FormulaSet cl;
  for (const auto& p : labels) {
    auto a = p.all();
    cl.insert(a.begin(), a.end());
  }
  Evaluator ev(m);
  for (std::size_t w = 0; w < m.size(); ++w) {
    for (const auto& chi : cl) {
      ++r.checked;
      bool truth = ev.eval(w, {}, chi);
      bool member = labels[w].positive.count(chi) > 0;
      if (truth != member) {
        r.ok = false;
        r.failures.push_back(m.worlds[w] + ": " + chi.to_string() + (truth ? " holds but is negative" : " fails but is positive"));
      }
    }
  }
  return r;
}

inline TruthLemmaReport truth_lemma_check(const TermModel& tm) { return truth_lemma_check(tm.model, tm.labels); }

struct ShapeReport {
  bool adequate = true;
  bool constant_domain = true;
  bool irreflexive = true;
  bool transitive = true;
  bool mdepth_decreasing = true;
  bool r_hat_edges = true;
  std::vector<std::string> problems;

  bool ok() const {
    return adequate && constant_domain && irreflexive && transitive && mdepth_decreasing && r_hat_edges;
  }
};

inline ShapeReport audit_shape(const TermModel& tm) {
  ShapeReport r;
  const KripkeModel& m = tm.model;
  AdequacyReport a = check_adequate(m);
  r.adequate = a.ok();
  r.transitive = a.transitive;
  r.constant_domain = has_constant_domain(m);
  r.irreflexive = is_irreflexive(m);
  for (std::size_t w = 1; w < tm.labels.size(); ++w) {
    std::size_t p = tm.parent[w];
    if (tm.labels[w].positive_mdepth() >= tm.labels[p].positive_mdepth()) {
      r.mdepth_decreasing = false;
      r.problems.push_back("mdepth does not drop on " + m.worlds[p] + " -> " + m.worlds[w]);
    }
  }
  for (std::size_t w = 0; w < m.size(); ++w)
    for (auto v : m.succ[w])
      if (!r_hat(tm.labels[w], tm.labels[v])) {
        r.r_hat_edges = false;
        r.problems.push_back("R-hat fails on " + m.worlds[w] + " -> " + m.worlds[v]);
      }
  if (!r.adequate) r.problems.push_back("not adequate");
  if (!r.constant_domain) r.problems.push_back("not constant domain");
  if (!r.irreflexive) r.problems.push_back("reflexive world");
  return r;
}

/// Countermodel for an underivable sequent, or nullopt when it is derivable.
inline std::optional<TermModel> countermodel(const Sequent& s, const BuildOptions& opts = {}) {
  auto [p, cs] = root_pair(s);
  DerivabilityOracle oracle;
  if (oracle.derivable(cs.lhs, cs.rhs)) return std::nullopt;
  return build_model(p, cs.signature, opts, &oracle);
}

}  // namespace qrc1
