#pragma once

// The qrc1 command-line front end. run_cli is stream-based so it can be driven
// from tests; tools/qrc1.cpp only forwards argv and the environment.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qrc1/arith.hpp"
#include "qrc1/calculus.hpp"
#include "qrc1/corpus.hpp"
#include "qrc1/countermodel.hpp"
#include "qrc1/io.hpp"
#include "qrc1/parser.hpp"
#include "qrc1/semantics.hpp"

namespace qrc1::cli {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,      // refuted / derivable where a countermodel was asked / audit failed
  kInconclusive = 2,  // resource cap or proof budget exhausted
  kSelfCheck = 3,     // an internal audit of a produced artifact failed
  kUsage = 64,
  kIo = 74,
};

struct RunConfig {
  std::size_t depth_budget = 12;
  std::size_t model_cap = 10'000'000;
  std::size_t worker_count = 1;
  std::string format;  // json | dot | text; empty selects the command default
  std::uint64_t seed = 0;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

inline std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v) return std::nullopt;
  return std::string(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

namespace detail {

inline std::size_t parse_count(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw UsageError("invalid value for " + key + ": " + value);
  }
}

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "depth_budget") {
    cfg.depth_budget = parse_count(key, value);
  } else if (key == "model_cap") {
    cfg.model_cap = parse_count(key, value);
  } else if (key == "worker_count") {
    cfg.worker_count = parse_count(key, value);
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "seed") {
    cfg.seed = parse_count(key, value);
  } else {
    throw UsageError("unknown configuration key " + key);
  }
}

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Reads `key = value` lines; `#` starts a comment.
inline void apply_config_file(RunConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(n) + ": expected key = value");
    std::string value = detail::trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    detail::apply_setting(cfg, detail::trim(line.substr(0, eq)), value);
  }
}

inline void apply_env(RunConfig& cfg, const EnvLookup& env) {
  const std::pair<const char*, const char*> keys[] = {{"QRC1_DEPTH_BUDGET", "depth_budget"},
                                                      {"QRC1_MODEL_CAP", "model_cap"},
                                                      {"QRC1_WORKERS", "worker_count"},
                                                      {"QRC1_FORMAT", "format"},
                                                      {"QRC1_SEED", "seed"}};
  for (const auto& [var, key] : keys)
    if (auto v = env(var)) detail::apply_setting(cfg, key, *v);
}

inline void validate(const RunConfig& cfg) {
  if (cfg.depth_budget == 0) throw UsageError("depth_budget must be positive");
  if (cfg.model_cap == 0) throw UsageError("model_cap must be positive");
  if (cfg.worker_count == 0) throw UsageError("worker_count must be positive");
  if (!cfg.format.empty() && cfg.format != "json" && cfg.format != "dot" && cfg.format != "text")
    throw UsageError("format must be json, dot or text");
}

// ---------------------------------------------------------------------------

struct Context {
  RunConfig cfg;
  std::ostream& out;
  std::ostream& err;
  std::optional<std::string> out_path;

  std::string format_or(const std::string& fallback) const { return cfg.format.empty() ? fallback : cfg.format; }

  void emit(const std::string& text) const {
    if (out_path) {
      write_file(*out_path, text);
    } else {
      out << text;
    }
  }
};

inline Sequent parse_sequent(const std::string& lhs, const std::string& rhs, const std::optional<std::string>& sig_path) {
  Signature sig;
  if (sig_path) {
    Json j;
    try {
      j = Json::parse(read_file(*sig_path));
    } catch (const Json::exception& e) {
      throw UsageError(std::string("signature file: ") + e.what());
    }
    sig = signature_from_json(j);
    return Sequent{parse_formula(lhs, sig), parse_formula(rhs, sig), sig};
  }
  Formula l = parse_formula_extending(lhs, sig);
  Formula r = parse_formula_extending(rhs, sig);
  return Sequent{l, r, sig};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline int cmd_decide(const Context& ctx, const Sequent& s, Strategy strategy) {
  DecideOptions opts;
  opts.strategy = strategy;
  opts.model_cap = ctx.cfg.model_cap;
  opts.depth_budget = ctx.cfg.depth_budget;
  Verdict v = decide(s, opts);
  const std::string fmt = ctx.format_or("json");
  Json j;
  j["sequent"] = s.to_string();
  int code = kOk;
  std::string text;
  if (auto* d = std::get_if<Derivable>(&v)) {
    j["verdict"] = "derivable";
    if (d->certificate) j["certificate"] = derivation_to_json(*d->certificate);
    text = "derivable\n";
    if (d->certificate) text += derivation_to_text(*d->certificate);
  } else if (auto* r = std::get_if<Refuted>(&v)) {
    code = kNegative;
    j["verdict"] = "refuted";
    j["world"] = r->model.worlds[r->world];
    j["assignment"] = assignment_to_json(r->model, r->world, r->assignment);
    j["model"] = model_to_json(r->model);
    text = "refuted at " + r->model.worlds[r->world] + "\n" + dump(j["model"]);
    if (fmt == "dot") text = model_to_dot(r->model);
  } else {
    code = kInconclusive;
    j["verdict"] = "inconclusive";
    j["reason"] = std::get<Inconclusive>(v).reason;
    text = "inconclusive: " + std::get<Inconclusive>(v).reason + "\n";
  }
  if (fmt == "json") {
    ctx.emit(dump(j));
  } else if (fmt == "dot" && code != kNegative) {
    ctx.emit("// " + std::string(j["verdict"].get<std::string>()) + ": no model\n");
  } else {
    ctx.emit(text);
  }
  return code;
}

inline int cmd_prove(const Context& ctx, const Sequent& s) {
  auto d = prove(s, ctx.cfg.depth_budget);
  const std::string fmt = ctx.format_or("text");
  if (!d) {
    ctx.err << "no certificate within depth budget " << ctx.cfg.depth_budget
            << " (this is not a non-derivability claim)\n";
    if (fmt == "json") ctx.emit(dump(Json{{"sequent", s.to_string()}, {"found", false}}));
    return kInconclusive;
  }
  CheckResult check = check_derivation(*d);
  if (!check) {
    ctx.err << "internal error: certificate rejected: " << check.describe() << "\n";
    return kSelfCheck;
  }
  if (fmt == "json") {
    Json j;
    j["sequent"] = s.to_string();
    j["found"] = true;
    j["height"] = d->height();
    j["certificate"] = derivation_to_json(*d);
    ctx.emit(dump(j));
  } else {
    ctx.emit(derivation_to_text(*d));
  }
  return kOk;
}

inline int cmd_countermodel(const Context& ctx, const Sequent& s, const std::optional<std::string>& dot_path) {
  BuildOptions opts;
  opts.worker_count = ctx.cfg.worker_count;
  auto tm = countermodel(s, opts);
  if (!tm) {
    ctx.err << "derivable: no countermodel exists\n";
    return kNegative;
  }
  auto [p, cs] = root_pair(s);
  Assignment g;
  for (const auto& [x, c] : cs.naming) g.values[x] = *tm->model.element_index(0, c);
  Evaluator ev(tm->model);
  const bool refutes = ev.eval(0, g, s.lhs) && !ev.eval(0, g, s.rhs);
  TruthLemmaReport truth = truth_lemma_check(*tm);
  ShapeReport shape = audit_shape(*tm);
  const bool pass = refutes && truth.ok && shape.ok();

  Json j;
  j["sequent"] = s.to_string();
  j["world"] = tm->model.worlds[0];
  j["assignment"] = assignment_to_json(tm->model, 0, g);
  j["model"] = model_to_json(tm->model);
  Json labels = Json::object();
  for (std::size_t w = 0; w < tm->labels.size(); ++w) {
    Json l = pair_to_json(tm->labels[w]);
    l["stage"] = tm->stage[w];
    if (tm->parent[w] != TermModel::npos) l["parent"] = tm->model.worlds[tm->parent[w]];
    labels[tm->model.worlds[w]] = l;
  }
  j["pairs"] = labels;
  Json audit;
  audit["refutes"] = refutes;
  audit["truth_lemma"] = truth.ok ? "PASS" : "FAIL";
  audit["truth_lemma_checks"] = truth.checked;
  audit["shape"] = shape.ok() ? "PASS" : "FAIL";
  audit["result"] = pass ? "PASS" : "FAIL";
  if (!truth.failures.empty()) audit["failures"] = truth.failures;
  if (!shape.problems.empty()) audit["problems"] = shape.problems;
  j["audit"] = audit;

  const std::string fmt = ctx.format_or("json");
  if (fmt == "json") {
    ctx.emit(dump(j));
  } else if (fmt == "dot") {
    ctx.emit(model_to_dot(tm->model, true));
  } else {
    std::ostringstream os;
    os << "countermodel with " << tm->model.size() << " worlds over domain {";
    for (std::size_t k = 0; k < tm->domain.size(); ++k) os << (k ? ", " : "") << tm->domain[k];
    os << "}\n";
    for (std::size_t w = 0; w < tm->model.size(); ++w) {
      os << "  " << tm->model.worlds[w] << " ->";
      for (auto v : tm->model.succ[w]) os << ' ' << tm->model.worlds[v];
      os << "   true atoms:";
      for (const auto& a : true_atoms(tm->model, w)) os << ' ' << a;
      os << '\n';
    }
    os << "truth-lemma audit: " << (truth.ok ? "PASS" : "FAIL") << " (" << truth.checked << " checks)\n";
    os << "shape audit: " << (shape.ok() ? "PASS" : "FAIL") << "\n";
    ctx.emit(os.str());
  }
  if (dot_path) write_file(*dot_path, model_to_dot(tm->model, true));
  ctx.err << "truth-lemma audit: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kOk : kSelfCheck;
}

inline KripkeModel load_model(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw UsageError(std::string("model file: ") + e.what());
  }
  if (j.contains("model")) j = j.at("model");
  return model_from_json(j);
}

inline int cmd_realize(const Context& ctx, const std::string& style, const std::string& text,
                       const std::optional<std::string>& model_path, bool shadow_audit) {
  Signature sig;
  Formula f = parse_formula_extending(text, sig);
  if (style == "star") {
    if (shadow_audit) throw UsageError("--shadow-audit applies to the solovay style only");
    ctx.emit(to_string(star_realization(f)) + "\n");
    return kOk;
  }
  if (style != "solovay") throw UsageError("unknown style " + style);
  KripkeModel source;
  if (model_path) {
    source = load_model(*model_path);
  } else {
    std::vector<std::string> dom(sig.constants.begin(), sig.constants.end());
    if (dom.empty()) dom.push_back("e0");
    std::size_t w = source.add_world("w0", dom);
    for (std::size_t k = 0; k < sig.constants.size(); ++k) source.set_constant(w, sig.constants[k], k);
  }
  ShadowStructure s;
  try {
    s = make_shadow(source);
  } catch (const ArithError& e) {
    throw UsageError(e.what());
  }
  ctx.emit(to_string(solovay_star(f, s)) + "\n");
  if (!shadow_audit) return kOk;
  FormulaSet formulas;
  if (is_closed(f)) {
    std::vector<std::string> constants;
    for (const auto& [c, e] : s.model.I[0]) constants.push_back(c);
    formulas = closure(f, constants);
  } else {
    subformulas(f, formulas);
  }
  ShadowAuditReport r;
  try {
    r = shadow_truth_audit(s, formulas);
  } catch (const ModelError& e) {
    throw UsageError(e.what());
  }
  ctx.err << "shadow truth-lemma audit: " << (r.ok ? "PASS" : "FAIL") << " (" << r.checked << " checks)\n";
  for (const auto& msg : r.failures) ctx.err << "  " << msg << "\n";
  return r.ok ? kOk : kNegative;
}

inline int cmd_audit(const Context& ctx, const std::optional<std::string>& certificate,
                     const std::optional<std::string>& model_path, const std::optional<std::string>& lhs,
                     const std::optional<std::string>& rhs, const std::optional<std::string>& world) {
  if (!certificate && !model_path) throw UsageError("audit needs --certificate or --model");
  bool pass = true;
  Json report;
  if (certificate) {
    Json j;
    try {
      j = Json::parse(read_file(*certificate));
    } catch (const Json::exception& e) {
      throw UsageError(std::string("certificate file: ") + e.what());
    }
    if (j.contains("certificate")) j = j.at("certificate");
    Derivation d = derivation_from_json(j);
    CheckResult r = check_derivation(d);
    report["certificate"] = r.ok ? "PASS" : "FAIL: " + r.describe();
    report["conclusion"] = d.conclusion.to_string();
    report["nodes"] = d.node_count();
    pass = pass && r.ok;
  }
  if (model_path) {
    KripkeModel m = load_model(*model_path);
    AdequacyReport a = check_adequate(m);
    Json adequacy;
    adequacy["transitive"] = a.transitive;
    adequacy["eta_coherent"] = a.eta_coherent;
    adequacy["concordant"] = a.concordant;
    std::vector<std::string> witnesses = a.transitivity_witnesses;
    witnesses.insert(witnesses.end(), a.eta_witnesses.begin(), a.eta_witnesses.end());
    witnesses.insert(witnesses.end(), a.concordance_witnesses.begin(), a.concordance_witnesses.end());
    adequacy["witnesses"] = witnesses;
    report["adequacy"] = adequacy;
    report["irreflexive"] = is_irreflexive(m);
    report["constant_domain"] = has_constant_domain(m);
    pass = pass && a.ok();
    if (lhs || rhs) {
      if (!lhs || !rhs) throw UsageError("--lhs and --rhs go together");
      if (!a.ok()) throw UsageError("cannot evaluate formulas on a non-adequate model");
      Sequent s = parse_sequent(*lhs, *rhs, std::nullopt);
      std::size_t w = 0;
      if (world) {
        auto idx = m.world_index(*world);
        if (!idx) throw UsageError("unknown world " + *world);
        w = *idx;
      }
      Evaluator ev(m);
      std::set<std::string> fv = free_variables(s.lhs);
      for (const auto& x : free_variables(s.rhs)) fv.insert(x);
      bool found = false;
      for_each_assignment(m, w, std::vector<std::string>(fv.begin(), fv.end()), [&](const Assignment& g) {
        if (!found && ev.eval(w, g, s.lhs) && !ev.eval(w, g, s.rhs)) found = true;
      });
      report["refutes"] = found;
      pass = pass && found;
    }
  }
  report["result"] = pass ? "PASS" : "FAIL";
  const std::string fmt = ctx.format_or("json");
  if (fmt == "text") {
    ctx.emit(std::string(pass ? "PASS" : "FAIL") + "\n");
  } else {
    ctx.emit(dump(report));
  }
  return pass ? kOk : kNegative;
}

inline int cmd_corpus(const Context& ctx, std::size_t count, bool check) {
  CorpusParams params;
  FormulaGenerator gen(params, ctx.cfg.seed);
  std::vector<Sequent> items;
  for (std::size_t i = 0; i < count; ++i) items.push_back(gen.sequent());
  if (!check) {
    std::ostringstream os;
    for (const auto& s : items) os << s.lhs.to_string() << '\t' << s.rhs.to_string() << '\n';
    ctx.emit(os.str());
    return kOk;
  }
  struct Row {
    std::string verdict;
    bool certificate = false;
    bool certificate_ok = true;
  };
  std::vector<Row> rows(items.size());
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t i = from; i < items.size(); i += step) {
      DecideOptions opts;
      opts.attach_certificate = false;
      opts.model_cap = ctx.cfg.model_cap;
      Verdict v = decide(items[i], opts);
      rows[i].verdict = is_derivable(v) ? "derivable" : is_refuted(v) ? "refuted" : "inconclusive";
      auto d = prove(items[i], ctx.cfg.depth_budget);
      rows[i].certificate = d.has_value();
      if (d) rows[i].certificate_ok = check_derivation(*d).ok;
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(ctx.cfg.worker_count, items.size()));
  std::vector<std::future<void>> pending;
  for (std::size_t w = 0; w < workers; ++w) pending.push_back(std::async(std::launch::async, work, w, workers));
  for (auto& f : pending) f.get();
  std::size_t disagreements = 0;
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Row& r = rows[i];
    const bool bad = (r.certificate && r.verdict == "refuted") || !r.certificate_ok;
    if (bad) ++disagreements;
    os << items[i].lhs.to_string() << '\t' << items[i].rhs.to_string() << '\t' << r.verdict << '\t'
       << (r.certificate ? "certificate" : "no-certificate") << (bad ? "\tDISAGREE" : "") << '\n';
  }
  os << "# " << items.size() << " sequents, " << disagreements << " disagreements\n";
  ctx.emit(os.str());
  return disagreements == 0 ? kOk : kNegative;
}

// ---------------------------------------------------------------------------

/// Runs one command. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const EnvLookup& env = process_env) {
  CLI::App app{"qrc1: decide, prove and refute sequents of strictly positive quantified provability logic"};
  app.name("qrc1");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::optional<std::string> config_path;
  std::optional<std::size_t> depth_budget;
  std::optional<std::size_t> model_cap;
  std::optional<std::size_t> workers;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--depth-budget", depth_budget, "proof search height bound (default 12)");
  app.add_option("--model-cap", model_cap, "enumeration cap before reporting inconclusive (default 1e7)");
  app.add_option("--workers", workers, "worker threads (default 1)");
  app.add_option("--format", format, "json | dot | text");
  app.add_option("--seed", seed, "seed for corpus generation (default 0)");
  app.add_option("--out", out_path, "write the main artifact to a file instead of stdout");
  app.fallthrough();

  std::string lhs;
  std::string rhs;
  std::optional<std::string> sig_path;
  std::string strategy = "canonical";
  auto* decide_cmd = app.add_subcommand("decide", "decide derivability; exit 0 derivable, 1 refuted, 2 inconclusive");
  decide_cmd->add_option("lhs", lhs)->required();
  decide_cmd->add_option("rhs", rhs)->required();
  decide_cmd->add_option("--sig", sig_path, "signature JSON; symbols outside it are errors");
  decide_cmd->add_option("--strategy", strategy, "canonical | enumeration")->check(CLI::IsMember({"canonical", "enumeration"}));

  auto* prove_cmd = app.add_subcommand("prove", "search for a derivation certificate; exit 0 found, 2 budget exhausted");
  prove_cmd->add_option("lhs", lhs)->required();
  prove_cmd->add_option("rhs", rhs)->required();
  prove_cmd->add_option("--sig", sig_path);

  std::optional<std::string> dot_path;
  auto* cm_cmd = app.add_subcommand("countermodel", "build the term countermodel with its audits");
  cm_cmd->add_option("lhs", lhs)->required();
  cm_cmd->add_option("rhs", rhs)->required();
  cm_cmd->add_option("--sig", sig_path);
  cm_cmd->add_option("--dot", dot_path, "also write a DOT rendering to this file");

  std::string style = "star";
  std::string formula;
  std::optional<std::string> model_path;
  bool shadow = false;
  auto* realize_cmd = app.add_subcommand("realize", "print an arithmetic interpretation of a formula");
  realize_cmd->add_option("formula", formula)->required();
  realize_cmd->add_option("--style", style, "star | solovay")->check(CLI::IsMember({"star", "solovay"}));
  realize_cmd->add_option("--model", model_path, "countermodel JSON for the solovay style");
  realize_cmd->add_flag("--shadow-audit", shadow, "compare shadow evaluation with Kripke truth");

  std::optional<std::string> certificate;
  std::optional<std::string> audit_lhs;
  std::optional<std::string> audit_rhs;
  std::optional<std::string> world;
  auto* audit_cmd = app.add_subcommand("audit", "check a certificate or a model file");
  audit_cmd->add_option("--certificate", certificate);
  audit_cmd->add_option("--model", model_path);
  audit_cmd->add_option("--lhs", audit_lhs);
  audit_cmd->add_option("--rhs", audit_rhs);
  audit_cmd->add_option("--world", world);

  std::size_t count = 20;
  bool check = false;
  auto* corpus_cmd = app.add_subcommand("corpus", "generate seeded random sequents");
  corpus_cmd->add_option("--count", count);
  corpus_cmd->add_flag("--check", check, "run decider and prover on each sequent");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path) config_path = env("QRC1_CONFIG");
    if (config_path) apply_config_file(cfg, read_file(*config_path));
    apply_env(cfg, env);
    if (depth_budget) cfg.depth_budget = *depth_budget;
    if (model_cap) cfg.model_cap = *model_cap;
    if (workers) cfg.worker_count = *workers;
    if (format) cfg.format = *format;
    if (seed) cfg.seed = *seed;
    validate(cfg);
    Context ctx{cfg, out, err, out_path};

    if (*decide_cmd)
      return cmd_decide(ctx, parse_sequent(lhs, rhs, sig_path),
                        strategy == "enumeration" ? Strategy::Enumeration : Strategy::Canonical);
    if (*prove_cmd) return cmd_prove(ctx, parse_sequent(lhs, rhs, sig_path));
    if (*cm_cmd) return cmd_countermodel(ctx, parse_sequent(lhs, rhs, sig_path), dot_path);
    if (*realize_cmd) return cmd_realize(ctx, style, formula, model_path, shadow);
    if (*audit_cmd) return cmd_audit(ctx, certificate, model_path, audit_lhs, audit_rhs, world);
    if (*corpus_cmd) return cmd_corpus(ctx, count, check);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const SignatureError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PairError& e) {
    err << "error: " << e.what() << "\n";
    return kInconclusive;
  }
  return kUsage;
}

}  // namespace qrc1::cli
