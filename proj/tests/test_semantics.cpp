#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrc1/corpus.hpp"
#include "qrc1/io.hpp"
#include "qrc1/qrc1.hpp"

using namespace qrc1;

namespace {

Signature sig_cd() {
  Signature sig;
  sig.add_constant("c");
  sig.add_constant("d");
  sig.add_relation("S", 1);
  sig.add_relation("R", 2);
  return sig;
}

Formula P(const std::string& text) { return parse_formula(text, sig_cd()); }

/// Two worlds w0 R w1 with domains {a, b} and {a}; eta collapses both to a.
KripkeModel collapsing_model() {
  KripkeModel m;
  m.add_world("w0", {"a", "b"});
  m.add_world("w1", {"a"});
  m.add_edge(0, 1, {0, 0});
  m.set_constant(0, "c", 0);
  m.set_constant(0, "d", 1);
  m.set_constant(1, "c", 0);
  m.set_constant(1, "d", 0);
  m.add_tuple(0, "S", {0});
  m.add_tuple(1, "S", {0});
  m.add_tuple(1, "R", {0, 0});
  return m;
}

std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n + i - 1) / i;
  return r;
}

/// Number of trees of height at most `depth`, branching at most `width`, with
/// `v` valuations per node, counted as multisets of children.
std::uint64_t tree_count(std::uint64_t v, std::size_t depth, std::size_t width) {
  std::uint64_t t = v;
  for (std::size_t d = 1; d <= depth; ++d) {
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k <= width; ++k) sum += multichoose(t, k);
    t = v * sum;
  }
  return t;
}

}  // namespace

TEST(Adequacy, CollapsingModelIsAdequate) {
  KripkeModel m = collapsing_model();
  AdequacyReport r = check_adequate(m);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(is_irreflexive(m));
  EXPECT_FALSE(has_constant_domain(m));
}

TEST(Adequacy, DetectsNonTransitivity) {
  KripkeModel m;
  for (int i = 0; i < 3; ++i) m.add_world("w" + std::to_string(i), {"a"});
  m.add_identity_edge(0, 1);
  m.add_identity_edge(1, 2);
  AdequacyReport r = check_adequate(m);
  EXPECT_FALSE(r.transitive);
  EXPECT_EQ(r.transitivity_witnesses, std::vector<std::string>{"(w0,w1,w2)"});
  m.add_identity_edge(0, 2);
  EXPECT_TRUE(check_adequate(m).ok());
}

TEST(Adequacy, DetectsIncoherentEta) {
  KripkeModel m;
  m.add_world("w0", {"a", "b"});
  m.add_world("w1", {"a", "b"});
  m.add_world("w2", {"a", "b"});
  m.add_edge(0, 1, {1, 0});
  m.add_edge(1, 2, {1, 0});
  m.add_edge(0, 2, {1, 0});  // the composite is the identity
  EXPECT_FALSE(check_adequate(m).eta_coherent);
  m.add_edge(0, 2, {0, 1});
  EXPECT_TRUE(check_adequate(m).eta_coherent);
}

TEST(Adequacy, DetectsDiscordantConstant) {
  KripkeModel m = collapsing_model();
  m.set_constant(1, "c", 0);
  m.I[1].erase("d");
  EXPECT_FALSE(check_adequate(m).concordant);
}

TEST(KripkeModel, RejectsMalformedData) {
  KripkeModel m;
  EXPECT_THROW(m.add_world("w", {}), ModelError);
  m.add_world("w0", {"a"});
  m.add_world("w1", {"a"});
  EXPECT_THROW(m.add_edge(0, 1, {0, 0}), ModelError);
  EXPECT_THROW(m.add_edge(0, 1, {3}), ModelError);
  EXPECT_THROW(m.set_constant(0, "c", 2), ModelError);
  EXPECT_THROW(m.add_tuple(0, "S", {1}), ModelError);
}

TEST(Satisfaction, Examples) {
  KripkeModel m = collapsing_model();
  EXPECT_TRUE(satisfies(m, 0, {}, P("S(c)")));
  EXPECT_FALSE(satisfies(m, 0, {}, P("S(d)")));
  EXPECT_TRUE(satisfies(m, 0, {}, P("<>S(d)")));
  EXPECT_FALSE(satisfies(m, 0, {}, P("A x . S(x)")));
  EXPECT_TRUE(satisfies(m, 0, {}, P("<>A x . R(x, x)")));
  EXPECT_TRUE(satisfies(m, 0, {}, P("A x . <>S(x)")));
  EXPECT_FALSE(satisfies(m, 1, {}, P("<>T")));
  Assignment g;
  g.values["x"] = 1;
  EXPECT_FALSE(satisfies(m, 0, g, P("S(x)")));
  EXPECT_TRUE(satisfies(m, 0, g, P("<>S(x)")));
  EXPECT_THROW(satisfies(m, 5, {}, P("T")), ModelError);
}

TEST(Satisfaction, RequiresAdequateModel) {
  KripkeModel m;
  for (int i = 0; i < 3; ++i) m.add_world("w" + std::to_string(i), {"a"});
  m.add_identity_edge(0, 1);
  m.add_identity_edge(1, 2);
  EXPECT_THROW(satisfies(m, 0, {}, P("T")), ModelError);
}

TEST(Satisfaction, AgreesWithOracleOnRandomModels) {
  CorpusParams params;
  params.allow_free = true;
  FormulaGenerator gen(params, 31);
  std::mt19937_64 rng(32);
  const Signature sig = params.signature();
  for (int k = 0; k < 300; ++k) {
    KripkeModel m = random_adequate_model(rng, sig, {});
    ASSERT_TRUE(check_adequate(m).ok());
    Evaluator ev(m);
    for (int j = 0; j < 10; ++j) {
      Formula f = gen.formula();
      for (std::size_t w = 0; w < m.size(); ++w) {
        for_each_assignment(m, w, {"x", "x1"}, [&](const Assignment& g) {
          ASSERT_EQ(ev.eval(w, g, f), oracle::holds(m, w, g.values, f)) << f.to_string();
        });
      }
    }
  }
}

TEST(Satisfaction, ForEachAssignmentCoversDomainPower) {
  KripkeModel m = collapsing_model();
  std::size_t n = 0;
  for_each_assignment(m, 0, {"x", "x1", "x2"}, [&](const Assignment&) { ++n; });
  EXPECT_EQ(n, 8u);
  n = 0;
  for_each_assignment(m, 0, {}, [&](const Assignment&) { ++n; });
  EXPECT_EQ(n, 1u);
}

TEST(Enumeration, CountsMatchClosedForm) {
  Signature sig;
  sig.add_relation("S", 1);
  const std::vector<std::string> one{"c"};
  for (std::size_t depth = 0; depth <= 2; ++depth)
    for (std::size_t width = 0; width <= 2; ++width) {
      std::uint64_t n = 0;
      EnumerationStatus st = enumerate_models(sig, one, depth, width, [&](const KripkeModel& m) {
        EXPECT_TRUE(check_adequate(m).ok());
        EXPECT_TRUE(is_irreflexive(m));
        EXPECT_TRUE(has_constant_domain(m));
        ++n;
        return true;
      });
      EXPECT_EQ(st, EnumerationStatus::Completed);
      EXPECT_EQ(n, tree_count(2, depth, width)) << depth << "," << width;
    }
  std::uint64_t n = 0;
  enumerate_models(sig, {"c", "d"}, 1, 1, [&](const KripkeModel&) { return ++n, true; });
  EXPECT_EQ(n, tree_count(4, 1, 1));
}

TEST(Enumeration, CapAndStop) {
  Signature sig;
  sig.add_relation("S", 1);
  std::size_t n = 0;
  EXPECT_EQ(enumerate_models(sig, {"c"}, 2, 2, [&](const KripkeModel&) { return ++n, true; }, {5}),
            EnumerationStatus::Capped);
  EXPECT_EQ(n, 5u);
  n = 0;
  EXPECT_EQ(enumerate_models(sig, {"c"}, 2, 2, [&](const KripkeModel&) { return ++n < 3; }),
            EnumerationStatus::Stopped);
  EXPECT_EQ(n, 3u);
  Signature with_c;
  with_c.add_constant("c");
  EXPECT_THROW(enumerate_models(with_c, {"d"}, 0, 0, [](const KripkeModel&) { return true; }), ModelError);
}

TEST(Decide, Examples) {
  EXPECT_TRUE(is_derivable(decide(P("<><>T"), P("<>T"), sig_cd())));
  EXPECT_TRUE(is_derivable(decide(P("<>A x . S(x)"), P("A x . <>S(x)"), sig_cd())));
  EXPECT_TRUE(is_derivable(decide(P("A x . R(x, c)"), P("R(d, c)"), sig_cd())));
  EXPECT_TRUE(is_refuted(decide(P("T"), P("<>T"), sig_cd())));
  EXPECT_TRUE(is_refuted(decide(P("A x . <>S(x)"), P("<>A x . S(x)"), sig_cd())));
  EXPECT_TRUE(is_refuted(decide(P("<>S(c)"), P("<><>S(c)"), sig_cd())));
}

TEST(Decide, OneWorldCountermodelForTopDiamond) {
  Verdict v = decide(P("T"), P("<>T"), sig_cd());
  ASSERT_TRUE(is_refuted(v));
  const Refuted& r = std::get<Refuted>(v);
  EXPECT_EQ(r.model.size(), 1u);
  EXPECT_TRUE(satisfies(r.model, r.world, r.assignment, P("T")));
  EXPECT_FALSE(satisfies(r.model, r.world, r.assignment, P("<>T")));
}

TEST(Decide, OpenSequentsAreClosedWithFreshConstants) {
  Sequent s{P("S(x)"), P("S(x1)"), sig_cd()};
  Verdict v = decide(s);
  ASSERT_TRUE(is_refuted(v));
  const Refuted& r = std::get<Refuted>(v);
  EXPECT_TRUE(oracle::holds(r.model, r.world, r.assignment.values, s.lhs));
  EXPECT_FALSE(oracle::holds(r.model, r.world, r.assignment.values, s.rhs));
  EXPECT_TRUE(is_derivable(decide(Sequent{P("A x1 . S(x1)"), P("S(x)"), sig_cd()})));

  ClosedSequent cs = close_sequent(s);
  EXPECT_EQ(cs.naming.at("x"), "c#0");
  EXPECT_EQ(cs.naming.at("x1"), "c#1");
  EXPECT_GE(cs.domain.size(), witness_domain_bound(std::vector<Formula>{cs.lhs, cs.rhs}));
}

TEST(Decide, DerivableVerdictCarriesCheckedCertificate) {
  Verdict v = decide(P("A x . <>S(x)"), P("<>S(d)"), sig_cd());
  ASSERT_TRUE(is_derivable(v));
  const auto& cert = std::get<Derivable>(v).certificate;
  ASSERT_TRUE(cert.has_value());
  EXPECT_TRUE(check_derivation(*cert).ok);
  DecideOptions bare;
  bare.attach_certificate = false;
  EXPECT_FALSE(std::get<Derivable>(decide(P("<><>T"), P("<>T"), sig_cd(), bare)).certificate.has_value());
}

TEST(Decide, WorldCapGivesInconclusive) {
  DecideOptions opts;
  opts.world_cap = 2;
  EXPECT_TRUE(is_inconclusive(decide(P("(<>S(c) & (<>S(d) & <>T))"), P("<><>T"), sig_cd(), opts)));
}

TEST(Decide, EnumerationFindsTheFirstCountermodelInOrder) {
  Signature sig;
  sig.add_constant("c");
  sig.add_constant("d");
  sig.add_relation("S", 1);
  DecideOptions opts;
  opts.strategy = Strategy::Enumeration;
  Verdict v = decide(parse_formula("A x . <>S(x)", sig), parse_formula("<>A x . S(x)", sig), sig, opts);
  ASSERT_TRUE(is_refuted(v));
  const KripkeModel& m = std::get<Refuted>(v).model;
  // Root with two leaves: one makes only S(c) true, the other S(d) and S(c#0).
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(true_atoms(m, 0), std::vector<std::string>{});
  EXPECT_EQ(true_atoms(m, 1), std::vector<std::string>{"S(c)"});
  EXPECT_EQ(true_atoms(m, 2), (std::vector<std::string>{"S(d)", "S(c#0)"}));
}

TEST(Decide, StrategiesAgreeOnSmallSequents) {
  CorpusParams params;
  params.relations = {{"S", 1}};
  params.constants = {"c"};
  params.max_size = 6;
  params.max_udepth = 1;
  params.max_mdepth = 2;
  FormulaGenerator gen(params, 41);
  DecideOptions enumeration;
  enumeration.strategy = Strategy::Enumeration;
  enumeration.attach_certificate = false;
  enumeration.model_cap = 2'000'000;
  int compared = 0;
  for (int k = 0; k < 60; ++k) {
    Sequent s = gen.sequent();
    ClosedSequent cs = close_sequent(s);
    if (cs.domain.size() > 3) continue;
    Verdict a = decide(s);
    Verdict b = decide(s, enumeration);
    if (is_inconclusive(b)) continue;
    ++compared;
    EXPECT_EQ(is_derivable(a), is_derivable(b)) << s.to_string();
  }
  EXPECT_GE(compared, 20);
}

TEST(Decide, DerivableVerdictsSurviveBruteForceSearch) {
  CorpusParams params;
  params.relations = {{"S", 1}};
  params.constants = {"c"};
  params.max_size = 7;
  FormulaGenerator gen(params, 42);
  int derivable = 0;
  int refuted = 0;
  for (int k = 0; k < 80; ++k) {
    Sequent s = gen.sequent();
    Verdict v = decide(s);
    bool found = oracle::brute_force_refutes(s.lhs, s.rhs, {"c", "e1", "e2"}, {{"S", 1}}, 2);
    if (is_derivable(v)) {
      ++derivable;
      EXPECT_FALSE(found) << s.to_string();
    } else {
      ++refuted;
    }
  }
  EXPECT_GT(derivable, 10);
  EXPECT_GT(refuted, 10);
}

TEST(Decide, RefutedPayloadsSatisfyOracle) {
  FormulaGenerator gen(CorpusParams{}, 43);
  for (int k = 0; k < 200; ++k) {
    Sequent s = gen.sequent();
    Verdict v = decide(s);
    if (!is_refuted(v)) continue;
    const Refuted& r = std::get<Refuted>(v);
    ASSERT_TRUE(check_adequate(r.model).ok());
    ASSERT_TRUE(oracle::holds(r.model, r.world, r.assignment.values, s.lhs)) << s.to_string();
    ASSERT_FALSE(oracle::holds(r.model, r.world, r.assignment.values, s.rhs)) << s.to_string();
  }
}

TEST(Decide, SoundnessFuzzOnRandomAdequateModels) {
  FormulaGenerator gen(CorpusParams{}, 44);
  std::mt19937_64 rng(45);
  const Signature sig = CorpusParams{}.signature();
  for (int k = 0; k < 100; ++k) {
    Sequent s = gen.sequent();
    if (!is_derivable(decide(s, {Strategy::Canonical, 10'000'000, 200'000, false}))) continue;
    for (int j = 0; j < 30; ++j) {
      KripkeModel m = random_adequate_model(rng, sig, {});
      for (std::size_t w = 0; w < m.size(); ++w)
        if (oracle::holds(m, w, {}, s.lhs)) ASSERT_TRUE(oracle::holds(m, w, {}, s.rhs)) << s.to_string();
    }
  }
}

TEST(Serialization, ModelJsonRoundTrip) {
  std::mt19937_64 rng(46);
  const Signature sig = CorpusParams{}.signature();
  for (int k = 0; k < 50; ++k) {
    RandomModelParams p;
    p.identity_eta = k % 2 == 0;
    KripkeModel m = random_adequate_model(rng, sig, p);
    Json j = model_to_json(m);
    KripkeModel back = model_from_json(j);
    EXPECT_EQ(model_to_json(back), j);
    EXPECT_EQ(back.succ, m.succ);
    EXPECT_EQ(back.J, m.J);
    EXPECT_EQ(back.I, m.I);
  }
  EXPECT_THROW(model_from_json(Json::parse(R"({"worlds":["a"],"R":[["a","b"]],"domain":["e"]})")), FormatError);
}

TEST(Serialization, DotOutputListsWorldsAndCoverEdges) {
  Verdict v = decide(P("A x . <>S(x)"), P("<>A x . S(x)"), sig_cd());
  ASSERT_TRUE(is_refuted(v));
  const KripkeModel& m = std::get<Refuted>(v).model;
  std::string dot = model_to_dot(m);
  EXPECT_EQ(dot.rfind("digraph model {", 0), 0u);
  for (const auto& w : m.worlds) EXPECT_NE(dot.find("\"" + w + "\""), std::string::npos);
}
