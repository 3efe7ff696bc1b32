#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qrc1/corpus.hpp"
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

/// One world, domain {a, b}, S = {a}, c = b, d = a.
KripkeModel single_world() {
  KripkeModel m;
  m.add_world("w", {"a", "b"});
  m.set_constant(0, "c", 1);
  m.set_constant(0, "d", 0);
  m.add_tuple(0, "S", {0});
  return m;
}

/// Random constant-domain model in which every relation has a tuple at some
/// world, so no atom translates to an empty disjunction everywhere.
KripkeModel dense_model(std::mt19937_64& rng) {
  RandomModelParams p;
  p.identity_eta = true;
  p.constant_domain = true;
  KripkeModel m = random_adequate_model(rng, sig_cd(), p);
  m.add_tuple(0, "S", {0});
  m.add_tuple(0, "R", {0, 0});
  return m;
}

std::set<std::string> y_variables(const ArithFormula& f) {
  std::set<std::string> out;
  for (const auto& v : free_variables(f))
    if (!v.empty() && v[0] == 'y') out.insert(v);
  return out;
}

std::set<std::string> expected_y(const Formula& f) {
  std::set<std::string> out;
  for (const auto& x : free_variables(f)) out.insert(arith_variable(x));
  return out;
}

CorpusParams open_params() {
  CorpusParams p;
  p.allow_free = true;
  return p;
}

}  // namespace

TEST(Variables, Correspondence) {
  EXPECT_EQ(arith_variable("x"), "y");
  EXPECT_EQ(arith_variable("x12"), "y12");
  EXPECT_THROW(arith_variable("c"), ArithError);
  EXPECT_EQ(arith_constant_variable("c"), "z");
  EXPECT_EQ(arith_constant_variable("c3"), "z3");
  EXPECT_EQ(arith_constant_variable("c#0"), "z#0");
  EXPECT_EQ(arith_constant_variable("d"), "z[d]");
}

TEST(Builders, BigConnectivesCollapse) {
  using namespace arith;
  EXPECT_EQ(big_and({}), truth());
  EXPECT_EQ(big_or({}), falsity());
  EXPECT_EQ(big_or({lambda(2)}), lambda(2));
  EXPECT_EQ(to_string(big_and({lambda(0), lambda(1), truth()})), "(Lam(0) & Lam(1) & true)");
}

TEST(Star, Examples) {
  EXPECT_EQ(to_string(star_realization(P("T"))), "TauISigma1(u)");
  EXPECT_EQ(to_string(star_realization(P("(S(x) & T)"))), "((sigma_S(u, y) | TauISigma1(u)) | TauISigma1(u))");
  EXPECT_EQ(to_string(star_realization(P("A x . S(x)"))), "exists y . (sigma_S(u, y) | TauISigma1(u))");
  EXPECT_EQ(to_string(star_realization(P("<>T"))), "(TauISigma1(u) | u = godel<Dia[TauISigma1(u)] true>)");
  EXPECT_EQ(to_string(star_realization(P("R(c, x1)"))), "(sigma_R(u, z, y1) | TauISigma1(u))");
}

TEST(Star, FreeVariablesTrackModalVariables) {
  EXPECT_EQ(free_variables(star_realization(P("<>S(x)"))), (std::set<std::string>{"u", "y"}));
  EXPECT_EQ(free_variables(star_realization(P("A x . <>S(x)"))), (std::set<std::string>{"u"}));
  EXPECT_EQ(free_variables(star_realization(P("T"))), (std::set<std::string>{"u"}));
  FormulaGenerator gen(open_params(), 61);
  for (int k = 0; k < 500; ++k) {
    Formula f = gen.formula();
    ASSERT_EQ(y_variables(star_realization(f)), expected_y(f)) << f.to_string();
  }
}

TEST(TStatement, Examples) {
  EXPECT_EQ(to_string(qrc1_T_statement(P("T"), P("T"))),
            "forall theta . (Box[TauISigma1(u)] theta -> Box[TauISigma1(u)] theta)");
  std::string open = to_string(qrc1_T_statement(P("<>S(x)"), P("S(x)")));
  EXPECT_EQ(open.rfind("forall theta . forall y . (", 0), 0u) << open;
  std::string closed = to_string(qrc1_T_statement(P("S(c)"), P("T")));
  EXPECT_EQ(closed.rfind("forall theta . forall z . (", 0), 0u) << closed;
  std::string both = to_string(qrc1_T_statement(P("R(c, x)"), P("S(d)")));
  EXPECT_EQ(both.rfind("forall theta . forall y . forall z . forall z[d] . (", 0), 0u) << both;
}

TEST(Shadow, StructureAddsRootCopy) {
  ShadowStructure s = make_shadow(single_world());
  EXPECT_EQ(s.model.size(), 2u);
  EXPECT_EQ(s.m, 2u);
  EXPECT_EQ(s.top_world(), 1u);
  EXPECT_TRUE(s.model.related(0, 1));
  EXPECT_EQ(s.model.J[0], s.model.J[1]);
  EXPECT_EQ(s.model.I[0], s.model.I[1]);
  EXPECT_TRUE(check_adequate(s.model).ok());
}

TEST(Shadow, RejectsBadInput) {
  KripkeModel empty;
  EXPECT_THROW(make_shadow(empty), ArithError);
  std::mt19937_64 rng(62);
  RandomModelParams varying;
  varying.max_worlds = 4;
  for (int k = 0; k < 50; ++k) {
    KripkeModel m = random_adequate_model(rng, sig_cd(), varying);
    if (!has_constant_domain(m)) {
      EXPECT_THROW(make_shadow(m), ArithError);
      break;
    }
  }
  EXPECT_THROW(make_shadow(single_world(), std::vector<std::size_t>{0, 0}), ArithError);
  EXPECT_THROW(make_shadow(single_world(), std::vector<std::size_t>{0}), ArithError);
}

TEST(Solovay, Examples) {
  ShadowStructure s = make_shadow(single_world());
  EXPECT_EQ(to_string(solovay_star(P("T"), s)), "true");
  EXPECT_EQ(to_string(solovay_star(P("<>T"), s)), "Dia[tau] true");
  EXPECT_EQ(to_string(solovay_star(P("S(x)"), s)),
            "((Lam(0) & godel<0> = (y mod 2)) | (Lam(1) & godel<0> = (y mod 2)))");
  EXPECT_EQ(to_string(solovay_star(P("S(c)"), s)), "((Lam(0) & godel<0> = godel<1>) | (Lam(1) & godel<0> = godel<1>))");
  EXPECT_EQ(to_string(solovay_star(P("R(x, x)"), s)), "((Lam(0) & false) | (Lam(1) & false))");
  EXPECT_EQ(to_string(solovay_star(P("A x . <>S(x)"), s)), "forall y . Dia[tau] " + to_string(solovay_star(P("S(x)"), s)));
}

TEST(Solovay, CodingIsUsed) {
  ShadowStructure s = make_shadow(single_world(), std::vector<std::size_t>{1, 0});
  EXPECT_EQ(to_string(phi_family(P("S(x)"), s, 1)), "godel<1> = (y mod 2)");
  EXPECT_EQ(to_string(phi_family(P("S(d)"), s, 1)), "godel<1> = godel<1>");
  EXPECT_TRUE(shadow_truth_audit(s, closure(std::vector<Formula>{P("A x . S(x)"), P("(S(c) & S(d))")}, {"c", "d"})).ok);
}

TEST(Families, PsiExamplesAndIdentity) {
  ShadowStructure s = make_shadow(single_world());
  EXPECT_EQ(to_string(psi_family(P("S(c)"), s, 1)), "godel<0> = (z mod 2)");
  EXPECT_EQ(psi_family(P("S(x)"), s, 1), phi_family(P("S(x)"), s, 1));
  EXPECT_EQ(psi_instantiated(P("S(c)"), s, 1), phi_family(P("S(c)"), s, 1));
  EXPECT_THROW(psi_family(P("T"), s, 1), ArithError);
}

TEST(Families, IdentityForEveryAtomAndWorld) {
  std::mt19937_64 rng(63);
  std::vector<Formula> atoms;
  for (const char* a : {"S(c)", "S(d)", "S(x)", "R(c, d)", "R(x, c)", "R(d, x1)", "R(x, x)", "R(c, c)"})
    atoms.push_back(P(a));
  for (int k = 0; k < 60; ++k) {
    ShadowStructure s = make_shadow(dense_model(rng));
    for (const auto& a : atoms)
      for (std::size_t i = 0; i < s.model.size(); ++i)
        ASSERT_EQ(psi_instantiated(a, s, i), phi_family(a, s, i)) << a.to_string() << " @" << i;
  }
}

TEST(ShadowEval, Examples) {
  using namespace arith;
  ShadowStructure s = make_shadow(single_world());
  EXPECT_TRUE(shadow_eval(s, 1, {}, lambda(1)));
  EXPECT_FALSE(shadow_eval(s, 1, {}, lambda(0)));
  EXPECT_FALSE(shadow_eval(s, 1, {}, diamond(truth())));
  EXPECT_TRUE(shadow_eval(s, 0, {}, diamond(truth())));
  EXPECT_TRUE(shadow_eval(s, 1, {}, box(falsity())));
  EXPECT_FALSE(shadow_eval(s, 0, {}, box(falsity())));
  EXPECT_TRUE(shadow_eval(s, 1, {{"y", 4}}, eq(ArithTerm::coded(0), ArithTerm::mod(ArithTerm::var("y"), 2))));
  EXPECT_TRUE(shadow_eval(s, 1, {}, exists("y", eq(ArithTerm::var("y"), ArithTerm::numeral(1)))));
  EXPECT_FALSE(shadow_eval(s, 1, {}, forall("y", eq(ArithTerm::var("y"), ArithTerm::numeral(1)))));
  EXPECT_TRUE(shadow_eval(s, 1, {}, implies(falsity(), falsity())));
  EXPECT_TRUE(shadow_eval(s, 1, {}, negate(falsity())));
}

TEST(ShadowEval, RejectsFormulasOutsideTheFragment) {
  using namespace arith;
  ShadowStructure s = make_shadow(single_world());
  EXPECT_THROW(shadow_eval(s, 1, {}, tau_axiom(TauTag::Tau)), ArithError);
  EXPECT_THROW(shadow_eval(s, 1, {}, star_realization(P("T"))), ArithError);
  EXPECT_THROW(shadow_eval(s, 1, {}, box(truth(), star_realization(P("T")))), ArithError);
  EXPECT_THROW(shadow_eval(s, 1, {}, schematic()), ArithError);
  EXPECT_THROW(shadow_eval(s, 1, {}, eq(ArithTerm::var("y"), ArithTerm::numeral(0))), ArithError);
}

TEST(ShadowEval, ModInvariance) {
  FormulaGenerator gen(open_params(), 64);
  std::mt19937_64 rng(65);
  for (int k = 0; k < 500; ++k) {
    ShadowStructure s = make_shadow(dense_model(rng));
    Formula f = gen.formula();
    ArithFormula star = solovay_star(f, s);
    ArithEnv small;
    ArithEnv big;
    for (const char* y : {"y", "y1"}) {
      std::size_t v = rng() % (5 * s.m);
      big[y] = v;
      small[y] = v % s.m;
    }
    for (std::size_t i = 0; i < s.model.size(); ++i)
      ASSERT_EQ(shadow_eval(s, i, big, star), shadow_eval(s, i, small, star)) << f.to_string();
  }
}

TEST(ShadowEval, FreeVariableCorrespondence) {
  FormulaGenerator gen(open_params(), 66);
  std::mt19937_64 rng(67);
  for (int k = 0; k < 500; ++k) {
    ShadowStructure s = make_shadow(dense_model(rng));
    Formula f = gen.formula();
    ASSERT_EQ(y_variables(solovay_star(f, s)), expected_y(f)) << f.to_string();
  }
}

TEST(ShadowEval, EmptyRelationDropsItsVariables) {
  // With S empty at every world, S(x) translates to a disjunction of falsities.
  KripkeModel m;
  m.add_world("w", {"a"});
  m.set_constant(0, "c", 0);
  m.set_constant(0, "d", 0);
  ShadowStructure s = make_shadow(m);
  EXPECT_TRUE(free_variables(solovay_star(P("S(x)"), s)).empty());
  EXPECT_FALSE(shadow_eval(s, 1, {}, solovay_star(P("S(x)"), s)));
}

TEST(ShadowEval, TruthLemmaOnRandomModels) {
  FormulaGenerator gen(open_params(), 68);
  std::mt19937_64 rng(69);
  for (int k = 0; k < 200; ++k) {
    KripkeModel base = dense_model(rng);
    std::vector<std::size_t> coding(base.domains[0].size());
    for (std::size_t j = 0; j < coding.size(); ++j) coding[j] = j;
    std::shuffle(coding.begin(), coding.end(), rng);
    ShadowStructure s = make_shadow(base, coding);
    FormulaSet fs;
    for (int j = 0; j < 5; ++j) fs.insert(gen.formula());
    ShadowAuditReport r = shadow_truth_audit(s, fs);
    ASSERT_TRUE(r.ok) << r.failures.front();
    // Independent comparison through the oracle evaluator.
    for (const auto& f : fs) {
      ArithFormula star = solovay_star(f, s);
      for (std::size_t i = 1; i < s.model.size(); ++i)
        for_each_assignment(s.model, i, {"x", "x1"}, [&](const Assignment& g) {
          ASSERT_EQ(oracle::holds(s.model, i, g.values, f),
                    shadow_eval(s, i, shadow_env(s, g, {"x", "x1"}), star))
              << f.to_string();
        });
    }
  }
}

TEST(ShadowEval, BarcanCountermodelAuditAndEmbedding) {
  Signature sig;
  sig.add_constant("c");
  sig.add_constant("d");
  sig.add_relation("S", 1);
  Sequent seq{parse_formula("A x . <>S(x)", sig), parse_formula("<>A x . S(x)", sig), sig};
  auto tm = countermodel(seq);
  ASSERT_TRUE(tm.has_value());
  ShadowStructure s = make_shadow(tm->model);
  ShadowAuditReport r = shadow_truth_audit(s, tm->closure_set);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.checked, tm->model.size() * tm->closure_set.size());
  EXPECT_TRUE(shadow_embedding_holds(s, seq.lhs, seq.rhs, {}));
  EXPECT_FALSE(shadow_embedding_holds(s, seq.rhs, seq.lhs, {}));
}
