#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "qrc1/cli.hpp"

using namespace qrc1;
using namespace qrc1::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out;
  std::ostringstream err;
  EnvLookup lookup = [env](const std::string& k) -> std::optional<std::string> {
    auto it = env.find(k);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  int code = run_cli(args, out, err, lookup);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("qrc1_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name, const std::string& content) const {
    std::string p = (path_ / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

const char* kSignature = R"({"constants": ["c", "d"], "relations": {"S": 1}})";

}  // namespace

TEST(Decide, DerivableExitsZero) {
  CliRun r = run({"decide", "<><>T", "<>T"});
  EXPECT_EQ(r.code, kOk);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "derivable");
  EXPECT_TRUE(j.contains("certificate"));
}

TEST(Decide, RefutedExitsOneWithOneWorldModel) {
  CliRun r = run({"decide", "T", "<>T"});
  EXPECT_EQ(r.code, kNegative);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["verdict"], "refuted");
  EXPECT_EQ(j["model"]["worlds"].size(), 1u);
}

TEST(Decide, UnknownRelationUnderSignatureIsUsageError) {
  TempDir dir;
  std::string sig = dir.file("sig.json", kSignature);
  CliRun r = run({"decide", "Q(c)", "T", "--sig", sig});
  EXPECT_EQ(r.code, kUsage);
  EXPECT_NE(r.err.find("unknown relation symbol 'Q'"), std::string::npos) << r.err;
  EXPECT_EQ(run({"decide", "S(c)", "T", "--sig", sig}).code, kOk);
}

TEST(Decide, MalformedInputIsUsageError) {
  EXPECT_EQ(run({"decide", "(S(c) &", "T"}).code, kUsage);
  EXPECT_EQ(run({"decide", "T"}).code, kUsage);
  EXPECT_EQ(run({"bogus"}).code, kUsage);
  EXPECT_EQ(run({"decide", "T", "T", "--strategy", "magic"}).code, kUsage);
  EXPECT_EQ(run({"decide", "T", "T", "--format", "yaml"}).code, kUsage);
  EXPECT_EQ(run({"decide", "T", "T", "--workers", "0"}).code, kUsage);
}

TEST(Decide, ModelCapGivesInconclusive) {
  CliRun r = run({"decide", "A x . <>S(x)", "<>A x . S(x)", "--strategy", "enumeration", "--model-cap", "3"});
  EXPECT_EQ(r.code, kInconclusive);
  EXPECT_EQ(Json::parse(r.out)["verdict"], "inconclusive");
}

TEST(Decide, DotAndTextFormats) {
  CliRun dot = run({"decide", "A x . <>S(x)", "<>A x . S(x)", "--format", "dot"});
  EXPECT_EQ(dot.code, kNegative);
  EXPECT_EQ(dot.out.rfind("digraph model {", 0), 0u);
  CliRun text = run({"decide", "<><>T", "<>T", "--format", "text"});
  EXPECT_EQ(text.code, kOk);
  EXPECT_EQ(text.out.rfind("derivable\n", 0), 0u);
}

TEST(Prove, PrintsCertificateTree) {
  CliRun r = run({"prove", "<> A x . S(x)", "A x . <> S(x)"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("<>A x . S(x) |- A x . <>S(x)   [vii x]\n", 0), 0u) << r.out;
  CliRun missing = run({"prove", "T", "<>T"});
  EXPECT_EQ(missing.code, kInconclusive);
  EXPECT_NE(missing.err.find("not a non-derivability claim"), std::string::npos);
}

TEST(Prove, JsonCertificateIsAuditable) {
  TempDir dir;
  std::string cert = dir.path("cert.json");
  CliRun r = run({"prove", "A x . <>S(x)", "<>S(c)", "--format", "json", "--out", cert});
  EXPECT_EQ(r.code, kOk);
  EXPECT_TRUE(r.out.empty());
  CliRun audit = run({"audit", "--certificate", cert});
  EXPECT_EQ(audit.code, kOk) << audit.out;
  EXPECT_EQ(Json::parse(audit.out)["result"], "PASS");

  // A tampered certificate fails the audit.
  Json j = Json::parse(cli::read_file(cert));
  j["certificate"]["rhs"] = "<>S(c1)";
  std::string bad = dir.file("bad.json", j.dump());
  EXPECT_EQ(run({"audit", "--certificate", bad}).code, kNegative);
}

TEST(Countermodel, BarcanExampleWithAuditPass) {
  TempDir dir;
  std::string dot = dir.path("m.dot");
  CliRun r = run({"countermodel", "A x . <> S(x)", "<> A x . S(x)", "--dot", dot});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.err.find("truth-lemma audit: PASS"), std::string::npos);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["audit"]["truth_lemma"], "PASS");
  EXPECT_EQ(j["audit"]["shape"], "PASS");
  EXPECT_EQ(j["model"]["worlds"].size(), 4u);
  EXPECT_EQ(j["pairs"].size(), 4u);
  EXPECT_EQ(cli::read_file(dot).rfind("digraph model {", 0), 0u);

  // The emitted model audits clean and refutes the sequent.
  std::string model = dir.file("model.json", r.out);
  CliRun audit = run({"audit", "--model", model, "--lhs", "A x . <> S(x)", "--rhs", "<> A x . S(x)"});
  EXPECT_EQ(audit.code, kOk) << audit.out;
  Json a = Json::parse(audit.out);
  EXPECT_EQ(a["refutes"], true);
  EXPECT_EQ(a["constant_domain"], true);
}

TEST(Countermodel, DerivableSequentExitsOne) {
  CliRun r = run({"countermodel", "<><>S(c)", "<>S(c)"});
  EXPECT_EQ(r.code, kNegative);
  EXPECT_NE(r.err.find("derivable"), std::string::npos);
}

TEST(Realize, Examples) {
  CliRun t = run({"realize", "--style", "solovay", "T"});
  EXPECT_EQ(t.code, kOk);
  EXPECT_EQ(t.out, "true\n");
  CliRun star = run({"realize", "--style", "star", "<>T"});
  EXPECT_EQ(star.out, "(TauISigma1(u) | u = godel<Dia[TauISigma1(u)] true>)\n");
  EXPECT_EQ(run({"realize", "--style", "star", "--shadow-audit", "T"}).code, kUsage);
}

TEST(Realize, ShadowAuditAgainstCountermodel) {
  TempDir dir;
  CliRun cm = run({"countermodel", "A x . <> S(x)", "<> A x . S(x)"});
  ASSERT_EQ(cm.code, kOk);
  std::string model = dir.file("model.json", cm.out);
  CliRun r = run({"realize", "--style", "solovay", "--model", model, "--shadow-audit", "A x . <> S(x)"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.err.find("shadow truth-lemma audit: PASS"), std::string::npos) << r.err;
}

TEST(Audit, ReportsNonAdequateModel) {
  TempDir dir;
  std::string model = dir.file("m.json", R"({"worlds":["a","b","c"],"R":[["a","b"],["b","c"]],"domain":["e"]})");
  CliRun r = run({"audit", "--model", model});
  EXPECT_EQ(r.code, kNegative);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["adequacy"]["transitive"], false);
  EXPECT_EQ(j["adequacy"]["witnesses"][0], "(a,b,c)");
  EXPECT_EQ(run({"audit"}).code, kUsage);
}

TEST(Io, MissingFilesExit74) {
  EXPECT_EQ(run({"audit", "--model", "/nonexistent/model.json"}).code, kIo);
  EXPECT_EQ(run({"decide", "T", "T", "--sig", "/nonexistent/sig.json"}).code, kIo);
  EXPECT_EQ(run({"decide", "T", "T", "--config", "/nonexistent/qrc1.conf"}).code, kIo);
  EXPECT_EQ(run({"decide", "T", "T", "--out", "/nonexistent/dir/out.json"}).code, kIo);
}

TEST(Config, PrecedenceFlagsOverEnvOverFileOverDefaults) {
  TempDir dir;
  std::string conf = dir.file("qrc1.conf", "# settings\nformat = text\ndepth_budget = 1\n");
  // File alone: text format, budget 1 (too small for any non-axiom).
  CliRun file_only = run({"prove", "<>A x . S(x)", "A x . <>S(x)", "--config", conf, "--format", "text"});
  EXPECT_EQ(file_only.code, kInconclusive);
  CliRun from_file = run({"decide", "<><>T", "<>T", "--config", conf});
  EXPECT_EQ(from_file.out.rfind("derivable\n", 0), 0u);
  // Env beats file.
  CliRun env_wins = run({"decide", "<><>T", "<>T", "--config", conf}, {{"QRC1_FORMAT", "json"}});
  EXPECT_EQ(Json::parse(env_wins.out)["verdict"], "derivable");
  CliRun env_budget = run({"prove", "<>A x . S(x)", "A x . <>S(x)", "--config", conf}, {{"QRC1_DEPTH_BUDGET", "12"}});
  EXPECT_EQ(env_budget.code, kOk);
  // Flag beats env.
  CliRun flag_wins =
      run({"prove", "<>A x . S(x)", "A x . <>S(x)", "--depth-budget", "1"}, {{"QRC1_DEPTH_BUDGET", "12"}});
  EXPECT_EQ(flag_wins.code, kInconclusive);
  // QRC1_CONFIG names the file when --config is absent.
  CliRun via_env = run({"decide", "<><>T", "<>T"}, {{"QRC1_CONFIG", conf}});
  EXPECT_EQ(via_env.out.rfind("derivable\n", 0), 0u);
}

TEST(Config, FileErrors) {
  RunConfig cfg;
  EXPECT_THROW(apply_config_file(cfg, "depth_budget 3\n"), UsageError);
  EXPECT_THROW(apply_config_file(cfg, "colour = red\n"), UsageError);
  EXPECT_THROW(apply_config_file(cfg, "model_cap = lots\n"), UsageError);
  apply_config_file(cfg, "model_cap = 5  # small\nformat = \"dot\"\n");
  EXPECT_EQ(cfg.model_cap, 5u);
  EXPECT_EQ(cfg.format, "dot");
}

TEST(Corpus, DeterministicForSeed) {
  CliRun a = run({"corpus", "--count", "15", "--seed", "7"});
  CliRun b = run({"corpus", "--count", "15", "--seed", "7"});
  CliRun c = run({"corpus", "--count", "15", "--seed", "8"});
  EXPECT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  std::size_t lines = std::count(a.out.begin(), a.out.end(), '\n');
  EXPECT_EQ(lines, 15u);
}

TEST(Corpus, CheckModeFindsNoDisagreement) {
  CliRun one = run({"corpus", "--count", "12", "--seed", "3", "--check"});
  CliRun many = run({"corpus", "--count", "12", "--seed", "3", "--check", "--workers", "3"});
  EXPECT_EQ(one.code, kOk);
  EXPECT_EQ(one.out, many.out);
  EXPECT_NE(one.out.find("0 disagreements"), std::string::npos);
}

TEST(Determinism, IdenticalInputsGiveIdenticalBytes) {
  for (int k = 0; k < 2; ++k) {
    CliRun a = run({"countermodel", "(A x . <>S(x) & <>S(c))", "<>(S(c) & S(d))"});
    CliRun b = run({"countermodel", "(A x . <>S(x) & <>S(c))", "<>(S(c) & S(d))", "--workers", "2"});
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Binary, ForwardsArgumentsAndExitCode) {
  const std::string cmd = std::string("\"") + QRC1_CLI_PATH + "\" decide T \"<>T\" > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  ASSERT_NE(status, -1);
  EXPECT_EQ(WEXITSTATUS(status), 1);
  const std::string ok = std::string("\"") + QRC1_CLI_PATH + "\" realize --style solovay T > /dev/null 2>&1";
  EXPECT_EQ(WEXITSTATUS(std::system(ok.c_str())), 0);
}
