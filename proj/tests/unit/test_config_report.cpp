#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <string>

#include "finv/config.hpp"
#include "finv/entropy.hpp"
#include "finv/error.hpp"
#include "finv/report.hpp"
#include "finv/transforms.hpp"
#include "finv/verify.hpp"
#include "support.hpp"

using namespace finv;
using finv::testing::h2;
using finv::testing::kind_of;
using finv::testing::symmetric_chain;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(FINV_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string sample(const char* name) { return std::string(FINV_EXAMPLES_DIR) + "/" + name; }

ErrorKind config_error_of(const char* text) {
  return kind_of([&] { parse_config(text); });
}

}  // namespace

TEST(ConfigGrammar, ValuesAndComments) {
  const auto blocks = parse_config_blocks(
      "# leading comment\n"
      "options {\n"
      "  tol = 1e-8,  # trailing\n"
      "  log2 = true\n"
      "  name = \"x y\"\n"
      "  m = [[1/4, 3/4], [0.5, -2e-1],]\n"
      "  P.a = 3\n"
      "}\n"
      "empty { }\n");
  ASSERT_EQ(blocks.size(), 2u);
  const ConfigBlock& b = blocks[0];
  EXPECT_EQ(b.name, "options");
  EXPECT_EQ(b.line, 2);
  EXPECT_DOUBLE_EQ(b.find("tol")->as_number("tol"), 1e-8);
  EXPECT_TRUE(b.find("log2")->as_bool("log2"));
  EXPECT_EQ(b.find("name")->as_string("name"), "x y");
  const auto m = b.find("m")->as_matrix("m");
  EXPECT_EQ(m, (std::vector<std::vector<double>>{{0.25, 0.75}, {0.5, -0.2}}));
  EXPECT_EQ(b.find("P.a")->as_integer("P.a"), 3);
  EXPECT_EQ(b.find("P.a")->line, 7);
  EXPECT_EQ(b.find("missing"), nullptr);
  EXPECT_TRUE(blocks[1].entries.empty());
}

TEST(ConfigGrammar, SyntaxErrorsCarryLineNumbers) {
  for (const char* bad : {"options { tol = }", "options { tol = 1 tol = 2 }", "options { tol = 1/0 }", "options { x = [1, 2 }",
                          "options { s = \"open }", "options { v = maybe }", "options tol = 1", "options { tol = 1.5/2 }",
                          "options { tol = 1e }"}) {
    try {
      parse_config_blocks(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ConfigError) << bad;
      EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos) << e.what();
    }
  }
  try {
    parse_config_blocks("options {\n\n  tol = 1\n  tol = 2\n}");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(ConfigBlocks, MeasuresAndCosets) {
  const RunConfig chain = load_config(sample("chain.cfg"));
  ASSERT_TRUE(chain.measure.has_value());
  EXPECT_EQ(chain.measure_block, "markov");
  EXPECT_NEAR(f_markov(std::get<TreeMarkovMeasure>(*chain.measure)), 2 * h2(0.2) - std::log(2.0), 1e-14);

  const RunConfig sub = load_config(sample("subgroup_chain.cfg"));
  ASSERT_TRUE(sub.coset.has_value());
  EXPECT_EQ(sub.coset->index(), 2);
  EXPECT_EQ(sub.options.n_max, 0);

  const RunConfig fin = load_config(sample("finite_rotation.cfg"));
  const auto& fa = std::get<FiniteAction>(*fin.measure);
  EXPECT_EQ(fa.perms()[1], identity_permutation(4));
  EXPECT_EQ(fa.mu(), (std::vector<double>(4, 0.25)));

  const RunConfig kps = load_config(sample("kps_modular.cfg"));
  ASSERT_TRUE(kps.kps.has_value());
  EXPECT_EQ(kps.kps->vertices, (std::vector<long long>{2, 3}));

  const RunConfig ids = load_config(sample("identities.cfg"));
  EXPECT_EQ(ids.identities.rank, 3);
  EXPECT_EQ(ids.options.seed, 7u);
}

TEST(ConfigBlocks, ValidationErrors) {
  EXPECT_EQ(config_error_of("markov { pi = [0.5, 0.5] rank = 2 P = [[0.9, 0.2], [0.1, 0.9]] }"), ErrorKind::BadStochastic);
  EXPECT_EQ(config_error_of("markov { pi = [1, 0] rank = 1 P = [[1, 0], [0, 1]] }"), ErrorKind::ZeroMass);
  EXPECT_EQ(config_error_of("finite { N = 2 rank = 1 perm.a = \"(0 1)\" mu = [0.7, 0.3] }"), ErrorKind::NotInvariant);
  EXPECT_EQ(config_error_of("finite { N = 2 rank = 1 perm.a = [0, 0] }"), ErrorKind::NonBijective);
  EXPECT_EQ(config_error_of("coset { rank = 2 index = 2 }"), ErrorKind::NotTransitive);
  EXPECT_EQ(config_error_of("bernoulli { rank = 2 dist = [1] } coset { rank = 3 index = 1 }"), ErrorKind::RankMismatch);
  EXPECT_EQ(config_error_of("bernoulli { rank = 2 dist = [1] } bernoulli { rank = 2 dist = [1] }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("markov { pi = [1] P.b = [[1]] }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("markov { pi = [1] P = [[1]] P.a = [[1]] rank = 1 }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("bernoulli { rank = 2 dist = [1] colour = 3 }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("surprise { }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("options { n_max = 65 }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("options { tol = 1 }"), ErrorKind::ConfigError);
  EXPECT_EQ(config_error_of("options { n_max = 1.5 }"), ErrorKind::ConfigError);
  EXPECT_EQ(kind_of([] { load_config("/nonexistent/finv.cfg"); }), ErrorKind::ConfigError);
}

TEST(ConfigBlocks, HashIsStable) {
  EXPECT_EQ(config_hash(""), "cbf29ce484222325");
  EXPECT_EQ(config_hash("a"), "af63dc4c8601ec8c");
  EXPECT_EQ(parse_config("options { }").hash, config_hash("options { }"));
}

TEST(ConfigBlocks, MarkovBlockRoundTrip) {
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const TreeMarkovMeasure tm = random_markov(rng, 2 + i % 2, 2 + i % 3);
    const RunConfig back = parse_config(format_markov_block(tm));
    const auto& tb = std::get<TreeMarkovMeasure>(*back.measure);
    EXPECT_EQ(tb.pi(), tm.pi());
    for (int s = 1; s <= tm.rank(); ++s) EXPECT_EQ(tb.forward(s), tm.forward(s));
  }
}

TEST(Report, EntropyJsonRoundTrip) {
  const EntropyReport r = f_limit(Measure{symmetric_chain(0.1)}, GenSet::letters(2), 1);
  const Json j = to_json(r);
  EXPECT_EQ(j.at("terms").size(), 2u);
  EXPECT_EQ(entropy_report_from_json(Json::parse(j.dump())), r);
  EXPECT_EQ(kind_of([] { entropy_report_from_json(Json{{"value", 1.0}}); }), ErrorKind::ConfigError);
}

TEST(Report, VerificationJsonRoundTrip) {
  VerificationReport rep = verify_identities(2, 2, 3, 4);
  rep.config_hash = "0123456789abcdef";
  rep.info.emplace_back("note", "x");
  const Json j = to_json(rep);
  EXPECT_EQ(j.at("summary").at("failed"), 0);
  EXPECT_EQ(j.at("exit_status"), 0);
  EXPECT_EQ(verification_report_from_json(Json::parse(j.dump())), rep);
  EXPECT_EQ(kind_of([] { verification_report_from_json(Json::array()); }), ErrorKind::ConfigError);
}

TEST(Report, PatternMeasureJsonHasLegend) {
  const CosetAction act(2, {{1, 0}, {1, 0}});
  const PatternMeasure pm = restrict_markov(symmetric_chain(0.2), act, schreier_transversal(act));
  const Json j = to_json(pm);
  EXPECT_EQ(j.at("m"), 4);
  EXPECT_EQ(j.at("rank"), 3);
  EXPECT_EQ(j.at("coords").size(), 2u);
  EXPECT_EQ(j.at("legend").size(), 4u);
}

TEST(Report, TablesMarkPassAndFail) {
  VerificationReport rep;
  rep.checks.push_back(check_close("x", 1.0, 1.0, 1e-9, 1.0, anchor::kIndexScaling));
  rep.checks.push_back(check_close("y", 1.0, 2.0, 1e-9, 1.0, anchor::kRankFormula));
  EXPECT_EQ(rep.exit_status(), 1);
  const std::string t = format_table(rep);
  EXPECT_NE(t.find("PASS  x"), std::string::npos);
  EXPECT_NE(t.find("FAIL  y"), std::string::npos);
  EXPECT_NE(t.find("1 passed, 1 failed"), std::string::npos);
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(std::stod(format_real(1.0 / 3)), 1.0 / 3);
}

TEST(Cli, EntropyCommands) {
  const RunResult chain = run_cli("entropy --config " + sample("chain.cfg") + " --json");
  ASSERT_EQ(chain.status, 0) << chain.out;
  const Json j = Json::parse(chain.out);
  EXPECT_NEAR(j.at("value").get<double>(), 2 * h2(0.2) - std::log(2.0), 1e-12);

  const RunResult swap = run_cli("entropy --config " + sample("finite_swap.cfg") + " --json");
  ASSERT_EQ(swap.status, 0);
  EXPECT_TRUE(Json::parse(swap.out).at("stabilized").get<bool>());
  EXPECT_NEAR(Json::parse(swap.out).at("value").get<double>(), -std::log(2.0), 1e-12);

  EXPECT_EQ(run_cli("entropy --config " + sample("finite_rotation.cfg") + " --n-max 0").status, 1);
  const RunResult bits = run_cli("entropy --config " + sample("bernoulli.cfg"));
  EXPECT_EQ(bits.status, 0);
  EXPECT_NE(bits.out.find("bits"), std::string::npos);
}

TEST(Cli, VerificationCommands) {
  EXPECT_EQ(run_cli("verify-subgroup --config " + sample("subgroup_chain.cfg")).status, 0);
  EXPECT_EQ(run_cli("verify-subgroup --config " + sample("subgroup_finite.cfg")).status, 0);
  const RunResult ids = run_cli("verify-identities --config " + sample("identities.cfg") + " --json");
  ASSERT_EQ(ids.status, 0);
  EXPECT_EQ(Json::parse(ids.out).at("summary").at("failed"), 0);
  EXPECT_EQ(run_cli("verify-identities --rank 2 --radius 2 --count 5").status, 0);
  EXPECT_EQ(run_cli("approx --config " + sample("asymmetric.cfg")).status, 0);
}

TEST(Cli, VirtualEntropy) {
  const RunResult vf = run_cli("vf --config " + sample("kps_modular.cfg") + " --json");
  ASSERT_EQ(vf.status, 0) << vf.out;
  const Json j = Json::parse(vf.out);
  EXPECT_EQ(j.at("info").at("index"), "6");
  EXPECT_EQ(j.at("info").at("scaling"), "6");
  EXPECT_NEAR(std::stod(j.at("info").at("vf").get<std::string>()), 2 * h2(0.2) - std::log(2.0), 1e-12);
  const RunResult plain = run_cli("vf --config " + sample("chain.cfg") + " --json");
  ASSERT_EQ(plain.status, 0);
  EXPECT_EQ(Json::parse(plain.out).at("info").at("scaling"), "1/1");
}

TEST(Cli, InputErrorsExitTwo) {
  EXPECT_EQ(run_cli("entropy --config " + sample("bad_stochastic.cfg")).status, 2);
  EXPECT_EQ(run_cli("entropy --config /nonexistent.cfg").status, 2);
  EXPECT_EQ(run_cli("entropy").status, 2);
  EXPECT_EQ(run_cli("verify-subgroup --config " + sample("chain.cfg")).status, 2);
  EXPECT_EQ(run_cli("no-such-command").status, 2);
  EXPECT_EQ(run_cli("verify-identities --rank 5").status, 2);
  EXPECT_EQ(run_cli("entropy --config " + sample("chain.cfg") + " --tol -1").status, 2);
}
