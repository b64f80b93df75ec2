#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "config.hpp"
#include "experiments.hpp"
#include "runner.hpp"
#include "xlayer/numerics.hpp"

using namespace xlayer;
using namespace xlayer::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "xlayer");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Config, DefaultsResolveToFigureBundle) {
  const auto b = Config().bundle();
  EXPECT_EQ(b.topology.mean_nodes, 32);
  EXPECT_EQ(b.topology.subcarriers, 64);
  EXPECT_DOUBLE_EQ(b.topology.ap_density, ClusterTopology::default_ap_density(100.0));
  EXPECT_NEAR(b.decoding.threshold, db_to_linear(5.0), 1e-15);
  EXPECT_TRUE(validate(b).ok());
}

TEST(Config, ApDensityFollowsClusterRadiusUnlessSet) {
  Config c;
  c.set("topology.d_c", "50");
  EXPECT_DOUBLE_EQ(c.bundle().topology.ap_density, ClusterTopology::default_ap_density(50.0));
  c.set("topology.lambda_h", "1e-5");
  EXPECT_DOUBLE_EQ(c.bundle().topology.ap_density, 1e-5);
}

TEST(Config, RejectsUnknownKeysAndMalformedValues) {
  Config c;
  EXPECT_THROW(c.set("mac.kc", "10"), ConfigError);
  EXPECT_THROW(c.set("mac.k_c", "ten"), ConfigError);
  EXPECT_THROW(c.set("mac.k_c", "10.5"), ConfigError);
  EXPECT_THROW(c.set("power.P_d", "nan"), ConfigError);
  EXPECT_THROW(c.set("power.P_d", "auto"), ConfigError);
  EXPECT_THROW(c.set("sic.ordering", "random"), ConfigError);
  EXPECT_THROW(c.set("sweep.s", "1,x"), ConfigError);
  EXPECT_THROW(c.assign("mac.p"), ConfigError);
  EXPECT_THROW(c.assign("=3"), ConfigError);
}

TEST(Config, AssignmentSplitsAtFirstEquals) {
  Config c;
  c.assign("sweep.k_c=5,15");
  EXPECT_EQ(c.integers("sweep.k_c"), (std::vector<int>{5, 15}));
}

TEST(Config, JsonTreeIsFlattened) {
  Config c;
  c.merge(nlohmann::json::parse(R"({"mac": {"k_c": 30, "p": 0.1}, "sweep": {"s": [2, 4]}, "sic.ordering": "distance"})"));
  EXPECT_EQ(c.integer("mac.k_c"), 30);
  EXPECT_DOUBLE_EQ(c.real("mac.p"), 0.1);
  EXPECT_EQ(c.integers("sweep.s"), (std::vector<int>{2, 4}));
  EXPECT_EQ(c.text("sic.ordering"), "distance");
  EXPECT_THROW(c.merge(nlohmann::json::parse(R"({"mac": {"kc": 30}})")), ConfigError);
  EXPECT_THROW(c.merge(nlohmann::json::parse(R"({"mac": {"k_c": null}})")), ConfigError);
  EXPECT_THROW(c.merge(nlohmann::json::parse("[1, 2]")), ConfigError);
}

TEST(Config, ResolvedListsEveryKeyOnce) {
  const auto r = Config().resolved();
  EXPECT_EQ(r.size(), registered_keys().size());
  EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
}

TEST(Sweep, LinearAndLogGrids) {
  Config c;
  c.set("sweep.lo", "1");
  c.set("sweep.hi", "100");
  c.set("sweep.points", "3");
  EXPECT_EQ(sweep_grid(c), (std::vector<double>{1.0, 50.5, 100.0}));
  c.set("sweep.spacing", "log");
  const auto g = sweep_grid(c);
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  c.set("sweep.lo", "0");
  EXPECT_THROW(sweep_grid(c), ConfigError);
}

TEST(ExitCodes, ClassifiesFailures) {
  auto code = [](auto error) { return exit_code_for(std::make_exception_ptr(error)); };
  EXPECT_EQ(code(numerics::NumericalError("x")), 2);
  EXPECT_EQ(code(ConfigError("x")), 1);
  EXPECT_EQ(code(ValidationError(validate(MacConfig{0.0, 3, 60, 60}))), 1);
  EXPECT_EQ(code(std::runtime_error("x")), 1);
}

TEST(Run, HelpAndKeysSucceed) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  const auto keys = invoke({"--keys"});
  EXPECT_EQ(keys.code, 0);
  EXPECT_NE(keys.out.find("decoding.zeta_db = 5"), std::string::npos);
}

TEST(Run, InputErrorsExitWithOne) {
  EXPECT_EQ(invoke({}).code, 1);
  EXPECT_EQ(invoke({"no-such-experiment"}).code, 1);
  EXPECT_EQ(invoke({"scheme-tradeoff", "--set", "mac.kc=3"}).code, 1);
  EXPECT_EQ(invoke({"scheme-tradeoff", "--set", "mac.p=0"}).code, 1);
  EXPECT_EQ(invoke({"scheme-tradeoff", "--set", "mac.k_c=61"}).code, 1);
  EXPECT_EQ(invoke({"scheme-tradeoff", "--config", "/nonexistent/config.json"}).code, 1);
  EXPECT_EQ(invoke({"scheme-tradeoff", "--seed", "minus-one"}).code, 1);
}

TEST(Run, NonConvergenceExitsWithTwo) {
  const auto r = invoke({"sensing-roc", "--set", "detector.B=1", "--set", "sweep.points=1", "--trials", "10"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("decays too slowly"), std::string::npos);
}

TEST(Run, RocSchemaAndFormat) {
  const auto r = invoke({"sensing-roc", "--trials", "300", "--set", "sweep.points=4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(l[0].rfind("# xlayer ", 0), 0u);
  EXPECT_NE(l[0].find("experiment=sensing-roc seed=1 trials=300"), std::string::npos);
  EXPECT_NE(l[0].find("detector.B=1000"), std::string::npos);
  EXPECT_EQ(l[1], "rho [W],p_fa_analytic [-],p_md_analytic [-],p_fa_mc [-],p_md_mc [-]");
  for (std::size_t i = 2; i < l.size(); ++i) EXPECT_EQ(fields(l[i]).size(), 5u);
}

TEST(Run, SameSeedIsByteIdenticalAcrossThreadCounts) {
  const std::vector<std::string> base = {"efficiency-vs-threshold", "--trials", "60", "--set", "sweep.points=3",
                                         "--seed", "12"};
  auto one = base, three = base;
  one.insert(one.end(), {"--threads", "1"});
  three.insert(three.end(), {"--threads", "3"});
  const auto a = invoke(one), b = invoke(base), c = invoke(three);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  auto other = base;
  other[6] = "13";
  EXPECT_NE(invoke(other).out, a.out);
}

TEST(Run, ConfigFileIsOverriddenByCommandLine) {
  const auto path = temp_file("xlayer_cli_test.json", R"({"sweep": {"points": 2, "lo": 0.01, "hi": 0.1}})");
  const auto from_file = invoke({"scheme-tradeoff", "--config", path.string()});
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_EQ(lines(from_file.out).size(), 4u);
  const auto overridden = invoke({"scheme-tradeoff", "--config", path.string(), "--set", "sweep.points=3"});
  EXPECT_EQ(lines(overridden.out).size(), 5u);
  std::filesystem::remove(path);
}

TEST(Run, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "xlayer_cli_out.csv";
  std::filesystem::remove(path);
  const auto r = invoke({"mac-sensing-energy", "--set", "sweep.points=2", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(lines(text.str()).size(), 4u);
  std::filesystem::remove(path);
}

TEST(Run, ThresholdColumnStaysInDecibels) {
  const auto r = invoke({"sic-decode", "--trials", "200", "--set", "sic.l=2", "--set", "sweep.lo=0", "--set",
                         "sweep.hi=10", "--set", "sweep.points=2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 6u);
  EXPECT_EQ(fields(l[2])[0], 0.0);
  EXPECT_EQ(fields(l[5])[0], 10.0);
  EXPECT_EQ(fields(l[5])[1], 2.0);
}

TEST(Run, DecodingPowerTradeoffOrdering) {
  const auto r = invoke({"scheme-tradeoff"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l[1], "P_d [W],eta_hybrid [bit/J],eta_centralized [bit/J],eta_distributed [bit/J]");
  ASSERT_EQ(l.size(), 15u);
  for (std::size_t i = 2; i < l.size(); ++i) {
    const auto f = fields(l[i]);
    if (f[0] <= 0.1 + 1e-12) {
      EXPECT_GT(f[1], f[2]) << f[0];
      EXPECT_GT(f[1], f[3]) << f[0];
    }
  }
  const auto last = fields(l.back());
  EXPECT_LT(last[1], std::max(last[2], last[3]));
}

TEST(Run, EveryExperimentProducesRows) {
  for (const auto& e : experiments()) {
    std::vector<std::string> args = {e.name, "--set", "sweep.points=2", "--trials", "50"};
    if (e.name == "mac-energy") args.insert(args.end(), {"--set", "sweep.s=2", "--set", "sweep.k_c=5"});
    const auto r = invoke(args);
    ASSERT_EQ(r.code, 0) << e.name << ": " << r.err;
    const auto l = lines(r.out);
    ASSERT_GE(l.size(), 3u) << e.name;
    const auto header = fields(l[2]).size();
    std::size_t commas = std::count(l[1].begin(), l[1].end(), ',');
    EXPECT_EQ(header, commas + 1) << e.name;
  }
}
