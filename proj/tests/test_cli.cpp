#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "blochvar/commands.hpp"
#include "blochvar/potential_io.hpp"
#include "blochvar/sampling.hpp"

namespace bloch {
namespace {

namespace fs = std::filesystem;
const cplx I{0.0, 1.0};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("blochvar_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const Potential& v) {
    const auto p = dir_ / name;
    write_potential_file(p, v);
    return p.string();
  }
  std::string raw(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  int run(const std::vector<std::string>& args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string out() const { return out_.str(); }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

TEST_F(Cli, FileRoundTripIsBitIdentical) {
  std::mt19937_64 rng(71);
  for (const auto& periods : std::vector<std::vector<int>>{{1}, {3}, {2, 3}, {2, 2, 2}}) {
    const auto v = random_complex_potential(LatticeConfig(periods), rng, 1e3);
    const auto back = read_potential_file(file("rt.json", v));
    EXPECT_EQ(back.config(), v.config());
    for (std::size_t i = 0; i < v.size(); ++i) {
      EXPECT_EQ(back[i].real(), v[i].real());
      EXPECT_EQ(back[i].imag(), v[i].imag());
    }
  }
  const auto tiny = read_potential_file(file("tiny.json", Potential(LatticeConfig({2}), {cplx(0.1, 1e-300), cplx(-0.0, 5e-324)})));
  EXPECT_EQ(tiny[0].imag(), 1e-300);
  EXPECT_EQ(tiny[1].imag(), 5e-324);
}

TEST_F(Cli, BareNumbersAccepted) {
  const auto v = read_potential_file(raw("bare.json", R"({"periods": [2], "values": [1.5, [0, 2]]})"));
  EXPECT_EQ(v[0], cplx(1.5));
  EXPECT_EQ(v[1], cplx(0.0, 2.0));
}

TEST_F(Cli, MalformedFilesExitTwo) {
  for (const std::string& text : {std::string("not json"), std::string(R"({"periods": [2], "values": [1]})"),
                                  std::string(R"({"periods": [0], "values": []})"),
                                  std::string(R"({"values": [1]})"),
                                  std::string(R"({"periods": [1], "values": [[1, 2, 3]]})"),
                                  std::string(R"({"periods": [1], "values": ["x"]})")}) {
    const auto p = raw("bad.json", text);
    EXPECT_EQ(run({"entire-graph", p}), cli::kUsage) << text;
    EXPECT_EQ(run({"bands", p}), cli::kUsage) << text;
  }
  EXPECT_EQ(run({"entire-graph", (dir_ / "missing.json").string()}), cli::kUsage);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}), cli::kUsage);
  EXPECT_EQ(run({"verify", "--suite", "nope"}), cli::kUsage);
  EXPECT_EQ(run({"construct-exotic", "--periods", "2", "--l", "2", "--out", dir_.string()}), cli::kUsage);
  EXPECT_EQ(run({"construct-exotic", "--periods", "2", "2", "--l", "1", "--out", dir_.string()}), cli::kUsage);
  EXPECT_EQ(run({"--tolerance", "-1", "entire-graph", file("z.json", Potential::zero(LatticeConfig({2})))}), cli::kUsage);
}

TEST_F(Cli, BandsFreeCsv) {
  const auto in = file("free.json", Potential::zero(LatticeConfig({2})));
  const auto csv = (dir_ / "bands.csv").string();
  ASSERT_EQ(run({"bands", in, "--resolution", "8", "--out", csv}), cli::kSuccess);
  std::ifstream is(csv);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "k1,lambda1,lambda2");
  int rows = 0;
  while (std::getline(is, line)) {
    double k, a, b;
    char c1, c2;
    std::istringstream ls(line);
    ASSERT_TRUE(ls >> k >> c1 >> a >> c2 >> b);
    const double expected = 2.0 * std::abs(std::cos(0.5 * kTwoPi * k));
    EXPECT_NEAR(a, -expected, 1e-12);
    EXPECT_NEAR(b, expected, 1e-12);
    EXPECT_NEAR(k, rows / 8.0, 1e-15);
    ++rows;
  }
  EXPECT_EQ(rows, 8);
}

TEST_F(Cli, BandsSummaries) {
  ASSERT_EQ(run({"bands", file("one.json", Potential::constant(LatticeConfig({3}), 1.0))}), cli::kSuccess);
  EXPECT_NE(out().find("spectrum: [-1, 3]"), std::string::npos) << out();
  EXPECT_NE(out().find("gaps: none"), std::string::npos);

  ASSERT_EQ(run({"bands", file("gap.json", Potential(LatticeConfig({2}), {1.0, -1.0}))}), cli::kSuccess);
  EXPECT_NE(out().find("gap (-1, 1), width 2.000"), std::string::npos) << out();

  EXPECT_EQ(run({"bands", file("c.json", Potential(LatticeConfig({2}), {I, 0.0}))}), cli::kUsage);
  EXPECT_FALSE(fs::exists(dir_ / "bands.csv"));
}

TEST_F(Cli, EntireGraph) {
  ASSERT_EQ(run({"entire-graph", file("c.json", Potential::constant(LatticeConfig({2, 2}), 3.0))}), cli::kSuccess);
  EXPECT_NE(out().find("holds: true"), std::string::npos);
  EXPECT_NE(out().find("l: (0,0)"), std::string::npos) << out();

  ASSERT_EQ(run({"entire-graph", file("e.json", Potential(LatticeConfig({2}), {2.0 * I, -2.0 * I}))}), cli::kSuccess);
  EXPECT_NE(out().find("l: (1)"), std::string::npos) << out();
  EXPECT_NE(out().find("K: 0 + 0i"), std::string::npos) << out();

  EXPECT_EQ(run({"entire-graph", file("r.json", Potential(LatticeConfig({2}), {1.0, -1.0}))}), cli::kNegative);
  EXPECT_NE(out().find("holds: false"), std::string::npos);
}

TEST_F(Cli, Isospectral) {
  std::mt19937_64 rng(73);
  const auto v = random_complex_potential(LatticeConfig({3, 2}), rng, 1.0);
  EXPECT_EQ(run({"isospectral", file("a.json", v), file("b.json", translate(v, std::vector<long>{2, 1}))}), cli::kSuccess);
  EXPECT_NE(out().find("isospectral: true"), std::string::npos);
  const LatticeConfig c2({2});
  EXPECT_EQ(run({"isospectral", file("p.json", Potential(c2, {2.0 * I, -2.0 * I})), file("m.json", Potential(c2, {-2.0 * I, 2.0 * I}))}),
            cli::kSuccess);
  EXPECT_EQ(run({"isospectral", file("r.json", Potential(c2, {1.0, -1.0})), file("z.json", Potential::zero(c2))}), cli::kNegative);
  EXPECT_NE(out().find("isospectral: false"), std::string::npos);
  EXPECT_EQ(run({"isospectral", file("x.json", Potential::zero(c2)), file("y.json", Potential::zero(LatticeConfig({3})))}), cli::kUsage);
}

TEST_F(Cli, ConstructExotic) {
  const auto out_dir = (dir_ / "ex").string();
  ASSERT_EQ(run({"construct-exotic", "--periods", "2", "--l", "1", "--out", out_dir}), cli::kSuccess) << err_.str();
  std::vector<cplx> first;
  for (int i = 0; i < 2; ++i) {
    const auto v = read_potential_file(fs::path(out_dir) / ("exotic_l_1_" + std::to_string(i) + ".json"));
    EXPECT_NEAR(std::abs(v[0] - 2.0 * I) * std::abs(v[0] + 2.0 * I), 0.0, 1e-6);
    EXPECT_LT(std::abs(v[0] + v[1]), 1e-9);
    first.push_back(v[0]);
  }
  EXPECT_GT(std::abs(first[0] - first[1]), 1.0);
  EXPECT_FALSE(fs::exists(fs::path(out_dir) / "exotic_l_1_2.json"));

  ASSERT_EQ(run({"construct-exotic", "--periods", "2", "2", "--l", "1", "1", "--out", out_dir}), cli::kSuccess);
  const auto lifted = read_potential_file(fs::path(out_dir) / "exotic_l_1_1_0.json");
  EXPECT_EQ(lifted.config(), LatticeConfig({2, 2}));
  EXPECT_EQ(run({"entire-graph", (fs::path(out_dir) / "exotic_l_1_1_0.json").string()}), cli::kSuccess);
  EXPECT_NE(out().find("l: (1,1)"), std::string::npos);

  ASSERT_EQ(run({"construct-exotic", "--periods", "1", "--l", "0", "--out", out_dir}), cli::kSuccess);
  const auto zero = read_potential_file(fs::path(out_dir) / "exotic_l_0_0.json");
  EXPECT_LT(zero.max_abs(), 1e-12);
}

TEST_F(Cli, VerifySuites) {
  EXPECT_EQ(run({"verify", "--suite", "lemma21"}), cli::kSuccess) << out();
  EXPECT_EQ(run({"verify", "--suite", "borg1d"}), cli::kSuccess) << out();
  EXPECT_EQ(out().find("[FAIL]"), std::string::npos);
  EXPECT_EQ(run({"verify", "--suite", "counting", "--periods", "2"}), cli::kSuccess) << out();
  EXPECT_NE(out().find("[PASS] counting q=(2): classes=2, solutions=3, bound=4"), std::string::npos) << out();
  EXPECT_EQ(cli::suite_names().size(), 5u);
}

TEST_F(Cli, ReportsAreDeterministic) {
  const auto in = file("e.json", Potential(LatticeConfig({3}), {cplx(0.2, 1.0), -0.5, cplx(0.3, -1.0)}));
  const auto r1 = (dir_ / "r1.json").string();
  const auto r2 = (dir_ / "r2.json").string();
  const auto r3 = (dir_ / "r3.json").string();
  run({"--seed", "5", "--report", r1, "entire-graph", in});
  run({"--seed", "5", "--report", r2, "entire-graph", in});
  run({"--seed", "6", "--report", r3, "entire-graph", in});
  auto a = nlohmann::json::parse(slurp(r1));
  auto b = nlohmann::json::parse(slurp(r2));
  auto c = nlohmann::json::parse(slurp(r3));
  EXPECT_EQ(a["command"], "entire-graph");
  EXPECT_EQ(a["seed"], 5);
  EXPECT_TRUE(a.contains("wall_time_s"));
  EXPECT_EQ(a["inputs_digest"].get<std::string>().size(), 16u);
  for (auto* j : {&a, &b, &c}) j->erase("wall_time_s");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_NE(a.dump(), c.dump());

  const auto out_dir = (dir_ / "ex").string();
  run({"--report", r1, "construct-exotic", "--periods", "3", "--l", "1", "--out", out_dir});
  run({"--report", r2, "construct-exotic", "--periods", "3", "--l", "1", "--out", out_dir});
  a = nlohmann::json::parse(slurp(r1));
  b = nlohmann::json::parse(slurp(r2));
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Digest, KnownValues) {
  // FNV-1a 64 reference values
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

}  // namespace
}  // namespace bloch
