#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "wbag/cli.hpp"
#include "wbag/format.hpp"
#include "wbag/trace_io.hpp"

using namespace wbag;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + 1)) {
    ++n;
  }
  return n;
}

// Column value on the row for `name` in the solve table.
double final_of(const std::string& table, const std::string& name) {
  std::istringstream in(table);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string n;
    double initial = 0, final_value = 0;
    if (row >> n >> initial >> final_value && n == name) return final_value;
  }
  ADD_FAILURE() << "no row for " << name;
  return -1.0;
}

class CliTest : public ::testing::Test {
 protected:
  std::string file(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }
  std::string fixture(const std::string& name) {
    const std::string p = (dir_ / (name + ".bag")).string();
    EXPECT_EQ(run({"gen", "fixture", name, "--out", p}).code, 0);
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  testkit::TempDir dir_{"cli"};
};

}  // namespace

TEST_F(CliTest, SolveStockFixture) {
  const Outcome r = run({"solve", fixture("stock")});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("Buy"), std::string::npos);
  EXPECT_NEAR(final_of(r.out, "Buy"), 0.82, 0.01);
  EXPECT_NEAR(final_of(r.out, "Sell"), 0.36, 0.01);
  EXPECT_NE(r.out.find("status: converged (model quad, rk4, delta 0.01)"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, SolveEdemocracyExactAndOdeAgree) {
  const std::string ed = fixture("edemocracy");
  const Outcome exact = run({"solve", ed});
  EXPECT_EQ(exact.code, 0);
  EXPECT_NE(exact.out.find("status: exact (acyclic pass, model quad)"), std::string::npos);
  EXPECT_NEAR(final_of(exact.out, "A1"), 0.7199, 1e-4);
  EXPECT_NEAR(final_of(exact.out, "A2"), 0.6644, 1e-4);
  EXPECT_NEAR(final_of(exact.out, "P2"), 0.1859, 1e-4);

  const Outcome ode = run({"solve", "--algo", "ode", ed});
  EXPECT_EQ(ode.code, 0);
  for (const char* name : {"A1", "A2", "P2"}) {
    EXPECT_NEAR(final_of(ode.out, name), final_of(exact.out, name), 1e-3);
  }
  EXPECT_EQ(run({"solve", "--algo", "acyclic", fixture("stock")}).code, cli::kExitInputError);
}

TEST_F(CliTest, SolveOtherModels) {
  const Outcome r = run({"solve", "--model", "dfquad", fixture("edemocracy")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(final_of(r.out, "A1"), 0.862, 1e-4);
  EXPECT_EQ(run({"solve", "--model", "nope", fixture("edemocracy")}).code, cli::kExitInputError);
}

TEST_F(CliTest, SolveRefine) {
  const Outcome r = run({"solve", "--refine", fixture("stock")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("refinement: delta 0.01 vs 0.005"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("stable"), std::string::npos);
}

TEST_F(CliTest, TimeCapExitsTwo) {
  const std::string cyc = path("cycle10.bag");
  ASSERT_EQ(run({"gen", "cycle", "--k", "10", "--out", cyc}).code, 0);
  const Outcome r = run({"solve", "--tmax", "2", cyc});
  EXPECT_EQ(r.code, cli::kExitCapReached);
  EXPECT_NE(r.out.find("time_cap_reached"), std::string::npos);
}

TEST_F(CliTest, ErrorsExitOne) {
  const Outcome missing = run({"solve", path("absent.bag")});
  EXPECT_EQ(missing.code, cli::kExitInputError);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);

  const Outcome bad = run({"solve", file("bad.bag", "arg(a).\natt(a,q).")});
  EXPECT_EQ(bad.code, cli::kExitInputError);
  EXPECT_NE(bad.err.find("line 2, column 7"), std::string::npos) << bad.err;

  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"solve"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(CliTest, FlagsValidatedBeforeReadingInput) {
  // The file does not exist: the flag error must be what is reported.
  const Outcome r = run({"solve", "--delta", "-0.1", path("absent.bag")});
  EXPECT_EQ(r.code, cli::kExitInputError);
  EXPECT_NE(r.err.find("step"), std::string::npos) << r.err;
  EXPECT_EQ(r.err.find("absent"), std::string::npos) << r.err;

  const Outcome eps = run({"trace", "--epsilon", "0", "--out", path("t.csv"), path("absent.bag")});
  EXPECT_EQ(eps.code, cli::kExitInputError);
  EXPECT_EQ(eps.err.find("absent"), std::string::npos) << eps.err;
  EXPECT_FALSE(std::filesystem::exists(path("t.csv")));

  EXPECT_EQ(run({"solve", "--method", "midpoint", fixture("stock")}).code, cli::kExitInputError);
}

TEST_F(CliTest, Check) {
  const Outcome cyclic = run({"check", fixture("stock")});
  EXPECT_EQ(cyclic.code, 0);
  EXPECT_EQ(cyclic.out, "cyclic; witness: Buy, Sell\n");
  const Outcome acyclic = run({"check", fixture("edemocracy")});
  EXPECT_EQ(acyclic.out, "acyclic; 9 arguments, 4 attacks, 3 supports\n");
  EXPECT_EQ(run({"check", file("x.bag", "arg(a")}).code, cli::kExitInputError);
}

TEST_F(CliTest, TraceStockSellCrossesOneHalf) {
  const std::string csv = path("stock.csv");
  const std::string report = path("stock_report.csv");
  const Outcome r = run({"trace", "--out", csv, "--report", report, fixture("stock")});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  const TrajectoryTable t = read_trajectory_csv(in);
  ASSERT_EQ(t.names.size(), 7u);
  EXPECT_EQ(t.times.front(), 0.0);
  const auto sell = std::find(t.names.begin(), t.names.end(), "Sell") - t.names.begin();
  const auto& column = t.columns[static_cast<std::size_t>(sell)];
  EXPECT_EQ(column.front(), 0.5);
  EXPECT_GT(*std::max_element(column.begin(), column.end()), 0.5);
  EXPECT_LT(column.back(), 0.5);

  const std::string rep = slurp(report);
  EXPECT_TRUE(rep.starts_with("name,converged,final,lower,upper,sign_changes\n"));
  EXPECT_EQ(count(rep, "\n"), 8u);
}

TEST_F(CliTest, TraceCycleTenOscillates) {
  const std::string cyc = path("cycle10.bag");
  ASSERT_EQ(run({"gen", "cycle", "--k", "10", "--out", cyc}).code, 0);
  const std::string csv = path("cycle10.csv");
  ASSERT_EQ(run({"trace", "--record-every", "1", "--out", csv, cyc}).code, 0);
  std::ifstream in(csv);
  const TrajectoryTable t = read_trajectory_csv(in);
  const auto& a = t.columns.at(0);
  ASSERT_EQ(t.names.at(0), "A");
  std::size_t extrema = 0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    const double left = a[i] - a[i - 1], right = a[i + 1] - a[i];
    if (left * right < 0 && std::abs(left) > 1e-7 && std::abs(right) > 1e-7) ++extrema;
  }
  EXPECT_GE(extrema, 2u);
}

TEST_F(CliTest, PlotTwoColumns) {
  const std::string csv = file("two.csv", "t,x,y\n0,0.5,0.1\n1,0.6,0.2\n2,0.65,0.4\n");
  const std::string svg = path("two.svg");
  const Outcome r = run({"plot", csv, "--out", svg, "--title", "demo"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string text = slurp(svg);
  EXPECT_NE(text.find("<svg"), std::string::npos);
  EXPECT_EQ(count(text, "<polyline"), 2u);
  EXPECT_NE(text.find("demo"), std::string::npos);

  EXPECT_EQ(run({"plot", file("junk.csv", "t,x\n0,abc\n"), "--out", svg}).code,
            cli::kExitInputError);
}

TEST_F(CliTest, GeneratorCommands) {
  const Outcome rnd = run({"gen", "random", "--nodes", "4", "--edges", "5", "--seed", "1"});
  EXPECT_EQ(rnd.code, 0);
  EXPECT_TRUE(rnd.out.starts_with("// generator: random_bag nodes=4 edges=5"));
  EXPECT_EQ(rnd.out.substr(rnd.out.find('\n') + 1), serialize_bag(parse_bag(rnd.out)));
  EXPECT_EQ(run({"gen", "random", "--nodes", "2", "--edges", "5"}).code, cli::kExitInputError);
  EXPECT_EQ(run({"gen", "cycle", "--k", "0"}).code, cli::kExitInputError);

  const std::string tree = path("tree");
  const Outcome b = run({"gen", "benchmark", "--dir", tree, "--base", "4", "--increments", "2",
                         "--trials", "3", "--edge-ratio", "2"});
  EXPECT_EQ(b.code, 0);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(tree) / "8" / "bag_2.bag"));

  const std::string stats = path("stats.csv");
  const std::string records = path("records.csv");
  const Outcome bench = run({"bench", tree, "--stats", stats, "--records", records, "--jobs", "2"});
  EXPECT_EQ(bench.code, 0) << bench.err;
  const std::string st = slurp(stats);
  EXPECT_TRUE(st.starts_with("# model=quad"));
  EXPECT_NE(st.find("size,count,min_ms,mean_ms,max_ms\n4,3,"), std::string::npos) << st;
  EXPECT_EQ(count(slurp(records), "\n"), 7u);
}
