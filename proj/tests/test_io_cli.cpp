#include "support.hpp"
#include "wass/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace wass;
using namespace wass::testing;

namespace {

const std::string samples = WASS_SAMPLES_DIR;

std::string sample(const std::string& name) { return samples + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "wass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Io, DiagramRoundTripIsByteIdentical) {
  auto pair = halfplane();
  std::istringstream in("# comment\n\n2,4\n0,1\n3,3\n0,1,2\n1/2 , 7/4\n");
  auto a = io::read_diagram(in, pair, true);
  EXPECT_EQ(a.multiplicity(Point2{q(0), q(1)}), 3U);
  EXPECT_EQ(a.size(), 5U);
  std::ostringstream first;
  io::write_diagram(first, a);
  std::istringstream again(first.str());
  std::ostringstream second;
  io::write_diagram(second, io::read_diagram(again, pair, true));
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(first.str(), "0,1,3\n0.5,1.75\n2,4\n");
}

TEST(Io, RandomRoundTrips) {
  Rng rng(91);
  auto pair = halfplane();
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_diagram(rng, pair, 6);
    std::ostringstream out;
    io::write_diagram(out, a);
    std::istringstream in(out.str());
    EXPECT_EQ(io::read_diagram(in, pair, true), a);

    auto v = canonicalize(random_diagram(rng, pair, 3), random_diagram(rng, pair, 3));
    std::ostringstream vout;
    io::write_virtual_diagram(vout, v);
    std::istringstream vin(vout.str());
    EXPECT_EQ(io::read_virtual_diagram(vin, pair, true), v);

    auto mu = random_measure(rng, pair, 4);
    std::ostringstream mout;
    io::write_measure(mout, mu);
    std::istringstream min(mout.str());
    EXPECT_EQ(io::read_measure(min, pair, true).plus(), mu);
  }
}

TEST(Io, GraphDiagramRoundTrip) {
  auto in = std::ifstream(sample("graph.txt"));
  auto spec = parse_graph(in, true, "graph.txt");
  auto pair = std::make_shared<const GraphPMetricPair>(std::move(spec.graph), Exponent(1), spec.subset);
  auto a = io::read_diagram_file(sample("graph_alpha.csv"), pair, true);
  EXPECT_EQ(a.size(), 3U);
  std::ostringstream out;
  io::write_diagram(out, a);
  EXPECT_EQ(out.str(), slurp(sample("graph_alpha.csv")));
}

TEST(Io, ParseErrorsNameFileAndLine) {
  auto pair = halfplane();
  auto expect_error = [&](const std::string& text, const std::string& where) {
    std::istringstream in(text);
    try {
      io::read_diagram(in, pair, true, "d.csv");
      ADD_FAILURE() << "accepted: " << text;
    } catch (const invalid_input& e) {
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  expect_error("0,1\n2,x\n", "d.csv:2");
  expect_error("0,1\n\n# c\n1,2,3,4\n", "d.csv:4");
  expect_error("0,1,-1\n", "d.csv:1");
  expect_error("0,1,1.5\n", "d.csv:1");
  std::istringstream bad_mass("0,1,-\n");
  EXPECT_THROW(io::read_measure(bad_mass, pair, true, "m.csv"), invalid_input);
  EXPECT_THROW(io::read_diagram_file("/nonexistent/file.csv", pair, true), invalid_input);
}

TEST(Io, MatchingCertificateRevalidates) {
  Rng rng(92);
  for (bool exact : {true, false}) {
    auto pair = halfplane(Exponent(2));
    for (int trial = 0; trial < 30; ++trial) {
      auto a = random_diagram(rng, pair, 5, exact), b = random_diagram(rng, pair, 5, exact);
      auto r = wasserstein_p(a, b, Exponent(2));
      auto text = io::matching_to_json(*pair, r.matching).dump();
      auto m = io::matching_from_json(*pair, io::Json::parse(text), exact);
      EXPECT_TRUE(is_matching_between(m, a, b));
      EXPECT_TRUE(approx_equal(matching_cost(*pair, m), r.distance));
    }
  }
  EXPECT_THROW(io::matching_from_json(*halfplane(), io::Json::parse("{\"p\":\"1\"}"), true), invalid_input);
}

TEST(Io, PlanCertificateRevalidates) {
  Rng rng(93);
  auto pair = halfplane();
  for (int trial = 0; trial < 30; ++trial) {
    auto mu = random_measure(rng, pair, 3), nu = random_measure(rng, pair, 3);
    auto r = partial_wasserstein(mu, nu, Exponent(1));
    auto plan = io::plan_from_json(*pair, io::Json::parse(io::plan_to_json(*pair, r.plan).dump()), true);
    EXPECT_EQ(plan_marginal_error(plan, mu, nu), q(0));
    EXPECT_EQ(plan_cost(plan), r.plan.cost);
    auto nu2 = rebalance(nu, mu.total_mass());
    auto full = wasserstein_measures(mu, nu2, Exponent(1));
    auto back = io::plan_from_json(*pair, io::Json::parse(io::plan_to_json(*pair, full.plan).dump()), true);
    ASSERT_TRUE(back.potentials);
    EXPECT_EQ(kr_dual_value(*back.potentials, mu, nu2), full.distance);
  }
}

TEST(Cli, Distances) {
  auto r = run_cli({"dist", "--exact", sample("alpha.csv"), sample("beta.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.5\n");
  r = run_cli({"dist", sample("alpha.csv"), sample("beta.csv")});
  EXPECT_EQ(r.out, "1.5\n");
  r = run_cli({"dist", sample("alpha.csv"), sample("alpha.csv")});
  EXPECT_EQ(r.out, "0\n");
  r = run_cli({"dist", "--p", "inf", "--exact", sample("alpha.csv"), sample("beta.csv")});
  EXPECT_EQ(r.out, "1\n");
  r = run_cli({"dist", "--json", "--exact", sample("alpha.csv"), sample("beta.csv")});
  EXPECT_EQ(io::Json::parse(r.out).at("value"), "1.5");
  r = run_cli({"dist", "--pair", "graph", "--graph", sample("graph.txt"), "--exact", sample("graph_alpha.csv"),
           sample("graph_beta.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "5\n");
}

TEST(Cli, VirtualAndMeasureCommands) {
  auto r = run_cli({"vdist", "--exact", sample("virtual_a.csv"), sample("virtual_b.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "2.5\n");
  r = run_cli({"vdist", "--p", "2", "--q", "2", sample("virtual_a.csv"), sample("virtual_b.csv")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("refused"), std::string::npos);

  r = run_cli({"mdist", "--exact", sample("measures/mu.csv"), sample("measures/nu.csv")});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.out, "inf\n");
  r = run_cli({"pdist", "--exact", sample("measures/mu.csv"), sample("measures/nu.csv")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1.5\n");
  r = run_cli({"mdist", "--p", "2", sample("measures/signed.csv"), sample("measures/nu.csv")});
  EXPECT_EQ(r.code, 1);
}

TEST(Cli, MatrixAndExplain) {
  auto r = run_cli({"matrix", "--exact", sample("diagrams")});
  EXPECT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string header;
  std::getline(lines, header);
  EXPECT_EQ(header, "file,a.csv,b.csv,c.csv");
  std::string row;
  std::getline(lines, row);
  EXPECT_EQ(row.rfind("a.csv,0,1.5,", 0), 0U) << row;

  r = run_cli({"explain", "--exact", sample("alpha.csv"), sample("beta.csv")});
  ASSERT_EQ(r.code, 0);
  auto j = io::Json::parse(r.out);
  EXPECT_EQ(j.at("distance"), "1.5");
  auto pair = halfplane();
  auto m = io::matching_from_json(*pair, j.at("matching"), true);
  EXPECT_EQ(matching_cost(*pair, m), q(3, 2));

  r = run_cli({"explain", "--partial", "--exact", sample("measures/mu.csv"), sample("measures/nu.csv")});
  ASSERT_EQ(r.code, 0);
  j = io::Json::parse(r.out);
  auto plan = io::plan_from_json(*pair, j.at("plan"), true);
  auto mu = io::read_measure_file(sample("measures/mu.csv"), pair, true).plus();
  auto nu = io::read_measure_file(sample("measures/nu.csv"), pair, true).plus();
  EXPECT_EQ(plan_marginal_error(plan, mu, nu), q(0));
  EXPECT_EQ(plan_cost(plan), q(3, 2));
}

TEST(Cli, ValidateAndErrors) {
  auto r = run_cli({"validate", "--pair", "graph", "--graph", sample("graph.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("ok:", 0), 0U);
  r = run_cli({"validate", "--pair", "graph", "--graph", sample("graph.txt"), "--q", "2"});
  EXPECT_EQ(r.code, 0);
  r = run_cli({"validate", "--pair", "graph", "--graph", sample("graph.txt"), "--p", "inf"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("violation:", 0), 0U);

  r = run_cli({"dist", sample("alpha.csv")});
  EXPECT_EQ(r.code, 1);
  r = run_cli({"dist", "--p", "1/2", sample("alpha.csv"), sample("beta.csv")});
  EXPECT_EQ(r.code, 1);
  r = run_cli({"dist", sample("alpha.csv"), "/nonexistent.csv"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("/nonexistent.csv"), std::string::npos);
  r = run_cli({"frobnicate"});
  EXPECT_EQ(r.code, 1);
}
