#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace wass;
using namespace wass::testing;

TEST(ExtReal, ParsesExactAndApproximateNumbers) {
  EXPECT_EQ(ExtReal::parse("1.5", true), q(3, 2));
  EXPECT_TRUE(ExtReal::parse("1.5", true).is_exact());
  EXPECT_FALSE(ExtReal::parse("1.5", false).is_exact());
  EXPECT_EQ(ExtReal::parse("3/9", true), q(1, 3));
  EXPECT_EQ(ExtReal::parse("-2.5e-1", true), q(-1, 4));
  EXPECT_EQ(ExtReal::parse("010/03", true), q(10, 3));
  EXPECT_EQ(ExtReal::parse("0.0125", true), q(1, 80));
  EXPECT_EQ(ExtReal::parse("-007", true), q(-7));
  EXPECT_TRUE(ExtReal::parse("inf", true).is_inf());
  EXPECT_EQ(ExtReal::parse("-inf", false), ExtReal::neg_infinity());
  EXPECT_THROW(ExtReal::parse("abc", true), invalid_input);
  EXPECT_THROW(ExtReal::parse("1/0", true), invalid_input);
}

TEST(ExtReal, FormatsCanonically) {
  EXPECT_EQ(q(3, 2).str(), "1.5");
  EXPECT_EQ(q(1, 3).str(), "1/3");
  EXPECT_EQ(q(-7).str(), "-7");
  EXPECT_EQ(ExtReal::infinity().str(), "inf");
  EXPECT_EQ(ExtReal::approx(0.1).str(), "0.1");
  for (const char* text : {"0", "1.5", "-3", "1/3", "0.125", "0.0625", "inf", "-inf", "22/7"})
    EXPECT_EQ(ExtReal::parse(text, true).str(), text);
}

TEST(ExtReal, InfinityArithmetic) {
  ExtReal inf = ExtReal::infinity();
  EXPECT_EQ(inf + q(5), inf);
  EXPECT_EQ(abs(ExtReal::neg_infinity()), inf);
  EXPECT_EQ(pow(inf, Exponent(3)), inf);
  EXPECT_THROW(inf - inf, undefined_arithmetic);
  EXPECT_THROW(q(0) * inf, undefined_arithmetic);
  EXPECT_LT(q(1000000), inf);
  EXPECT_LT(ExtReal::neg_infinity(), q(-1000000));
}

TEST(ExtReal, ExactnessPropagates) {
  EXPECT_TRUE((q(1, 3) + q(1, 6)).is_exact());
  EXPECT_EQ(q(1, 3) + q(1, 6), q(1, 2));
  EXPECT_FALSE((q(1, 3) + ExtReal::approx(0.5)).is_exact());
  EXPECT_EQ(root(q(9, 4), Exponent(2)), q(3, 2));
  EXPECT_TRUE(root(q(9, 4), Exponent(2)).is_exact());
  EXPECT_FALSE(root(q(2), Exponent(2)).is_exact());
  EXPECT_NEAR(root(q(2), Exponent(2)).to_double(), std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(approx_equal(q(1, 3), ExtReal::approx(1.0 / 3.0)));
  EXPECT_FALSE(approx_equal(q(1, 3), q(1, 3) + q(1, 1000000000000)));
}

TEST(LpNorm, Examples) {
  EXPECT_EQ(lp_norm({q(3), q(4)}, Exponent(2)), q(5));
  EXPECT_EQ(lp_norm({q(1, 2), q(1)}, Exponent(1)), q(3, 2));
  EXPECT_EQ(lp_norm({ExtReal::infinity(), q(1)}, Exponent(7)), ExtReal::infinity());
  EXPECT_EQ(lp_norm({q(3), q(4)}, Exponent::infinity()), q(4));
  EXPECT_EQ(lp_norm(std::span<const ExtReal>{}, Exponent(2)), q(0));
  EXPECT_THROW(lp_norm({q(-1)}, Exponent(1)), invalid_input);
}

TEST(LpNorm, NonincreasingInP) {
  Rng rng(11);
  const Exponent ps[] = {Exponent(1), Exponent(1.5), Exponent(2), Exponent(3), Exponent::infinity()};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<ExtReal> v;
    int n = uniform(rng, 1, 6);
    for (int i = 0; i < n; ++i) v.push_back(q(uniform(rng, 0, 50), uniform(rng, 1, 7)));
    for (std::size_t k = 0; k + 1 < std::size(ps); ++k) {
      ExtReal a = lp_norm(v, ps[k]), b = lp_norm(v, ps[k + 1]);
      EXPECT_TRUE(b <= a || approx_equal(a, b));
    }
  }
}

TEST(Exponent, ParsesInf) {
  EXPECT_TRUE(Exponent::parse("inf").is_infinite());
  EXPECT_EQ(Exponent::parse("2"), Exponent(2));
  EXPECT_THROW(Exponent::parse("0.5"), invalid_input);
  EXPECT_THROW(Exponent::parse("x"), invalid_input);
}

TEST(HalfPlanePair, DistanceToDiagonal) {
  Point2 x{q(0), q(1)};
  EXPECT_EQ(HalfPlanePair(Exponent::infinity()).dist_to_A(x), q(1, 2));
  EXPECT_EQ(HalfPlanePair(Exponent(1)).dist_to_A(x), q(1));
  EXPECT_NEAR(HalfPlanePair(Exponent(2)).dist_to_A(x).to_double(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(HalfPlanePair(Exponent(3)).dist_to_A(x).to_double(), std::pow(2.0, 1.0 / 3) / 2, 1e-15);
  EXPECT_EQ(HalfPlanePair().dist_to_A({q(3), q(3)}), q(0));
  EXPECT_TRUE(HalfPlanePair().in_A({q(5), q(2)}));
}

TEST(HalfPlanePair, ProjectionRealisesDistanceToA) {
  Rng rng(3);
  for (Exponent qq : {Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()}) {
    HalfPlanePair pair(qq);
    for (int i = 0; i < 50; ++i) {
      Point2 x = random_point(rng);
      auto a = pair.project_to_A(x);
      ASSERT_TRUE(a);
      EXPECT_TRUE(pair.in_A(*a));
      EXPECT_TRUE(approx_equal(pair.dist(x, *a), pair.dist_to_A(x), 1e-12));
      // No sampled diagonal point is closer.
      for (int k = -20; k <= 20; ++k) {
        Point2 diag{a->b + q(k, 8), a->b + q(k, 8)};
        EXPECT_TRUE(pair.dist_to_A(x) <= pair.dist(x, diag) || approx_equal(pair.dist_to_A(x), pair.dist(x, diag)));
      }
    }
  }
}

TEST(Strengthening, Examples) {
  auto pair = halfplane();
  auto d1 = p_strengthened(pair, Exponent(1));
  EXPECT_EQ(d1(Point2{q(0), q(1)}, Point2{q(10), q(11)}), q(1));
  EXPECT_EQ(d1(Point2{q(0), q(1)}, Point2{q(0), q(1)}), q(0));

  auto no_subspace = FunctionPair<double>::without_subspace(
      [](const double& a, const double& b) { return ExtReal::approx(std::fabs(a - b)); });
  for (double a : {0.0, 1.5, -2.0})
    for (double b : {0.0, 3.0})
      EXPECT_EQ(strengthened_dist(no_subspace, Exponent(2), a, b), no_subspace.dist(a, b));
}

TEST(Strengthening, BoundedByDAndAntitoneInP) {
  Rng rng(5);
  for (Exponent qq : {Exponent(1), Exponent(2), Exponent::infinity()}) {
    HalfPlanePair pair(qq);
    for (int i = 0; i < 200; ++i) {
      Point2 x = random_point(rng), y = random_point(rng);
      ExtReal d = pair.dist(x, y);
      ExtReal prev = d;
      bool first = true;
      for (Exponent p : {Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()}) {
        ExtReal dp = strengthened_dist(pair, p, x, y);
        EXPECT_TRUE(dp <= d);
        // p <= p' implies d_p >= d_p'.
        if (!first) {
          EXPECT_TRUE(dp <= prev || approx_equal(dp, prev));
        }
        prev = dp;
        first = false;
      }
    }
  }
}

TEST(QuotientMetric, Examples) {
  auto pair = halfplane();
  auto dbar = quotient_metric(pair, Exponent(1));
  using Q = QuotientPoint<Point2>;
  Q x = Point2{q(0), q(1)}, y = Point2{q(2), q(4)}, star = CollapsedA{};
  EXPECT_EQ(dbar(x, y), q(3, 2));
  EXPECT_EQ(dbar(x, star), q(1, 2));
  EXPECT_EQ(dbar(star, star), q(0));
  EXPECT_EQ(dbar(dbar.project(Point2{q(3), q(3)}), star), q(0));
}

TEST(MetricAxioms, StrengthenedAndQuotientOnSamples) {
  Rng rng(8);
  for (Exponent qq : {Exponent(1), Exponent(2), Exponent::infinity()}) {
    auto pair = halfplane(qq);
    std::vector<QuotientPoint<Point2>> pts{CollapsedA{}};
    for (int i = 0; i < 30; ++i) pts.push_back(random_point(rng));
    for (Exponent p : {Exponent(1), Exponent(2), Exponent::infinity()}) {
      auto dbar = quotient_metric(pair, p);
      auto report = check_p_metric(dbar, std::span<const QuotientPoint<Point2>>(pts), Exponent(1));
      EXPECT_TRUE(report.passed) << "q=" << qq.str() << " p=" << p.str();
      for (const auto& a : pts)
        for (const auto& b : pts) {
          EXPECT_EQ(dbar(a, b), dbar(b, a));
          if (a == b) {
            EXPECT_EQ(dbar(a, b), q(0));
          }
        }
    }
  }
}

TEST(CheckPMetric, Examples) {
  std::vector<int> three{0, 1, 2};
  auto ultra = [](int a, int b) { return a == b ? q(0) : q(1); };
  EXPECT_TRUE(check_p_metric(ultra, std::span<const int>(three), Exponent::infinity()).passed);

  std::vector<double> line{0.0, 1.0, 2.0};
  auto euclid = [](double a, double b) { return ExtReal::approx(std::fabs(a - b)); };
  auto report = check_p_metric(euclid, std::span<const double>(line), Exponent(2));
  ASSERT_FALSE(report.passed);
  EXPECT_EQ(report.x, 0U);
  EXPECT_EQ(report.y, 2U);
  EXPECT_EQ(report.z, 1U);
  EXPECT_TRUE(approx_equal(report.rhs, ExtReal::approx(std::sqrt(2.0))));

  EXPECT_TRUE(check_p_metric(euclid, std::span<const double>(line), Exponent(1)).passed);
  EXPECT_EQ(check_p_metric(euclid, std::span<const double>(line), Exponent(1)).sample_size, 3U);
  EXPECT_THROW(check_p_metric(euclid, std::span<const double>(), Exponent(1)), invalid_input);
}

TEST(GraphMetric, Examples) {
  WeightedGraph g;
  g.add_edge("a", "b", q(3));
  g.add_edge("b", "c", q(4));
  g.add_vertex("z");
  g.canonicalize();
  auto t2 = graph_p_metric(g, Exponent(2));
  auto ti = graph_p_metric(g, Exponent::infinity());
  const auto a = *g.find("a"), c = *g.find("c"), z = *g.find("z");
  EXPECT_EQ(t2[a][c], q(5));
  EXPECT_EQ(ti[a][c], q(4));
  EXPECT_EQ(t2[a][z], ExtReal::infinity());
  EXPECT_THROW(g.add_edge("a", "c", q(-1)), invalid_input);
}

TEST(GraphMetric, MatchesSimplePathEnumeration) {
  Rng rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    WeightedGraph g = random_graph(rng, uniform(rng, 2, 7), 0.5, true);
    for (Exponent p : {Exponent(1), Exponent(2), Exponent(3), Exponent::infinity()}) {
      auto fast = graph_p_metric(g, p);
      auto slow = brute_force_graph_metric(g, p);
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) EXPECT_TRUE(approx_equal(fast[i][j], slow[i][j], 1e-12));
    }
  }
}

TEST(GraphMetric, IsAPMetricUpToTwelveVertices) {
  Rng rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    for (Exponent p : {Exponent(1), Exponent(2), Exponent::infinity()}) {
      auto pair = random_graph_pair(rng, uniform(rng, 2, 12), p, 2);
      auto vs = pair->vertices();
      auto dist = [&](Vertex u, Vertex v) { return pair->dist(u, v); };
      EXPECT_TRUE(check_p_metric(dist, std::span<const Vertex>(vs), p).passed);
      EXPECT_EQ(pair->p_metric_certificate(), p);
    }
  }
}

TEST(GraphPair, DistanceToSubset) {
  std::istringstream in("a b 1\nb c 2\nc d 1\nd e 3\nb d 4\n@A a e\n");
  auto spec = parse_graph(in, true);
  GraphPMetricPair pair(spec.graph, Exponent(1), spec.subset);
  auto v = [&](const char* name) { return *pair.vertex(name); };
  EXPECT_EQ(pair.dist_to_A(v("c")), q(3));
  EXPECT_EQ(pair.dist_to_A(v("d")), q(3));
  EXPECT_EQ(pair.dist_to_A(v("a")), q(0));
  EXPECT_TRUE(pair.in_A(v("e")));
  EXPECT_EQ(*pair.project_to_A(v("b")), v("a"));
  EXPECT_EQ(pair.dist(v("b"), v("d")), q(3));
}

TEST(GraphPair, ParseErrorsNameTheLine) {
  std::istringstream in("a b 1\nb c 2\nc d -2\n");
  try {
    parse_graph(in, true, "g.txt");
    FAIL() << "expected a parse error";
  } catch (const invalid_input& e) {
    EXPECT_NE(std::string(e.what()).find("g.txt:3"), std::string::npos) << e.what();
  }
}

TEST(ProductMetric, Examples) {
  auto line = [](const ExtReal& a, const ExtReal& b) { return abs(a - b); };
  std::pair<ExtReal, ExtReal> o{q(0), q(0)}, one{q(1), q(1)}, far{q(3), q(4)};
  EXPECT_EQ(product_metric(line, line, Exponent(1))(o, one), q(2));
  EXPECT_EQ(product_metric(line, line, Exponent::infinity())(o, one), q(1));
  EXPECT_EQ(product_metric(line, line, Exponent(2))(o, far), q(5));
}
