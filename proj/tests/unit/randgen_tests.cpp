#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "odyn/error.hpp"
#include "odyn/graph.hpp"
#include "odyn/randgen.hpp"
#include "odyn/rng.hpp"

using doctest::Approx;
using odyn::EdgeProbabilityMatrix;
using odyn::Error;
using odyn::Graph;
using odyn::StreamPurpose;
using odyn::StreamRng;
using odyn::ThresholdDistribution;

TEST_CASE("edge probability formula at fixed points") {
  auto p = odyn::er_edge_probability(1000, 1, 0.0);
  CHECK(p.value == Approx(0.006907755278982137).epsilon(1e-14));
  CHECK_FALSE(p.clamped);
  auto p2 = odyn::er_edge_probability(1000, 2, 0.0);
  CHECK(p2.value == Approx(0.008840400012898202).epsilon(1e-14));
  // ln ln n separates consecutive r values.
  CHECK(1000.0 * (p2.value - p.value) == Approx(std::log(std::log(1000.0))).epsilon(1e-12));
}

TEST_CASE("edge probability clamps and reports it") {
  auto high = odyn::er_edge_probability(3, 1, 10.0);
  CHECK(high.value == 1.0);
  CHECK(high.clamped);
  auto low = odyn::er_edge_probability(200, 1, -6.0);
  CHECK(low.value == 0.0);
  CHECK(low.clamped);
  CHECK_THROWS_AS(odyn::er_edge_probability(2, 1, 0.0), Error);
  CHECK_THROWS_AS(odyn::er_edge_probability(100, 0, 0.0), Error);
}

TEST_CASE("inter-community probability divides by k-1") {
  auto er = odyn::er_edge_probability(1000, 1, 0.0);
  auto two = odyn::rin_edge_probability(1000, 2, 1, 0.0);
  CHECK(two.value == er.value);
  auto three = odyn::rin_edge_probability(1000, 3, 1, 0.0);
  CHECK(three.value == Approx(er.value / 2).epsilon(1e-14));
  CHECK_THROWS_AS(odyn::rin_edge_probability(1000, 1, 1, 0.0), Error);
}

TEST_CASE("parameter structs prefer the override") {
  odyn::ErParams er{.n = 3, .r = 1, .c = 50.0, .p_override = 0.25};
  bool clamped = true;
  CHECK(er.edge_probability(&clamped) == 0.25);
  CHECK_FALSE(clamped);
  odyn::ErParams bad{.n = 3, .r = 1, .c = 0.0, .p_override = 1.5};
  CHECK_THROWS_AS(bad.edge_probability(), Error);
}

TEST_CASE("threshold distribution validation") {
  CHECK_THROWS_AS(ThresholdDistribution({0.5, 0.6}), Error);
  CHECK_THROWS_AS(ThresholdDistribution({1.5, -0.5}), Error);
  CHECK_THROWS_AS(ThresholdDistribution({}), Error);
  ThresholdDistribution d({0.25, 0.75});
  CHECK(d.rbar() == 1);
  CHECK(d.prob(0) == 0.25);
  CHECK(d.prob(1) == 0.75);
  CHECK_THROWS_AS(d.prob(2), Error);
}

TEST_CASE("point masses sample deterministically") {
  ThresholdDistribution zero({1.0});
  ThresholdDistribution two({0.0, 0.0, 1.0});
  StreamRng rng(3, StreamPurpose::Thresholds);
  for (int i = 0; i < 50; ++i) {
    CHECK(zero.sample(rng) == 0);
    CHECK(two.sample(rng) == 2);
  }
}

TEST_CASE("inverse-cdf sampling matches the weights statistically") {
  ThresholdDistribution d({0.25, 0.75});
  StreamRng rng(1234, StreamPurpose::Thresholds);
  int zeros = 0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) zeros += d.sample(rng) == 0 ? 1 : 0;
  double fraction = static_cast<double>(zeros) / draws;
  double sigma = std::sqrt(0.25 * 0.75 / draws);
  CHECK(std::abs(fraction - 0.25) < 3 * sigma);
}

TEST_CASE("default threshold family decays like inverse powers of ln n") {
  auto d = odyn::default_threshold_distribution(1000, 2, 4);
  REQUIRE(d.rbar() == 4);
  const double expect[] = {0.4610939319339142, 0.4610939319339142, 0.06675018342599084,
                           0.009663078775979241, 0.0013988739302014045};
  for (int t = 0; t <= 4; ++t) CHECK(d.prob(t) == Approx(expect[t]).epsilon(1e-12));
  CHECK(d.prob(0) == d.prob(1));
  CHECK(d.prob(2) / d.prob(3) == Approx(std::log(1000.0)).epsilon(1e-12));
  // Normalization never lifts mass above the decay envelope.
  for (int t = 2; t <= 4; ++t) {
    CHECK(d.prob(t) * std::pow(std::log(1000.0), t - 1) <= 1.0 + 1e-12);
  }
}

TEST_CASE("default threshold family degenerates to uniform when rbar < r") {
  auto d = odyn::default_threshold_distribution(1000, 3, 1);
  REQUIRE(d.rbar() == 1);
  CHECK(d.prob(0) == 0.5);
  CHECK(d.prob(1) == 0.5);
}

TEST_CASE("probability matrix validation") {
  CHECK_THROWS_AS(EdgeProbabilityMatrix(2, {0.0, 0.5, 0.6, 0.0}), Error);   // asymmetric
  CHECK_THROWS_AS(EdgeProbabilityMatrix(2, {0.1, 0.5, 0.5, 0.0}), Error);   // diagonal
  CHECK_THROWS_AS(EdgeProbabilityMatrix(2, {0.0, 1.5, 1.5, 0.0}), Error);   // range
  CHECK_THROWS_AS(EdgeProbabilityMatrix(2, {0.0, 0.5}), Error);             // shape
  EdgeProbabilityMatrix m(3, {0.0, 0.2, 0.4, 0.2, 0.0, 0.6, 0.4, 0.6, 0.0});
  CHECK(m.at(0, 2) == 0.4);
  CHECK(m.at(2, 0) == 0.4);
  CHECK(m.min_off_diagonal() == 0.2);
  CHECK_THROWS_AS(m.at(0, 3), Error);
}

TEST_CASE("probability matrix json forms") {
  auto bare = EdgeProbabilityMatrix::from_json_text("[[0.0,0.5],[0.5,0.0]]");
  CHECK(bare.at(0, 1) == 0.5);
  auto wrapped = EdgeProbabilityMatrix::from_json_text(R"({"probs":[[0.0,0.5],[0.5,0.0]]})");
  CHECK(wrapped.at(0, 1) == 0.5);
  CHECK_THROWS_AS(EdgeProbabilityMatrix::from_json_text("[[0.0,0.5]]"), Error);
  CHECK_THROWS_AS(EdgeProbabilityMatrix::from_json_text("{\"rows\":[]}"), Error);
}

TEST_CASE("probability matrix scaling clamps at one") {
  auto m = EdgeProbabilityMatrix::constant(3, 0.4);
  auto up = m.scaled(2.0);
  CHECK(up.at(0, 1) == 0.8);
  auto capped = m.scaled(3.0);
  CHECK(capped.at(0, 1) == 1.0);
  CHECK_THROWS_AS(m.scaled(-1.0), Error);
}

TEST_CASE("er samples are deterministic in the seed") {
  auto a = odyn::sample_er(20, 0.5, 11);
  auto b = odyn::sample_er(20, 0.5, 11);
  auto c = odyn::sample_er(20, 0.5, 12);
  CHECK(a == b);
  CHECK(a != c);
  CHECK(odyn::sample_er(10, 0.0, 1).edge_count() == 0);
  CHECK(odyn::sample_er(10, 1.0, 1).edge_count() == 45);
  CHECK_THROWS_AS(odyn::sample_er(10, 1.2, 1), Error);
}

TEST_CASE("er edge counts match the mean to three sigma") {
  const int n = 30, trials = 1000;
  const double p = 0.3, pairs = 435.0;
  double total = 0;
  for (int i = 0; i < trials; ++i) {
    total += static_cast<double>(odyn::sample_er(n, p, odyn::derive_seed(500, StreamPurpose::Edges, i)).edge_count());
  }
  double mean = total / trials;
  double sigma_mean = std::sqrt(pairs * p * (1 - p) / trials);
  CHECK(std::abs(mean - pairs * p) < 3 * sigma_mean);
}

TEST_CASE("interdependent samples keep communities edgeless unless given intra graphs") {
  odyn::RinParams params{.k = 2, .n = 4, .r = 1, .c = 0.0, .p_override = 1.0, .intra = {}};
  auto g = odyn::sample_rin(params, 21);
  CHECK(g.n() == 8);
  CHECK(g.edge_count() == 16);  // complete bipartite across the two communities
  for (auto [a, b] : g.edge_list()) CHECK((a < 4) != (b < 4));

  odyn::RinParams sparse{.k = 2, .n = 100, .r = 1, .c = 0.0, .p_override = {}, .intra = {}};
  auto h = odyn::sample_rin(sparse, 22);
  for (auto [a, b] : h.edge_list()) CHECK((a < 100) != (b < 100));
}

TEST_CASE("intra graphs are embedded at their community offset") {
  auto path = Graph::build(3, false, std::vector<odyn::Edge>{{0, 1}, {1, 2}});
  odyn::RinParams params{
      .k = 2, .n = 3, .r = 1, .c = 0.0, .p_override = 0.0, .intra = {path, path}};
  auto g = odyn::sample_rin(params, 5);
  CHECK(g.edge_count() == 4);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK(g.has_edge(3, 4));
  CHECK(g.has_edge(4, 5));
  CHECK_FALSE(g.has_edge(0, 3));
}

TEST_CASE("interdependent sampling validates its shape") {
  auto path = Graph::build(3, false, std::vector<odyn::Edge>{{0, 1}, {1, 2}});
  odyn::RinParams one_intra{.k = 2, .n = 3, .r = 1, .c = 0.0, .p_override = 0.5, .intra = {path}};
  CHECK_THROWS_AS(odyn::sample_rin(one_intra, 1), Error);
  odyn::RinParams wrong_n{
      .k = 2, .n = 4, .r = 1, .c = 0.0, .p_override = 0.5, .intra = {path, path}};
  CHECK_THROWS_AS(odyn::sample_rin(wrong_n, 1), Error);
  odyn::RinParams one_community{.k = 1, .n = 3, .r = 1, .c = 0.0, .p_override = 0.5, .intra = {}};
  CHECK_THROWS_AS(odyn::sample_rin(one_community, 1), Error);
}

TEST_CASE("constant heterogeneous matrices reproduce er samples exactly") {
  auto m = EdgeProbabilityMatrix::constant(12, 0.37);
  CHECK(odyn::sample_heterogeneous(m, 99) == odyn::sample_er(12, 0.37, 99));
}

TEST_CASE("zero blocks in the matrix never produce edges") {
  std::vector<double> entries(16, 0.8);
  for (int i = 0; i < 4; ++i) entries[static_cast<std::size_t>(4 * i + i)] = 0.0;
  entries[1] = entries[4] = 0.0;  // forbid (0, 1)
  EdgeProbabilityMatrix m(4, entries);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    CHECK_FALSE(odyn::sample_heterogeneous(m, seed).has_edge(0, 1));
  }
}

TEST_CASE("coupled pairs nest and match the base marginal") {
  const int n = 8;
  std::vector<double> entries(n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j) entries[static_cast<std::size_t>(n * i + j)] = 0.3 + 0.15 * ((i + j) % 4);
    }
  EdgeProbabilityMatrix m(n, entries);
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto [g1, g2] = odyn::coupled_pair(0.3, m, seed);
    CHECK(g1 == odyn::sample_er(n, 0.3, seed));
    for (auto [a, b] : g1.edge_list()) CHECK(g2.has_edge(a, b));
  }
}

TEST_CASE("coupling validates its probabilities") {
  auto low = EdgeProbabilityMatrix::constant(4, 0.2);
  CHECK_THROWS_AS(odyn::coupled_pair(0.5, low, 1), Error);
  auto ones = EdgeProbabilityMatrix::constant(4, 1.0);
  CHECK_THROWS_AS(odyn::coupled_pair(1.0, ones, 1), Error);
  CHECK_NOTHROW(odyn::coupled_pair(0.999, ones, 1));
}

TEST_CASE("threshold sampling is seeded and respects the node cap") {
  ThresholdDistribution point({0.0, 1.0});
  auto t = odyn::sample_thresholds(point, 5, 7);
  CHECK(t.t == std::vector<int>{1, 1, 1, 1, 1});
  auto d = odyn::default_threshold_distribution(100, 2, 4);
  auto a = odyn::sample_thresholds(d, 50, 7);
  CHECK(a.t == odyn::sample_thresholds(d, 50, 7).t);
  CHECK(a.t != odyn::sample_thresholds(d, 50, 8).t);
  ThresholdDistribution wide({0, 0, 0, 0, 0, 0, 1.0});
  CHECK_THROWS_AS(odyn::sample_thresholds(wide, 3, 1), Error);
}

TEST_CASE("the counterexample construction") {
  auto [g4, t4] = odyn::two_clique_counterexample(4);
  CHECK(g4.edge_list() == std::vector<odyn::Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(t4.t == std::vector<int>{1, 1, 1, 1});

  auto [g10, t10] = odyn::two_clique_counterexample(10);
  CHECK(g10.n() == 10);
  CHECK(odyn::min_degree(g10) == 5);
  CHECK(odyn::vertex_connectivity(g10) == 5);
  CHECK(odyn::is_connected(g10));

  CHECK_THROWS_AS(odyn::two_clique_counterexample(5), Error);
  CHECK_THROWS_AS(odyn::two_clique_counterexample(2), Error);
}
