#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "netforge/formation.hpp"
#include "netforge/theory.hpp"

namespace netforge {
namespace {

FormationConfig make(Model model, std::size_t n, std::size_t m, std::uint64_t seed = 1) {
  FormationConfig c;
  c.model = model;
  c.n = n;
  c.m_cap = m;
  c.seed = seed;
  return c;
}

struct RunningMean {
  double sum = 0, sum_sq = 0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double se() const {
    const double m = mean();
    const double var = (sum_sq / static_cast<double>(count) - m * m) * count / (count - 1.0);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
  }
};

// Per-node mean in-degree over `runs` seeds.
std::vector<RunningMean> node_means(FormationConfig c, std::size_t runs) {
  std::vector<RunningMean> out(c.n);
  for (std::size_t r = 0; r < runs; ++r) {
    c.seed = 1000 + r;
    const auto in = generate(c).in_degrees();
    for (std::size_t i = 0; i < c.n; ++i) out[i].add(static_cast<double>(in[i]));
  }
  return out;
}

TEST(FormationConfig, Validation) {
  EXPECT_THROW(make(Model::meritocracy, 1, 1).validate(), ValidationError);
  EXPECT_THROW(make(Model::meritocracy, 5, 0).validate(), ValidationError);
  EXPECT_THROW(make(Model::meritocracy, 5, 5).validate(), ValidationError);
  auto c = make(Model::hybrid, 5, 2);
  c.p = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = make(Model::er_directed, 5, 2);
  c.density = -0.1;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_NO_THROW(make(Model::meritocracy, 5, 4).validate());
}

TEST(FormationConfig, GeneratorRejectsWrongModel) {
  RandomSource rng(1);
  EXPECT_THROW(generate_matthew(make(Model::meritocracy, 5, 2), rng), ValidationError);
  EXPECT_THROW(parse_model("barabasi"), ValidationError);
  EXPECT_EQ(parse_model("merit"), Model::meritocracy);
  EXPECT_EQ(parse_model("er"), Model::er_directed);
}

class MeritEngines : public ::testing::TestWithParam<MeritEngine> {
 protected:
  FormationConfig merit(std::size_t n, std::size_t m, std::uint64_t seed = 1) const {
    auto c = make(Model::meritocracy, n, m, seed);
    c.merit_engine = GetParam();
    return c;
  }
};

TEST_P(MeritEngines, TwoNodesForced) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = generate(merit(2, 1, seed));
    EXPECT_EQ(g.edge_count(), 2u);
    EXPECT_TRUE(g.has_edge(1, 2));
    EXPECT_TRUE(g.has_edge(2, 1));
  }
}

TEST_P(MeritEngines, TopNodeAlwaysFollowedByBothOthersAtThreeNodes) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_EQ(generate(merit(3, 2, seed)).in_degree(1), 2u);
  }
}

TEST_P(MeritEngines, RecordAndEquilibriumProperties) {
  RandomSource pick(99);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + pick.uniform_index(40);
    const std::size_t m = 1 + pick.uniform_index(n - 1);
    const auto g = generate(merit(n, m, trial));
    ASSERT_EQ(check_invariants(g), "");
    for (NodeId i = 1; i <= n; ++i) {
      const auto followees = g.out_neighbors(i);
      ASSERT_GE(followees.size(), 1u);
      ASSERT_LE(followees.size(), m);
      for (std::size_t k = 1; k < followees.size(); ++k) ASSERT_LT(followees[k], followees[k - 1]);
      const bool reached_best = g.has_edge(i, best_other(i));
      ASSERT_TRUE(reached_best || followees.size() == m);
      // The best node ends the chain.
      if (reached_best) ASSERT_EQ(followees.back(), best_other(i));
    }
  }
}

// Monte Carlo means against exact enumeration, 4 standard errors.
TEST_P(MeritEngines, MeansMatchEnumerationOracle) {
  const std::size_t n = 5, m = 2;
  const auto oracle = theory::brute_force_oracle(n, m);
  const auto means = node_means(merit(n, m), 20000);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(means[i].mean(), oracle.values[i], 4 * means[i].se() + 1e-12) << "node " << i + 1;
  }
}

INSTANTIATE_TEST_SUITE_P(Formation, MeritEngines,
                         ::testing::Values(MeritEngine::records, MeritEngine::event_loop));

TEST(Meritocracy, DeterministicForSeed) {
  const auto c = make(Model::meritocracy, 500, 5, 42);
  EXPECT_EQ(generate(c), generate(c));
  auto other = c;
  other.seed = 43;
  EXPECT_FALSE(generate(c) == generate(other));
}

TEST(Matthew, TwoNodesForced) {
  const auto g = generate(make(Model::matthew, 2, 1));
  EXPECT_EQ(to_edge_list(g), "1,2\n2,1\n");
}

TEST(Matthew, EveryNodeHoldsExactlyMOutLinks) {
  RandomSource pick(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + pick.uniform_index(60);
    const std::size_t m = 1 + pick.uniform_index(n - 1);
    const auto g = generate(make(Model::matthew, n, m, trial));
    ASSERT_EQ(check_invariants(g), "");
    ASSERT_EQ(g.edge_count(), n * m);
    for (NodeId i = 1; i <= n; ++i) ASSERT_EQ(g.out_degree(i), m);
  }
}

// Exact law of the largest in-degree, by enumerating the capped
// preferential-attachment chain: uniform source below the cap, target
// weight in_degree + 1 renormalised over legal targets. Memoised on the
// follow matrix (one bit per ordered pair).
class MatthewEnumerator {
 public:
  MatthewEnumerator(std::size_t n, std::size_t m) : n_(n), m_(m) {}

  std::map<std::size_t, double> law() { return solve(0); }

 private:
  bool follows(std::uint32_t state, std::size_t i, std::size_t j) const {
    return (state >> (i * n_ + j)) & 1u;
  }

  const std::map<std::size_t, double>& solve(std::uint32_t state) {
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    std::vector<std::size_t> in(n_, 0), out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (follows(state, i, j)) {
          ++in[j];
          ++out[i];
        }
      }
    }
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < n_; ++i) {
      if (out[i] < m_) active.push_back(i);
    }
    std::map<std::size_t, double> result;
    if (active.empty()) {
      result[*std::max_element(in.begin(), in.end())] = 1.0;
    }
    for (std::size_t i : active) {
      double total = 0;
      for (std::size_t j = 0; j < n_; ++j) {
        if (j != i && !follows(state, i, j)) total += static_cast<double>(in[j] + 1);
      }
      for (std::size_t j = 0; j < n_; ++j) {
        if (j == i || follows(state, i, j)) continue;
        const double pj = static_cast<double>(in[j] + 1) / total / static_cast<double>(active.size());
        for (auto [value, prob] : solve(state | (1u << (i * n_ + j)))) result[value] += pj * prob;
      }
    }
    return memo_[state] = std::move(result);
  }

  std::size_t n_, m_;
  std::map<std::uint32_t, std::map<std::size_t, double>> memo_;
};

TEST(Matthew, MaxInDegreeLawMatchesExactEnumeration) {
  for (auto [n, m] : {std::pair<std::size_t, std::size_t>{4, 1}, {4, 2}, {5, 2}}) {
    const auto law = MatthewEnumerator(n, m).law();
    const int runs = 40000;
    std::map<std::size_t, double> hits;
    for (int r = 0; r < runs; ++r) {
      const auto in = generate(make(Model::matthew, n, m, 500 + r)).in_degrees();
      hits[*std::max_element(in.begin(), in.end())] += 1;
    }
    for (auto [value, count] : hits) ASSERT_TRUE(law.count(value)) << "impossible max " << value;
    double chi2 = 0;
    std::size_t classes = 0;
    for (auto [value, prob] : law) {
      const double expected = prob * runs;
      if (expected < 10) continue;
      chi2 += (hits[value] - expected) * (hits[value] - expected) / expected;
      ++classes;
    }
    ASSERT_GE(classes, 2u);
    // 0.999 quantile of chi-square with up to 4 degrees of freedom.
    EXPECT_LT(chi2, 18.47) << "n=" << n << " m=" << m;
  }
}

// Literal per-event / per-node hybrid loop, including the rejected
// meritocracy attempts that generate_hybrid skips.
DirectedGraph literal_hybrid(const FormationConfig& c, RandomSource& rng) {
  const std::size_t n = c.n;
  DirectedGraph g(n);
  std::vector<double> merit_prob(n + 1, c.p);
  if (c.mixing == HybridMixing::per_node) {
    for (std::size_t i = 1; i <= n; ++i) merit_prob[i] = rng.bernoulli(c.p) ? 1.0 : 0.0;
  }
  std::vector<NodeId> best(n + 1, static_cast<NodeId>(n + 1));
  auto is_active = [&](NodeId i) {
    if (g.out_degree(i) >= c.m_cap) return false;
    // A pure-meritocracy node that already follows the best other node is done.
    return !(merit_prob[i] == 1.0 && best[i] == best_other(i));
  };
  for (;;) {
    std::vector<NodeId> active;
    for (NodeId i = 1; i <= n; ++i) {
      if (is_active(i)) active.push_back(i);
    }
    if (active.empty()) break;
    const NodeId i = active[rng.uniform_index(active.size())];
    if (rng.bernoulli(merit_prob[i])) {
      NodeId j = static_cast<NodeId>(1 + rng.uniform_index(n - 1));
      if (j >= i) ++j;
      if (j < best[i]) {
        g.add_edge(i, j);
        best[i] = j;
      }
    } else {
      double total = 0;
      for (NodeId j = 1; j <= n; ++j) {
        if (j != i && !g.has_edge(i, j)) total += static_cast<double>(g.in_degree(j) + 1);
      }
      double u = rng.uniform_real() * total;
      NodeId pick = 0;
      for (NodeId j = 1; j <= n; ++j) {
        if (j == i || g.has_edge(i, j)) continue;
        pick = j;
        u -= static_cast<double>(g.in_degree(j) + 1);
        if (u < 0) break;
      }
      g.add_edge(i, pick);
      best[i] = std::min(best[i], pick);
    }
  }
  return g;
}

class HybridMixings : public ::testing::TestWithParam<HybridMixing> {};

TEST_P(HybridMixings, AgreesWithLiteralEventLoop) {
  auto c = make(Model::hybrid, 5, 2);
  c.p = 0.5;
  c.mixing = GetParam();
  const std::size_t runs = 20000;
  std::vector<RunningMean> fast(c.n), slow(c.n);
  RunningMean fast_edges, slow_edges;
  for (std::size_t r = 0; r < runs; ++r) {
    c.seed = 7000 + r;
    RandomSource a(c.seed), b(c.seed + 1'000'000);
    const auto g1 = generate_hybrid(c, a);
    const auto g2 = literal_hybrid(c, b);
    ASSERT_EQ(check_invariants(g1), "");
    for (NodeId i = 1; i <= c.n; ++i) {
      fast[i - 1].add(static_cast<double>(g1.in_degree(i)));
      slow[i - 1].add(static_cast<double>(g2.in_degree(i)));
    }
    fast_edges.add(static_cast<double>(g1.edge_count()));
    slow_edges.add(static_cast<double>(g2.edge_count()));
  }
  for (std::size_t i = 0; i < c.n; ++i) {
    const double se = std::hypot(fast[i].se(), slow[i].se());
    EXPECT_NEAR(fast[i].mean(), slow[i].mean(), 4.5 * se) << "node " << i + 1;
  }
  EXPECT_NEAR(fast_edges.mean(), slow_edges.mean(), 4.5 * std::hypot(fast_edges.se(), slow_edges.se()));
}

TEST_P(HybridMixings, EndpointsReduceToPureModels) {
  const std::size_t n = 60, m = 3, runs = 3000;
  auto hybrid = make(Model::hybrid, n, m);
  hybrid.mixing = GetParam();

  hybrid.p = 1.0;
  const auto h1 = node_means(hybrid, runs);
  const auto merit = node_means(make(Model::meritocracy, n, m), runs);
  hybrid.p = 0.0;
  const auto h0 = node_means(hybrid, runs);
  const auto matthew = node_means(make(Model::matthew, n, m), runs);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_NEAR(h1[i].mean(), merit[i].mean(), 4.5 * std::hypot(h1[i].se(), merit[i].se()))
        << "p=1 node " << i + 1;
    EXPECT_NEAR(h0[i].mean(), matthew[i].mean(), 4.5 * std::hypot(h0[i].se(), matthew[i].se()) + 1e-12)
        << "p=0 node " << i + 1;
  }
}

TEST_P(HybridMixings, InvariantsAcrossRandomConfigs) {
  RandomSource pick(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + pick.uniform_index(50);
    auto c = make(Model::hybrid, n, 1 + pick.uniform_index(n - 1), trial);
    c.p = pick.uniform_real();
    c.mixing = GetParam();
    const auto g = generate(c);
    ASSERT_EQ(check_invariants(g), "");
    for (NodeId i = 1; i <= n; ++i) ASSERT_LE(g.out_degree(i), c.m_cap);
    // Below p = 1 the Matthew mechanism keeps every node linking until the cap.
    if (c.mixing == HybridMixing::per_event) ASSERT_EQ(g.edge_count(), n * c.m_cap);
  }
}

INSTANTIATE_TEST_SUITE_P(Formation, HybridMixings,
                         ::testing::Values(HybridMixing::per_node, HybridMixing::per_event));

TEST(ErDirected, DensityEndpoints) {
  auto c = make(Model::er_directed, 4, 1);
  c.density = 0.0;
  EXPECT_EQ(generate(c).edge_count(), 0u);
  c.density = 1.0;
  const auto full = generate(c);
  EXPECT_EQ(full.edge_count(), 12u);
  EXPECT_EQ(check_invariants(full), "");
}

TEST(ErDirected, EdgeCountConcentratesOnBinomialMean) {
  const std::size_t n = 2000;
  auto c = make(Model::er_directed, n, 5);
  c.density = matched_density(n, 5);
  RunningMean edges;
  for (std::uint64_t s = 0; s < 20; ++s) {
    c.seed = s;
    const auto g = generate(c);
    ASSERT_EQ(check_invariants(g), "");
    edges.add(static_cast<double>(g.edge_count()));
  }
  // n(n-1) * density = 5n; binomial sd of the 20-run mean is about 22.
  EXPECT_NEAR(edges.mean(), 5.0 * n, 100.0);
}

TEST(ErDirected, PairFrequenciesAreUniform) {
  auto c = make(Model::er_directed, 4, 1);
  c.density = 0.3;
  std::vector<std::vector<double>> hits(5, std::vector<double>(5, 0));
  const int runs = 20000;
  for (int r = 0; r < runs; ++r) {
    c.seed = r;
    const auto g = generate(c);
    for (NodeId i = 1; i <= 4; ++i) {
      for (NodeId j : g.out_neighbors(i)) hits[i][j] += 1;
    }
  }
  const double se = std::sqrt(0.3 * 0.7 / runs);
  for (NodeId i = 1; i <= 4; ++i) {
    EXPECT_EQ(hits[i][i], 0);
    for (NodeId j = 1; j <= 4; ++j) {
      if (i != j) EXPECT_NEAR(hits[i][j] / runs, 0.3, 4 * se);
    }
  }
}

}  // namespace
}  // namespace netforge
