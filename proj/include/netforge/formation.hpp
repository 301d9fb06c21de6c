#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netforge/errors.hpp"
#include "netforge/graph.hpp"
#include "netforge/random.hpp"
#include "netforge/sampling.hpp"

namespace netforge {

enum class Model { meritocracy, matthew, hybrid, er_directed };

inline std::string_view to_string(Model m) {
  switch (m) {
    case Model::meritocracy: return "meritocracy";
    case Model::matthew: return "matthew";
    case Model::hybrid: return "hybrid";
    case Model::er_directed: return "er_directed";
  }
  return "unknown";
}

// Accepts the canonical names plus the short CLI spellings.
inline Model parse_model(std::string_view name) {
  if (name == "meritocracy" || name == "merit") return Model::meritocracy;
  if (name == "matthew") return Model::matthew;
  if (name == "hybrid") return Model::hybrid;
  if (name == "er_directed" || name == "er") return Model::er_directed;
  throw ValidationError("unknown model \"" + std::string(name) + "\"");
}

// How the meritocracy process is simulated. Both engines produce the same
// equilibrium distribution.
enum class MeritEngine {
  // Per-node record chain: each accepted followee is uniform among the
  // candidates strictly better than the previous one.
  records,
  // Literal event loop: uniform active node, uniform candidate, reject
  // anything that does not beat every current followee.
  event_loop,
};

// Granularity of the hybrid model's coin flip between mechanisms.
enum class HybridMixing {
  // Each node draws its mechanism once, with probability p for meritocracy.
  per_node,
  // Every link-formation event draws the mechanism afresh.
  per_event,
};

struct FormationConfig {
  Model model = Model::meritocracy;
  std::size_t n = 2;
  std::size_t m_cap = 1;
  double p = 0.0;        // hybrid only: probability of the meritocracy mechanism
  double density = 0.0;  // er_directed only: edge probability
  std::uint64_t seed = 0;
  MeritEngine merit_engine = MeritEngine::records;
  HybridMixing mixing = HybridMixing::per_node;

  void validate() const {
    if (n < 2) throw ValidationError("n must be at least 2");
    if (n > std::numeric_limits<NodeId>::max()) throw ValidationError("n too large");
    if (m_cap < 1) throw ValidationError("m_cap must be at least 1");
    if (m_cap > n - 1) throw ValidationError("m_cap must not exceed n-1");
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("p must lie in [0,1]");
    if (!(density >= 0.0 && density <= 1.0)) throw ValidationError("density must lie in [0,1]");
  }
};

// The node a meritocracy follower ultimately aims for: node 1, or node 2 for
// node 1 itself.
inline NodeId best_other(NodeId i) { return i == 1 ? 2 : 1; }

namespace detail {

// Maps k in [0, count) onto the k-th node of {1..limit} \ {self}.
inline NodeId nth_other(std::uint64_t k, NodeId self) {
  auto id = static_cast<NodeId>(k + 1);
  return id >= self ? id + 1 : id;
}

// Number of nodes other than self with index below bound.
inline std::size_t better_than(NodeId bound, NodeId self) {
  if (bound <= 1) return 0;
  return bound - 1 - (self < bound ? 1 : 0);
}

inline void require_model(const FormationConfig& config, Model expected) {
  config.validate();
  if (config.model != expected) {
    throw ValidationError("config model is " + std::string(to_string(config.model)) +
                          ", expected " + std::string(to_string(expected)));
  }
}

inline DirectedGraph merit_records(const FormationConfig& config, RandomSource& rng) {
  DirectedGraph g(config.n);
  const auto n = static_cast<NodeId>(config.n);
  for (NodeId i = 1; i <= n; ++i) {
    const NodeId target = best_other(i);
    NodeId current = nth_other(rng.uniform_index(n - 1), i);
    g.add_edge(i, current);
    std::size_t links = 1;
    while (links < config.m_cap && current != target) {
      current = nth_other(rng.uniform_index(better_than(current, i)), i);
      g.add_edge(i, current);
      ++links;
    }
  }
  return g;
}

inline DirectedGraph merit_event_loop(const FormationConfig& config, RandomSource& rng) {
  DirectedGraph g(config.n);
  const auto n = static_cast<NodeId>(config.n);
  std::vector<NodeId> active(n);
  for (NodeId i = 1; i <= n; ++i) active[i - 1] = i;
  // Index of the best current followee; n + 1 stands for "none yet".
  std::vector<NodeId> best(n + 1, n + 1);
  while (!active.empty()) {
    const std::size_t slot = rng.uniform_index(active.size());
    const NodeId i = active[slot];
    const NodeId j = nth_other(rng.uniform_index(n - 1), i);
    if (j >= best[i]) continue;
    g.add_edge(i, j);
    best[i] = j;
    if (g.out_degree(i) == config.m_cap || j == best_other(i)) {
      active[slot] = active.back();
      active.pop_back();
    }
  }
  return g;
}

// Draws a legal Matthew target for source i: weight in_degree + 1, excluding
// i and its current followees by redraw.
inline NodeId matthew_target(const DirectedGraph& g, const WeightedSampler<std::uint64_t>& weights,
                             NodeId i, RandomSource& rng) {
  for (;;) {
    const auto j = static_cast<NodeId>(weights.sample(rng) + 1);
    if (j == i) continue;
    const auto followees = g.out_neighbors(i);
    if (std::find(followees.begin(), followees.end(), j) != followees.end()) continue;
    return j;
  }
}

}  // namespace detail

// Meritocracy equilibrium graph: each node follows a chain of ever-better
// nodes until it reaches the best other node or holds m_cap followees.
inline DirectedGraph generate_meritocracy(const FormationConfig& config, RandomSource& rng) {
  detail::require_model(config, Model::meritocracy);
  if (config.merit_engine == MeritEngine::event_loop) return detail::merit_event_loop(config, rng);
  return detail::merit_records(config, rng);
}

// Capped preferential attachment with a virtual self-link: target weight is
// in_degree + 1, sources are uniform among nodes below the cap, and the
// process stops with exactly m_cap out-links per node.
inline DirectedGraph generate_matthew(const FormationConfig& config, RandomSource& rng) {
  detail::require_model(config, Model::matthew);
  DirectedGraph g(config.n);
  const auto n = static_cast<NodeId>(config.n);
  WeightedSampler<std::uint64_t> weights(n, 1);
  std::vector<NodeId> active(n);
  for (NodeId i = 1; i <= n; ++i) active[i - 1] = i;
  while (!active.empty()) {
    const std::size_t slot = rng.uniform_index(active.size());
    const NodeId i = active[slot];
    const NodeId j = detail::matthew_target(g, weights, i, rng);
    g.add_edge(i, j);
    weights.add(j - 1, 1);
    if (g.out_degree(i) == config.m_cap) {
      active[slot] = active.back();
      active.pop_back();
    }
  }
  return g;
}

// Mixture of the two mechanisms. Each event picks an active node uniformly
// and either tries one meritocracy step (uniform candidate, accepted only if
// it beats every current followee) or adds one Matthew edge. With per_node
// mixing a node's mechanism is fixed up front with probability p; with
// per_event mixing the coin is flipped on every event.
//
// Rejected meritocracy steps leave the state untouched, so they are skipped:
// node i is chosen with weight matthew_i + merit_i * s_i / (n-1), where s_i
// counts candidates better than its best followee and matthew_i, merit_i are
// the mechanism probabilities for that node.
inline DirectedGraph generate_hybrid(const FormationConfig& config, RandomSource& rng) {
  detail::require_model(config, Model::hybrid);
  DirectedGraph g(config.n);
  const auto n = static_cast<NodeId>(config.n);
  const double others = static_cast<double>(n - 1);

  std::vector<double> merit_prob(n + 1, config.p);
  if (config.mixing == HybridMixing::per_node) {
    for (NodeId i = 1; i <= n; ++i) merit_prob[i] = rng.bernoulli(config.p) ? 1.0 : 0.0;
  }

  WeightedSampler<std::uint64_t> in_weights(n, 1);
  WeightedSampler<double> node_weights(n, 0.0);
  std::vector<NodeId> best(n + 1, n + 1);
  std::vector<std::size_t> better(n + 1, n - 1);

  auto merit_share = [&](NodeId i) {
    return merit_prob[i] * static_cast<double>(better[i]) / others;
  };
  auto event_weight = [&](NodeId i) {
    if (g.out_degree(i) >= config.m_cap) return 0.0;
    return (1.0 - merit_prob[i]) + merit_share(i);
  };
  std::size_t active = 0;
  for (NodeId i = 1; i <= n; ++i) {
    const double w = event_weight(i);
    node_weights.set(i - 1, w);
    if (w > 0.0) ++active;
  }

  while (active > 0) {
    const auto i = static_cast<NodeId>(node_weights.sample(rng) + 1);
    const double w = node_weights.weight(i - 1);
    if (w <= 0.0) continue;  // rounding in the partial sums
    NodeId j = 0;
    if (rng.uniform_real() * w < merit_share(i)) {
      j = detail::nth_other(rng.uniform_index(better[i]), i);
    } else {
      j = detail::matthew_target(g, in_weights, i, rng);
    }
    g.add_edge(i, j);
    in_weights.add(j - 1, 1);
    if (j < best[i]) {
      best[i] = j;
      better[i] = detail::better_than(j, i);
    }
    const double updated = event_weight(i);
    node_weights.set(i - 1, updated);
    if (updated <= 0.0) --active;
  }
  return g;
}

// Directed Erdos-Renyi: each ordered pair (i, j), i != j, independently with
// probability density. Uses geometric skips over the n(n-1) pair indices.
inline DirectedGraph generate_er_directed(const FormationConfig& config, RandomSource& rng) {
  detail::require_model(config, Model::er_directed);
  DirectedGraph g(config.n);
  const std::uint64_t n = config.n;
  const std::uint64_t pairs = n * (n - 1);
  const double q = config.density;
  if (q <= 0.0) return g;
  auto emit = [&](std::uint64_t index) {
    const auto i = static_cast<NodeId>(index / (n - 1) + 1);
    g.add_edge(i, detail::nth_other(index % (n - 1), i));
  };
  if (q >= 1.0) {
    for (std::uint64_t k = 0; k < pairs; ++k) emit(k);
    return g;
  }
  const double log_miss = std::log1p(-q);
  std::uint64_t index = 0;
  for (;;) {
    const double skip = std::floor(std::log1p(-rng.uniform_real()) / log_miss);
    if (skip >= static_cast<double>(pairs - index)) break;
    index += static_cast<std::uint64_t>(skip);
    emit(index);
    ++index;
    if (index >= pairs) break;
  }
  return g;
}

// Density of a graph with the same edge count as an m_cap-regular out-degree
// graph: m_cap * n / (n (n - 1)).
inline double matched_density(std::size_t n, std::size_t m_cap) {
  return static_cast<double>(m_cap) / static_cast<double>(n - 1);
}

inline DirectedGraph generate(const FormationConfig& config, RandomSource& rng) {
  switch (config.model) {
    case Model::meritocracy: return generate_meritocracy(config, rng);
    case Model::matthew: return generate_matthew(config, rng);
    case Model::hybrid: return generate_hybrid(config, rng);
    case Model::er_directed: return generate_er_directed(config, rng);
  }
  throw ValidationError("unknown model");
}

inline DirectedGraph generate(const FormationConfig& config) {
  RandomSource rng(config.seed);
  return generate(config, rng);
}

}  // namespace netforge
