#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "netforge/errors.hpp"
#include "netforge/graph.hpp"
#include "netforge/random.hpp"

namespace netforge::metrics {

struct DegreeDistribution {
  std::map<std::size_t, std::size_t> histogram;
  // (d, P[D >= d]) for every observed d, ascending in d.
  std::vector<std::pair<std::size_t, double>> ccdf;
};

inline DegreeDistribution degree_distribution(std::span<const std::size_t> values) {
  DegreeDistribution out;
  for (std::size_t d : values) ++out.histogram[d];
  std::size_t remaining = values.size();
  for (auto [d, count] : out.histogram) {
    out.ccdf.emplace_back(d, static_cast<double>(remaining) / static_cast<double>(values.size()));
    remaining -= count;
  }
  return out;
}

inline DegreeDistribution degree_distribution(const DirectedGraph& g) {
  const auto in = g.in_degrees();
  return degree_distribution(in);
}

inline constexpr std::size_t kMinTailObservations = 50;

struct PowerLawFit {
  double alpha = 0.0;
  std::size_t xmin = 0;
  std::size_t tail_size = 0;
};

// Discrete power-law exponent by the continuous-approximation MLE
// alpha = 1 + n_tail / sum log(d / (xmin - 1/2)) over d >= xmin.
inline PowerLawFit fit_power_law(std::span<const std::size_t> values, std::size_t xmin) {
  if (xmin < 1) throw ValidationError("xmin must be at least 1");
  const double shift = static_cast<double>(xmin) - 0.5;
  std::size_t tail = 0;
  double log_sum = 0.0;
  std::size_t lo = SIZE_MAX;
  std::size_t hi = 0;
  for (std::size_t d : values) {
    if (d < xmin) continue;
    ++tail;
    log_sum += std::log(static_cast<double>(d) / shift);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  if (tail < kMinTailObservations) {
    throw InsufficientDataError("power-law fit needs " + std::to_string(kMinTailObservations) +
                                " observations >= xmin, got " + std::to_string(tail));
  }
  if (lo == hi) throw InsufficientDataError("power-law fit: tail has no variation");
  return {1.0 + static_cast<double>(tail) / log_sum, xmin, tail};
}

// Mean absolute pairwise difference over twice the mean, via the sorted form
// sum_i (2i - n - 1) x_(i) / (n sum x).
template <typename T>
double gini(std::span<const T> values) {
  if (values.empty()) throw ValidationError("gini of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  for (double v : sorted) {
    if (!(v >= 0.0)) throw ValidationError("gini requires non-negative values");
  }
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  if (total <= 0.0) throw ValidationError("gini undefined for an all-zero sample");
  const double n = static_cast<double>(sorted.size());
  double weighted = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    weighted += (2.0 * static_cast<double>(k + 1) - n - 1.0) * sorted[k];
  }
  return weighted / (n * total);
}

template <typename T>
double gini(const std::vector<T>& values) {
  return gini(std::span<const T>(values));
}

struct PathStats {
  std::optional<std::size_t> diameter;
  std::optional<double> avg_path_length;
  std::uint64_t reachable_pairs = 0;
  std::size_t sources = 0;
  bool sampled = false;
};

namespace detail {

// Compressed out-adjacency with 0-based ids.
struct Csr {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;

  explicit Csr(const DirectedGraph& g) : offsets(g.size() + 1, 0) {
    targets.reserve(g.edge_count());
    for (NodeId i = 1; i <= g.size(); ++i) {
      for (NodeId j : g.out_neighbors(i)) targets.push_back(j - 1);
      offsets[i] = targets.size();
    }
  }
};

}  // namespace detail

// Shortest directed paths along out-links from the given sources (0-based),
// 64 sources per sweep with one bit per source. Self-pairs and unreachable
// pairs are excluded; diameter is the largest finite distance.
inline PathStats path_stats_from(const DirectedGraph& g, std::span<const std::uint32_t> sources) {
  const detail::Csr csr(g);
  const std::size_t n = g.size();
  std::vector<std::uint64_t> seen(n);
  std::vector<std::uint64_t> frontier(n);
  std::vector<std::uint64_t> next(n);
  std::uint64_t pairs = 0;
  std::uint64_t total_length = 0;
  std::size_t diameter = 0;

  for (std::size_t base = 0; base < sources.size(); base += 64) {
    std::fill(seen.begin(), seen.end(), 0);
    std::fill(frontier.begin(), frontier.end(), 0);
    const std::size_t batch = std::min<std::size_t>(64, sources.size() - base);
    for (std::size_t b = 0; b < batch; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      seen[sources[base + b]] |= bit;
      frontier[sources[base + b]] |= bit;
    }
    for (std::size_t level = 1;; ++level) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t u = 0; u < n; ++u) {
        const std::uint64_t bits = frontier[u];
        if (bits == 0) continue;
        for (std::size_t e = csr.offsets[u]; e < csr.offsets[u + 1]; ++e) next[csr.targets[e]] |= bits;
      }
      std::uint64_t discovered = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const std::uint64_t fresh = next[v] & ~seen[v];
        seen[v] |= fresh;
        frontier[v] = fresh;
        discovered += static_cast<std::uint64_t>(std::popcount(fresh));
      }
      if (discovered == 0) break;
      pairs += discovered;
      total_length += discovered * level;
      diameter = std::max(diameter, level);
    }
  }

  PathStats out;
  out.sources = sources.size();
  out.reachable_pairs = pairs;
  if (pairs > 0) {
    out.diameter = diameter;
    out.avg_path_length = static_cast<double>(total_length) / static_cast<double>(pairs);
  }
  return out;
}

// Exact all-source path statistics.
inline PathStats path_stats(const DirectedGraph& g) {
  std::vector<std::uint32_t> sources(g.size());
  std::iota(sources.begin(), sources.end(), 0u);
  return path_stats_from(g, sources);
}

// Approximate statistics from k distinct random sources; intended for graphs
// too large for the exact sweep. Result is flagged as sampled.
inline PathStats path_stats_sampled(const DirectedGraph& g, std::size_t k, RandomSource& rng) {
  std::vector<std::uint32_t> all(g.size());
  std::iota(all.begin(), all.end(), 0u);
  k = std::min(k, all.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(all[i], all[i + rng.uniform_index(all.size() - i)]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  PathStats out = path_stats_from(g, all);
  out.sampled = true;
  return out;
}

struct Clustering {
  std::vector<double> per_node;  // index 0 is node 1
  double average = 0.0;
};

// With b_ij = a_ij + a_ji,
//   C_i = (1/2) sum_{j != i} sum_{k != i,j} b_ij b_jk b_ki / (s_i (s_i - 1)),
// s_i = sum_j b_ij. Nodes with s_i <= 1 get C_i = 0 and still count in the
// average.
inline Clustering clustering(const DirectedGraph& g) {
  const std::size_t n = g.size();
  // Symmetrised neighbourhoods carrying b_ij.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint8_t>>> sym(n);
  {
    std::vector<std::map<std::uint32_t, std::uint8_t>> acc(n);
    for (NodeId i = 1; i <= n; ++i) {
      for (NodeId j : g.out_neighbors(i)) {
        ++acc[i - 1][j - 1];
        ++acc[j - 1][i - 1];
      }
    }
    for (std::size_t i = 0; i < n; ++i) sym[i].assign(acc[i].begin(), acc[i].end());
  }

  Clustering out;
  out.per_node.assign(n, 0.0);
  std::vector<std::uint8_t> mark(n, 0);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double strength = 0.0;
    for (auto [j, b] : sym[i]) {
      mark[j] = b;
      strength += b;
    }
    if (strength > 1.0) {
      double triples = 0.0;
      for (auto [j, bij] : sym[i]) {
        for (auto [k, bjk] : sym[j]) {
          if (k == i || mark[k] == 0) continue;
          triples += static_cast<double>(bij) * bjk * mark[k];
        }
      }
      out.per_node[i] = 0.5 * triples / (strength * (strength - 1.0));
      sum += out.per_node[i];
    }
    for (auto [j, b] : sym[i]) mark[j] = 0;
  }
  out.average = sum / static_cast<double>(n);
  return out;
}

struct RankEntry {
  std::size_t rank;
  double value;
  std::size_t id;  // 1-based position in the input
};

// Descending by value; ties keep ascending input order.
template <typename T>
std::vector<RankEntry> rank_curve(std::span<const T> values) {
  std::vector<RankEntry> out(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    out[k] = {0, static_cast<double>(values[k]), k + 1};
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RankEntry& a, const RankEntry& b) { return a.value > b.value; });
  for (std::size_t k = 0; k < out.size(); ++k) out[k].rank = k + 1;
  return out;
}

template <typename T>
std::vector<RankEntry> rank_curve(const std::vector<T>& values) {
  return rank_curve(std::span<const T>(values));
}

struct MetricsOptions {
  std::size_t xmin = 10;
  bool paths = true;
  bool clustering = true;
};

struct MetricsReport {
  std::map<std::size_t, std::size_t> degree_histogram;
  std::vector<std::pair<std::size_t, double>> ccdf;
  std::optional<double> alpha_hat;
  std::size_t xmin_used = 0;
  std::optional<double> gini;
  std::optional<std::size_t> diameter;
  std::optional<double> avg_path_length;
  std::optional<double> avg_clustering;
  std::vector<double> rank_curve;
};

inline MetricsReport compute_report(const DirectedGraph& g, const MetricsOptions& options = {}) {
  MetricsReport r;
  const auto in = g.in_degrees();
  auto dist = degree_distribution(in);
  r.degree_histogram = std::move(dist.histogram);
  r.ccdf = std::move(dist.ccdf);
  r.xmin_used = options.xmin;
  try {
    r.alpha_hat = fit_power_law(in, options.xmin).alpha;
  } catch (const InsufficientDataError&) {
  }
  if (g.edge_count() > 0) r.gini = gini(in);
  if (options.paths) {
    const auto paths = path_stats(g);
    r.diameter = paths.diameter;
    r.avg_path_length = paths.avg_path_length;
  }
  if (options.clustering) r.avg_clustering = clustering(g).average;
  r.rank_curve.reserve(in.size());
  for (const auto& e : rank_curve(in)) r.rank_curve.push_back(e.value);
  return r;
}

}  // namespace netforge::metrics
