#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "netforge/errors.hpp"
#include "netforge/formation.hpp"
#include "netforge/graph.hpp"
#include "netforge/io.hpp"
#include "netforge/metrics.hpp"
#include "netforge/svg.hpp"

#ifndef NETFORGE_VERSION
#define NETFORGE_VERSION "0.1.0"
#endif

namespace netforge::experiment {

using json = nlohmann::json;

struct ExperimentSpec {
  FormationConfig base;
  std::size_t runs = 1;
  std::uint64_t seed_base = 0;
  std::vector<double> sweep_p;
  std::vector<std::size_t> sweep_n;
  std::string outputs;
  bool emit_plots = false;
  metrics::MetricsOptions metrics;

  void validate() const {
    if (runs < 1) throw ValidationError("runs must be at least 1");
    base.validate();
    for (double p : sweep_p) {
      if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("sweep p values must lie in [0,1]");
    }
    for (std::size_t n : sweep_n) {
      if (n < 2 || base.m_cap > n - 1) throw ValidationError("sweep n values must exceed m_cap");
    }
    if (metrics.xmin < 1) throw ValidationError("xmin must be at least 1");
  }
};

namespace detail {

inline std::string_view mixing_name(HybridMixing m) {
  return m == HybridMixing::per_node ? "per_node" : "per_event";
}

inline HybridMixing parse_mixing(std::string_view s) {
  if (s == "per_node" || s == "per-node") return HybridMixing::per_node;
  if (s == "per_event" || s == "per-event") return HybridMixing::per_event;
  throw ValidationError("unknown mixing \"" + std::string(s) + "\"");
}

inline std::string_view engine_name(MeritEngine e) {
  return e == MeritEngine::records ? "records" : "event_loop";
}

inline MeritEngine parse_engine(std::string_view s) {
  if (s == "records") return MeritEngine::records;
  if (s == "event_loop" || s == "event-loop") return MeritEngine::event_loop;
  throw ValidationError("unknown merit engine \"" + std::string(s) + "\"");
}

template <typename T>
T read_key(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("spec key \"") + key + "\": " + e.what());
  }
}

}  // namespace detail

inline json to_json(const FormationConfig& c) {
  return {{"model", std::string(to_string(c.model))},
          {"n", c.n},
          {"m_cap", c.m_cap},
          {"p", c.p},
          {"density", c.density},
          {"mixing", std::string(detail::mixing_name(c.mixing))},
          {"merit_engine", std::string(detail::engine_name(c.merit_engine))}};
}

inline json to_json(const ExperimentSpec& s) {
  json j = to_json(s.base);
  j["runs"] = s.runs;
  j["seed_base"] = s.seed_base;
  j["sweep_p"] = s.sweep_p;
  j["sweep_n"] = s.sweep_n;
  j["outputs"] = s.outputs;
  j["emit_plots"] = s.emit_plots;
  j["xmin"] = s.metrics.xmin;
  j["path_stats"] = s.metrics.paths;
  j["clustering"] = s.metrics.clustering;
  return j;
}

// Flat spec.json. Required: model, n, m_cap, runs. Unknown keys are rejected.
// For er_directed an absent density defaults to m_cap / (n - 1), the density
// of an m_cap-out-regular graph.
inline ExperimentSpec spec_from_json(const json& j) {
  static const std::set<std::string> kKnown = {
      "model", "n", "m_cap", "p", "density", "mixing", "merit_engine", "runs", "seed_base",
      "sweep_p", "sweep_n", "outputs", "emit_plots", "xmin", "path_stats", "clustering"};
  if (!j.is_object()) throw ValidationError("spec must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKnown.count(key)) throw ValidationError("unknown spec key \"" + key + "\"");
  }
  for (const char* key : {"model", "n", "m_cap", "runs"}) {
    if (!j.contains(key)) throw ValidationError(std::string("spec is missing \"") + key + "\"");
  }
  ExperimentSpec s;
  s.base.model = parse_model(detail::read_key<std::string>(j, "model"));
  s.base.n = detail::read_key<std::size_t>(j, "n");
  s.base.m_cap = detail::read_key<std::size_t>(j, "m_cap");
  s.runs = detail::read_key<std::size_t>(j, "runs");
  if (j.contains("p")) s.base.p = detail::read_key<double>(j, "p");
  if (j.contains("density")) {
    s.base.density = detail::read_key<double>(j, "density");
  } else if (s.base.model == Model::er_directed && s.base.n >= 2) {
    s.base.density = matched_density(s.base.n, s.base.m_cap);
  }
  if (j.contains("mixing")) s.base.mixing = detail::parse_mixing(detail::read_key<std::string>(j, "mixing"));
  if (j.contains("merit_engine")) {
    s.base.merit_engine = detail::parse_engine(detail::read_key<std::string>(j, "merit_engine"));
  }
  if (j.contains("seed_base")) s.seed_base = detail::read_key<std::uint64_t>(j, "seed_base");
  if (j.contains("sweep_p")) s.sweep_p = detail::read_key<std::vector<double>>(j, "sweep_p");
  if (j.contains("sweep_n")) s.sweep_n = detail::read_key<std::vector<std::size_t>>(j, "sweep_n");
  if (j.contains("outputs")) s.outputs = detail::read_key<std::string>(j, "outputs");
  if (j.contains("emit_plots")) s.emit_plots = detail::read_key<bool>(j, "emit_plots");
  if (j.contains("xmin")) s.metrics.xmin = detail::read_key<std::size_t>(j, "xmin");
  if (j.contains("path_stats")) s.metrics.paths = detail::read_key<bool>(j, "path_stats");
  if (j.contains("clustering")) s.metrics.clustering = detail::read_key<bool>(j, "clustering");
  s.validate();
  return s;
}

inline ExperimentSpec load_spec(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return spec_from_json(j);
}

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // sample variance; 0 for a single value
  std::size_t count = 0;

  double sd() const { return std::sqrt(variance); }
};

inline Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  for (double v : values) s.mean += v;
  s.mean /= static_cast<double>(values.size());
  if (values.size() > 1) {
    for (double v : values) s.variance += (v - s.mean) * (v - s.mean);
    s.variance /= static_cast<double>(values.size() - 1);
  }
  return s;
}

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t edge_count = 0;
  metrics::MetricsReport report;
};

struct Provenance {
  json config;
  std::vector<std::uint64_t> seeds;
  std::string timestamp;
  std::string tool_version = NETFORGE_VERSION;
  std::vector<std::string> notes;
};

struct ResultSet {
  std::vector<RunRecord> runs;
  // r-th largest in-degree averaged over runs.
  std::vector<double> mean_rank_curve;
  // Mean in-degree of node id i (index 0 is node 1).
  std::vector<double> mean_indegree_by_node;
  // Pooled in-degree CCDF over all runs.
  std::vector<std::pair<std::size_t, double>> pooled_ccdf;
  std::map<std::string, Summary> scalars;
  std::optional<double> gini_of_mean_curve;
  Provenance provenance;
};

struct RunOptions {
  // Fixed provenance timestamp; otherwise SOURCE_DATE_EPOCH, then the clock.
  std::optional<std::string> timestamp;
};

inline std::string utc_timestamp(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

inline std::string provenance_timestamp(const RunOptions& options) {
  if (options.timestamp) return *options.timestamp;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    return utc_timestamp(static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10)));
  }
  return utc_timestamp(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now()));
}

// Generates `runs` graphs with seeds seed_base + r and aggregates their
// metrics. Any failing run aborts the batch.
inline ResultSet run_batch(const ExperimentSpec& spec, const RunOptions& options = {}) {
  spec.validate();
  const std::size_t n = spec.base.n;
  ResultSet out;
  out.mean_rank_curve.assign(n, 0.0);
  out.mean_indegree_by_node.assign(n, 0.0);
  std::vector<std::size_t> pooled;
  pooled.reserve(n * spec.runs);
  std::map<std::string, std::vector<double>> scalar_values;

  for (std::size_t r = 0; r < spec.runs; ++r) {
    FormationConfig config = spec.base;
    config.seed = spec.seed_base + r;
    const DirectedGraph g = generate(config);
    RunRecord record{config.seed, g.edge_count(), metrics::compute_report(g, spec.metrics)};
    const auto in = g.in_degrees();
    for (std::size_t i = 0; i < n; ++i) {
      out.mean_indegree_by_node[i] += static_cast<double>(in[i]);
      out.mean_rank_curve[i] += record.report.rank_curve[i];
    }
    pooled.insert(pooled.end(), in.begin(), in.end());

    scalar_values["edge_count"].push_back(static_cast<double>(g.edge_count()));
    const auto& rep = record.report;
    if (rep.gini) scalar_values["gini"].push_back(*rep.gini);
    if (rep.alpha_hat) scalar_values["alpha_hat"].push_back(*rep.alpha_hat);
    if (rep.diameter) scalar_values["diameter"].push_back(static_cast<double>(*rep.diameter));
    if (rep.avg_path_length) scalar_values["avg_path_length"].push_back(*rep.avg_path_length);
    if (rep.avg_clustering) scalar_values["avg_clustering"].push_back(*rep.avg_clustering);

    out.provenance.seeds.push_back(config.seed);
    out.runs.push_back(std::move(record));
  }

  const double runs = static_cast<double>(spec.runs);
  for (double& v : out.mean_rank_curve) v /= runs;
  for (double& v : out.mean_indegree_by_node) v /= runs;
  out.pooled_ccdf = metrics::degree_distribution(pooled).ccdf;
  for (const auto& [name, values] : scalar_values) out.scalars[name] = summarize(values);
  if (std::any_of(out.mean_rank_curve.begin(), out.mean_rank_curve.end(),
                  [](double v) { return v > 0.0; })) {
    out.gini_of_mean_curve = metrics::gini(out.mean_rank_curve);
  }

  out.provenance.config = to_json(spec);
  out.provenance.timestamp = provenance_timestamp(options);
  if (spec.base.model == Model::hybrid) {
    out.provenance.notes.push_back("hybrid mixing: " + std::string(detail::mixing_name(spec.base.mixing)));
  }
  return out;
}

struct SweepRow {
  double p = 0.0;
  Summary gini;  // per-run Gini
  std::optional<double> gini_of_mean_curve;
  ResultSet batch;
};

// One hybrid batch per mixing probability.
inline std::vector<SweepRow> hybrid_sweep(const ExperimentSpec& spec, const std::vector<double>& ps,
                                          const RunOptions& options = {}) {
  if (ps.empty()) throw ValidationError("sweep needs at least one p value");
  std::vector<SweepRow> rows;
  for (double p : ps) {
    ExperimentSpec one = spec;
    one.base.model = Model::hybrid;
    one.base.p = p;
    one.sweep_p.clear();
    SweepRow row;
    row.p = p;
    row.batch = run_batch(one, options);
    row.gini = row.batch.scalars.count("gini") ? row.batch.scalars.at("gini") : Summary{};
    row.gini_of_mean_curve = row.batch.gini_of_mean_curve;
    rows.push_back(std::move(row));
  }
  return rows;
}

struct ScalingRow {
  std::size_t n = 0;
  Summary diameter;
  Summary avg_path_length;
  double log2_n = 0.0;
};

// Mean diameter and path length per network size, beside the log2 N
// benchmark.
inline std::vector<ScalingRow> small_world_scaling(const ExperimentSpec& spec,
                                                   const std::vector<std::size_t>& sizes,
                                                   const RunOptions& options = {}) {
  if (sizes.empty()) throw ValidationError("scaling needs at least one n");
  if (!std::is_sorted(sizes.begin(), sizes.end())) throw ValidationError("n list must be ascending");
  std::vector<ScalingRow> rows;
  for (std::size_t n : sizes) {
    ExperimentSpec one = spec;
    one.base.n = n;
    one.sweep_n.clear();
    one.metrics.paths = true;
    if (one.base.model == Model::er_directed) one.base.density = matched_density(n, one.base.m_cap);
    const ResultSet batch = run_batch(one, options);
    ScalingRow row;
    row.n = n;
    if (batch.scalars.count("diameter")) row.diameter = batch.scalars.at("diameter");
    if (batch.scalars.count("avg_path_length")) row.avg_path_length = batch.scalars.at("avg_path_length");
    row.log2_n = std::log2(static_cast<double>(n));
    rows.push_back(row);
  }
  return rows;
}

struct EmpiricalResult {
  std::vector<double> raw;
  std::vector<double> normalized;
  double scale = 1.0;
  double target_mean = 0.0;
  double gini = 0.0;
  std::vector<metrics::RankEntry> rank_curve;
};

inline constexpr double kDefaultTargetMean = 5.0;

// One follower count per line, or "user_id,followers" with an optional
// header line. Counts are rescaled
// so their mean equals target_mean.
inline EmpiricalResult empirical_ingest_text(const std::string& text, double target_mean) {
  if (!(target_mean > 0.0)) throw ValidationError("target mean must be positive");
  EmpiricalResult out;
  out.target_mean = target_mean;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = netforge::detail::trim(line);
    if (view.empty()) continue;
    const auto comma = view.rfind(',');
    if (comma != std::string_view::npos) view = netforge::detail::trim(view.substr(comma + 1));
    const std::string field(view);
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size() || !std::isfinite(value)) {
      // A column header such as "user_id,followers" may open the file.
      if (comma != std::string_view::npos && out.raw.empty() && !header_seen) {
        header_seen = true;
        continue;
      }
      throw ParseError(line_no, "non-numeric follower count \"" + field + "\"");
    }
    if (value < 0.0) throw ParseError(line_no, "negative follower count");
    out.raw.push_back(value);
  }
  if (out.raw.empty()) throw ParseError(line_no == 0 ? 1 : line_no, "no follower counts");
  double total = 0.0;
  for (double v : out.raw) total += v;
  if (total <= 0.0) throw ValidationError("follower counts are all zero");
  out.scale = target_mean * static_cast<double>(out.raw.size()) / total;
  out.normalized.reserve(out.raw.size());
  for (double v : out.raw) out.normalized.push_back(v * out.scale);
  out.gini = metrics::gini(out.normalized);
  out.rank_curve = metrics::rank_curve(out.normalized);
  return out;
}

inline EmpiricalResult empirical_ingest(const std::filesystem::path& path, double target_mean) {
  return empirical_ingest_text(io::read_file(path), target_mean);
}

// ---- serialization ----

inline json to_json(const Summary& s) {
  return {{"mean", s.mean}, {"variance", s.variance}, {"count", s.count}};
}

inline Summary summary_from_json(const json& j) {
  return {j.at("mean").get<double>(), j.at("variance").get<double>(), j.at("count").get<std::size_t>()};
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

inline json to_json(const metrics::MetricsReport& r) {
  json hist = json::object();
  for (auto [d, count] : r.degree_histogram) hist[std::to_string(d)] = count;
  json ccdf = json::array();
  for (auto [d, p] : r.ccdf) ccdf.push_back({d, p});
  return {{"degree_histogram", hist},
          {"ccdf", ccdf},
          {"alpha_hat", optional_json(r.alpha_hat)},
          {"xmin_used", r.xmin_used},
          {"gini", optional_json(r.gini)},
          {"diameter", optional_json(r.diameter)},
          {"avg_path_length", optional_json(r.avg_path_length)},
          {"avg_clustering", optional_json(r.avg_clustering)},
          {"rank_curve", r.rank_curve}};
}

inline metrics::MetricsReport report_from_json(const json& j) {
  metrics::MetricsReport r;
  for (const auto& [key, count] : j.at("degree_histogram").items()) {
    r.degree_histogram[std::stoul(key)] = count.get<std::size_t>();
  }
  for (const auto& pair : j.at("ccdf")) {
    r.ccdf.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<double>());
  }
  r.alpha_hat = optional_from<double>(j.at("alpha_hat"));
  r.xmin_used = j.at("xmin_used").get<std::size_t>();
  r.gini = optional_from<double>(j.at("gini"));
  r.diameter = optional_from<std::size_t>(j.at("diameter"));
  r.avg_path_length = optional_from<double>(j.at("avg_path_length"));
  r.avg_clustering = optional_from<double>(j.at("avg_clustering"));
  r.rank_curve = j.at("rank_curve").get<std::vector<double>>();
  return r;
}

inline json to_json(const ResultSet& rs) {
  json runs = json::array();
  for (const auto& run : rs.runs) {
    runs.push_back({{"seed", run.seed}, {"edge_count", run.edge_count}, {"metrics", to_json(run.report)}});
  }
  json scalars = json::object();
  for (const auto& [name, s] : rs.scalars) scalars[name] = to_json(s);
  json ccdf = json::array();
  for (auto [d, p] : rs.pooled_ccdf) ccdf.push_back({d, p});
  return {{"runs", runs},
          {"mean_rank_curve", rs.mean_rank_curve},
          {"mean_indegree_by_node", rs.mean_indegree_by_node},
          {"pooled_ccdf", ccdf},
          {"scalars", scalars},
          {"gini_of_mean_curve", optional_json(rs.gini_of_mean_curve)},
          {"provenance",
           {{"config", rs.provenance.config},
            {"seeds", rs.provenance.seeds},
            {"timestamp", rs.provenance.timestamp},
            {"tool_version", rs.provenance.tool_version},
            {"notes", rs.provenance.notes}}}};
}

inline ResultSet result_set_from_json(const json& j) {
  ResultSet rs;
  for (const auto& run : j.at("runs")) {
    rs.runs.push_back({run.at("seed").get<std::uint64_t>(), run.at("edge_count").get<std::size_t>(),
                       report_from_json(run.at("metrics"))});
  }
  rs.mean_rank_curve = j.at("mean_rank_curve").get<std::vector<double>>();
  rs.mean_indegree_by_node = j.at("mean_indegree_by_node").get<std::vector<double>>();
  for (const auto& pair : j.at("pooled_ccdf")) {
    rs.pooled_ccdf.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<double>());
  }
  for (const auto& [name, s] : j.at("scalars").items()) rs.scalars[name] = summary_from_json(s);
  rs.gini_of_mean_curve = optional_from<double>(j.at("gini_of_mean_curve"));
  const auto& prov = j.at("provenance");
  rs.provenance.config = prov.at("config");
  rs.provenance.seeds = prov.at("seeds").get<std::vector<std::uint64_t>>();
  rs.provenance.timestamp = prov.at("timestamp").get<std::string>();
  rs.provenance.tool_version = prov.at("tool_version").get<std::string>();
  rs.provenance.notes = prov.at("notes").get<std::vector<std::string>>();
  return rs;
}

// ---- export ----

inline std::string format_number(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

inline std::string rank_curve_csv(const std::vector<double>& curve, const std::string& value_name) {
  std::string out = "rank," + value_name + "\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    out += std::to_string(i + 1) + "," + format_number(curve[i]) + "\n";
  }
  return out;
}

inline std::string ccdf_csv(const std::vector<std::pair<std::size_t, double>>& ccdf) {
  std::string out = "indegree,ccdf\n";
  for (auto [d, p] : ccdf) out += std::to_string(d) + "," + format_number(p) + "\n";
  return out;
}

inline std::vector<std::pair<double, double>> rank_points(const std::vector<double>& curve) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) pts.emplace_back(static_cast<double>(i + 1), curve[i]);
  return pts;
}

// metrics.json, rank_curve.csv, degree_ccdf.csv (plus per_node_indegree.csv
// for the meritocracy model and SVG charts when requested). Every file is
// replaced atomically.
inline void export_results(const ResultSet& rs, const std::filesystem::path& dir, bool emit_plots) {
  io::ensure_directory(dir);
  io::write_atomic(dir / "metrics.json", to_json(rs).dump(2) + "\n");
  io::write_atomic(dir / "rank_curve.csv", rank_curve_csv(rs.mean_rank_curve, "mean_indegree"));
  io::write_atomic(dir / "degree_ccdf.csv", ccdf_csv(rs.pooled_ccdf));
  const bool merit = rs.provenance.config.value("model", "") == "meritocracy";
  if (merit) {
    std::string per_node = "node,mean_indegree\n";
    for (std::size_t i = 0; i < rs.mean_indegree_by_node.size(); ++i) {
      per_node += std::to_string(i + 1) + "," + format_number(rs.mean_indegree_by_node[i]) + "\n";
    }
    io::write_atomic(dir / "per_node_indegree.csv", per_node);
  }
  if (emit_plots) {
    const auto rank_pts = rank_points(rs.mean_rank_curve);
    io::write_atomic(dir / "rank_curve.svg",
                     svg::loglog_chart(rank_pts, "Mean in-degree by rank", "rank", "mean in-degree"));
    std::vector<std::pair<double, double>> ccdf_pts;
    for (auto [d, p] : rs.pooled_ccdf) ccdf_pts.emplace_back(static_cast<double>(d), p);
    io::write_atomic(dir / "degree_ccdf.svg",
                     svg::loglog_chart(ccdf_pts, "In-degree CCDF", "in-degree", "P[D >= d]"));
  }
}

inline std::string p_label(double p) {
  std::ostringstream out;
  out << p;
  return out.str();
}

// sweep.csv plus one rank-curve CSV (and optional chart) per p.
inline void export_sweep(const std::vector<SweepRow>& rows, const std::filesystem::path& dir,
                         bool emit_plots) {
  io::ensure_directory(dir);
  std::string table = "p,gini_mean,gini_sd,gini_of_mean_curve,runs\n";
  json summary = json::array();
  for (const auto& row : rows) {
    table += format_number(row.p) + "," + format_number(row.gini.mean) + "," +
             format_number(row.gini.sd()) + "," +
             (row.gini_of_mean_curve ? format_number(*row.gini_of_mean_curve) : std::string("")) +
             "," + std::to_string(row.gini.count) + "\n";
    const std::string label = p_label(row.p);
    io::write_atomic(dir / ("rank_curve_p" + label + ".csv"),
                     rank_curve_csv(row.batch.mean_rank_curve, "mean_indegree"));
    if (emit_plots) {
      const auto pts = rank_points(row.batch.mean_rank_curve);
      io::write_atomic(dir / ("rank_curve_p" + label + ".svg"),
                       svg::loglog_chart(pts, "Mean in-degree by rank, p=" + label, "rank",
                                         "mean in-degree"));
    }
    summary.push_back({{"p", row.p},
                       {"gini", to_json(row.gini)},
                       {"gini_of_mean_curve", optional_json(row.gini_of_mean_curve)},
                       {"provenance", to_json(row.batch)["provenance"]}});
  }
  io::write_atomic(dir / "sweep.csv", table);
  io::write_atomic(dir / "sweep.json", summary.dump(2) + "\n");
}

inline void export_scaling(const std::vector<ScalingRow>& rows, const std::filesystem::path& dir) {
  io::ensure_directory(dir);
  std::string table = "n,diameter_mean,diameter_sd,apl_mean,apl_sd,log2_n\n";
  for (const auto& row : rows) {
    table += std::to_string(row.n) + "," + format_number(row.diameter.mean) + "," +
             format_number(row.diameter.sd()) + "," + format_number(row.avg_path_length.mean) + "," +
             format_number(row.avg_path_length.sd()) + "," + format_number(row.log2_n) + "\n";
  }
  io::write_atomic(dir / "small_world.csv", table);
}

inline void export_empirical(const EmpiricalResult& r, const std::filesystem::path& dir,
                             bool target_mean_defaulted) {
  io::ensure_directory(dir);
  std::string csv = "rank,normalized_followers\n";
  for (const auto& e : r.rank_curve) csv += std::to_string(e.rank) + "," + format_number(e.value) + "\n";
  io::write_atomic(dir / "empirical_rank_curve.csv", csv);
  json j = {{"users", r.raw.size()},
            {"target_mean", r.target_mean},
            {"target_mean_defaulted", target_mean_defaulted},
            {"scale", r.scale},
            {"gini", r.gini}};
  io::write_atomic(dir / "empirical.json", j.dump(2) + "\n");
}

}  // namespace netforge::experiment
