// netforge: command-line front end for the formation models, the analytical
// curves, graph metrics and batch experiments.
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 property
// violation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netforge/netforge.hpp"

namespace {

using namespace netforge;

constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitProperty = 3;

struct PropertyViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) io::ensure_directory(target.parent_path());
  io::write_atomic(target, text);
}

struct GenerateArgs {
  std::string model;
  std::size_t n = 0;
  std::size_t m = 0;
  std::optional<double> p;
  std::optional<double> density;
  std::uint64_t seed = 0;
  std::string out;
  std::string mixing = "per-node";
  std::string engine = "records";
};

int run_generate(const GenerateArgs& a) {
  FormationConfig c;
  c.model = parse_model(a.model);
  c.n = a.n;
  c.m_cap = a.m;
  c.p = a.p.value_or(0.0);
  if (c.model == Model::hybrid && !a.p) throw ValidationError("--p is required for the hybrid model");
  c.density = a.density ? *a.density : (a.n >= 2 ? matched_density(a.n, a.m) : 0.0);
  c.seed = a.seed;
  c.mixing = experiment::detail::parse_mixing(a.mixing);
  c.merit_engine = experiment::detail::parse_engine(a.engine);
  const DirectedGraph g = generate(c);
  if (const std::string broken = check_invariants(g); !broken.empty()) {
    throw PropertyViolation("generated graph violates invariants: " + broken);
  }
  const std::string text = to_edge_list(g);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  std::cerr << "model=" << to_string(c.model) << " n=" << c.n << " m=" << c.m_cap
            << " edges=" << g.edge_count() << " seed=" << c.seed << '\n';
  return 0;
}

struct TheoryArgs {
  std::string formula;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string out;
  bool check_crossing = false;
};

int run_theory(const TheoryArgs& a) {
  const auto formula = theory::parse_formula(a.formula);
  const theory::Curve curve = theory::evaluate(formula, a.n, a.m);
  std::ostringstream csv;
  theory::write_curve_csv(curve, formula, csv);
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text(a.out, csv.str());
  }
  if (a.check_crossing) {
    const auto merit = theory::merit_approx_curve(a.n, a.m);
    const auto matthew = theory::matthew_approx_curve(a.n, a.m);
    const auto report = theory::single_crossing_index(merit.values, matthew.values);
    std::cerr << "merit-approx vs matthew-approx: " << report.sign_changes << " sign change(s)";
    if (report.rank) std::cerr << ", crossing at rank " << *report.rank;
    std::cerr << '\n';
    if (!report.single()) throw PropertyViolation("curves do not cross exactly once");
  }
  return 0;
}

struct MetricsArgs {
  std::string in;
  std::size_t xmin = 10;
  std::optional<std::size_t> n;
};

int run_metrics(const MetricsArgs& a) {
  const std::string text = io::read_file(a.in);
  std::size_t n = 0;
  if (a.n) {
    n = *a.n;
  } else {
    std::istringstream scan(text);
    for (auto [from, to] : parse_edge_pairs(scan)) n = std::max<std::size_t>({n, from, to});
    n = std::max<std::size_t>(n, 2);
  }
  const DirectedGraph g = from_edge_list(text, n);
  metrics::MetricsOptions options;
  options.xmin = a.xmin;
  std::cout << experiment::to_json(metrics::compute_report(g, options)).dump(2) << '\n';
  return 0;
}

int run_experiment(const std::string& spec_path, const std::string& out_dir) {
  experiment::ExperimentSpec spec = experiment::load_spec(spec_path);
  const std::string dir = out_dir.empty() ? spec.outputs : out_dir;
  if (dir.empty()) throw ValidationError("no output directory (--out or \"outputs\")");
  const auto result = experiment::run_batch(spec);
  experiment::export_results(result, dir, spec.emit_plots);
  if (!spec.sweep_n.empty()) {
    experiment::export_scaling(experiment::small_world_scaling(spec, spec.sweep_n), dir);
  }
  if (!spec.sweep_p.empty()) {
    experiment::export_sweep(experiment::hybrid_sweep(spec, spec.sweep_p), dir, spec.emit_plots);
  }
  std::cerr << "wrote " << dir << '\n';
  return 0;
}

std::vector<double> parse_p_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad p value \"" + item + "\"");
    }
  }
  if (out.empty()) throw ValidationError("empty p list");
  return out;
}

int run_sweep(const std::string& spec_path, const std::string& p_list, const std::string& out_dir) {
  experiment::ExperimentSpec spec = experiment::load_spec(spec_path);
  const std::string dir = out_dir.empty() ? spec.outputs : out_dir;
  if (dir.empty()) throw ValidationError("no output directory (--out or \"outputs\")");
  const std::vector<double> ps = p_list.empty() ? spec.sweep_p : parse_p_list(p_list);
  const auto rows = experiment::hybrid_sweep(spec, ps);
  experiment::export_sweep(rows, dir, spec.emit_plots);
  for (const auto& row : rows) {
    std::cout << "p=" << row.p << " gini=" << row.gini.mean << " sd=" << row.gini.sd() << '\n';
  }
  return 0;
}

int run_empirical(const std::string& in, std::optional<double> target_mean, const std::string& out_dir) {
  const double mean = target_mean.value_or(experiment::kDefaultTargetMean);
  const auto result = experiment::empirical_ingest(in, mean);
  experiment::export_empirical(result, out_dir, !target_mean.has_value());
  std::cout << "users=" << result.raw.size() << " gini=" << result.gini << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"netforge: meritocracy / Matthew-effect network formation toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate one graph as an edge list");
  generate_cmd->add_option("--model", gen.model, "merit | matthew | hybrid | er")->required();
  generate_cmd->add_option("--n", gen.n, "Node count")->required();
  generate_cmd->add_option("--m", gen.m, "Out-degree cap M")->required();
  generate_cmd->add_option("--p", gen.p, "Hybrid meritocracy probability");
  generate_cmd->add_option("--density", gen.density, "ER edge probability (default M/(n-1))");
  generate_cmd->add_option("--seed", gen.seed, "RNG seed")->required();
  generate_cmd->add_option("--out", gen.out, "Edge-list file (default stdout)");
  generate_cmd->add_option("--mixing", gen.mixing, "Hybrid mixing: per-node | per-event");
  generate_cmd->add_option("--engine", gen.engine, "Meritocracy engine: records | event-loop");

  TheoryArgs th;
  auto* theory_cmd = app.add_subcommand("theory", "Evaluate an expected in-degree curve");
  theory_cmd->add_option("--formula", th.formula, "recursion | exact | merit-approx | matthew-approx | oracle")
      ->required();
  theory_cmd->add_option("--n", th.n, "Node count")->required();
  theory_cmd->add_option("--m", th.m, "Out-degree cap M")->required();
  theory_cmd->add_option("--out", th.out, "CSV file (default stdout)");
  theory_cmd->add_flag("--check-crossing", th.check_crossing,
                       "Exit 3 unless the two approximations cross exactly once");

  MetricsArgs met;
  auto* metrics_cmd = app.add_subcommand("metrics", "Structural metrics of an edge-list file as JSON");
  metrics_cmd->add_option("--in", met.in, "Edge-list file")->required();
  metrics_cmd->add_option("--xmin", met.xmin, "Power-law fit lower cutoff");
  metrics_cmd->add_option("--n", met.n, "Node count (default: largest id)");

  std::string spec_path;
  std::string out_dir;
  auto* experiment_cmd = app.add_subcommand("experiment", "Run a batch described by spec.json");
  experiment_cmd->add_option("--spec", spec_path, "spec.json")->required();
  experiment_cmd->add_option("--out", out_dir, "Output directory");

  std::string p_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "Hybrid Gini sweep over mixing probabilities");
  sweep_cmd->add_option("--spec", spec_path, "spec.json")->required();
  sweep_cmd->add_option("--p", p_list, "Comma-separated p values");
  sweep_cmd->add_option("--out", out_dir, "Output directory");

  std::string followers;
  std::optional<double> target_mean;
  auto* empirical_cmd = app.add_subcommand("empirical", "Normalise follower counts; rank curve and Gini");
  empirical_cmd->add_option("--in", followers, "Follower-count CSV")->required();
  empirical_cmd->add_option("--target-mean", target_mean, "Mean after normalisation (default 5)");
  empirical_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*generate_cmd) return run_generate(gen);
    if (*theory_cmd) return run_theory(th);
    if (*metrics_cmd) return run_metrics(met);
    if (*experiment_cmd) return run_experiment(spec_path, out_dir);
    if (*sweep_cmd) return run_sweep(spec_path, p_list, out_dir);
    if (*empirical_cmd) return run_empirical(followers, target_mean, out_dir);
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << '\n';
    return kExitProperty;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}
