// Command-line front end: every subcommand reads/writes the shared graph JSON
// format and derives all randomness from one master seed.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "odyn/dynamics.hpp"
#include "odyn/error.hpp"
#include "odyn/experiment.hpp"
#include "odyn/graph_io.hpp"
#include "odyn/randgen.hpp"
#include "odyn/rng.hpp"
#include "odyn/robustness.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace odyn;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::string format = "json";
  int workers = 0;  // 0 = not set
};

std::uint64_t resolve_seed(const GlobalOptions& global,
                           std::optional<std::uint64_t> from_spec = {}) {
  if (global.seed) return *global.seed;
  if (from_spec) return *from_spec;
  std::random_device rd;
  std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  // Echo the pick so the run can be replayed.
  std::cerr << "seed: " << seed << "\n";
  return seed;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "cannot read " + path.string());
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
}

void emit(const std::string& text, const std::string& out_path) {
  if (!out_path.empty()) write_file(out_path, text);
  std::cout << text;
}

// Threshold flag: a JSON file (array or {"thresholds": [...]}), an inline
// "uniform:<t>", or an inline comma-separated list.
ThresholdAssignment parse_thresholds_arg(const std::string& arg, int n) {
  ThresholdAssignment out;
  if (fs::exists(arg)) {
    json doc;
    try {
      doc = json::parse(read_file(arg));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    const json* list = &doc;
    if (doc.is_object()) {
      auto it = doc.find("thresholds");
      if (it == doc.end()) {
        fail(ErrorCode::ParseError,
             arg + " has no \"thresholds\" field");
      }
      list = &*it;
    }
    if (!list->is_array()) {
      fail(ErrorCode::ParseError, arg + ": thresholds must be an array");
    }
    for (const json& v : *list) {
      if (!v.is_number_integer()) {
        fail(ErrorCode::ParseError, arg + ": thresholds must be integers");
      }
      out.t.push_back(v.get<int>());
    }
  } else if (arg.rfind("uniform:", 0) == 0) {
    int t = 0;
    try {
      t = std::stoi(arg.substr(8));
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad uniform threshold \"" + arg + "\"");
    }
    return ThresholdAssignment::uniform(n, t);
  } else {
    std::stringstream parts(arg);
    std::string item;
    while (std::getline(parts, item, ',')) {
      try {
        out.t.push_back(std::stoi(item));
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError,
             "bad threshold list \"" + arg + "\" (not a file, uniform:<t>, "
             "or comma-separated integers)");
      }
    }
  }
  out.validate_for(n);
  return out;
}

ThresholdAssignment resolve_thresholds(const GraphFile& file,
                                       const std::string& flag) {
  if (!flag.empty()) return parse_thresholds_arg(flag, file.graph.n());
  if (file.thresholds) return *file.thresholds;
  fail(ErrorCode::InvalidArgument,
       "no thresholds: pass --thresholds or store them in the graph file");
}

json nodeset_to_json(const NodeSet& s) { return json(s.indices()); }

// ---- generate ----------------------------------------------------------

struct GenerateOptions {
  std::string model;
  int n = 0;
  int r = 1;
  std::string c = "0";
  int k = 2;
  std::optional<double> p;
  double p_scale = 1.0;
  std::string p_matrix_file;
  std::vector<std::string> intra_files;
  std::string threshold_dist = "none";
  int rbar = -1;  // -1 = r + 2
  std::string out;
};

int run_generate(const GenerateOptions& opt, const GlobalOptions& global) {
  GeneratorSpec gen;
  gen.n = opt.n;
  gen.r = opt.r;
  gen.k = opt.k;
  gen.c = CSchedule::parse(opt.c);
  gen.p_override = opt.p;
  gen.p_scale = opt.p_scale;
  if (opt.model == "er") {
    gen.model = GeneratorModel::Er;
  } else if (opt.model == "rin") {
    gen.model = GeneratorModel::Rin;
  } else if (opt.model == "hetero") {
    gen.model = GeneratorModel::Hetero;
    if (opt.p_matrix_file.empty()) {
      fail(ErrorCode::InvalidArgument, "hetero model needs --p-matrix");
    }
    gen.p_matrix = EdgeProbabilityMatrix::from_json_text(
        read_file(opt.p_matrix_file));
  } else {
    gen.model = GeneratorModel::Figure1;
  }
  for (const std::string& path : opt.intra_files) {
    gen.intra.push_back(load_graph_file(path).graph);
  }

  std::uint64_t seed = resolve_seed(global);
  Graph g = gen.sample(seed);

  std::optional<ThresholdAssignment> thresholds;
  if (gen.model == GeneratorModel::Figure1) {
    thresholds = ThresholdAssignment::uniform(g.n(), 1);
  }
  if (opt.threshold_dist == "default") {
    int rbar = opt.rbar >= 0 ? opt.rbar : opt.r + 2;
    thresholds = sample_thresholds(
        default_threshold_distribution(gen.n, gen.r, rbar), g.n(), seed);
  } else if (opt.threshold_dist != "none") {
    json doc;
    try {
      doc = json::parse(read_file(opt.threshold_dist));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    const json* probs = &doc;
    if (doc.is_object()) {
      auto it = doc.find("probs");
      if (it == doc.end()) {
        fail(ErrorCode::ParseError,
             opt.threshold_dist + " has no \"probs\" field");
      }
      probs = &*it;
    }
    if (!probs->is_array()) {
      fail(ErrorCode::ParseError,
           opt.threshold_dist + ": probabilities must be an array");
    }
    std::vector<double> values;
    for (const json& v : *probs) values.push_back(v.get<double>());
    thresholds =
        sample_thresholds(ThresholdDistribution(values), g.n(), seed);
  }

  emit(graph_to_json(g, thresholds) + "\n", opt.out);
  return 0;
}

// ---- check -------------------------------------------------------------

struct CheckOptions {
  std::string graph_file;
  std::string thresholds;
  std::string mode = "exact";
  std::string out;
};

int run_check(const CheckOptions& opt) {
  GraphFile file = load_graph_file(opt.graph_file);
  ThresholdAssignment t = resolve_thresholds(file, opt.thresholds);

  json doc;
  if (opt.mode == "exact") {
    RobustnessVerdict verdict = is_robust_exact(file.graph, t);
    doc["robust"] = verdict.robust;
    if (verdict.witness) {
      doc["witness"] = json::array({nodeset_to_json(verdict.witness->first),
                                    nodeset_to_json(verdict.witness->second)});
    } else {
      doc["witness"] = nullptr;
    }
    doc["method"] = "exact";
  } else {
    // One-sided: robust=true means certified; robust=false only means the
    // certificate failed, with the offending set reported.
    HalfsizeCertificate cert = certify_robust_halfsize(file.graph, t);
    doc["robust"] = cert.certified;
    doc["witness"] = nullptr;
    doc["method"] = "halfsize";
    if (!cert.certified) {
      doc["inconclusive_set"] = nodeset_to_json(*cert.inconclusive_set);
    }
  }
  emit(doc.dump() + "\n", opt.out);
  return 0;
}

// ---- simulate ----------------------------------------------------------

struct SimulateOptions {
  std::string graph_file;
  std::string thresholds;
  std::string init = "uniform-random";
  double epsilon = 1e-9;
  int max_steps = 10000;
  std::string gap_out;
  std::string out;
};

int run_simulate(const SimulateOptions& opt, const GlobalOptions& global) {
  GraphFile file = load_graph_file(opt.graph_file);
  const Graph& g = file.graph;
  ThresholdAssignment t = resolve_thresholds(file, opt.thresholds);

  DynamicsConfig cfg;
  cfg.epsilon = opt.epsilon;
  cfg.max_steps = opt.max_steps;

  OpinionState x0;
  if (opt.init == "uniform-random") {
    StreamRng rng(resolve_seed(global), StreamPurpose::Opinions);
    x0.resize(static_cast<std::size_t>(g.n()));
    for (double& v : x0) v = rng.next_double();
  } else if (opt.init == "witness") {
    RobustnessVerdict verdict = is_robust_exact(g, t);
    if (verdict.robust) {
      fail(ErrorCode::InvalidArgument,
           "graph is robust; no witness initial condition exists");
    }
    x0 = witness_initial_condition(verdict.witness->first,
                                   verdict.witness->second, g.n());
  } else {
    json doc;
    try {
      doc = json::parse(read_file(opt.init));
    } catch (const nlohmann::json::parse_error& e) {
      fail(ErrorCode::ParseError, e.what());
    }
    if (!doc.is_array()) {
      fail(ErrorCode::ParseError,
           opt.init + ": initial state must be a JSON array of numbers");
    }
    for (const json& v : doc) {
      if (!v.is_number()) {
        fail(ErrorCode::ParseError, opt.init + ": opinions must be numbers");
      }
      x0.push_back(v.get<double>());
    }
  }

  SimulationResult res = simulate(g, t, x0, cfg);

  if (!opt.gap_out.empty()) {
    std::string csv = "k,gap\n";
    char line[64];
    for (std::size_t k = 0; k < res.gap_history.size(); ++k) {
      std::snprintf(line, sizeof(line), "%zu,%.17g\n", k, res.gap_history[k]);
      csv += line;
    }
    write_file(opt.gap_out, csv);
  }

  json doc;
  doc["verdict"] = res.verdict == SimVerdict::Consensus
                       ? "consensus"
                       : "no-consensus-within-budget";
  doc["steps"] = res.steps;
  doc["final_gap"] = res.final_gap;
  doc["final_state"] = res.final_state;
  emit(doc.dump() + "\n", opt.out);
  return 0;
}

// ---- witness -----------------------------------------------------------

struct WitnessOptions {
  std::string graph_file;
  std::string thresholds;
  std::string out;
};

int run_witness(const WitnessOptions& opt) {
  GraphFile file = load_graph_file(opt.graph_file);
  ThresholdAssignment t = resolve_thresholds(file, opt.thresholds);
  RobustnessVerdict verdict = is_robust_exact(file.graph, t);
  if (verdict.robust) {
    fail(ErrorCode::InvalidArgument, "graph is robust; no witness exists");
  }
  json doc;
  doc["s1"] = nodeset_to_json(verdict.witness->first);
  doc["s2"] = nodeset_to_json(verdict.witness->second);
  doc["x0"] = witness_initial_condition(verdict.witness->first,
                                        verdict.witness->second,
                                        file.graph.n());
  emit(doc.dump() + "\n", opt.out);
  return 0;
}

// ---- experiment / sweep ------------------------------------------------

TrialSpec load_spec(const std::string& path, const GlobalOptions& global) {
  TrialSpec spec = TrialSpec::from_json_text(read_file(path));
  spec.master_seed = resolve_seed(global, spec.master_seed);
  if (global.workers > 0) spec.workers = global.workers;
  return spec;
}

int run_experiment(const std::string& spec_file, const GlobalOptions& global) {
  TrialSpec spec = load_spec(spec_file, global);
  spec.sweep.reset();  // grid runs belong to the sweep subcommand
  std::vector<TrialRecord> records = run_trials(spec);
  Summary summary = summarize(records);

  fs::path dir(global.out_dir);
  write_file(dir / "records.csv", records_to_csv(records));
  write_file(dir / "summary.json", summary_to_json_text(summary) + "\n");
  std::cout << (global.format == "csv" ? records_to_csv(records)
                                       : summary_to_json_text(summary) + "\n");
  return 0;
}

int run_sweep(const std::string& spec_file, const GlobalOptions& global) {
  TrialSpec spec = load_spec(spec_file, global);
  if (!spec.sweep) {
    fail(ErrorCode::InvalidArgument,
         "spec has no \"sweep\" section; use the experiment subcommand");
  }
  SweepSpec sweep = *spec.sweep;
  std::vector<SweepRow> rows =
      phase_sweep(spec, sweep.variable, sweep.grid);

  std::string csv = sweep_to_csv(rows);
  write_file(fs::path(global.out_dir) / "sweep.csv", csv);
  if (global.format == "json") {
    json doc = json::array();
    for (const SweepRow& row : rows) {
      json entry;
      entry["grid_value"] = row.grid_value;
      entry["summary"] = json::parse(summary_to_json_text(row.summary));
      doc.push_back(std::move(entry));
    }
    std::cout << doc.dump() << "\n";
  } else {
    std::cout << csv;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  // Fixed program name keeps help output independent of the invocation path.
  CLI::App app{"Filtering-based opinion dynamics: robustness checking, "
               "simulation, and seeded Monte Carlo experiments",
               "odyn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Print help for every subcommand");

  GlobalOptions global;
  app.add_option("--seed", global.seed,
                 "Master seed (64-bit); omitted = random, echoed to stderr");
  app.add_option("--out-dir", global.out_dir,
                 "Directory for experiment/sweep outputs")
      ->capture_default_str();
  app.add_option("--format", global.format, "Stdout format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", global.workers,
                 "Worker threads for experiment/sweep (overrides the spec)");

  GenerateOptions gen_opt;
  CLI::App* gen = app.add_subcommand(
      "generate", "Sample a graph and write it as graph JSON");
  gen->fallthrough();
  gen->add_option("--model", gen_opt.model, "Graph family")
      ->required()
      ->check(CLI::IsMember({"er", "rin", "hetero", "figure1"}));
  gen->add_option("--n", gen_opt.n,
                  "Nodes (per community for rin; even total for figure1)")
      ->required();
  gen->add_option("--r", gen_opt.r, "Robustness parameter r in the formulas")
      ->capture_default_str();
  gen->add_option("--c", gen_opt.c,
                  "c(n): a number, lnlnln, constant:<a>, or neg-constant:<a>")
      ->capture_default_str();
  gen->add_option("--k", gen_opt.k, "Communities (rin)")->capture_default_str();
  gen->add_option("--p", gen_opt.p,
                  "Edge probability override (bypasses the formula)");
  gen->add_option("--p-scale", gen_opt.p_scale,
                  "Multiplier applied to the edge probability")
      ->capture_default_str();
  gen->add_option("--p-matrix", gen_opt.p_matrix_file,
                  "Per-pair probability matrix JSON (hetero)");
  gen->add_option("--intra", gen_opt.intra_files,
                  "Intra-community graph files (rin; repeat k times)");
  gen->add_option("--threshold-dist", gen_opt.threshold_dist,
                  "none, default, or a distribution JSON file")
      ->capture_default_str();
  gen->add_option("--rbar", gen_opt.rbar,
                  "Support bound for the default distribution (default r+2)");
  gen->add_option("--out", gen_opt.out, "Output file (default stdout)");

  CheckOptions check_opt;
  CLI::App* check =
      app.add_subcommand("check", "Decide robustness and report a witness");
  check->fallthrough();
  check->add_option("--graph", check_opt.graph_file, "Graph JSON file")
      ->required();
  check->add_option("--thresholds", check_opt.thresholds,
                    "Threshold file, uniform:<t>, or comma list");
  check->add_option("--mode", check_opt.mode, "exact or halfsize")
      ->check(CLI::IsMember({"exact", "halfsize"}))
      ->capture_default_str();
  check->add_option("--out", check_opt.out, "Verdict file (default stdout)");

  SimulateOptions sim_opt;
  CLI::App* sim =
      app.add_subcommand("simulate", "Run the filtered-averaging dynamics");
  sim->fallthrough();
  sim->add_option("--graph", sim_opt.graph_file, "Graph JSON file")->required();
  sim->add_option("--thresholds", sim_opt.thresholds,
                  "Threshold file, uniform:<t>, or comma list");
  sim->add_option("--init", sim_opt.init,
                  "uniform-random, witness, or a JSON state file")
      ->capture_default_str();
  sim->add_option("--epsilon", sim_opt.epsilon, "Consensus gap tolerance")
      ->capture_default_str();
  sim->add_option("--max-steps", sim_opt.max_steps, "Step budget")
      ->capture_default_str();
  sim->add_option("--gap-out", sim_opt.gap_out, "Write per-step gap CSV here");
  sim->add_option("--out", sim_opt.out, "Result file (default stdout)");

  WitnessOptions wit_opt;
  CLI::App* wit = app.add_subcommand(
      "witness", "Extract the frozen initial condition of a non-robust graph");
  wit->fallthrough();
  wit->add_option("--graph", wit_opt.graph_file, "Graph JSON file")->required();
  wit->add_option("--thresholds", wit_opt.thresholds,
                  "Threshold file, uniform:<t>, or comma list");
  wit->add_option("--out", wit_opt.out, "Output file (default stdout)");

  std::string experiment_spec;
  CLI::App* exp = app.add_subcommand(
      "experiment", "Run a seeded Monte Carlo batch from a spec file");
  exp->fallthrough();
  exp->add_option("--spec", experiment_spec, "Experiment spec JSON")
      ->required();

  std::string sweep_spec;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run a spec across its parameter grid");
  sweep->fallthrough();
  sweep->add_option("--spec", sweep_spec, "Experiment spec JSON with a sweep")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n"
              << "Run with --help for usage.\n";
    return 2;
  }

  try {
    if (app.got_subcommand(gen)) return run_generate(gen_opt, global);
    if (app.got_subcommand(check)) return run_check(check_opt);
    if (app.got_subcommand(sim)) return run_simulate(sim_opt, global);
    if (app.got_subcommand(wit)) return run_witness(wit_opt);
    if (app.got_subcommand(exp)) return run_experiment(experiment_spec, global);
    if (app.got_subcommand(sweep)) return run_sweep(sweep_spec, global);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
