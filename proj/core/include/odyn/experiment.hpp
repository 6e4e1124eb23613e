#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odyn/dynamics.hpp"
#include "odyn/graph.hpp"
#include "odyn/randgen.hpp"
#include "odyn/thresholds.hpp"

namespace odyn {

// c(n) given either as a resolved number or as a named schedule evaluated at
// the generator's n. Whether a schedule satisfies the asymptotic conditions
// is the caller's responsibility.
struct CSchedule {
  enum class Kind { Constant, LnLnLn } kind = Kind::Constant;
  double value = 0.0;  // Constant only

  double evaluate(int n) const;

  // "lnlnln", "constant:<a>", "neg-constant:<a>", or a plain number.
  static CSchedule parse(const std::string& text);
  std::string to_string() const;
};

enum class GeneratorModel { Er, Rin, Hetero, Figure1 };

struct GeneratorSpec {
  GeneratorModel model = GeneratorModel::Er;
  int n = 0;  // nodes (per community for rin; even total for figure1)
  int k = 2;  // rin communities
  int r = 1;
  CSchedule c;
  std::optional<double> p_override;
  std::optional<EdgeProbabilityMatrix> p_matrix;  // hetero
  std::vector<Graph> intra;                       // rin
  double p_scale = 1.0;  // multiplier on the derived probability

  int total_nodes() const;
  // Edge probability after schedule evaluation, scaling and clamping.
  // Meaningless for figure1; hetero reports the scaled matrix minimum.
  double edge_probability(bool* clamped = nullptr) const;
  Graph sample(std::uint64_t seed) const;
};

struct ThresholdSource {
  enum class Kind {
    Canonical,  // figure1 only: the construction's all-ones assignment
    Default,    // default_threshold_distribution(n, r, rbar)
    Fixed,
    Explicit,
  } kind = Kind::Canonical;
  int fixed_t = 0;
  int rbar = 0;
  std::vector<double> probs;

  ThresholdAssignment sample(const GeneratorSpec& gen, int n_total,
                             std::uint64_t seed) const;
};

enum class CheckMode {
  RobustExact,
  RobustHalfsize,
  ConsensusRandomInit,
  ConsensusWitnessInit,
  MinDegree,
  Connectivity,
};

struct SweepSpec {
  enum class Variable { C, N, PScale } variable = Variable::C;
  std::vector<double> grid;
};

struct TrialSpec {
  GeneratorSpec gen;
  ThresholdSource thresholds;
  CheckMode mode = CheckMode::Connectivity;
  int trials = 0;
  std::optional<std::uint64_t> master_seed;
  DynamicsConfig dynamics;
  int bisections = 10;          // extra 0/1 initial conditions per consensus trial
  std::optional<int> min_degree_target;  // MinDegree mode; defaults to r
  int workers = 1;
  std::optional<SweepSpec> sweep;

  void validate() const;

  static TrialSpec from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// One Monte Carlo outcome. Everything except wall_ms is a pure function of
// (spec, index); wall_ms is measured and excluded from the CSV so record
// files are byte-reproducible.
struct TrialRecord {
  int index = 0;
  std::uint64_t seed = 0;
  bool success = false;
  double value = 0.0;  // numeric outcome (0/1 for boolean modes)
  int steps = 0;       // dynamics steps used; 0 for structural modes
  double wall_ms = 0.0;
};

// Runs exactly spec.trials trials; trial i derives its seed from
// (master_seed, i) so records are independent of execution order and worker
// count.
std::vector<TrialRecord> run_trials(const TrialSpec& spec);

struct Summary {
  int trials = 0;
  int successes = 0;
  double fraction = 0.0;
  double wilson_lo = 0.0;  // Wilson 95% interval
  double wilson_hi = 0.0;
  double mean_steps = 0.0;
  double total_ms = 0.0;
};

Summary summarize(std::span<const TrialRecord> records);

struct SweepRow {
  double grid_value = 0.0;
  Summary summary;
};

// Re-runs the spec once per grid value with the sweep variable substituted.
// The master seed is reused at every point, so per-pair uniforms are shared
// and monotone effects show up as monotone fractions.
std::vector<SweepRow> phase_sweep(const TrialSpec& base,
                                  SweepSpec::Variable variable,
                                  std::span<const double> grid);

// "trial,seed,outcome,steps,ms" rows; ms is written as 0 (see TrialRecord).
std::string records_to_csv(std::span<const TrialRecord> records);
// "grid_value,fraction,lo95,hi95,trials" rows.
std::string sweep_to_csv(std::span<const SweepRow> rows);
std::string summary_to_json_text(const Summary& summary);

}  // namespace odyn
