#include "odyn/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <thread>

#include <json.hpp>

#include "odyn/error.hpp"
#include "odyn/graph_io.hpp"
#include "odyn/robustness.hpp"
#include "odyn/rng.hpp"

namespace odyn {

namespace {

using json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double parse_number(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    fail(ErrorCode::ParseError, "not a number: \"" + text + "\"");
  }
  return value;
}

}  // namespace

double CSchedule::evaluate(int n) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::LnLnLn:
      if (n < 16) {
        fail(ErrorCode::InvalidArgument,
             "the lnlnln schedule needs n >= 16");
      }
      return std::log(std::log(std::log(n)));
  }
  fail(ErrorCode::InvalidArgument, "unknown c schedule");
}

CSchedule CSchedule::parse(const std::string& text) {
  if (text == "lnlnln") return {Kind::LnLnLn, 0.0};
  if (text.rfind("constant:", 0) == 0) {
    return {Kind::Constant, parse_number(text.substr(9))};
  }
  if (text.rfind("neg-constant:", 0) == 0) {
    return {Kind::Constant, -parse_number(text.substr(13))};
  }
  return {Kind::Constant, parse_number(text)};
}

std::string CSchedule::to_string() const {
  return kind == Kind::LnLnLn ? "lnlnln" : fmt_double(value);
}

int GeneratorSpec::total_nodes() const {
  return model == GeneratorModel::Rin ? k * n : n;
}

double GeneratorSpec::edge_probability(bool* clamped) const {
  bool base_clamped = false;
  double base = 0.0;
  switch (model) {
    case GeneratorModel::Er: {
      ErParams params{n, r, p_override ? 0.0 : c.evaluate(n), p_override};
      base = params.edge_probability(&base_clamped);
      break;
    }
    case GeneratorModel::Rin: {
      RinParams params{k, n, r, p_override ? 0.0 : c.evaluate(n), p_override,
                       {}};
      base = params.edge_probability(&base_clamped);
      break;
    }
    case GeneratorModel::Hetero: {
      if (!p_matrix) {
        fail(ErrorCode::InvalidArgument,
             "hetero model needs an edge probability matrix");
      }
      double scaled_min = p_matrix->scaled(p_scale).min_off_diagonal();
      if (clamped != nullptr) {
        // The scaled copy silently caps entries at 1.
        bool any = false;
        for (int i = 0; i < p_matrix->n() && !any; ++i) {
          for (int j = i + 1; j < p_matrix->n() && !any; ++j) {
            any = p_matrix->at(i, j) * p_scale > 1.0;
          }
        }
        *clamped = any;
      }
      return scaled_min;
    }
    case GeneratorModel::Figure1:
      fail(ErrorCode::InvalidArgument,
           "the figure1 family has no edge probability parameter");
  }
  double scaled = base * p_scale;
  bool scale_clamped = scaled > 1.0;
  if (clamped != nullptr) *clamped = base_clamped || scale_clamped;
  return std::min(scaled, 1.0);
}

Graph GeneratorSpec::sample(std::uint64_t seed) const {
  switch (model) {
    case GeneratorModel::Er:
      return sample_er(n, edge_probability(), seed);
    case GeneratorModel::Rin: {
      RinParams params{k, n, r, 0.0, edge_probability(), intra};
      return sample_rin(params, seed);
    }
    case GeneratorModel::Hetero:
      if (!p_matrix) {
        fail(ErrorCode::InvalidArgument,
             "hetero model needs an edge probability matrix");
      }
      return sample_heterogeneous(p_matrix->scaled(p_scale), seed);
    case GeneratorModel::Figure1:
      return two_clique_counterexample(n).first;
  }
  fail(ErrorCode::InvalidArgument, "unknown generator model");
}

ThresholdAssignment ThresholdSource::sample(const GeneratorSpec& gen,
                                            int n_total,
                                            std::uint64_t seed) const {
  switch (kind) {
    case Kind::Canonical:
      if (gen.model != GeneratorModel::Figure1) {
        fail(ErrorCode::InvalidArgument,
             "canonical thresholds only apply to the figure1 family");
      }
      return ThresholdAssignment::uniform(n_total, 1);
    case Kind::Default:
      // Eq. 3-style decay evaluated at the community size.
      return sample_thresholds(
          default_threshold_distribution(gen.n, gen.r, rbar), n_total, seed);
    case Kind::Fixed:
      return ThresholdAssignment::uniform(n_total, fixed_t);
    case Kind::Explicit:
      return sample_thresholds(ThresholdDistribution(probs), n_total, seed);
  }
  fail(ErrorCode::InvalidArgument, "unknown threshold source");
}

void TrialSpec::validate() const {
  if (trials < 1) {
    fail(ErrorCode::InvalidArgument, "trials must be positive");
  }
  if (gen.n < 1) {
    fail(ErrorCode::InvalidArgument, "n must be positive");
  }
  if (!(gen.p_scale >= 0) || !std::isfinite(gen.p_scale)) {
    fail(ErrorCode::InvalidArgument, "p_scale must be nonnegative");
  }
  switch (gen.model) {
    case GeneratorModel::Rin:
      if (gen.k < 2) {
        fail(ErrorCode::InvalidArgument, "k must be at least 2");
      }
      break;
    case GeneratorModel::Hetero:
      if (!gen.p_matrix) {
        fail(ErrorCode::InvalidArgument,
             "hetero model needs an edge probability matrix");
      }
      if (gen.p_matrix->n() != gen.n) {
        fail(ErrorCode::InvalidArgument,
             "matrix size does not match n");
      }
      break;
    case GeneratorModel::Figure1:
      if (gen.n < 4 || gen.n % 2 != 0) {
        fail(ErrorCode::InvalidArgument,
             "the figure1 family needs an even n >= 4");
      }
      break;
    case GeneratorModel::Er:
      break;
  }
  if (!gen.intra.empty() && gen.model != GeneratorModel::Rin) {
    fail(ErrorCode::InvalidArgument, "intra graphs only apply to rin");
  }
  if (mode == CheckMode::RobustExact || mode == CheckMode::ConsensusWitnessInit) {
    if (gen.total_nodes() > kExactCheckCap) {
      fail(ErrorCode::CapExceeded,
           "n exceeds exact-check cap " + std::to_string(kExactCheckCap));
    }
  }
  if (mode == CheckMode::RobustHalfsize &&
      gen.total_nodes() > kHalfsizeCheckCap) {
    fail(ErrorCode::CapExceeded,
         "n exceeds halfsize-check cap " + std::to_string(kHalfsizeCheckCap));
  }
  if (thresholds.kind == ThresholdSource::Kind::Explicit &&
      thresholds.probs.empty()) {
    fail(ErrorCode::InvalidArgument, "explicit thresholds need probabilities");
  }
  if (thresholds.kind == ThresholdSource::Kind::Fixed && thresholds.fixed_t < 0) {
    fail(ErrorCode::InvalidArgument, "fixed threshold must be nonnegative");
  }
  if (thresholds.kind == ThresholdSource::Kind::Default && thresholds.rbar < 0) {
    fail(ErrorCode::InvalidArgument, "rbar must be nonnegative");
  }
  dynamics.validate();
  if (bisections < 0) {
    fail(ErrorCode::InvalidArgument, "bisections must be nonnegative");
  }
  if (workers < 1) {
    fail(ErrorCode::InvalidArgument, "workers must be positive");
  }
  if (sweep && sweep->grid.empty()) {
    fail(ErrorCode::InvalidArgument, "sweep grid must be nonempty");
  }
}

namespace {

OpinionState uniform_init(int n, std::uint64_t seed) {
  StreamRng rng(seed, StreamPurpose::Opinions);
  OpinionState x(static_cast<std::size_t>(n));
  for (double& v : x) v = rng.next_double();
  return x;
}

// Balanced random 0/1 split: floor(n/2) zeros placed by a seeded shuffle.
OpinionState bisection_init(int n, std::uint64_t seed, int which) {
  StreamRng rng(seed, StreamPurpose::Bisection,
                static_cast<std::uint64_t>(which));
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  rng.shuffle(std::span<int>(perm));
  OpinionState x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[perm[i]] = i < n / 2 ? 0.0 : 1.0;
  return x;
}

bool consensus_from(const Graph& g, const ThresholdAssignment& t,
                    const OpinionState& x0, const DynamicsConfig& cfg,
                    int* worst_steps) {
  SimulationResult sim = simulate(g, t, x0, cfg);
  *worst_steps = std::max(*worst_steps, sim.steps);
  return sim.verdict == SimVerdict::Consensus;
}

void execute_trial(const TrialSpec& spec, TrialRecord& rec) {
  Graph g = spec.gen.sample(rec.seed);
  switch (spec.mode) {
    case CheckMode::Connectivity: {
      rec.success = is_connected(g);
      rec.value = rec.success ? 1.0 : 0.0;
      return;
    }
    case CheckMode::MinDegree: {
      int d = min_degree(g);
      rec.value = d;
      rec.success = d >= spec.min_degree_target.value_or(spec.gen.r);
      return;
    }
    default:
      break;
  }

  ThresholdAssignment t = spec.thresholds.sample(spec.gen, g.n(), rec.seed);
  switch (spec.mode) {
    case CheckMode::RobustExact: {
      rec.success = is_robust_exact(g, t).robust;
      rec.value = rec.success ? 1.0 : 0.0;
      return;
    }
    case CheckMode::RobustHalfsize: {
      rec.success = certify_robust_halfsize(g, t).certified;
      rec.value = rec.success ? 1.0 : 0.0;
      return;
    }
    case CheckMode::ConsensusRandomInit: {
      int worst = 0;
      bool ok = consensus_from(g, t, uniform_init(g.n(), rec.seed),
                               spec.dynamics, &worst);
      for (int b = 0; ok && b < spec.bisections; ++b) {
        ok = consensus_from(g, t, bisection_init(g.n(), rec.seed, b),
                            spec.dynamics, &worst);
      }
      rec.success = ok;
      rec.value = ok ? 1.0 : 0.0;
      rec.steps = worst;
      return;
    }
    case CheckMode::ConsensusWitnessInit: {
      RobustnessVerdict verdict = is_robust_exact(g, t);
      SimulationResult sim =
          verdict.robust
              ? simulate(g, t, uniform_init(g.n(), rec.seed), spec.dynamics)
              : simulate(g, t,
                         witness_initial_condition(verdict.witness->first,
                                                   verdict.witness->second,
                                                   g.n()),
                         spec.dynamics);
      rec.steps = sim.steps;
      rec.success = verdict.robust
                        ? sim.verdict == SimVerdict::Consensus
                        : sim.verdict == SimVerdict::NoConsensusWithinBudget &&
                              sim.final_gap == 1.0;
      rec.value = rec.success ? 1.0 : 0.0;
      return;
    }
    default:
      fail(ErrorCode::InvalidArgument, "unknown check mode");
  }
}

TrialRecord run_one(const TrialSpec& spec, int index, std::uint64_t master) {
  auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.index = index;
  rec.seed = derive_seed(master, StreamPurpose::Trial,
                         static_cast<std::uint64_t>(index));
  try {
    execute_trial(spec, rec);
  } catch (const Error& e) {
    fail(e.code(), "trial " + std::to_string(index) + ": " + e.what());
  }
  rec.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return rec;
}

}  // namespace

std::vector<TrialRecord> run_trials(const TrialSpec& spec) {
  spec.validate();
  if (!spec.master_seed) {
    fail(ErrorCode::InvalidArgument, "master seed is required");
  }
  std::uint64_t master = *spec.master_seed;
  std::vector<TrialRecord> records(static_cast<std::size_t>(spec.trials));
  int workers = std::min(spec.workers, spec.trials);
  if (workers <= 1) {
    for (int i = 0; i < spec.trials; ++i) {
      records[static_cast<std::size_t>(i)] = run_one(spec, i, master);
    }
    return records;
  }

  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto work = [&] {
    for (;;) {
      int i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= spec.trials) return;
      try {
        records[static_cast<std::size_t>(i)] = run_one(spec, i, master);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next.store(spec.trials, std::memory_order_relaxed);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

Summary summarize(std::span<const TrialRecord> records) {
  if (records.empty()) {
    fail(ErrorCode::InvalidArgument, "cannot summarize zero records");
  }
  Summary s;
  s.trials = static_cast<int>(records.size());
  double step_sum = 0.0;
  for (const TrialRecord& r : records) {
    if (r.success) ++s.successes;
    step_sum += r.steps;
    s.total_ms += r.wall_ms;
  }
  double n = s.trials;
  double phat = s.successes / n;
  s.fraction = phat;
  s.mean_steps = step_sum / n;

  constexpr double z = 1.959963984540054;  // 97.5% normal quantile
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half =
      z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  s.wilson_lo = std::max(0.0, center - half);
  s.wilson_hi = std::min(1.0, center + half);
  return s;
}

std::vector<SweepRow> phase_sweep(const TrialSpec& base,
                                  SweepSpec::Variable variable,
                                  std::span<const double> grid) {
  if (grid.empty()) {
    fail(ErrorCode::InvalidArgument, "sweep grid must be nonempty");
  }
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double value : grid) {
    TrialSpec point = base;
    point.sweep.reset();
    switch (variable) {
      case SweepSpec::Variable::C:
        point.gen.c = {CSchedule::Kind::Constant, value};
        break;
      case SweepSpec::Variable::N: {
        double rounded = std::nearbyint(value);
        if (std::abs(value - rounded) > 1e-9 || rounded < 1) {
          fail(ErrorCode::InvalidArgument,
               "n grid values must be positive integers");
        }
        point.gen.n = static_cast<int>(rounded);
        break;
      }
      case SweepSpec::Variable::PScale:
        point.gen.p_scale = value;
        break;
    }
    std::vector<TrialRecord> records = run_trials(point);
    rows.push_back({value, summarize(records)});
  }
  return rows;
}

std::string records_to_csv(std::span<const TrialRecord> records) {
  // The wall-time column is pinned to 0 so record files are byte-stable.
  std::string out = "trial,seed,outcome,steps,ms\n";
  char line[128];
  for (const TrialRecord& r : records) {
    std::snprintf(line, sizeof(line), "%d,%llu,%s,%d,0\n", r.index,
                  static_cast<unsigned long long>(r.seed),
                  fmt_double(r.value).c_str(), r.steps);
    out += line;
  }
  return out;
}

std::string sweep_to_csv(std::span<const SweepRow> rows) {
  std::string out = "grid_value,fraction,lo95,hi95,trials\n";
  char line[160];
  for (const SweepRow& r : rows) {
    std::snprintf(line, sizeof(line), "%s,%.6f,%.6f,%.6f,%d\n",
                  fmt_double(r.grid_value).c_str(), r.summary.fraction,
                  r.summary.wilson_lo, r.summary.wilson_hi, r.summary.trials);
    out += line;
  }
  return out;
}

std::string summary_to_json_text(const Summary& summary) {
  json doc;
  doc["trials"] = summary.trials;
  doc["successes"] = summary.successes;
  doc["fraction"] = summary.fraction;
  doc["wilson95"] = json::array({summary.wilson_lo, summary.wilson_hi});
  doc["mean_steps"] = summary.mean_steps;
  doc["total_time_ms"] = summary.total_ms;
  return doc.dump();
}

namespace {

[[noreturn]] void bad_spec(const std::string& message) {
  fail(ErrorCode::ParseError, "experiment spec: " + message);
}

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

int get_int(const json& field, const char* key) {
  if (!field.is_number_integer()) {
    bad_spec(std::string("\"") + key + "\" must be an integer");
  }
  return field.get<int>();
}

double get_num(const json& field, const char* key) {
  if (!field.is_number()) {
    bad_spec(std::string("\"") + key + "\" must be a number");
  }
  return field.get<double>();
}

std::string get_str(const json& field, const char* key) {
  if (!field.is_string()) {
    bad_spec(std::string("\"") + key + "\" must be a string");
  }
  return field.get<std::string>();
}

GeneratorModel parse_model(const std::string& name) {
  if (name == "er") return GeneratorModel::Er;
  if (name == "rin") return GeneratorModel::Rin;
  if (name == "hetero") return GeneratorModel::Hetero;
  if (name == "figure1") return GeneratorModel::Figure1;
  bad_spec("unknown model \"" + name + "\"");
}

const char* model_name(GeneratorModel model) {
  switch (model) {
    case GeneratorModel::Er:
      return "er";
    case GeneratorModel::Rin:
      return "rin";
    case GeneratorModel::Hetero:
      return "hetero";
    case GeneratorModel::Figure1:
      return "figure1";
  }
  return "?";
}

CheckMode parse_mode(const std::string& name) {
  if (name == "robust-exact") return CheckMode::RobustExact;
  if (name == "robust-halfsize") return CheckMode::RobustHalfsize;
  if (name == "consensus-random-init") return CheckMode::ConsensusRandomInit;
  if (name == "consensus-witness-init") return CheckMode::ConsensusWitnessInit;
  if (name == "min-degree") return CheckMode::MinDegree;
  if (name == "connectivity") return CheckMode::Connectivity;
  bad_spec("unknown mode \"" + name + "\"");
}

const char* mode_name(CheckMode mode) {
  switch (mode) {
    case CheckMode::RobustExact:
      return "robust-exact";
    case CheckMode::RobustHalfsize:
      return "robust-halfsize";
    case CheckMode::ConsensusRandomInit:
      return "consensus-random-init";
    case CheckMode::ConsensusWitnessInit:
      return "consensus-witness-init";
    case CheckMode::MinDegree:
      return "min-degree";
    case CheckMode::Connectivity:
      return "connectivity";
  }
  return "?";
}

SweepSpec::Variable parse_sweep_variable(const std::string& name) {
  if (name == "c") return SweepSpec::Variable::C;
  if (name == "n") return SweepSpec::Variable::N;
  if (name == "p-scale") return SweepSpec::Variable::PScale;
  bad_spec("unknown sweep variable \"" + name + "\"");
}

const char* sweep_variable_name(SweepSpec::Variable v) {
  switch (v) {
    case SweepSpec::Variable::C:
      return "c";
    case SweepSpec::Variable::N:
      return "n";
    case SweepSpec::Variable::PScale:
      return "p-scale";
  }
  return "?";
}

ThresholdSource parse_thresholds(const json& field) {
  if (!field.is_object()) bad_spec("\"thresholds\" must be an object");
  const json* kind_field = find(field, "kind");
  if (kind_field == nullptr) bad_spec("\"thresholds\" needs a \"kind\"");
  std::string kind = get_str(*kind_field, "kind");
  ThresholdSource out;
  if (kind == "canonical") {
    out.kind = ThresholdSource::Kind::Canonical;
  } else if (kind == "default") {
    out.kind = ThresholdSource::Kind::Default;
    const json* rbar = find(field, "rbar");
    if (rbar == nullptr) bad_spec("default thresholds need \"rbar\"");
    out.rbar = get_int(*rbar, "rbar");
  } else if (kind == "fixed") {
    out.kind = ThresholdSource::Kind::Fixed;
    const json* t = find(field, "t");
    if (t == nullptr) bad_spec("fixed thresholds need \"t\"");
    out.fixed_t = get_int(*t, "t");
  } else if (kind == "explicit") {
    out.kind = ThresholdSource::Kind::Explicit;
    const json* probs = find(field, "probs");
    if (probs == nullptr || !probs->is_array()) {
      bad_spec("explicit thresholds need a \"probs\" array");
    }
    for (const json& p : *probs) out.probs.push_back(get_num(p, "probs"));
  } else {
    bad_spec("unknown threshold kind \"" + kind + "\"");
  }
  return out;
}

json thresholds_to_json(const ThresholdSource& src) {
  json out;
  switch (src.kind) {
    case ThresholdSource::Kind::Canonical:
      out["kind"] = "canonical";
      break;
    case ThresholdSource::Kind::Default:
      out["kind"] = "default";
      out["rbar"] = src.rbar;
      break;
    case ThresholdSource::Kind::Fixed:
      out["kind"] = "fixed";
      out["t"] = src.fixed_t;
      break;
    case ThresholdSource::Kind::Explicit:
      out["kind"] = "explicit";
      out["probs"] = src.probs;
      break;
  }
  return out;
}

}  // namespace

TrialSpec TrialSpec::from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  if (!doc.is_object()) bad_spec("top level must be an object");

  static const char* known[] = {"model",      "n",       "k",       "r",
                                "c",          "p",       "p_matrix", "p_scale",
                                "intra",      "thresholds", "mode", "target",
                                "bisections", "trials",  "seed",    "dynamics",
                                "workers",    "sweep"};
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    bool ok = false;
    for (const char* key : known) ok = ok || it.key() == key;
    if (!ok) bad_spec("unknown field \"" + it.key() + "\"");
  }

  TrialSpec spec;
  const json* model = find(doc, "model");
  if (model == nullptr) bad_spec("\"model\" is required");
  spec.gen.model = parse_model(get_str(*model, "model"));

  const json* n = find(doc, "n");
  if (n == nullptr) bad_spec("\"n\" is required");
  spec.gen.n = get_int(*n, "n");

  if (const json* k = find(doc, "k")) spec.gen.k = get_int(*k, "k");
  if (const json* r = find(doc, "r")) spec.gen.r = get_int(*r, "r");
  if (const json* c = find(doc, "c")) {
    if (c->is_number()) {
      spec.gen.c = {CSchedule::Kind::Constant, c->get<double>()};
    } else if (c->is_string()) {
      spec.gen.c = CSchedule::parse(c->get<std::string>());
    } else {
      bad_spec("\"c\" must be a number or a schedule name");
    }
  }
  if (const json* p = find(doc, "p")) spec.gen.p_override = get_num(*p, "p");
  if (const json* m = find(doc, "p_matrix")) {
    spec.gen.p_matrix = EdgeProbabilityMatrix::from_json_text(m->dump());
  }
  if (const json* s = find(doc, "p_scale")) {
    spec.gen.p_scale = get_num(*s, "p_scale");
  }
  if (const json* intra = find(doc, "intra"); intra && !intra->is_null()) {
    if (!intra->is_array()) bad_spec("\"intra\" must be an array of graphs");
    for (const json& g : *intra) {
      spec.gen.intra.push_back(parse_graph_json(g.dump()).graph);
    }
  }

  if (const json* th = find(doc, "thresholds")) {
    spec.thresholds = parse_thresholds(*th);
  } else if (spec.gen.model == GeneratorModel::Figure1) {
    spec.thresholds.kind = ThresholdSource::Kind::Canonical;
  } else {
    // Structural modes never look at thresholds; default to the DeGroot case.
    spec.thresholds.kind = ThresholdSource::Kind::Fixed;
    spec.thresholds.fixed_t = 0;
  }

  const json* mode = find(doc, "mode");
  if (mode == nullptr) bad_spec("\"mode\" is required");
  spec.mode = parse_mode(get_str(*mode, "mode"));

  if (const json* target = find(doc, "target")) {
    spec.min_degree_target = get_int(*target, "target");
  }
  if (const json* b = find(doc, "bisections")) {
    spec.bisections = get_int(*b, "bisections");
  }

  const json* trials = find(doc, "trials");
  if (trials == nullptr) bad_spec("\"trials\" is required");
  spec.trials = get_int(*trials, "trials");

  if (const json* seed = find(doc, "seed")) {
    if (!seed->is_number_integer()) bad_spec("\"seed\" must be an integer");
    spec.master_seed = seed->get<std::uint64_t>();
  }
  if (const json* dyn = find(doc, "dynamics")) {
    if (!dyn->is_object()) bad_spec("\"dynamics\" must be an object");
    for (auto it = dyn->begin(); it != dyn->end(); ++it) {
      if (it.key() == "epsilon") {
        spec.dynamics.epsilon = get_num(*it, "epsilon");
      } else if (it.key() == "max_steps") {
        spec.dynamics.max_steps = get_int(*it, "max_steps");
      } else if (it.key() == "eta") {
        spec.dynamics.eta = get_num(*it, "eta");
      } else {
        bad_spec("unknown dynamics field \"" + it.key() + "\"");
      }
    }
  }
  if (const json* w = find(doc, "workers")) {
    spec.workers = get_int(*w, "workers");
  }
  if (const json* sweep = find(doc, "sweep"); sweep && !sweep->is_null()) {
    if (!sweep->is_object()) bad_spec("\"sweep\" must be an object");
    const json* variable = find(*sweep, "variable");
    const json* grid = find(*sweep, "grid");
    if (variable == nullptr || grid == nullptr || !grid->is_array()) {
      bad_spec("\"sweep\" needs \"variable\" and a \"grid\" array");
    }
    SweepSpec sw;
    sw.variable = parse_sweep_variable(get_str(*variable, "variable"));
    for (const json& v : *grid) sw.grid.push_back(get_num(v, "grid"));
    spec.sweep = std::move(sw);
  }

  spec.validate();
  return spec;
}

std::string TrialSpec::to_json_text() const {
  json doc;
  doc["model"] = model_name(gen.model);
  doc["n"] = gen.n;
  if (gen.model == GeneratorModel::Rin) doc["k"] = gen.k;
  doc["r"] = gen.r;
  if (gen.model != GeneratorModel::Figure1) {
    if (gen.c.kind == CSchedule::Kind::LnLnLn) {
      doc["c"] = "lnlnln";
    } else {
      doc["c"] = gen.c.value;
    }
  }
  if (gen.p_override) doc["p"] = *gen.p_override;
  if (gen.p_matrix) {
    json rows = json::array();
    for (int i = 0; i < gen.p_matrix->n(); ++i) {
      json row = json::array();
      for (int j = 0; j < gen.p_matrix->n(); ++j) {
        row.push_back(gen.p_matrix->at(i, j));
      }
      rows.push_back(std::move(row));
    }
    doc["p_matrix"] = std::move(rows);
  }
  if (gen.p_scale != 1.0) doc["p_scale"] = gen.p_scale;
  if (!gen.intra.empty()) {
    json graphs = json::array();
    for (const Graph& g : gen.intra) {
      graphs.push_back(json::parse(graph_to_json(g)));
    }
    doc["intra"] = std::move(graphs);
  }
  doc["thresholds"] = thresholds_to_json(thresholds);
  doc["mode"] = mode_name(mode);
  if (min_degree_target) doc["target"] = *min_degree_target;
  doc["bisections"] = bisections;
  doc["trials"] = trials;
  if (master_seed) doc["seed"] = *master_seed;
  json dyn;
  dyn["epsilon"] = dynamics.epsilon;
  dyn["max_steps"] = dynamics.max_steps;
  dyn["eta"] = dynamics.eta;
  doc["dynamics"] = std::move(dyn);
  doc["workers"] = workers;
  if (sweep) {
    json sw;
    sw["variable"] = sweep_variable_name(sweep->variable);
    sw["grid"] = sweep->grid;
    doc["sweep"] = std::move(sw);
  }
  return doc.dump(2);
}

}  // namespace odyn
