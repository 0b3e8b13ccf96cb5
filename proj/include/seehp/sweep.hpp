#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seehp/schemes.hpp"
#include "seehp/types.hpp"

namespace seehp {

enum class SweepParameter {
  kMaxPower,      // p_max (W)
  kMinSecrecy,    // c0_sec (bit/s/Hz)
  kTxAntennas,    // n_tx
  kRfChains,      // n_rf
  kActuators,     // k
  kEavesAntennas  // m
};

SweepParameter sweep_parameter_from_name(const std::string& name);
const char* sweep_parameter_name(SweepParameter p);

/// Stock value lists used when a sweep does not specify its own.
std::vector<double> default_sweep_values(SweepParameter p);

/// Everything shared by all sweep points.
struct BaseConfig {
  ScenarioGeometry geometry;
  HardwareProfile hw;
  SolverParams solver;
};

/// Returns the base config with the swept parameter replaced; validates the
/// resulting scenario.
BaseConfig apply_sweep_value(const BaseConfig& base, SweepParameter parameter,
                             double value);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::kMaxPower;
  std::vector<double> values;            // linear units
  int trials = 200;
  std::vector<std::string> schemes = SchemeSpec::all_names();
  std::uint64_t root_seed = 1;
  PowerNormalization normalization = PowerNormalization::kStatistical;
  bool record_traces = false;

  void validate(const BaseConfig& base) const;
};

/// Aggregates for one (scheme, swept value) pair. Means and standard errors
/// are over the feasible trials' per-realization link metrics.
struct SweepCell {
  std::string scheme;
  double value = 0.0;
  double mean_ee = 0.0;
  double se_ee = 0.0;
  double mean_secrecy = 0.0;
  double se_secrecy = 0.0;
  int infeasible = 0;
  double iters_ratio = 0.0;
  double iters_penalty = 0.0;
  double iters_alternate = 0.0;
  SolveStatus solve_status = SolveStatus::kInfeasible;
  double eta_closed_form = 0.0;  // optimizer's own objective value
  OptimizationTrace trace;       // populated when record_traces is set
};

struct SweepResult {
  SweepParameter parameter = SweepParameter::kMaxPower;
  int trials = 0;
  std::vector<SweepCell> cells;  // scheme-major, value-minor
  bool any_feasible = false;
};

/// Runs the sweep with the trial loop parallelized across `num_threads`
/// OpenMP threads (0 = runtime default). Output is identical to
/// run_sweep_serial for any thread count.
SweepResult run_sweep(const SweepSpec& spec, const BaseConfig& base, int num_threads = 0);

/// Single-threaded reference implementation of the same sweep.
SweepResult run_sweep_serial(const SweepSpec& spec, const BaseConfig& base);

void emit_csv(const SweepResult& result, std::ostream& os);
void emit_csv(const SweepResult& result, const std::string& path);

/// Tab-separated solver iteration records, one line per iteration.
void emit_trace(const SweepResult& result, std::ostream& os);
void emit_trace(const SweepResult& result, const std::string& path);

}  // namespace seehp
