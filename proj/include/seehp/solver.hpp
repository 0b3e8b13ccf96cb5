#pragma once

#include <optional>
#include <vector>

#include "seehp/metrics.hpp"
#include "seehp/types.hpp"

namespace seehp {

/// Tolerances and iteration caps for the three nested solver layers plus the
/// inner convex steps.
struct SolverParams {
  double ratio_tol = 0.0;        // outer ratio-iteration residual, bit/s; 0 = 1e-4 * W
  int ratio_max_iters = 60;
  double penalty_init = 1.0;     // first penalty weight
  double penalty_growth = 10.0;  // weight multiplier per penalty step (> 1)
  double penalty_tol = 1e-3;     // weighted-violation threshold
  int penalty_max_iters = 20;
  double alternate_tol = 1e-3;   // block-sweep objective-change threshold
  int alternate_max_iters = 50;
  double aux_margin = 1.0;       // bit/s/Hz; preset constant of the relaxed
                                 // constraint set (see below)
  double dc_tol = 1e-6;          // inner convex-step tolerance (relative)
  int dc_max_iters = 100;
  double eta_init = 0.0;         // starting ratio; <= 0 derives it from the
                                 // initial allocation

  void validate() const;
};

struct RatioIterationRecord {
  double eta = 0.0;        // ratio parameter entering the iteration, bit/J
  double objective = 0.0;  // subtractive objective at the inner solution, bit/s
  double residual = 0.0;   // |objective|, compared against ratio_tol
};

struct PenaltyStepRecord {
  double weight = 0.0;
  double violation = 0.0;  // secrecy-constraint shortfall, bit/s/Hz
};

struct AlternateStepRecord {
  double objective_change = 0.0;  // penalized-objective delta across one sweep
};

struct OptimizationTrace {
  std::vector<RatioIterationRecord> ratio_iterations;
  std::vector<PenaltyStepRecord> penalty_steps;
  std::vector<AlternateStepRecord> alternate_steps;
  long dc_iterations = 0;  // total inner convex-concave steps
};

enum class SolveStatus { kConverged, kMaxIterations, kInfeasible };

struct SolveResult {
  PowerAllocation allocation;
  double eta_bits_per_joule = 0.0;
  double secrecy_bps_hz = 0.0;  // closed-form secrecy at the solution
  SolveStatus status = SolveStatus::kInfeasible;
  OptimizationTrace trace;

  bool feasible() const { return status != SolveStatus::kInfeasible; }
};

/// Problem data shared by all solver layers: the closed-form model, the
/// budget/secrecy constraints and the relaxed-set margin.
///
/// The relaxed feasible set replaces `secrecy > min_secrecy` with
///   sum_capacity >= min_secrecy - aux_margin   and
///   eaves_capacity >= -aux_margin,
/// keeping every iterate inside the domain where the closed-form bound is
/// defined and bounding the credit the optimizer may claim for suppressing
/// the eavesdropper.
struct SolverProblem {
  ClosedForms cf;
  double p_max_w = 0.0;
  double min_secrecy = 0.0;  // bit/s/Hz
  double aux_margin = 0.0;   // bit/s/Hz
  SolverParams params;

  SolverProblem() = default;
  SolverProblem(const ScenarioGeometry& geometry, const HardwareProfile& hw,
                const SolverParams& p);

  /// Minimum AN watts per signal watt implied by the credit cap; zero when
  /// the bound is already nonnegative, +inf at the degenerate dimension
  /// count.
  double an_floor_slope() const;
  double an_floor(double signal_total_w) const;
  /// Largest admissible total signal power at a given AN power (+inf when
  /// the credit cap imposes none).
  double signal_cap(double an_w) const;

  bool point_feasible(const PowerAllocation& alloc, double rel_slack = 1e-9) const;

  /// Penalized objective of one inner iteration (to be minimized), split as
  /// cost_part - credit_part. Returns +inf outside the closed-form domain.
  double cost_part(const PowerAllocation& alloc, double weight, double eta) const;
  double credit_part(const PowerAllocation& alloc, double weight) const;
  double penalized_objective(const PowerAllocation& alloc, double weight,
                             double eta) const;
};

/// Subtractive objective of the ratio iteration: W * secrecy - eta * power.
/// Returns -inf where the closed forms are undefined.
double dinkelbach_objective(const SolverProblem& problem, const PowerAllocation& alloc,
                            double eta);

/// Next ratio parameter: achieved secrecy rate over consumed power.
double eta_update(const SolverProblem& problem, const PowerAllocation& alloc);

namespace detail {

enum class Block { kSignal, kNoise };

struct BlockOutcome {
  bool feasible = true;
  long dc_iterations = 0;
};

/// Convex-concave step on one block with the other fixed: the credit part is
/// linearized at the current iterate and the resulting convex problem is
/// solved by projected gradient with backtracking. Safeguarded so the true
/// penalized objective never increases.
BlockOutcome dc_solve_block(const SolverProblem& problem, Block block,
                            PowerAllocation& alloc, double weight, double eta);

struct AlternateOutcome {
  bool feasible = true;
  int sweeps = 0;
  long dc_iterations = 0;
};

/// Blockwise alternation between the signal and noise subproblems until the
/// penalized objective stalls.
AlternateOutcome alternate_search(const SolverProblem& problem, PowerAllocation& alloc,
                                  double weight, double eta, OptimizationTrace* trace);

struct PenaltyOutcome {
  bool feasible = true;
  double final_weight = 0.0;
  double final_violation = 0.0;
  int steps = 0;
};

/// Growing-weight penalty loop around the alternate search.
PenaltyOutcome penalty_loop(const SolverProblem& problem, PowerAllocation& alloc,
                            double eta, OptimizationTrace* trace);

/// Deterministic feasibility probe; returns the best relaxed-feasible point
/// found and its secrecy, or nullopt when the relaxed set is empty.
struct ProbeResult {
  PowerAllocation point;
  double secrecy = 0.0;
};
std::optional<ProbeResult> feasibility_probe(const SolverProblem& problem);

/// Projects an allocation onto the relaxed feasible set (equalizing headroom
/// between the budget and the AN floor).
PowerAllocation project_to_feasible(const SolverProblem& problem,
                                    const PowerAllocation& alloc);

}  // namespace detail

/// Which quantity the top layer maximizes.
enum class SolveObjective { kSecureEnergyEfficiency, kSecrecyCapacity };

SolveResult solve(const ScenarioGeometry& geometry, const HardwareProfile& hw,
                  const SolverParams& params,
                  const std::optional<PowerAllocation>& warm_start = std::nullopt,
                  SolveObjective objective = SolveObjective::kSecureEnergyEfficiency);

}  // namespace seehp
