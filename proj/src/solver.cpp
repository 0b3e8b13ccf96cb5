#include "seehp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace seehp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTiny = 1e-300;

double ln2() { return std::numbers::ln2; }

std::vector<double> scaled(const std::vector<double>& v, double f) {
  std::vector<double> out(v);
  for (double& x : out) x *= f;
  return out;
}

// Euclidean projection onto { x >= 0, sum(x) <= budget }.
void project_capped_simplex(std::vector<double>& x, double budget) {
  double total = 0.0;
  for (double& xi : x) {
    xi = std::max(xi, 0.0);
    total += xi;
  }
  if (total <= budget) return;
  std::vector<double> sorted(x);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cum += sorted[i];
    const double cand = (cum - budget) / static_cast<double>(i + 1);
    if (i + 1 == sorted.size() || sorted[i + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  total = 0.0;
  for (double& xi : x) {
    xi = std::max(xi - theta, 0.0);
    total += xi;
  }
  // The threshold solve is only accurate to rounding at the gradient scale;
  // rescale so the cap holds exactly.
  if (total > budget && total > 0.0)
    for (double& xi : x) xi *= budget / total;
}

}  // namespace

void SolverParams::validate() const {
  if (!(ratio_tol >= 0.0)) throw InvariantError("ratio tolerance >= 0");
  if (ratio_max_iters < 1) throw InvariantError("ratio iterations >= 1");
  if (!(penalty_init > 0.0)) throw InvariantError("penalty weight > 0");
  if (!(penalty_growth > 1.0)) throw InvariantError("penalty growth > 1");
  if (!(penalty_tol >= 0.0)) throw InvariantError("penalty tolerance >= 0");
  if (penalty_max_iters < 1) throw InvariantError("penalty iterations >= 1");
  if (!(alternate_tol >= 0.0)) throw InvariantError("alternate tolerance >= 0");
  if (alternate_max_iters < 1) throw InvariantError("alternate iterations >= 1");
  if (!(aux_margin >= 0.0)) throw InvariantError("aux margin >= 0");
  if (!(dc_tol > 0.0)) throw InvariantError("dc tolerance > 0");
  if (dc_max_iters < 1) throw InvariantError("dc iterations >= 1");
}

SolverProblem::SolverProblem(const ScenarioGeometry& geometry, const HardwareProfile& hw,
                             const SolverParams& p)
    : cf(geometry, hw),
      p_max_w(hw.max_transmit_power_w),
      min_secrecy(hw.min_secrecy_bps_hz),
      aux_margin(p.aux_margin),
      params(p) {
  params.validate();
  if (params.ratio_tol <= 0.0) params.ratio_tol = 1e-4 * hw.bandwidth_hz;
}

double SolverProblem::an_floor_slope() const {
  if (std::isinf(cf.leak_coeff)) return kInf;
  if (cf.leak_coeff >= 0.0) return 0.0;
  const double depth = 1.0 - std::exp2(-aux_margin);
  if (depth <= 0.0) return kInf;  // zero margin admits no signal power at all
  return -cf.leak_coeff / depth;
}

double SolverProblem::an_floor(double signal_total_w) const {
  const double slope = an_floor_slope();
  if (signal_total_w <= 0.0) return 0.0;
  return std::isinf(slope) ? kInf : slope * signal_total_w;
}

double SolverProblem::signal_cap(double an_w) const {
  const double slope = an_floor_slope();
  if (slope == 0.0) return kInf;
  if (std::isinf(slope)) return 0.0;
  return an_w / slope;
}

bool SolverProblem::point_feasible(const PowerAllocation& alloc, double rel_slack) const {
  const double s = alloc.signal_total();
  if (alloc.an_w < 0.0) return false;
  for (double p : alloc.signal_w)
    if (p < 0.0) return false;
  if (s + alloc.an_w > p_max_w * (1.0 + rel_slack)) return false;
  double eaves = 0.0;
  if (!cf.try_eaves_capacity(s, alloc.an_w, eaves)) return false;
  if (-eaves > aux_margin * (1.0 + rel_slack) + rel_slack) return false;
  const double floor = min_secrecy - aux_margin;
  if (cf.sum_capacity(alloc) < floor - rel_slack * std::max(1.0, std::fabs(floor)))
    return false;
  return true;
}

double SolverProblem::cost_part(const PowerAllocation& alloc, double weight,
                                double eta) const {
  return eta * cf.total_power(alloc) - cf.bandwidth_hz * cf.sum_capacity(alloc) +
         weight * aux_margin;
}

double SolverProblem::credit_part(const PowerAllocation& alloc, double weight) const {
  double eaves = 0.0;
  if (!cf.try_eaves_capacity(alloc.signal_total(), alloc.an_w, eaves)) return -kInf;
  return -cf.bandwidth_hz * (weight + 1.0) * eaves;
}

double SolverProblem::penalized_objective(const PowerAllocation& alloc, double weight,
                                          double eta) const {
  if (!point_feasible(alloc)) return kInf;
  const double credit = credit_part(alloc, weight);
  if (std::isinf(credit)) return kInf;
  return cost_part(alloc, weight, eta) - credit;
}

double dinkelbach_objective(const SolverProblem& problem, const PowerAllocation& alloc,
                            double eta) {
  double eaves = 0.0;
  if (!problem.cf.try_eaves_capacity(alloc.signal_total(), alloc.an_w, eaves))
    return -kInf;
  const double secrecy = problem.cf.sum_capacity(alloc) - eaves;
  return problem.cf.bandwidth_hz * secrecy - eta * problem.cf.total_power(alloc);
}

double eta_update(const SolverProblem& problem, const PowerAllocation& alloc) {
  const double secrecy = problem.cf.secrecy(alloc);
  return problem.cf.bandwidth_hz * secrecy / problem.cf.total_power(alloc);
}

namespace detail {

namespace {

struct EavesState {
  double value = 0.0;  // capacity bound
  double arg = 1.0;    // its log argument
  bool defined = false;
};

EavesState eaves_state(const ClosedForms& cf, double s, double an_w) {
  EavesState e;
  if (s == 0.0) {
    e.defined = true;
    return e;
  }
  if (!(an_w > 0.0) || std::isinf(cf.leak_coeff)) return e;
  e.arg = 1.0 + cf.leak_coeff * s / an_w;
  if (e.arg <= 0.0) return e;
  e.value = std::log2(e.arg);
  e.defined = true;
  return e;
}

// d(eaves)/d(total signal) at fixed AN power.
double eaves_dsignal(const ClosedForms& cf, const EavesState& e, double an_w) {
  return (cf.leak_coeff / an_w) / (ln2() * e.arg);
}

// d(eaves)/d(AN power) at fixed signal power.
double eaves_dan(const ClosedForms& cf, const EavesState& e, double s, double an_w) {
  return (-cf.leak_coeff * s / (an_w * an_w)) / (ln2() * e.arg);
}

// Projected gradient with Armijo backtracking on an arbitrary extended-value
// objective. `project` must map onto the block's convex feasible set.
template <class F, class G, class Proj>
int projected_descent(std::vector<double>& x, F value, G gradient, Proj project,
                      double tol, int max_iters) {
  project(x);
  double fx = value(x);
  if (std::isinf(fx)) return 0;
  double step = 1.0;
  std::vector<double> grad(x.size()), cand(x.size());
  int iters = 0;
  for (; iters < max_iters; ++iters) {
    gradient(x, grad);
    double gn = 0.0;
    for (double g : grad) gn += g * g;
    gn = std::sqrt(gn);
    if (gn < kTiny) break;

    bool accepted = false;
    double trial = step;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) cand[i] = x[i] - trial * grad[i];
      project(cand);
      double dist2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = cand[i] - x[i];
        dist2 += d * d;
      }
      if (dist2 < kTiny) break;
      const double fc = value(cand);
      if (fc <= fx - 1e-4 * dist2 / trial) {
        double moved = std::sqrt(dist2);
        double scale = 0.0;
        for (double xi : x) scale += xi * xi;
        x = cand;
        fx = fc;
        accepted = true;
        step = std::min(trial * 2.0, 1e12);
        if (moved <= tol * std::max(1.0, std::sqrt(scale))) return iters + 1;
        break;
      }
      trial *= 0.5;
    }
    if (!accepted) break;
  }
  return iters;
}

struct BlockView {
  Block block;
  PowerAllocation* alloc;

  std::vector<double> get() const {
    if (block == Block::kSignal) return alloc->signal_w;
    return {alloc->an_w};
  }
  void set(const std::vector<double>& v) const {
    if (block == Block::kSignal)
      alloc->signal_w = v;
    else
      alloc->an_w = v[0];
  }
};

}  // namespace

BlockOutcome dc_solve_block(const SolverProblem& problem, Block block,
                            PowerAllocation& alloc, double weight, double eta) {
  BlockOutcome outcome;
  const ClosedForms& cf = problem.cf;
  const double w_hz = cf.bandwidth_hz;
  const BlockView view{block, &alloc};

  const auto objective = [&](const std::vector<double>& v) {
    PowerAllocation trial = alloc;
    BlockView{block, &trial}.set(v);
    return problem.penalized_objective(trial, weight, eta);
  };

  // True-gradient evaluator; with `freeze` set, the credit term is held at
  // its linearization point (the convex-concave surrogate).
  const auto gradient = [&](const std::vector<double>& at, std::vector<double>& g,
                            const std::vector<double>* freeze) {
    PowerAllocation trial = alloc;
    BlockView{block, &trial}.set(at);
    const double s = trial.signal_total();
    const std::vector<double>& lin = freeze ? *freeze : at;
    PowerAllocation lin_alloc = alloc;
    BlockView{block, &lin_alloc}.set(lin);
    const EavesState e = eaves_state(cf, lin_alloc.signal_total(), lin_alloc.an_w);

    if (block == Block::kSignal) {
      const double credit_slope =
          e.defined ? -w_hz * (weight + 1.0) * eaves_dsignal(cf, e, lin_alloc.an_w) : 0.0;
      for (std::size_t i = 0; i < at.size(); ++i) {
        const double cap_slope = cf.snr_coeff / (ln2() * (1.0 + cf.snr_coeff * at[i]));
        g[i] = eta * cf.inv_alpha - w_hz * cap_slope - credit_slope;
      }
    } else {
      const double credit_slope =
          e.defined
              ? -w_hz * (weight + 1.0) *
                    eaves_dan(cf, e, lin_alloc.signal_total(), std::max(lin[0], kTiny))
              : 0.0;
      (void)s;
      g[0] = eta * cf.inv_alpha - credit_slope;
    }
  };

  // Block feasible sets: the signal simplex is capped by both the power
  // budget and the credit cap; the AN interval is floored by the credit cap.
  const auto project = [&](std::vector<double>& v) {
    if (block == Block::kSignal) {
      const double cap =
          std::min(problem.p_max_w - alloc.an_w, problem.signal_cap(alloc.an_w));
      project_capped_simplex(v, std::max(cap, 0.0));
    } else {
      const double lo = problem.an_floor(alloc.signal_total());
      const double hi = problem.p_max_w - alloc.signal_total();
      v[0] = std::clamp(v[0], std::min(lo, hi), hi);
    }
  };

  if (block == Block::kSignal) {
    if (problem.p_max_w - alloc.an_w < -1e-12) {
      outcome.feasible = false;
      return outcome;
    }
  } else {
    const double lo = problem.an_floor(alloc.signal_total());
    const double hi = problem.p_max_w - alloc.signal_total();
    if (std::isinf(lo) || lo > hi * (1.0 + 1e-9) + 1e-15) {
      outcome.feasible = false;
      return outcome;
    }
  }

  double phi = objective(view.get());
  if (std::isinf(phi)) {
    outcome.feasible = false;
    return outcome;
  }

  for (int it = 0; it < problem.params.dc_max_iters; ++it) {
    ++outcome.dc_iterations;
    const std::vector<double> anchor = view.get();

    std::vector<double> cand = anchor;
    projected_descent(
        cand, objective,
        [&](const std::vector<double>& at, std::vector<double>& g) {
          gradient(at, g, &anchor);
        },
        project, problem.params.dc_tol, 200);
    double phi_cand = objective(cand);

    if (!(phi_cand < phi - kTiny)) {
      // Surrogate step stalled; descend on the true objective instead.
      cand = anchor;
      projected_descent(
          cand, objective,
          [&](const std::vector<double>& at, std::vector<double>& g) {
            gradient(at, g, nullptr);
          },
          project, problem.params.dc_tol, 200);
      phi_cand = objective(cand);
      if (!(phi_cand < phi - kTiny)) break;  // stationary for this block
    }

    view.set(cand);
    const double change = phi - phi_cand;
    phi = phi_cand;
    if (change <= problem.params.dc_tol * std::max(1.0, std::fabs(phi))) break;
  }
  return outcome;
}

AlternateOutcome alternate_search(const SolverProblem& problem, PowerAllocation& alloc,
                                  double weight, double eta, OptimizationTrace* trace) {
  AlternateOutcome out;
  double phi_prev = problem.penalized_objective(alloc, weight, eta);
  for (int m = 0; m < problem.params.alternate_max_iters; ++m) {
    const PowerAllocation before = alloc;
    const BlockOutcome s = dc_solve_block(problem, Block::kSignal, alloc, weight, eta);
    const BlockOutcome n = dc_solve_block(problem, Block::kNoise, alloc, weight, eta);
    out.dc_iterations += s.dc_iterations + n.dc_iterations;
    ++out.sweeps;
    if (!s.feasible || !n.feasible) {
      alloc = before;  // keep the last feasible iterate
      out.feasible = false;
      break;
    }
    const double phi = problem.penalized_objective(alloc, weight, eta);
    const double change = phi - phi_prev;
    if (trace) trace->alternate_steps.push_back({change});
    if (std::fabs(change) <= problem.params.alternate_tol) break;
    phi_prev = phi;
  }
  return out;
}

PenaltyOutcome penalty_loop(const SolverProblem& problem, PowerAllocation& alloc,
                            double eta, OptimizationTrace* trace) {
  PenaltyOutcome out;
  double weight = problem.params.penalty_init;
  for (int j = 0; j < problem.params.penalty_max_iters; ++j) {
    const AlternateOutcome alt = alternate_search(problem, alloc, weight, eta, trace);
    if (trace) trace->dc_iterations += alt.dc_iterations;
    out.feasible = alt.feasible;
    double secrecy = -kInf;
    double eaves = 0.0;
    if (problem.cf.try_eaves_capacity(alloc.signal_total(), alloc.an_w, eaves))
      secrecy = problem.cf.sum_capacity(alloc) - eaves;
    const double violation = std::max(problem.min_secrecy - secrecy, 0.0);
    if (trace) trace->penalty_steps.push_back({weight, violation});
    out.final_weight = weight;
    out.final_violation = violation;
    ++out.steps;
    if (weight * violation <= problem.params.penalty_tol) break;
    weight *= problem.params.penalty_growth;
  }
  return out;
}

std::optional<ProbeResult> feasibility_probe(const SolverProblem& problem) {
  const ClosedForms& cf = problem.cf;
  const int k = cf.num_actuators;
  const double floor = problem.min_secrecy - problem.aux_margin;
  const double slope = problem.an_floor_slope();

  if (std::isinf(slope)) {
    // No admissible signal power; the all-zero split is the whole relaxed set.
    if (floor > 0.0) return std::nullopt;
    ProbeResult r;
    r.point = PowerAllocation::equal_split(k, 0.0, 0.0);
    r.secrecy = 0.0;
    return r;
  }

  if (slope > 0.0) {
    const double s_max = problem.p_max_w / (1.0 + slope);
    const double cap_at_max =
        cf.sum_capacity(PowerAllocation::equal_split(k, s_max, 0.0));
    if (cap_at_max < floor) return std::nullopt;
    ProbeResult r;
    r.point = PowerAllocation::equal_split(k, s_max * (1.0 - 1e-12),
                                           problem.p_max_w - s_max * (1.0 - 1e-12));
    r.secrecy = cf.secrecy(r.point);
    return r;
  }

  // Nonnegative-bound regime: scan signal/AN splits along the full budget.
  std::optional<ProbeResult> best;
  for (int i = 1; i < 256; ++i) {
    const double frac = static_cast<double>(i) / 256.0;
    PowerAllocation alloc = PowerAllocation::equal_split(
        k, problem.p_max_w * frac, problem.p_max_w * (1.0 - frac));
    if (!problem.point_feasible(alloc)) continue;
    const double secrecy = cf.secrecy(alloc);
    if (!best || secrecy > best->secrecy) best = ProbeResult{alloc, secrecy};
  }
  return best;
}

PowerAllocation project_to_feasible(const SolverProblem& problem,
                                    const PowerAllocation& alloc) {
  const ClosedForms& cf = problem.cf;
  const int k = cf.num_actuators;
  const double slope = problem.an_floor_slope();
  PowerAllocation out = alloc;
  if (static_cast<int>(out.signal_w.size()) != k)
    out.signal_w.assign(static_cast<std::size_t>(k), 0.0);
  for (double& p : out.signal_w) p = std::max(p, 0.0);
  out.an_w = std::max(out.an_w, 0.0);

  const double floor = problem.min_secrecy - problem.aux_margin;
  // Smallest equal-split signal total meeting the capacity floor.
  double s_floor = 0.0;
  if (floor > 0.0)
    s_floor = k * (std::exp2(floor / k) - 1.0) / cf.snr_coeff;

  if (std::isinf(slope)) {
    out.signal_w.assign(static_cast<std::size_t>(k), 0.0);
    out.an_w = std::min(out.an_w > 0.0 ? out.an_w : 0.1 * problem.p_max_w,
                        problem.p_max_w);
    return out;
  }

  if (slope > 0.0) {
    // Start at the budget-exhausting corner of the credit cap: it dominates
    // every reachable signal level, so the block alternation can only walk
    // downhill from here toward the optimum.
    const double s_corner = problem.p_max_w / (1.0 + slope) * (1.0 - 1e-12);
    double s = std::min(std::max(out.signal_total(), s_floor), s_corner);
    if (s <= 0.0) s = s_corner;
    if (out.signal_total() > 0.0)
      out.signal_w = scaled(out.signal_w, s / out.signal_total());
    else
      out.signal_w.assign(static_cast<std::size_t>(k), s / k);
    out.an_w = problem.p_max_w - s_corner;
    return out;
  }

  // slope == 0: keep the requested split, enforce a positive AN share and
  // the budget.
  if (out.an_w <= 0.0) out.an_w = 0.1 * problem.p_max_w;
  double s = out.signal_total();
  if (s < s_floor && s_floor > 0.0) {
    if (s > 0.0)
      out.signal_w = scaled(out.signal_w, s_floor / s);
    else
      out.signal_w.assign(static_cast<std::size_t>(k), s_floor / k);
  }
  const double total = out.total();
  if (total > problem.p_max_w) {
    const double f = problem.p_max_w / total * (1.0 - 1e-12);
    out.signal_w = scaled(out.signal_w, f);
    out.an_w *= f;
  }
  return out;
}

}  // namespace detail

namespace {

// Scales the signal powers up until the true secrecy constraint holds
// strictly, keeping the AN floor satisfied. Returns false when the budget
// cannot accommodate it.
bool restore_secrecy_margin(const SolverProblem& problem, PowerAllocation& alloc) {
  const auto secrecy_at = [&](double f) -> double {
    PowerAllocation trial = alloc;
    trial.signal_w = scaled(alloc.signal_w, f);
    trial.an_w = std::max(alloc.an_w, problem.an_floor(trial.signal_total()));
    if (trial.total() > problem.p_max_w) return -kInf;
    double eaves = 0.0;
    if (!problem.cf.try_eaves_capacity(trial.signal_total(), trial.an_w, eaves))
      return -kInf;
    return problem.cf.sum_capacity(trial) - eaves;
  };

  if (problem.cf.secrecy(alloc) > problem.min_secrecy) return true;
  double lo = 1.0, hi = 1.0;
  bool found = false;
  for (int i = 0; i < 60 && !found; ++i) {
    hi *= 1.01;
    if (secrecy_at(hi) > problem.min_secrecy)
      found = true;
    else if (std::isinf(secrecy_at(hi)))
      break;
  }
  if (!found) return false;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (secrecy_at(mid) > problem.min_secrecy)
      hi = mid;
    else
      lo = mid;
  }
  alloc.signal_w = scaled(alloc.signal_w, hi);
  alloc.an_w = std::max(alloc.an_w, problem.an_floor(alloc.signal_total()));
  return problem.cf.secrecy(alloc) > problem.min_secrecy;
}

}  // namespace

SolveResult solve(const ScenarioGeometry& geometry, const HardwareProfile& hw,
                  const SolverParams& params,
                  const std::optional<PowerAllocation>& warm_start,
                  SolveObjective objective) {
  geometry.validate();
  hw.validate();
  const SolverProblem problem(geometry, hw, params);

  SolveResult result;
  const auto probe = detail::feasibility_probe(problem);
  if (!probe || !(probe->secrecy > problem.min_secrecy)) {
    result.status = SolveStatus::kInfeasible;
    result.secrecy_bps_hz = probe ? probe->secrecy : 0.0;
    result.allocation =
        probe ? probe->point : PowerAllocation::equal_split(geometry.num_actuators, 0, 0);
    return result;
  }

  PowerAllocation start = warm_start.value_or(PowerAllocation::equal_split(
      geometry.num_actuators, 0.9 * problem.p_max_w, 0.1 * problem.p_max_w));
  PowerAllocation x = detail::project_to_feasible(problem, start);
  if (!problem.point_feasible(x)) x = probe->point;

  if (objective == SolveObjective::kSecrecyCapacity) {
    detail::penalty_loop(problem, x, 0.0, &result.trace);
  } else {
    double eta = params.eta_init > 0.0 ? params.eta_init : eta_update(problem, x);
    for (int i = 0; i < problem.params.ratio_max_iters; ++i) {
      PowerAllocation trial = x;
      detail::penalty_loop(problem, trial, eta, &result.trace);
      const double ratio_new = eta_update(problem, trial);
      if (ratio_new < eta * (1.0 - 1e-14)) {
        // Inner layers found nothing better than the current fixed point.
        result.trace.ratio_iterations.push_back({eta, 0.0, 0.0});
        break;
      }
      x = trial;
      const double obj = dinkelbach_objective(problem, x, eta);
      result.trace.ratio_iterations.push_back({eta, obj, std::fabs(obj)});
      if (std::fabs(obj) <= problem.params.ratio_tol) break;
      eta = ratio_new;
    }
  }

  const bool restored = restore_secrecy_margin(problem, x);
  result.allocation = x;
  result.secrecy_bps_hz = problem.cf.secrecy(x);
  result.eta_bits_per_joule = eta_update(problem, x);

  const bool budget_ok = x.total() <= problem.p_max_w * (1.0 + 1e-9);
  const bool secrecy_ok = restored && result.secrecy_bps_hz > problem.min_secrecy;
  bool ratio_converged = true;
  if (objective == SolveObjective::kSecureEnergyEfficiency) {
    ratio_converged = !result.trace.ratio_iterations.empty() &&
                      result.trace.ratio_iterations.back().residual <=
                          problem.params.ratio_tol;
  }
  if (budget_ok && secrecy_ok && ratio_converged)
    result.status = SolveStatus::kConverged;
  else if (secrecy_ok && budget_ok)
    result.status = SolveStatus::kMaxIterations;
  else
    result.status = SolveStatus::kInfeasible;
  return result;
}

}  // namespace seehp
