#include "seehp/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "seehp/channel.hpp"
#include "seehp/metrics.hpp"
#include "seehp/rng.hpp"

namespace seehp {

namespace {

constexpr int kMaxResampleAttempts = 16;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

struct TrialOutcome {
  bool feasible = false;
  double ee = 0.0;
  double secrecy = 0.0;
};

struct CellSolve {
  SchemeInstance instance;
  SolveResult result;
};

TrialOutcome run_trial(const CellSolve& cell, std::uint64_t trial_seed,
                       PowerNormalization normalization) {
  TrialOutcome out;
  if (!cell.result.feasible()) return out;
  for (int attempt = 0; attempt < kMaxResampleAttempts; ++attempt) {
    const std::uint64_t seed = derive_seed(trial_seed, 0xA77E, attempt);
    const ChannelRealization ch = assemble_channels(cell.instance.geometry, seed);
    try {
      const ExactLinkMetrics m =
          evaluate_exact_link(ch, cell.instance.geometry, cell.instance.hw,
                              cell.result.allocation, seed, normalization);
      out.feasible = true;
      out.ee = m.ee_bits_per_joule;
      out.secrecy = m.secrecy_bps_hz;
      return out;
    } catch (const DegenerateChannel&) {
      // resample with the next attempt seed
    }
  }
  return out;
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  out.se = std::sqrt(var / static_cast<double>(xs.size()));
  return out;
}

SweepResult run_sweep_impl(const SweepSpec& spec, const BaseConfig& base,
                           bool parallel, int num_threads) {
  spec.validate(base);

  const std::size_t num_values = spec.values.size();
  const std::size_t num_schemes = spec.schemes.size();
  const std::size_t trials = static_cast<std::size_t>(spec.trials);

  std::vector<BaseConfig> points;
  points.reserve(num_values);
  for (double v : spec.values) points.push_back(apply_sweep_value(base, spec.parameter, v));

  // One deterministic solve per (scheme, value); trials only vary the
  // channel draw the solution is evaluated on.
  std::vector<CellSolve> solves(num_schemes * num_values);
  for (std::size_t si = 0; si < num_schemes; ++si) {
    const SchemeSpec scheme = SchemeSpec::from_name(spec.schemes[si]);
    for (std::size_t vi = 0; vi < num_values; ++vi) {
      CellSolve& cs = solves[si * num_values + vi];
      cs.instance = make_scheme_instance(scheme, points[vi].geometry, points[vi].hw);
      cs.result = solve(cs.instance.geometry, cs.instance.hw, points[vi].solver,
                        std::nullopt, scheme.objective);
    }
  }

  // Flat trial slots keep the aggregation order-independent: any schedule
  // fills the same slot with the same value.
  const std::size_t total = num_schemes * num_values * trials;
  std::vector<TrialOutcome> slots(total);

  const auto fill_slot = [&](std::size_t flat) {
    const std::size_t ti = flat % trials;
    const std::size_t vi = (flat / trials) % num_values;
    const std::size_t si = flat / (trials * num_values);
    // Channel seeds depend on the sweep point and trial only, so schemes are
    // compared on common random channels.
    const std::uint64_t trial_seed = derive_seed(spec.root_seed, vi, ti);
    slots[flat] = run_trial(solves[si * num_values + vi], trial_seed, spec.normalization);
  };

  if (parallel) {
#ifdef _OPENMP
    if (num_threads > 0) {
#pragma omp parallel for schedule(dynamic, 4) num_threads(num_threads)
      for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(total); ++flat)
        fill_slot(static_cast<std::size_t>(flat));
    } else {
#pragma omp parallel for schedule(dynamic, 4)
      for (std::ptrdiff_t flat = 0; flat < static_cast<std::ptrdiff_t>(total); ++flat)
        fill_slot(static_cast<std::size_t>(flat));
    }
#else
    for (std::size_t flat = 0; flat < total; ++flat) fill_slot(flat);
#endif
  } else {
    for (std::size_t flat = 0; flat < total; ++flat) fill_slot(flat);
  }

  SweepResult result;
  result.parameter = spec.parameter;
  result.trials = spec.trials;
  result.cells.reserve(num_schemes * num_values);
  for (std::size_t si = 0; si < num_schemes; ++si) {
    for (std::size_t vi = 0; vi < num_values; ++vi) {
      const CellSolve& cs = solves[si * num_values + vi];
      SweepCell cell;
      cell.scheme = spec.schemes[si];
      cell.value = spec.values[vi];
      cell.solve_status = cs.result.status;
      cell.eta_closed_form = cs.result.eta_bits_per_joule;
      cell.iters_ratio = static_cast<double>(cs.result.trace.ratio_iterations.size());
      cell.iters_penalty = static_cast<double>(cs.result.trace.penalty_steps.size());
      cell.iters_alternate = static_cast<double>(cs.result.trace.alternate_steps.size());
      if (spec.record_traces) cell.trace = cs.result.trace;

      std::vector<double> ees, secrecies;
      ees.reserve(trials);
      secrecies.reserve(trials);
      for (std::size_t ti = 0; ti < trials; ++ti) {
        const TrialOutcome& t = slots[(si * num_values + vi) * trials + ti];
        if (t.feasible) {
          ees.push_back(t.ee);
          secrecies.push_back(t.secrecy);
        } else {
          ++cell.infeasible;
        }
      }
      const MeanSe ee = mean_and_se(ees);
      const MeanSe sec = mean_and_se(secrecies);
      cell.mean_ee = ee.mean;
      cell.se_ee = ee.se;
      cell.mean_secrecy = sec.mean;
      cell.se_secrecy = sec.se;
      if (!ees.empty()) result.any_feasible = true;
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

}  // namespace

SweepParameter sweep_parameter_from_name(const std::string& name) {
  if (name == "p_max") return SweepParameter::kMaxPower;
  if (name == "c0_sec") return SweepParameter::kMinSecrecy;
  if (name == "n_tx") return SweepParameter::kTxAntennas;
  if (name == "n_rf") return SweepParameter::kRfChains;
  if (name == "k") return SweepParameter::kActuators;
  if (name == "m") return SweepParameter::kEavesAntennas;
  throw InvariantError("unknown sweep parameter: " + name);
}

const char* sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::kMaxPower: return "p_max";
    case SweepParameter::kMinSecrecy: return "c0_sec";
    case SweepParameter::kTxAntennas: return "n_tx";
    case SweepParameter::kRfChains: return "n_rf";
    case SweepParameter::kActuators: return "k";
    case SweepParameter::kEavesAntennas: return "m";
  }
  return "?";
}

std::vector<double> default_sweep_values(SweepParameter p) {
  switch (p) {
    case SweepParameter::kMaxPower: {
      // -15 .. 5 dBW
      std::vector<double> v;
      for (double dbw : {-15.0, -10.0, -5.0, 0.0, 5.0})
        v.push_back(std::pow(10.0, dbw / 10.0));
      return v;
    }
    case SweepParameter::kMinSecrecy: return {1, 2, 3, 4, 5, 6};
    case SweepParameter::kTxAntennas: return {60, 110, 160, 210};
    case SweepParameter::kRfChains: return {42, 50, 70, 100, 130};
    case SweepParameter::kActuators: return {10, 20, 30, 40, 48};
    case SweepParameter::kEavesAntennas: return {12, 20, 30, 40};
  }
  return {};
}

BaseConfig apply_sweep_value(const BaseConfig& base, SweepParameter parameter,
                             double value) {
  BaseConfig out = base;
  switch (parameter) {
    case SweepParameter::kMaxPower:
      out.hw.max_transmit_power_w = value;
      break;
    case SweepParameter::kMinSecrecy:
      out.hw.min_secrecy_bps_hz = value;
      break;
    case SweepParameter::kTxAntennas:
      out.geometry.num_tx_antennas = static_cast<int>(std::lround(value));
      break;
    case SweepParameter::kRfChains:
      out.geometry.num_rf_chains = static_cast<int>(std::lround(value));
      break;
    case SweepParameter::kActuators: {
      const int k = static_cast<int>(std::lround(value));
      auto& d = out.geometry.actuator_distances_m;
      const bool uniform =
          !d.empty() && std::all_of(d.begin(), d.end(), [&](double x) { return x == d[0]; });
      if (static_cast<int>(d.size()) != k) {
        if (!uniform)
          throw InvariantError("actuator distances incompatible with swept K");
        d.assign(static_cast<std::size_t>(k), d[0]);
      }
      out.geometry.num_actuators = k;
      break;
    }
    case SweepParameter::kEavesAntennas:
      out.geometry.num_eaves_antennas = static_cast<int>(std::lround(value));
      break;
  }
  out.geometry.validate();
  out.hw.validate();
  return out;
}

void SweepSpec::validate(const BaseConfig& base) const {
  if (values.empty()) throw InvariantError("sweep values nonempty");
  if (trials < 1) throw InvariantError("trials >= 1");
  if (schemes.empty()) throw InvariantError("schemes nonempty");
  for (const auto& s : schemes) SchemeSpec::from_name(s);
  for (double v : values) {
    const BaseConfig cfg = apply_sweep_value(base, parameter, v);
    for (const auto& s : schemes) {
      const SchemeInstance inst =
          make_scheme_instance(SchemeSpec::from_name(s), cfg.geometry, cfg.hw);
      inst.geometry.validate();
      inst.hw.validate();
    }
  }
}

SweepResult run_sweep(const SweepSpec& spec, const BaseConfig& base, int num_threads) {
  return run_sweep_impl(spec, base, true, num_threads);
}

SweepResult run_sweep_serial(const SweepSpec& spec, const BaseConfig& base) {
  return run_sweep_impl(spec, base, false, 0);
}

void emit_csv(const SweepResult& result, std::ostream& os) {
  os << "scheme,param,value,mean_ee_bits_per_joule,se_ee,mean_secrecy_bps_hz,"
        "se_secrecy,infeasible,iters_dinkelbach,iters_penalty,iters_alt\n";
  for (const SweepCell& c : result.cells) {
    os << c.scheme << ',' << sweep_parameter_name(result.parameter) << ','
       << format_double(c.value) << ',' << format_double(c.mean_ee) << ','
       << format_double(c.se_ee) << ',' << format_double(c.mean_secrecy) << ','
       << format_double(c.se_secrecy) << ',' << c.infeasible << ','
       << format_double(c.iters_ratio) << ',' << format_double(c.iters_penalty) << ','
       << format_double(c.iters_alternate) << '\n';
  }
}

void emit_csv(const SweepResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  emit_csv(result, os);
  os.flush();
  if (!os) throw std::runtime_error("write failed: " + path);
}

void emit_trace(const SweepResult& result, std::ostream& os) {
  const char* param = sweep_parameter_name(result.parameter);
  for (const SweepCell& c : result.cells) {
    int idx = 0;
    for (const auto& r : c.trace.ratio_iterations)
      os << c.scheme << '\t' << param << '\t' << format_double(c.value) << "\tratio\t"
         << idx++ << '\t' << format_double(r.eta) << '\t' << format_double(r.objective)
         << '\t' << format_double(r.residual) << '\n';
    idx = 0;
    for (const auto& r : c.trace.penalty_steps)
      os << c.scheme << '\t' << param << '\t' << format_double(c.value) << "\tpenalty\t"
         << idx++ << '\t' << format_double(r.weight) << '\t'
         << format_double(r.violation) << "\t0\n";
    idx = 0;
    for (const auto& r : c.trace.alternate_steps)
      os << c.scheme << '\t' << param << '\t' << format_double(c.value)
         << "\talternate\t" << idx++ << '\t' << format_double(r.objective_change)
         << "\t0\t0\n";
  }
}

void emit_trace(const SweepResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  emit_trace(result, os);
}

}  // namespace seehp
