#pragma once

#include <string>
#include <vector>

#include "seehp/solver.hpp"
#include "seehp/types.hpp"

namespace seehp {

enum class PowerModel { kHybrid, kFullDigital };

/// A comparison scheme is an (objective, power model) pair sharing the rest
/// of the pipeline:
///   SEEHP — secure energy efficiency, hybrid array
///   SEEPA — secure energy efficiency, full-digital array
///   SCM   — secrecy capacity, full-digital array
///   HYSCM — secrecy capacity, hybrid array
struct SchemeSpec {
  SolveObjective objective = SolveObjective::kSecureEnergyEfficiency;
  PowerModel power_model = PowerModel::kHybrid;
  std::string name = "SEEHP";

  static SchemeSpec from_name(const std::string& name);
  static const std::vector<std::string>& all_names();
};

/// Full-digital array variant: one RF chain per antenna and no phase-shifter
/// network. The rest of the power model is unchanged.
HardwareProfile full_digital_power_model(const HardwareProfile& hw);
ScenarioGeometry full_digital_geometry(const ScenarioGeometry& geometry);

/// Geometry/hardware pair a scheme actually runs with.
struct SchemeInstance {
  ScenarioGeometry geometry;
  HardwareProfile hw;
};
SchemeInstance make_scheme_instance(const SchemeSpec& spec,
                                    const ScenarioGeometry& geometry,
                                    const HardwareProfile& hw);

SolveResult solve_scheme(const SchemeSpec& spec, const ScenarioGeometry& geometry,
                         const HardwareProfile& hw, const SolverParams& params);

}  // namespace seehp
