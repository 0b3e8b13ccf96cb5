#include "seehp/schemes.hpp"

#include <stdexcept>

namespace seehp {

SchemeSpec SchemeSpec::from_name(const std::string& name) {
  if (name == "SEEHP")
    return {SolveObjective::kSecureEnergyEfficiency, PowerModel::kHybrid, name};
  if (name == "SEEPA")
    return {SolveObjective::kSecureEnergyEfficiency, PowerModel::kFullDigital, name};
  if (name == "SCM")
    return {SolveObjective::kSecrecyCapacity, PowerModel::kFullDigital, name};
  if (name == "HYSCM")
    return {SolveObjective::kSecrecyCapacity, PowerModel::kHybrid, name};
  throw InvariantError("unknown scheme name: " + name);
}

const std::vector<std::string>& SchemeSpec::all_names() {
  static const std::vector<std::string> names = {"SEEHP", "SEEPA", "SCM", "HYSCM"};
  return names;
}

HardwareProfile full_digital_power_model(const HardwareProfile& hw) {
  HardwareProfile out = hw;
  out.phase_shifter_power_w = 0.0;
  return out;
}

ScenarioGeometry full_digital_geometry(const ScenarioGeometry& geometry) {
  ScenarioGeometry out = geometry;
  out.num_rf_chains = geometry.num_tx_antennas;
  return out;
}

SchemeInstance make_scheme_instance(const SchemeSpec& spec,
                                    const ScenarioGeometry& geometry,
                                    const HardwareProfile& hw) {
  if (spec.power_model == PowerModel::kFullDigital)
    return {full_digital_geometry(geometry), full_digital_power_model(hw)};
  return {geometry, hw};
}

SolveResult solve_scheme(const SchemeSpec& spec, const ScenarioGeometry& geometry,
                         const HardwareProfile& hw, const SolverParams& params) {
  const SchemeInstance inst = make_scheme_instance(spec, geometry, hw);
  return solve(inst.geometry, inst.hw, params, std::nullopt, spec.objective);
}

}  // namespace seehp
