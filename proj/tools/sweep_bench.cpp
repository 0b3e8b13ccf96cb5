// Times the OpenMP trial runner against the serial reference on the same
// sweep and checks that both produce identical CSV bytes.

#include <chrono>
#include <iostream>
#include <sstream>

#include "seehp/config.hpp"
#include "seehp/sweep.hpp"

namespace {

std::string csv_string(const seehp::SweepResult& r) {
  std::ostringstream os;
  seehp::emit_csv(r, os);
  return os.str();
}

template <class F>
double time_seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int trials = argc > 1 ? std::atoi(argv[1]) : 64;

  seehp::ParsedConfig cfg = seehp::parse_config_text("");
  cfg.sweep.trials = trials;
  cfg.sweep.values = {0.1, 0.31622776601683794};
  cfg.sweep.schemes = {"SEEHP", "HYSCM"};

  seehp::SweepResult serial_result, parallel_result;
  const double t_serial =
      time_seconds([&] { serial_result = seehp::run_sweep_serial(cfg.sweep, cfg.base); });
  const double t_parallel =
      time_seconds([&] { parallel_result = seehp::run_sweep(cfg.sweep, cfg.base); });

  const bool identical = csv_string(serial_result) == csv_string(parallel_result);

  std::cout << "trials per point: " << trials << "\n"
            << "serial:   " << t_serial << " s\n"
            << "parallel: " << t_parallel << " s\n"
            << "speedup:  " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n"
            << "outputs identical: " << (identical ? "yes" : "NO") << "\n";
  return identical ? 0 : 1;
}
