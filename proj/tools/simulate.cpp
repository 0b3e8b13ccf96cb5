#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "seehp/config.hpp"
#include "seehp/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo sweep driver for the secure-EE hybrid precoding pipeline"};

  std::string config_path;
  std::string sweep_name;
  int trials = -1;
  long long seed = -1;
  std::string output_dir = ".";
  std::string schemes_csv;
  bool emit_trace_file = false;
  int threads = 0;
  bool serial = false;

  app.add_option("--config", config_path, "config file (key = value lines)");
  app.add_option("--sweep", sweep_name, "swept parameter: p_max|c0_sec|n_tx|n_rf|k|m");
  app.add_option("--trials", trials, "Monte Carlo trials per sweep point");
  app.add_option("--seed", seed, "root seed");
  app.add_option("--output", output_dir, "output directory");
  app.add_option("--schemes", schemes_csv, "comma-separated scheme names");
  app.add_flag("--emit-trace", emit_trace_file, "write per-iteration solver trace");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_flag("--serial", serial, "use the serial reference runner");

  CLI11_PARSE(app, argc, argv);

  seehp::ParsedConfig cfg;
  try {
    cfg = config_path.empty() ? seehp::parse_config_text("")
                              : seehp::parse_config(config_path);
    if (!sweep_name.empty()) {
      const seehp::SweepParameter p = seehp::sweep_parameter_from_name(sweep_name);
      if (p != cfg.sweep.parameter) {
        cfg.sweep.parameter = p;
        cfg.sweep.values = seehp::default_sweep_values(p);
      }
    }
    if (trials > 0) cfg.sweep.trials = trials;
    if (seed >= 0) cfg.sweep.root_seed = static_cast<std::uint64_t>(seed);
    if (!schemes_csv.empty()) {
      cfg.sweep.schemes.clear();
      std::string cur;
      for (char c : schemes_csv + ",") {
        if (c == ',') {
          if (!cur.empty()) cfg.sweep.schemes.push_back(cur);
          cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
          cur += c;
        }
      }
    }
    cfg.sweep.record_traces = emit_trace_file;
    cfg.sweep.validate(cfg.base);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    const seehp::SweepResult result =
        serial ? seehp::run_sweep_serial(cfg.sweep, cfg.base)
               : seehp::run_sweep(cfg.sweep, cfg.base, threads);

    std::filesystem::create_directories(output_dir);
    const std::string param = seehp::sweep_parameter_name(result.parameter);
    const std::string csv_path = output_dir + "/sweep_" + param + ".csv";
    seehp::emit_csv(result, csv_path);
    std::cout << "wrote " << csv_path << "\n";
    if (emit_trace_file) {
      const std::string trace_path = output_dir + "/trace_" + param + ".tsv";
      seehp::emit_trace(result, trace_path);
      std::cout << "wrote " << trace_path << "\n";
    }

    for (const auto& cell : result.cells)
      std::cout << cell.scheme << " " << param << "=" << cell.value
                << " mean_ee=" << cell.mean_ee << " mean_secrecy=" << cell.mean_secrecy
                << " infeasible=" << cell.infeasible << "/" << result.trials << "\n";

    if (!result.any_feasible) {
      std::cerr << "no feasible sweep point\n";
      return 3;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
