// mcsa: induction-motor stator-current analysis tool.
//
// Subcommands: simulate, analyze, diagnose, signatures. Exit codes:
//   0 success / healthy, 1 error, 2 fault finding, 3 indeterminate.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcsa/diagnosis.hpp"
#include "mcsa/errors.hpp"
#include "mcsa/io.hpp"
#include "mcsa/signatures.hpp"
#include "mcsa/sim.hpp"

namespace {

bool color_enabled() {
  return ::isatty(1) != 0 && std::getenv("MCSA_NO_COLOR") == nullptr;
}

std::string paint(const std::string& text, const char* code) {
  if (!color_enabled()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string verdict_text(mcsa::HealthVerdict v) {
  switch (v) {
    case mcsa::HealthVerdict::Healthy: return paint("healthy", "32");
    case mcsa::HealthVerdict::Faulty: return paint("faulty", "31");
    case mcsa::HealthVerdict::Indeterminate: return paint("indeterminate", "33");
  }
  return "?";
}

std::string severity_text(mcsa::BrokenBarVerdict v) {
  const char* code = (v == mcsa::BrokenBarVerdict::NoBrokenBar) ? "32" : "31";
  return paint(mcsa::to_string(v), code);
}

void echo_sim_config(const mcsa::SimConfig& config) {
  std::printf("supply_frequency = %g\n", config.supply_frequency);
  std::printf("fundamental_amplitude = %g\n", config.fundamental_amplitude);
  for (const auto& [h, amp] : config.harmonic_amplitudes)
    std::printf("harmonic_%d = %g\n", h, amp);
  std::printf("slip = %g\n", config.slip);
  for (const auto& [k, sb] : config.broken_bar) {
    std::printf("sideband_%d_lower = %g\n", k, sb.lower_amplitude);
    std::printf("sideband_%d_upper = %g\n", k, sb.upper_amplitude);
    std::printf("sideband_%d_lower_phase = %g\n", k, sb.lower_phase);
    std::printf("sideband_%d_upper_phase = %g\n", k, sb.upper_phase);
  }
  std::printf("noise_rms = %g\n", config.noise_rms);
  std::printf("sample_rate = %g\n", config.sample_rate);
  std::printf("duration = %g\n", config.duration);
  std::printf("seed = %llu\n", static_cast<unsigned long long>(config.seed));
}

mcsa::RneMode parse_mode(const std::string& mode) {
  if (mode == "magnitude") return mcsa::RneMode::Magnitude;
  if (mode == "complex") return mcsa::RneMode::Complex;
  throw mcsa::Error(mcsa::Errc::InvalidParams, "rne mode must be magnitude or complex");
}

mcsa::WindowKind parse_window(const std::string& window) {
  if (window == "rect") return mcsa::WindowKind::Rectangular;
  if (window == "hann") return mcsa::WindowKind::Hann;
  throw mcsa::Error(mcsa::Errc::InvalidParams, "window must be rect or hann");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"induction-motor current-signature analysis"};
  app.require_subcommand(1);
  app.fallthrough();

  double grid_step = 0.01;
  std::string rne_mode = "magnitude";
  double healthy_max = 0.3;
  double faulty_min = 0.5;
  std::string window = "rect";
  std::string output;
  bool timestamp = false;
  app.add_option("--grid-step", grid_step, "order grid step over [0, 1]");
  app.add_option("--rne-mode", rne_mode, "magnitude|complex")
      ->check(CLI::IsMember({"magnitude", "complex"}));
  app.add_option("--healthy-max", healthy_max, "mean-RNE upper bound for healthy");
  app.add_option("--faulty-min", faulty_min, "mean-RNE lower bound for faulty");
  app.add_option("--window", window, "rect|hann")->check(CLI::IsMember({"rect", "hann"}));
  app.add_option("--output", output, "report JSON path");
  app.add_flag("--timestamp", timestamp, "embed a timestamp in reports");

  // simulate
  auto* cmd_sim = app.add_subcommand("simulate", "write a synthetic recording CSV");
  std::string sim_source;
  std::string sim_out;
  std::string sim_config_path;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  cmd_sim->add_option("preset", sim_source, "preset name (omit when using --config)");
  cmd_sim->add_option("output", sim_out, "output CSV path");
  cmd_sim->add_option("--config", sim_config_path, "sim config file instead of a preset");
  auto* seed_opt = cmd_sim->add_option("--seed", sim_seed, "override the preset seed");

  // analyze
  auto* cmd_analyze = app.add_subcommand("analyze", "spectrum, sidebands, severity, THD");
  std::string an_input;
  std::string an_motor;
  std::string an_spectrum_csv;
  mcsa::io::AnalyzeOptions an_options;
  cmd_analyze->add_option("input", an_input, "recording CSV")->required();
  cmd_analyze->add_option("--motor", an_motor, "motor config file")->required();
  cmd_analyze->add_option("--spectrum-csv", an_spectrum_csv, "write the magnitude spectrum CSV");
  cmd_analyze->add_option("--k-max", an_options.k_max, "sideband families to predict");
  cmd_analyze->add_option("--max-harmonic", an_options.max_harmonic, "THD harmonic limit");
  cmd_analyze->add_option("--tolerance", an_options.sideband_tolerance_hz,
                          "sideband match window, Hz");

  // diagnose
  auto* cmd_diag = app.add_subcommand("diagnose", "fractional-sweep relative-norm-error verdict");
  std::string diag_a;
  std::string diag_b;
  std::string diag_rne_csv;
  cmd_diag->add_option("reference", diag_a, "reference recording CSV")->required();
  cmd_diag->add_option("candidate", diag_b, "candidate recording CSV")->required();
  cmd_diag->add_option("--rne-csv", diag_rne_csv, "write the order/RNE curve CSV");

  // signatures
  auto* cmd_sig = app.add_subcommand("signatures", "closed-form fault-frequency tables");
  std::string sig_motor;
  std::string sig_fault;
  std::string sig_csv;
  std::string sig_units = "supply";
  int sig_k_max = 2;
  std::vector<int> sig_nws{1};
  std::vector<int> sig_n{1};
  std::vector<int> sig_k{1};
  cmd_sig->add_option("--motor", sig_motor, "motor config file")->required();
  cmd_sig->add_option("--fault", sig_fault, "brb|eccentricity|stator|bearing")
      ->required()
      ->check(CLI::IsMember({"brb", "eccentricity", "stator", "bearing"}));
  cmd_sig->add_option("--k-max", sig_k_max, "broken-bar harmonic index limit");
  cmd_sig->add_option("--n-ws", sig_nws, "odd time-harmonic indices (eccentricity)")
      ->delimiter(',');
  cmd_sig->add_option("--n", sig_n, "integer indices (stator)")->delimiter(',');
  cmd_sig->add_option("--k", sig_k, "odd indices (stator)")->delimiter(',');
  cmd_sig->add_option("--units", sig_units, "trailing-term units: supply|hz")
      ->check(CLI::IsMember({"supply", "hz"}));
  cmd_sig->add_option("--csv", sig_csv, "also write the table as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cmd_sim) {
      // with --config the single positional is the output path
      if (!sim_config_path.empty() && sim_out.empty() && !sim_source.empty()) {
        sim_out = sim_source;
        sim_source.clear();
      }
      if (sim_out.empty())
        throw mcsa::Error(mcsa::Errc::InvalidParams, "simulate needs an output path");
      mcsa::SimConfig config;
      if (!sim_config_path.empty()) {
        config = mcsa::io::parse_sim_config(sim_config_path);
      } else {
        const auto& table = mcsa::presets();
        const auto it = table.find(sim_source);
        if (sim_source.empty() || it == table.end()) {
          std::string names;
          for (const auto& [name, cfg] : table) names += "\n  " + name;
          throw mcsa::Error(mcsa::Errc::UnknownPreset,
                            "'" + sim_source + "'; available presets:" + names);
        }
        config = it->second;
      }
      if (*seed_opt) {
        config.seed = sim_seed;
        sim_seed_set = true;
      }
      const mcsa::Signal signal = mcsa::generate(config);
      mcsa::io::write_recording_csv(sim_out, signal);
      std::printf("wrote %s (%zu samples)\n", sim_out.c_str(), signal.size());
      if (sim_seed_set) std::printf("seed override active\n");
      echo_sim_config(config);
      return 0;
    }

    if (*cmd_analyze) {
      an_options.window = parse_window(window);
      const mcsa::Signal signal = mcsa::io::read_recording_csv(an_input);
      const mcsa::MotorParams motor = mcsa::io::parse_motor_config(an_motor);
      const mcsa::io::AnalysisResult result = mcsa::io::analyze_signal(signal, motor, an_options);

      std::printf("input: %s (%zu samples @ %g Hz)\n", an_input.c_str(), signal.size(),
                  signal.sample_rate);
      std::printf("fundamental: %.3f Hz (magnitude %.4f)\n", result.fundamental.frequency,
                  result.fundamental.magnitude);
      std::printf("sidebands (tolerance %.2f Hz):\n", an_options.sideband_tolerance_hz);
      for (const auto& m : result.matches) {
        if (m.found)
          std::printf("  k=%d %-5s predicted %8.3f Hz -> %8.3f Hz  mag %.4f  %+.2f dB\n", m.k,
                      m.is_upper ? "upper" : "lower", m.predicted_hz, m.frequency, m.magnitude,
                      m.db_below_fundamental);
        else
          std::printf("  k=%d %-5s predicted %8.3f Hz -> absent\n", m.k,
                      m.is_upper ? "upper" : "lower", m.predicted_hz);
      }
      if (result.severity)
        std::printf("severity: %s (gap %.2f dB)\n",
                    severity_text(result.severity->verdict).c_str(),
                    result.severity->db_difference);
      else
        std::printf("severity: %s (no sideband matched)\n",
                    severity_text(mcsa::BrokenBarVerdict::NoBrokenBar).c_str());
      std::printf("THD (to harmonic %d): %.4f\n", an_options.max_harmonic, result.thd);
      std::printf("sideband power fraction: %.4f\n", result.sideband_power);

      const nlohmann::json report =
          mcsa::io::analysis_report_json(signal, motor, an_options, result, timestamp);
      mcsa::io::validate_report_json(report);
      if (!output.empty()) {
        std::ofstream out(output);
        out << report.dump(2) << '\n';
        std::printf("report: %s\n", output.c_str());
      }
      if (!an_spectrum_csv.empty()) {
        mcsa::io::write_spectrum_csv(an_spectrum_csv, result.spectrum);
        std::printf("spectrum: %s\n", an_spectrum_csv.c_str());
      }
      return result.any_fault_found ? 2 : 0;
    }

    if (*cmd_diag) {
      const mcsa::Signal a = mcsa::io::read_recording_csv(diag_a);
      const mcsa::Signal b = mcsa::io::read_recording_csv(diag_b);
      const std::vector<double> grid = mcsa::default_order_grid(grid_step);
      const mcsa::DiagnosisReport report = mcsa::diagnose(
          a, b, grid, parse_mode(rne_mode), mcsa::Thresholds{healthy_max, faulty_min});

      std::printf("reference: %s\ncandidate: %s\n", diag_a.c_str(), diag_b.c_str());
      std::printf("grid: %zu orders over [0, 1], mode %s\n", report.curve.orders.size(),
                  rne_mode.c_str());
      std::printf("mean RNE: %.4f (healthy < %g, faulty > %g)\n", report.mean_rne,
                  healthy_max, faulty_min);
      std::printf("verdict: %s\n", verdict_text(report.verdict).c_str());

      const nlohmann::json json_report = mcsa::io::diagnosis_report_json(report, timestamp);
      mcsa::io::validate_report_json(json_report);
      if (!output.empty()) {
        std::ofstream out(output);
        out << json_report.dump(2) << '\n';
        std::printf("report: %s\n", output.c_str());
      }
      if (!diag_rne_csv.empty()) {
        mcsa::io::write_rne_csv(diag_rne_csv, report.curve);
        std::printf("curve: %s\n", diag_rne_csv.c_str());
      }
      switch (report.verdict) {
        case mcsa::HealthVerdict::Healthy: return 0;
        case mcsa::HealthVerdict::Faulty: return 2;
        case mcsa::HealthVerdict::Indeterminate: return 3;
      }
    }

    if (*cmd_sig) {
      const mcsa::MotorParams motor = mcsa::io::parse_motor_config(sig_motor);
      const auto units = (sig_units == "hz") ? mcsa::TrailingTermUnits::RawHertz
                                             : mcsa::TrailingTermUnits::MultiplesOfSupply;
      std::string csv;
      if (sig_fault == "brb") {
        const auto pairs = mcsa::broken_bar_frequencies(motor, sig_k_max);
        std::printf("broken-rotor-bar sidebands (f_f = %g Hz, slip = %g)\n",
                    motor.supply_frequency, motor.slip);
        std::printf("  %-3s %12s %12s\n", "k", "lower_hz", "upper_hz");
        csv = "k,lower_hz,upper_hz\n";
        for (const auto& p : pairs) {
          std::printf("  %-3d %12.3f %12.3f%s\n", p.k, p.lower, p.upper,
                      p.lower_reflected ? "  (lower reflected)" : "");
          char row[96];
          std::snprintf(row, sizeof(row), "%d,%.9g,%.9g\n", p.k, p.lower, p.upper);
          csv += row;
        }
      } else if (sig_fault == "eccentricity") {
        const auto freqs = mcsa::eccentricity_frequencies(motor, sig_nws, units);
        std::printf("air-gap eccentricity components (R = %d, p = %d)\n", motor.rotor_slots,
                    motor.pole_pairs);
        csv = "frequency_hz,reflected\n";
        for (const auto& f : freqs) {
          std::printf("  %12.3f Hz%s\n", f.frequency, f.reflected ? "  (reflected)" : "");
          char row[64];
          std::snprintf(row, sizeof(row), "%.9g,%d\n", f.frequency, f.reflected ? 1 : 0);
          csv += row;
        }
      } else if (sig_fault == "stator") {
        const auto freqs = mcsa::stator_fault_frequencies(motor, sig_n, sig_k, units);
        std::printf("stator short-turn components (p = %d)\n", motor.pole_pairs);
        csv = "frequency_hz,reflected\n";
        for (const auto& f : freqs) {
          std::printf("  %12.3f Hz%s\n", f.frequency, f.reflected ? "  (reflected)" : "");
          char row[64];
          std::snprintf(row, sizeof(row), "%.9g,%d\n", f.frequency, f.reflected ? 1 : 0);
          csv += row;
        }
      } else {
        const auto [f0, f1] = mcsa::bearing_fault_frequencies(motor);
        std::printf("bearing characteristic pair (n = %d balls, f_rm = %g Hz)\n",
                    motor.bearing_balls, motor.rotor_mech_frequency);
        std::printf("  f0 = %.3f Hz\n  f1 = %.3f Hz\n", f0, f1);
        char row[96];
        std::snprintf(row, sizeof(row), "f0_hz,f1_hz\n%.9g,%.9g\n", f0, f1);
        csv = row;
      }
      if (!sig_csv.empty()) {
        std::ofstream out(sig_csv);
        out << csv;
        std::printf("table: %s\n", sig_csv.c_str());
      }
      return 0;
    }
  } catch (const mcsa::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
