#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mcsa/diagnosis.hpp"
#include "mcsa/signal_core.hpp"
#include "mcsa/signatures.hpp"
#include "mcsa/sim.hpp"

namespace mcsa::io {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

// --- recording CSV (`time_s,current_a`) -------------------------------------

// Parses a recording. Requires the exact header, >= 2 data rows, finite
// values, and uniform time spacing within 1 part in 1e6. Throws ParseError.
Signal read_recording_csv(const std::filesystem::path& path);

// Writes the canonical form: header, time_s as %.9f of i/sample_rate,
// current_a as shortest exact double (%.17g). Byte-stable across round-trips.
void write_recording_csv(const std::filesystem::path& path, const Signal& signal);

std::string recording_csv_text(const Signal& signal);
Signal parse_recording_csv_text(const std::string& text, const std::string& origin = "<string>");

// --- plot data ---------------------------------------------------------------

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum);
void write_rne_csv(const std::filesystem::path& path, const RneCurve& curve);

// --- flat key-value config files ---------------------------------------------
//
// Grammar: one `key = value` per line, `#` starts a comment, blank lines
// ignored. Keys are snake_case; repeated keys are an error. Sim sideband and
// harmonic entries use indexed keys, e.g. `harmonic_3 = 0.05`,
// `sideband_1_lower = 0.52`, `sideband_1_lower_phase = 0.0`.

MotorParams parse_motor_config(const std::filesystem::path& path);
MotorParams parse_motor_config_text(const std::string& text, const std::string& origin = "<string>");

SimConfig parse_sim_config(const std::filesystem::path& path);
SimConfig parse_sim_config_text(const std::string& text, const std::string& origin = "<string>");

// --- report JSON ---------------------------------------------------------------

struct AnalyzeOptions {
  WindowKind window = WindowKind::Rectangular;
  int k_max = 2;
  int max_harmonic = 5;
  double sideband_tolerance_hz = 1.5;
  double fundamental_band_low = 2.0;
  double fundamental_band_high = 0.0;  // 0 = up to Nyquist
};

struct AnalysisResult {
  Spectrum spectrum;
  FundamentalPeak fundamental;
  std::vector<SidebandPair> predicted;
  std::vector<SidebandMatch> matches;
  std::optional<SeverityVerdict> severity;  // absent when nothing matched
  double thd = 0.0;
  double sideband_power = 0.0;
  bool any_fault_found = false;
};

// Full analyze pipeline on an in-memory signal (the CLI wraps this with file
// I/O and exit-code mapping).
AnalysisResult analyze_signal(const Signal& signal, const MotorParams& motor,
                              const AnalyzeOptions& options);

nlohmann::json analysis_report_json(const Signal& signal, const MotorParams& motor,
                                    const AnalyzeOptions& options, const AnalysisResult& result,
                                    bool timestamp = false);

nlohmann::json diagnosis_report_json(const DiagnosisReport& report, bool timestamp = false);

// Schema check for any emitted report: required fields present, correct
// types, every numeric finite. Throws ParseError with the offending path.
void validate_report_json(const nlohmann::json& report);

}  // namespace mcsa::io
