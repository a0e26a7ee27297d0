#include "mcsa/io.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mcsa/errors.hpp"

namespace mcsa::io {

namespace {

constexpr const char* kRecordingHeader = "time_s,current_a";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::IoError, "short write to " + path.string());
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

double parse_double(const std::string& token, const std::string& origin, std::size_t lineno) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || end != begin + token.size())
    throw Error(Errc::ParseError,
                origin + ":" + std::to_string(lineno) + ": bad number '" + token + "'");
  return value;
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace

std::string recording_csv_text(const Signal& signal) {
  signal.validate();
  std::string out(kRecordingHeader);
  out += '\n';
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    out += format_double("%.9f", static_cast<double>(i) / signal.sample_rate);
    out += ',';
    out += format_double("%.17g", signal.samples[i]);
    out += '\n';
  }
  return out;
}

Signal parse_recording_csv_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kRecordingHeader)
    throw Error(Errc::ParseError, origin + ": expected header '" + kRecordingHeader + "'");

  std::vector<double> times;
  std::vector<double> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) + ": expected 2 columns");
    times.push_back(parse_double(line.substr(0, comma), origin, lineno));
    values.push_back(parse_double(line.substr(comma + 1), origin, lineno));
  }

  if (times.size() < 2)
    throw Error(Errc::ParseError, origin + ": recording has " + std::to_string(times.size()) +
                                      " data row(s), need at least 2");
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!std::isfinite(values[i]) || !std::isfinite(times[i]))
      throw Error(Errc::ParseError, origin + ": non-finite value in row " + std::to_string(i + 1));

  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  if (!(dt > 0.0))
    throw Error(Errc::ParseError, origin + ": time column must be strictly increasing");
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double step = times[i] - times[i - 1];
    if (!(step > 0.0) || std::abs(step - dt) > 1e-6 * dt)
      throw Error(Errc::ParseError, origin + ": non-uniform sampling at row " +
                                        std::to_string(i + 1) + " (step " + std::to_string(step) +
                                        " vs " + std::to_string(dt) + ")");
  }

  Signal signal;
  signal.samples = std::move(values);
  signal.sample_rate = 1.0 / dt;
  signal.label = origin;
  signal.validate();
  return signal;
}

Signal read_recording_csv(const std::filesystem::path& path) {
  return parse_recording_csv_text(read_file(path), path.string());
}

void write_recording_csv(const std::filesystem::path& path, const Signal& signal) {
  write_file(path, recording_csv_text(signal));
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& spectrum) {
  std::string out = "frequency_hz,magnitude\n";
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    out += format_double("%.9g", spectrum.frequencies[i]);
    out += ',';
    out += format_double("%.9g", spectrum.magnitudes[i]);
    out += '\n';
  }
  write_file(path, out);
}

void write_rne_csv(const std::filesystem::path& path, const RneCurve& curve) {
  std::string out = "order,rne\n";
  for (std::size_t i = 0; i < curve.orders.size(); ++i) {
    out += format_double("%.9g", curve.orders[i]);
    out += ',';
    out += format_double("%.9g", curve.errors[i]);
    out += '\n';
  }
  write_file(path, out);
}

// --- flat key-value configs ---------------------------------------------------

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text, const std::string& origin) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto is_space = [](unsigned char c) { return std::isspace(c); };
    line.erase(line.begin(), std::find_if_not(line.begin(), line.end(), is_space));
    line.erase(std::find_if_not(line.rbegin(), line.rend(), is_space).base(), line.end());
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(Errc::ParseError,
                  origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    key.erase(std::find_if_not(key.rbegin(), key.rend(), is_space).base(), key.end());
    value.erase(value.begin(), std::find_if_not(value.begin(), value.end(), is_space));
    if (key.empty() || value.empty())
      throw Error(Errc::ParseError, origin + ":" + std::to_string(lineno) + ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw Error(Errc::ParseError,
                  origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return kv;
}

double to_double(const std::string& value, const std::string& key, const std::string& origin) {
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || end != begin + value.size())
    throw Error(Errc::ParseError, origin + ": key '" + key + "' has bad number '" + value + "'");
  return v;
}

int to_int(const std::string& value, const std::string& key, const std::string& origin) {
  const double v = to_double(value, key, origin);
  const int i = static_cast<int>(std::llround(v));
  if (v != static_cast<double>(i))
    throw Error(Errc::ParseError, origin + ": key '" + key + "' must be an integer");
  return i;
}

}  // namespace

MotorParams parse_motor_config_text(const std::string& text, const std::string& origin) {
  const auto kv = parse_kv(text, origin);
  MotorParams params;
  bool have_supply = false;
  for (const auto& [key, value] : kv) {
    if (key == "supply_frequency") {
      params.supply_frequency = to_double(value, key, origin);
      have_supply = true;
    } else if (key == "pole_pairs") {
      params.pole_pairs = to_int(value, key, origin);
    } else if (key == "rotor_slots") {
      params.rotor_slots = to_int(value, key, origin);
    } else if (key == "bearing_balls") {
      params.bearing_balls = to_int(value, key, origin);
    } else if (key == "rotor_mech_frequency") {
      params.rotor_mech_frequency = to_double(value, key, origin);
    } else if (key == "slip") {
      params.slip = to_double(value, key, origin);
    } else {
      throw Error(Errc::ParseError, origin + ": unknown key '" + key + "'");
    }
  }
  if (!have_supply) throw Error(Errc::ParseError, origin + ": missing key 'supply_frequency'");
  params.validate();
  return params;
}

MotorParams parse_motor_config(const std::filesystem::path& path) {
  return parse_motor_config_text(read_file(path), path.string());
}

SimConfig parse_sim_config_text(const std::string& text, const std::string& origin) {
  const auto kv = parse_kv(text, origin);
  SimConfig config;
  for (const auto& [key, value] : kv) {
    if (key == "supply_frequency") {
      config.supply_frequency = to_double(value, key, origin);
    } else if (key == "fundamental_amplitude") {
      config.fundamental_amplitude = to_double(value, key, origin);
    } else if (key == "slip") {
      config.slip = to_double(value, key, origin);
    } else if (key == "noise_rms") {
      config.noise_rms = to_double(value, key, origin);
    } else if (key == "sample_rate") {
      config.sample_rate = to_double(value, key, origin);
    } else if (key == "duration") {
      config.duration = to_double(value, key, origin);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(to_double(value, key, origin));
    } else if (key.rfind("harmonic_", 0) == 0) {
      const int h = to_int(key.substr(9), key, origin);
      config.harmonic_amplitudes[h] = to_double(value, key, origin);
    } else if (key.rfind("sideband_", 0) == 0) {
      // sideband_<k>_{lower,upper}[_phase]
      const std::string rest = key.substr(9);
      const auto underscore = rest.find('_');
      if (underscore == std::string::npos)
        throw Error(Errc::ParseError, origin + ": malformed sideband key '" + key + "'");
      const int k = to_int(rest.substr(0, underscore), key, origin);
      const std::string field = rest.substr(underscore + 1);
      SidebandSpec& sb = config.broken_bar[k];
      if (field == "lower") sb.lower_amplitude = to_double(value, key, origin);
      else if (field == "upper") sb.upper_amplitude = to_double(value, key, origin);
      else if (field == "lower_phase") sb.lower_phase = to_double(value, key, origin);
      else if (field == "upper_phase") sb.upper_phase = to_double(value, key, origin);
      else
        throw Error(Errc::ParseError, origin + ": malformed sideband key '" + key + "'");
    } else {
      throw Error(Errc::ParseError, origin + ": unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SimConfig parse_sim_config(const std::filesystem::path& path) {
  return parse_sim_config_text(read_file(path), path.string());
}

// --- analysis ------------------------------------------------------------------

AnalysisResult analyze_signal(const Signal& signal, const MotorParams& motor,
                              const AnalyzeOptions& options) {
  AnalysisResult result;
  result.spectrum = compute_spectrum(signal, options.window, Normalization::FundamentalUnit);

  const double nyquist = result.spectrum.max_frequency();
  const double band_high =
      (options.fundamental_band_high > 0.0) ? options.fundamental_band_high : nyquist;
  result.fundamental =
      find_fundamental(result.spectrum, std::min(options.fundamental_band_low, nyquist), band_high);

  result.predicted = broken_bar_frequencies(motor, options.k_max);
  result.matches = detect_sidebands(result.spectrum, result.fundamental.frequency,
                                    result.predicted, options.sideband_tolerance_hz);

  double worst_gap = 0.0;
  bool any_found = false;
  for (const SidebandMatch& m : result.matches) {
    if (!m.found) continue;
    const double gap = -m.db_below_fundamental;
    if (!any_found || gap < worst_gap) worst_gap = gap;
    any_found = true;
  }
  if (any_found) result.severity = broken_bar_severity(worst_gap);

  if (result.fundamental.magnitude > 0.0)
    result.thd =
        total_harmonic_distortion(result.spectrum, result.fundamental.frequency,
                                  options.max_harmonic);

  std::vector<double> sideband_bins;
  for (const SidebandPair& p : result.predicted) {
    if (p.lower <= nyquist) sideband_bins.push_back(p.lower);
    if (p.upper <= nyquist) sideband_bins.push_back(p.upper);
  }
  result.sideband_power = sideband_power_fraction(result.spectrum, sideband_bins);

  result.any_fault_found =
      result.severity.has_value() &&
      result.severity->verdict != BrokenBarVerdict::NoBrokenBar;
  return result;
}

// --- report JSON ----------------------------------------------------------------

namespace {

nlohmann::json signal_meta(const Signal& signal) {
  return {{"label", signal.label},
          {"samples", signal.samples.size()},
          {"sample_rate_hz", signal.sample_rate},
          {"duration_s", signal.duration()}};
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

std::vector<std::pair<double, double>> top_peaks(const Spectrum& spectrum, std::size_t count) {
  std::vector<std::pair<double, double>> peaks;  // (magnitude, frequency)
  for (std::size_t i = 1; i + 1 < spectrum.size(); ++i) {
    if (spectrum.magnitudes[i] > spectrum.magnitudes[i - 1] &&
        spectrum.magnitudes[i] >= spectrum.magnitudes[i + 1] && spectrum.magnitudes[i] > 0.0)
      peaks.emplace_back(spectrum.magnitudes[i], spectrum.frequencies[i]);
  }
  std::sort(peaks.rbegin(), peaks.rend());
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

}  // namespace

nlohmann::json analysis_report_json(const Signal& signal, const MotorParams& motor,
                                    const AnalyzeOptions& options, const AnalysisResult& result,
                                    bool timestamp) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["kind"] = "analysis";
  j["input"] = signal_meta(signal);
  j["config"] = {{"supply_frequency_hz", motor.supply_frequency},
                 {"pole_pairs", motor.pole_pairs},
                 {"rotor_slots", motor.rotor_slots},
                 {"bearing_balls", motor.bearing_balls},
                 {"rotor_mech_frequency_hz", motor.rotor_mech_frequency},
                 {"slip", motor.slip},
                 {"window", options.window == WindowKind::Hann ? "hann" : "rect"},
                 {"k_max", options.k_max},
                 {"max_harmonic", options.max_harmonic},
                 {"sideband_tolerance_hz", options.sideband_tolerance_hz}};
  j["fundamental"] = {{"frequency_hz", result.fundamental.frequency},
                      {"magnitude", result.fundamental.magnitude},
                      {"zero_spectrum", result.fundamental.zero_spectrum}};

  nlohmann::json sidebands = nlohmann::json::array();
  for (const SidebandMatch& m : result.matches) {
    nlohmann::json entry = {{"k", m.k},
                            {"side", m.is_upper ? "upper" : "lower"},
                            {"predicted_hz", m.predicted_hz},
                            {"found", m.found}};
    if (m.found) {
      entry["frequency_hz"] = m.frequency;
      entry["magnitude"] = m.magnitude;
      entry["db_below_fundamental"] = m.db_below_fundamental;
    }
    sidebands.push_back(entry);
  }
  j["sidebands"] = sidebands;

  if (result.severity) {
    j["severity"] = {{"verdict", to_string(result.severity->verdict)},
                     {"db_difference", result.severity->db_difference}};
  } else {
    j["severity"] = {{"verdict", to_string(BrokenBarVerdict::NoBrokenBar)}};
  }

  j["thd"] = result.thd;
  j["sideband_power_fraction"] = result.sideband_power;

  nlohmann::json peaks = nlohmann::json::array();
  for (const auto& [mag, freq] : top_peaks(result.spectrum, 8))
    peaks.push_back({{"frequency_hz", freq}, {"magnitude", mag}});
  j["spectrum_peaks"] = peaks;

  if (timestamp) j["timestamp"] = iso_timestamp();
  return j;
}

nlohmann::json diagnosis_report_json(const DiagnosisReport& report, bool timestamp) {
  nlohmann::json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool_version"] = kToolVersion;
  j["kind"] = "diagnosis";
  j["reference"] = {{"label", report.reference_label}};
  j["candidate"] = {{"label", report.candidate_label}};
  j["config"] = {{"rne_mode", report.mode == RneMode::Magnitude ? "magnitude" : "complex"},
                 {"healthy_max", report.thresholds.healthy_max},
                 {"faulty_min", report.thresholds.faulty_min},
                 {"grid_points", report.curve.orders.size()}};

  nlohmann::json curve = nlohmann::json::array();
  for (std::size_t i = 0; i < report.curve.orders.size(); ++i)
    curve.push_back({{"order", report.curve.orders[i]}, {"rne", report.curve.errors[i]}});
  j["curve"] = curve;

  j["mean_rne"] = report.mean_rne;
  j["verdict"] = to_string(report.verdict);
  if (timestamp) j["timestamp"] = iso_timestamp();
  return j;
}

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw Error(Errc::ParseError, "report schema: " + what);
}

void check_numbers_finite(const nlohmann::json& node, const std::string& path) {
  if (node.is_number()) {
    require(std::isfinite(node.get<double>()), "non-finite number at " + path);
  } else if (node.is_object()) {
    for (const auto& [key, value] : node.items())
      check_numbers_finite(value, path + "." + key);
  } else if (node.is_array()) {
    std::size_t i = 0;
    for (const auto& value : node) check_numbers_finite(value, path + "[" + std::to_string(i++) + "]");
  }
}

}  // namespace

void validate_report_json(const nlohmann::json& report) {
  require(report.is_object(), "report must be an object");
  require(report.value("schema_version", -1) == kReportSchemaVersion, "bad schema_version");
  require(report.contains("tool_version") && report["tool_version"].is_string(),
          "missing tool_version");
  const std::string kind = report.value("kind", "");
  require(kind == "analysis" || kind == "diagnosis", "kind must be analysis or diagnosis");

  if (kind == "analysis") {
    for (const char* field : {"input", "config", "fundamental", "sidebands", "severity", "thd",
                              "sideband_power_fraction", "spectrum_peaks"})
      require(report.contains(field), std::string("missing field ") + field);
    require(report["sidebands"].is_array(), "sidebands must be an array");
    for (const auto& sb : report["sidebands"]) {
      require(sb.contains("k") && sb.contains("side") && sb.contains("predicted_hz") &&
                  sb.contains("found"),
              "sideband entry incomplete");
      if (sb.value("found", false))
        require(sb.contains("frequency_hz") && sb.contains("magnitude") &&
                    sb.contains("db_below_fundamental"),
                "found sideband entry lacks measurements");
    }
  } else {
    for (const char* field : {"reference", "candidate", "config", "curve", "mean_rne", "verdict"})
      require(report.contains(field), std::string("missing field ") + field);
    require(report["curve"].is_array() && !report["curve"].empty(), "curve must be non-empty");
    for (const auto& point : report["curve"])
      require(point.contains("order") && point.contains("rne"), "curve point incomplete");
    const std::string verdict = report.value("verdict", "");
    require(verdict == "healthy" || verdict == "faulty" || verdict == "indeterminate",
            "bad verdict");
  }
  check_numbers_finite(report, "$");
}

}  // namespace mcsa::io
