#ifndef WEYLUNC_IO_HPP
#define WEYLUNC_IO_HPP

// CSV and JSON output for scan tables and reports. CSV values use %.17g and
// LF line endings; JSON numbers use nlohmann's shortest round-trip form.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

#include <json.hpp>

#include "weylunc/analysis.hpp"
#include "weylunc/report.hpp"

namespace weylunc::io {

using nlohmann::json;

inline constexpr std::string_view kSchemaVersion = "1";

inline std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string to_csv(const analysis::ScanTable& t) {
  std::string out(analysis::kCsvHeader);
  out += '\n';
  for (const auto& r : t.rows) {
    const double vals[] = {r.param, r.U,           r.U_prime,         r.U_double_prime, r.V,
                           r.abs_phi, r.abs_phi_tilde, r.abs_omega, r.pi_k,           r.nbar};
    for (std::size_t i = 0; i < std::size(vals); ++i) {
      if (i) out += ',';
      out += format17(vals[i]);
    }
    out += '\n';
  }
  return out;
}

inline json row_json(const analysis::ScanRow& r) {
  return json{{"param", r.param},       {"U", r.U},           {"Uprime", r.U_prime},
              {"Udoubleprime", r.U_double_prime},           {"V", r.V},
              {"absPhi", r.abs_phi},    {"absPhiTilde", r.abs_phi_tilde},
              {"absOmega", r.abs_omega}, {"Pik", r.pi_k},      {"nbar", r.nbar}};
}

inline json envelope(std::string_view command, json parameters) {
  return json{{"schema_version", kSchemaVersion},
              {"command", command},
              {"parameters", std::move(parameters)},
              {"notes", json::array()}};
}

inline json table_json(const analysis::ScanTable& t, std::string_view command, json parameters) {
  json j = envelope(command, std::move(parameters));
  j["family"] = families::to_string(t.family);
  j["param_name"] = t.param_name;
  j["k"] = t.k;
  j["phi"] = t.phi;
  j["applicable"] = t.applicable;
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back(row_json(r));
  j["rows"] = std::move(rows);
  return j;
}

inline json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json report_json(const UncertaintyReport& r) {
  return json{{"U", r.U},
              {"Uprime", optional_json(r.U_prime)},
              {"Udoubleprime", optional_json(r.U_double_prime)},
              {"V", r.V},
              {"det_plus", r.det_plus},
              {"det_minus", r.det_minus},
              {"bound", r.bound},
              {"applicable", r.applicable},
              {"slack_U", optional_json(r.slack_U)},
              {"slack_Uprime", optional_json(r.slack_U_prime)},
              {"slack_Udoubleprime", optional_json(r.slack_U_double_prime)},
              {"slack_V", optional_json(r.slack_V)}};
}

inline json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

inline json extremum_json(const analysis::ExtremumResult& e) {
  return json{{"param", e.param},
              {"value", e.value},
              {"kind", analysis::to_string(e.kind)},
              {"functional", analysis::to_string(e.functional)},
              {"bracket", json::array({e.bracket_lo, e.bracket_hi})},
              {"iterations", e.iterations},
              {"on_boundary", e.on_boundary}};
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

/// Write `content` to a sibling temporary file and rename it over `path`.
inline void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      f.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path.string() + ": " + ec.message());
  }
}

}  // namespace weylunc::io

#endif  // WEYLUNC_IO_HPP
