#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "photon_splitter/errors.hpp"
#include "photon_splitter/experiments/report.hpp"
#include "photon_splitter/fock/state.hpp"
#include "photon_splitter/format.hpp"
#include "photon_splitter/io/csv.hpp"
#include "photon_splitter/measurement/homodyne.hpp"
#include "photon_splitter/tomography/wigner.hpp"

namespace psplit {

// report.json plus one CSV per table. nlohmann::json objects iterate in key
// order and format_double strings are shortest-round-trip, so equal reports
// produce byte-identical files.
inline void write_report(const ExperimentReport& report,
                         const std::filesystem::path& out_dir) {
  validate_report(report);
  nlohmann::json j;
  j["config"] = report.config_echo;
  j["name"] = report.name;
  j["seed"] = report.seed;
  j["summary"] = report.summary;
  write_text_file(out_dir / "report.json", j.dump(2) + "\n");
  for (const auto& table : report.tables)
    write_csv(out_dir / (table.name + ".csv"), table);
}

inline std::string error_code_of(const std::exception& e) {
  if (dynamic_cast<const UnknownExperiment*>(&e)) return "unknown_experiment";
  if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
  if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
  if (dynamic_cast<const IoError*>(&e)) return "io_error";
  if (dynamic_cast<const Error*>(&e)) return "experiment_error";
  return "internal_error";
}

inline void write_error_json(const std::filesystem::path& out_dir,
                             const std::string& code,
                             const std::string& message) {
  nlohmann::json j;
  j["code"] = code;
  j["message"] = message;
  write_text_file(out_dir / "error.json", j.dump(2) + "\n");
}

inline void write_samples_csv(const std::filesystem::path& path,
                              const std::vector<QuadratureSample>& samples) {
  std::string text = "theta,x\n";
  for (const auto& s : samples) {
    text += format_double(s.theta);
    text += ',';
    text += format_double(s.x);
    text += '\n';
  }
  write_text_file(path, text);
}

// Inverse of write_samples_csv; shortest round-trip formatting makes the
// cycle exact, so a persisted dataset reconstructs to the same state.
inline std::vector<QuadratureSample> read_samples_csv(
    const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::vector<QuadratureSample> samples;
  std::size_t pos = 0;
  std::int64_t row = -1;  // header row is -1
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    if (++row == 0) {
      if (line != "theta,x")
        throw ParseError("expected header 'theta,x'", 1);
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("expected 'theta,x' row", int(row) + 1);
    QuadratureSample s;
    const auto parse_field = [&](const std::string& field, double& slot) {
      const auto res =
          std::from_chars(field.data(), field.data() + field.size(), slot);
      if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw ParseError("invalid number in samples file", int(row) + 1);
    };
    parse_field(line.substr(0, comma), s.theta);
    parse_field(line.substr(comma + 1), s.x);
    s.trial_index = row - 1;
    samples.push_back(s);
  }
  return samples;
}

inline void write_density_json(const std::filesystem::path& path,
                               const DensityMatrix& rho) {
  const auto dim = rho.elements.rows();
  nlohmann::json real = nlohmann::json::array();
  nlohmann::json imag = nlohmann::json::array();
  for (Eigen::Index i = 0; i < dim; ++i) {
    nlohmann::json row_re = nlohmann::json::array();
    nlohmann::json row_im = nlohmann::json::array();
    for (Eigen::Index j = 0; j < dim; ++j) {
      row_re.push_back(rho.elements(i, j).real());
      row_im.push_back(rho.elements(i, j).imag());
    }
    real.push_back(row_re);
    imag.push_back(row_im);
  }
  nlohmann::json j;
  j["cutoff"] = rho.cutoff;
  j["real"] = real;
  j["imag"] = imag;
  write_text_file(path, j.dump(2) + "\n");
}

inline void write_wigner_csv(const std::filesystem::path& path,
                             const WignerGrid& grid) {
  std::string text = "x,p,w\n";
  for (Eigen::Index i = 0; i < grid.xs.size(); ++i) {
    for (Eigen::Index j = 0; j < grid.ps.size(); ++j) {
      text += format_double(grid.xs[i]);
      text += ',';
      text += format_double(grid.ps[j]);
      text += ',';
      text += format_double(grid.w(i, j));
      text += '\n';
    }
  }
  write_text_file(path, text);
}

}  // namespace psplit
