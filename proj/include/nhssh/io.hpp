#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nhssh/model.hpp"
#include "nhssh/skin.hpp"
#include "nhssh/spectral.hpp"
#include "nhssh/sweep.hpp"
#include "nhssh/topology.hpp"

namespace nhssh {

using json = nlohmann::json;

// 17 significant digits, enough to round-trip any double.
std::string format_double(double x);

class CsvTable {
 public:
  explicit CsvTable(std::initializer_list<std::string_view> columns);

  CsvTable& row(std::initializer_list<double> values);
  std::size_t columns() const { return n_columns_; }
  const std::string& str() const { return text_; }

 private:
  std::size_t n_columns_ = 0;
  std::string text_;
};

std::string spectrum_csv(const Spectrum& s,
                         std::span<const double> edge_weight = {});
std::string bands_csv(std::span<const BandPoint> bands);
std::string grid_csv(const PhaseGrid& g);
std::string curve_csv(std::string_view x_name, std::string_view y_name,
                      std::span<const std::pair<double, double>> points);
std::string nu_line_csv(const NuLine& line);
std::string reality_csv(const RealitySweep& sweep);
std::string density_csv(std::span<const double> site_density);

json to_json(const ModelParams& p);
json to_json(cplx z);
json to_json(const Spectrum& s, bool include_vectors);
json to_json(const RealityReport& r);
json to_json(const NhseVerdict& v);
json to_json(const Axis& a);

// {params, invariant_name, value, n_k, flags}
json topology_record(const ModelParams& p, std::string_view invariant_name,
                     double value, std::size_t n_k, json flags = json::object());

json grid_header(const PhaseGrid& g, json params, std::uint64_t seed);

// Writes the whole buffer or throws IoError. Parent directories are created.
void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace nhssh
