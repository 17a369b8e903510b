#include "nhssh/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "nhssh/error.hpp"

namespace nhssh {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvTable::CsvTable(std::initializer_list<std::string_view> columns)
    : n_columns_(columns.size()) {
  bool first = true;
  for (auto c : columns) {
    if (!first) text_ += ',';
    text_ += c;
    first = false;
  }
  text_ += '\n';
}

CsvTable& CsvTable::row(std::initializer_list<double> values) {
  if (values.size() != n_columns_) {
    throw InvalidArgument("csv row has the wrong number of columns");
  }
  bool first = true;
  for (double v : values) {
    if (!first) text_ += ',';
    text_ += format_double(v);
    first = false;
  }
  text_ += '\n';
  return *this;
}

std::string spectrum_csv(const Spectrum& s, std::span<const double> edge_weight) {
  const bool weights = !edge_weight.empty();
  if (weights && edge_weight.size() != s.size()) {
    throw InvalidArgument("edge weights do not match the spectrum");
  }
  if (weights) {
    CsvTable t{"index", "re_E", "im_E", "edge_weight"};
    for (std::size_t i = 0; i < s.size(); ++i) {
      t.row({static_cast<double>(i), s.eigenvalues[i].real(),
             s.eigenvalues[i].imag(), edge_weight[i]});
    }
    return t.str();
  }
  CsvTable t{"index", "re_E", "im_E"};
  for (std::size_t i = 0; i < s.size(); ++i) {
    t.row({static_cast<double>(i), s.eigenvalues[i].real(),
           s.eigenvalues[i].imag()});
  }
  return t.str();
}

std::string bands_csv(std::span<const BandPoint> bands) {
  CsvTable t{"k", "reE_plus", "imE_plus", "reE_minus", "imE_minus"};
  for (const auto& b : bands) {
    t.row({b.k, b.e_plus.real(), b.e_plus.imag(), b.e_minus.real(),
           b.e_minus.imag()});
  }
  return t.str();
}

std::string grid_csv(const PhaseGrid& g) {
  std::string out = g.x_axis.name + ',' + g.y_axis.name + ",value\n";
  for (std::size_t iy = 0; iy < g.y_axis.n; ++iy) {
    for (std::size_t ix = 0; ix < g.x_axis.n; ++ix) {
      out += format_double(g.x_axis.value(ix));
      out += ',';
      out += format_double(g.y_axis.value(iy));
      out += ',';
      out += format_double(g.at(ix, iy));
      out += '\n';
    }
  }
  return out;
}

std::string curve_csv(std::string_view x_name, std::string_view y_name,
                      std::span<const std::pair<double, double>> points) {
  CsvTable t{x_name, y_name};
  for (const auto& [x, y] : points) t.row({x, y});
  return t.str();
}

std::string nu_line_csv(const NuLine& line) {
  CsvTable t{"delta2", "nu"};
  for (const auto& p : line.points) t.row({p.delta2, p.nu.value_or(NAN)});
  return t.str();
}

std::string reality_csv(const RealitySweep& sweep) {
  CsvTable t{"u", "n_real", "n_imaginary", "n_complex"};
  for (const auto& [u, r] : sweep.rows) {
    t.row({u, static_cast<double>(r.n_real), static_cast<double>(r.n_imaginary),
           static_cast<double>(r.n_complex)});
  }
  return t.str();
}

std::string density_csv(std::span<const double> site_density) {
  CsvTable t{"site", "density"};
  for (std::size_t i = 0; i < site_density.size(); ++i) {
    t.row({static_cast<double>(i), site_density[i]});
  }
  return t.str();
}

json to_json(const ModelParams& p) {
  return {{"kind", std::string(to_string(p.kind))},
          {"t1", p.t1},
          {"t2", p.t2},
          {"delta1", p.delta1},
          {"delta2", p.delta2},
          {"u", p.u}};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const Spectrum& s, bool include_vectors) {
  json j;
  j["boundary"] = std::string(to_string(s.boundary));
  j["size"] = s.size();
  json values = json::array();
  for (const auto& e : s.eigenvalues) values.push_back(to_json(e));
  j["eigenvalues"] = std::move(values);
  j["residual"] = s.residual;
  j["backward_error"] = s.backward_error;
  j["near_defective"] = s.near_defective;
  j["condition"] = s.condition;
  if (include_vectors && s.has_vectors()) {
    auto columns = [](const Eigen::MatrixXcd& m) {
      json cols = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        json col = json::array();
        for (Eigen::Index r = 0; r < m.rows(); ++r) col.push_back(to_json(m(r, c)));
        cols.push_back(std::move(col));
      }
      return cols;
    };
    j["right_vectors"] = columns(s.right_vectors);
    j["left_vectors"] = columns(s.left_vectors);
  }
  return j;
}

json to_json(const RealityReport& r) {
  return {{"n_real", r.n_real},
          {"n_imaginary", r.n_imaginary},
          {"n_complex", r.n_complex},
          {"tol", r.tol}};
}

json to_json(const NhseVerdict& v) {
  return {{"present", v.present},
          {"side", std::string(to_string(v.side))},
          {"localized_fraction", v.localized_fraction},
          {"n_left", v.n_left},
          {"n_right", v.n_right}};
}

json to_json(const Axis& a) {
  return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"n", a.n}};
}

json topology_record(const ModelParams& p, std::string_view invariant_name,
                     double value, std::size_t n_k, json flags) {
  return {{"params", to_json(p)},
          {"invariant_name", std::string(invariant_name)},
          {"value", value},
          {"n_k", n_k},
          {"flags", std::move(flags)}};
}

json grid_header(const PhaseGrid& g, json params, std::uint64_t seed) {
  std::size_t indeterminate = 0;
  for (bool b : g.indeterminate) indeterminate += b;
  return {{"x_axis", to_json(g.x_axis)},
          {"y_axis", to_json(g.y_axis)},
          {"observable", std::string(to_string(g.observable))},
          {"params", std::move(params)},
          {"seed", seed},
          {"indeterminate_cells", indeterminate}};
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw IoError("failed writing " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + '\n');
}

}  // namespace nhssh
