#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

#include "antihom/design.hpp"
#include "antihom/experiment.hpp"
#include "antihom/thin_film.hpp"
#include "antihom/transfer.hpp"

namespace antihom::io {

using nlohmann::json;

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Writes via a sibling temp file and rename, so readers never see a
/// partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);
json read_json(const std::filesystem::path& path);

struct Material {
  Complex index;
  double wavelength_nm = 0.0;
  bool placeholder = false;
};

/// name -> {n, k, wavelength_nm[, placeholder]}.
class MaterialTable {
 public:
  MaterialTable() = default;
  static MaterialTable from_json(const json& j);
  static MaterialTable load(const std::filesystem::path& path);

  /// Throws ConfigError for unknown names or a wavelength mismatch
  /// (dispersion is not modeled).
  const Material& at(const std::string& name, double wavelength_nm) const;
  const Material* find(const std::string& name) const;
  bool empty() const { return table_.empty(); }

 private:
  std::map<std::string, Material> table_;
};

/// Either a bare list of layers or {wavelength_nm, ambient_in, ambient_out,
/// layers}. Each layer is {thickness_nm, material} or {thickness_nm, n, k}.
LayerStack parse_stack(const json& j, const MaterialTable& materials, double default_wavelength_nm);

/// Stack file whose thickness_nm / n / k entries may be {"param": name},
/// with bounds under "parameters": {name: {min, max}}.
StackTemplate parse_template(const json& j, const MaterialTable& materials, double default_wavelength_nm);

/// Names of placeholder materials a stack file refers to.
std::vector<std::string> placeholder_materials(const json& j, const MaterialTable& materials);

/// Square matrix as {"real": [[...]], "imag": [[...]]} or a real [[...]].
MatrixXc parse_matrix(const json& j);
json matrix_to_json(const MatrixXc& m);

json stack_to_json(const LayerStack& stack);
json complex_to_json(Complex z);

/// position_um,probability,normalized,counts,shot_error
std::string scan_csv(const ScanResult& result);
json scan_json(const ScanResult& result);
json gaussian_fit_json(const GaussianFit& fit);

}  // namespace antihom::io
