#include "antihom/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "antihom/errors.hpp"

namespace antihom::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw ConfigError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

namespace {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ConfigError(std::string("expected number '") + key + "'");
  return j.at(key).get<double>();
}

bool is_param(const json& v) { return v.is_object() && v.contains("param"); }

Complex layer_index(const json& layer, const MaterialTable& materials, double wavelength) {
  if (layer.contains("material")) {
    return materials.at(layer.at("material").get<std::string>(), wavelength).index;
  }
  // Free n or k are filled in later; start from the midpoint placeholder 1.
  const double n = layer.contains("n") && !is_param(layer.at("n")) ? number(layer, "n") : 1.0;
  const double k = layer.contains("k") && !is_param(layer.at("k")) ? number(layer, "k") : 0.0;
  return {n, k};
}

struct ParsedStack {
  LayerStack stack;
  // (parameter name, kind, layer)
  std::vector<std::tuple<std::string, FreeParameter::Kind, std::size_t>> uses;
};

ParsedStack parse_any(const json& j, const MaterialTable& materials, double default_wavelength_nm) {
  try {
    ParsedStack out;
    const json* layers = &j;
    out.stack.wavelength_nm = default_wavelength_nm;
    if (j.is_object()) {
      if (j.contains("wavelength_nm")) out.stack.wavelength_nm = number(j, "wavelength_nm");
      if (j.contains("ambient_in")) out.stack.ambient_in = number(j, "ambient_in");
      if (j.contains("ambient_out")) out.stack.ambient_out = number(j, "ambient_out");
      if (!j.contains("layers")) throw ConfigError("stack object needs 'layers'");
      layers = &j.at("layers");
    }
    if (!layers->is_array()) throw ConfigError("stack layers must be a list");
    for (std::size_t i = 0; i < layers->size(); ++i) {
      const json& l = layers->at(i);
      if (!l.is_object()) throw ConfigError("each layer must be an object");
      Layer layer;
      layer.index = layer_index(l, materials, out.stack.wavelength_nm);
      if (!l.contains("thickness_nm")) throw ConfigError("layer needs 'thickness_nm'");
      const json& th = l.at("thickness_nm");
      if (is_param(th)) {
        out.uses.emplace_back(th.at("param").get<std::string>(), FreeParameter::Kind::Thickness, i);
        layer.thickness_nm = 1.0;
      } else {
        layer.thickness_nm = number(l, "thickness_nm");
      }
      if (l.contains("n") && is_param(l.at("n")))
        out.uses.emplace_back(l.at("n").at("param").get<std::string>(), FreeParameter::Kind::IndexReal, i);
      if (l.contains("k") && is_param(l.at("k")))
        out.uses.emplace_back(l.at("k").at("param").get<std::string>(), FreeParameter::Kind::IndexImag, i);
      out.stack.layers.push_back(layer);
    }
    return out;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("stack file: ") + e.what());
  }
}

}  // namespace

MaterialTable MaterialTable::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("materials file must map names to {n, k, wavelength_nm}");
  MaterialTable t;
  for (const auto& [name, v] : j.items()) {
    if (!v.is_object()) throw ConfigError("material '" + name + "' must be an object");
    Material m;
    m.index = {number(v, "n"), number(v, "k")};
    m.wavelength_nm = number(v, "wavelength_nm");
    m.placeholder = v.value("placeholder", false);
    if (m.index.imag() < 0.0) throw PhysicsError("material '" + name + "' has k < 0 (gain)");
    t.table_.emplace(name, m);
  }
  return t;
}

MaterialTable MaterialTable::load(const std::filesystem::path& path) { return from_json(read_json(path)); }

const Material* MaterialTable::find(const std::string& name) const {
  const auto it = table_.find(name);
  return it == table_.end() ? nullptr : &it->second;
}

const Material& MaterialTable::at(const std::string& name, double wavelength_nm) const {
  const auto it = table_.find(name);
  if (it == table_.end()) throw ConfigError("unknown material '" + name + "' (pass --materials)");
  if (std::abs(it->second.wavelength_nm - wavelength_nm) > 1e-9 * wavelength_nm) {
    throw ConfigError("material '" + name + "' is tabulated at " + format_double(it->second.wavelength_nm) +
                      " nm, stack wavelength is " + format_double(wavelength_nm) + " nm");
  }
  return it->second;
}

LayerStack parse_stack(const json& j, const MaterialTable& materials, double default_wavelength_nm) {
  auto parsed = parse_any(j, materials, default_wavelength_nm);
  if (!parsed.uses.empty()) throw ConfigError("stack has free parameters; use it as a design template");
  parsed.stack.validate();
  return parsed.stack;
}

StackTemplate parse_template(const json& j, const MaterialTable& materials, double default_wavelength_nm) {
  auto parsed = parse_any(j, materials, default_wavelength_nm);
  StackTemplate templ;
  templ.base = parsed.stack;
  const json bounds = j.is_object() ? j.value("parameters", json::object()) : json::object();
  for (const auto& [name, kind, layer] : parsed.uses) {
    auto it = std::find_if(templ.parameters.begin(), templ.parameters.end(),
                           [&](const FreeParameter& p) { return p.name == name; });
    if (it == templ.parameters.end()) {
      if (!bounds.contains(name)) throw ConfigError("parameter '" + name + "' has no bounds");
      FreeParameter p;
      p.name = name;
      p.kind = kind;
      p.lower = number(bounds.at(name), "min");
      p.upper = number(bounds.at(name), "max");
      templ.parameters.push_back(p);
      it = templ.parameters.end() - 1;
    } else if (it->kind != kind) {
      throw ConfigError("parameter '" + name + "' is used for different quantities");
    }
    it->layers.push_back(layer);
  }
  // Unused entries in "parameters" are almost certainly typos.
  for (const auto& [name, v] : bounds.items()) {
    const bool used = std::any_of(templ.parameters.begin(), templ.parameters.end(),
                                  [&](const FreeParameter& p) { return p.name == name; });
    if (!used) throw ConfigError("parameter '" + name + "' is declared but not used");
  }
  return templ;
}

std::vector<std::string> placeholder_materials(const json& j, const MaterialTable& materials) {
  std::vector<std::string> out;
  const json layers = j.is_object() ? j.value("layers", json::array()) : j;
  if (!layers.is_array()) return out;
  for (const auto& l : layers) {
    if (!l.is_object() || !l.contains("material") || !l.at("material").is_string()) continue;
    const auto name = l.at("material").get<std::string>();
    const Material* m = materials.find(name);
    if (m && m->placeholder && std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
  }
  return out;
}

MatrixXc parse_matrix(const json& j) {
  try {
    auto rows_of = [](const json& a) {
      if (!a.is_array() || a.empty()) throw ConfigError("matrix must be a non-empty list of rows");
      const std::size_t n = a.size();
      MatrixXc m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        if (!a[i].is_array() || a[i].size() != n) throw ConfigError("matrix must be square");
        for (std::size_t k = 0; k < n; ++k) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = a[i][k].get<double>();
      }
      return m;
    };
    if (j.is_array()) return rows_of(j);
    if (j.is_object() && j.contains("real")) {
      MatrixXc m = rows_of(j.at("real"));
      if (j.contains("imag")) {
        const MatrixXc im = rows_of(j.at("imag"));
        if (im.rows() != m.rows()) throw ConfigError("real and imag parts differ in size");
        m += Complex(0.0, 1.0) * im;
      }
      return m;
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("matrix file: ") + e.what());
  }
  throw ConfigError("matrix file must be [[...]] or {\"real\": [[...]], \"imag\": [[...]]}");
}

json matrix_to_json(const MatrixXc& m) {
  json re = json::array(), im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json rr = json::array(), ii = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(rr);
    im.push_back(ii);
  }
  return {{"real", re}, {"imag", im}};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json stack_to_json(const LayerStack& stack) {
  json layers = json::array();
  for (const auto& l : stack.layers)
    layers.push_back({{"thickness_nm", l.thickness_nm}, {"n", l.index.real()}, {"k", l.index.imag()}});
  return {{"wavelength_nm", stack.wavelength_nm},
          {"ambient_in", stack.ambient_in},
          {"ambient_out", stack.ambient_out},
          {"layers", layers}};
}

std::string scan_csv(const ScanResult& result) {
  std::string out = "position_um,probability,normalized,counts,shot_error\n";
  for (const auto& pt : result.points) {
    out += format_double(pt.position_um);
    out += ',';
    out += format_double(pt.probability);
    out += ',';
    out += format_double(pt.normalized);
    out += ',';
    if (pt.counts) out += std::to_string(*pt.counts);
    out += ',';
    if (pt.shot_error) out += format_double(*pt.shot_error);
    out += '\n';
  }
  return out;
}

json scan_json(const ScanResult& result) {
  json points = json::array();
  for (const auto& pt : result.points) {
    json p = {{"position_um", pt.position_um},
              {"probability", pt.probability},
              {"normalized", pt.normalized},
              {"counts", pt.counts ? json(*pt.counts) : json(nullptr)},
              {"shot_error", pt.shot_error ? json(*pt.shot_error) : json(nullptr)},
              {"overlap", pt.overlap},
              {"analytic_probability", pt.analytic}};
    points.push_back(std::move(p));
  }
  return {{"points", points},
          {"baseline_probability", result.baseline_probability},
          {"noise", result.noise},
          {"reference_counts", result.reference_counts},
          {"rng", result.rng}};
}

json gaussian_fit_json(const GaussianFit& fit) {
  json j = {{"status", fit.status == FitStatus::Converged ? "converged" : "failed"},
            {"baseline", fit.baseline},
            {"amplitude", fit.amplitude},
            {"center_um", fit.center ? json(*fit.center) : json(nullptr)},
            {"width_um", fit.width ? json(*fit.width) : json(nullptr)},
            {"extremum", fit.extremum()},
            {"extremum_error", fit.extremum_error},
            {"chi2", fit.chi2}};
  if (!fit.message.empty()) j["message"] = fit.message;
  return j;
}

}  // namespace antihom::io
