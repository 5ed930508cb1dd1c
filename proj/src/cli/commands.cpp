#include "antihom/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

#include "antihom/beamsplitter.hpp"
#include "antihom/design.hpp"
#include "antihom/errors.hpp"
#include "antihom/experiment.hpp"
#include "antihom/fock.hpp"
#include "antihom/io.hpp"
#include "antihom/states.hpp"
#include "antihom/thin_film.hpp"

namespace antihom::cli {

using nlohmann::json;
namespace fs = std::filesystem;

double parse_angle(const std::string& text) {
  static const std::regex pi_form(R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)",
                                  std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    double factor = 1.0;
    const std::string f = m[1].str();
    if (f == "-") {
      factor = -1.0;
    } else if (!f.empty() && f != "+") {
      factor = std::stod(f);
    }
    const double div = m[2].matched ? std::stod(m[2].str()) : 1.0;
    if (div == 0.0) throw ConfigError("angle '" + text + "' divides by zero");
    return factor * kPi / div;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse angle '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw ConfigError("cannot parse angle '" + text + "'");
  return v;
}

namespace {

// ---------------------------------------------------------------- config --

json defaults_for(const std::string& command) {
  if (command == "hom-scan") {
    return {{"phi", "0"},           {"sample", "lossless50"}, {"sc", 1.0},          {"ss", 1.0},
            {"sample_file", ""},    {"materials", ""},        {"wavelength_nm", 810.0}, {"fwhm_nm", 10.0},
            {"start_um", -60.0},    {"stop_um", 60.0},        {"step_um", 2.0},     {"reference_counts", 750.0},
            {"noise", false},       {"seed", 0},              {"mixing", 0.0},      {"out", "hom_scan.csv"}};
  }
  if (command == "distribution") {
    return {{"phi", "0"},        {"sample", "lossless50"}, {"sc", 1.0},         {"ss", 1.0},
            {"sample_file", ""}, {"materials", ""},        {"wavelength_nm", 810.0}, {"overlap", 1.0},
            {"out", "distribution.csv"}};
  }
  if (command == "bell-scan") {
    return {{"phi", "0"}, {"points", 36}, {"mixing", 0.0}, {"admixture", "unpolarized"}, {"out", "bell_scan.csv"}};
  }
  if (command == "stack response") {
    return {{"file", ""}, {"wavelength_nm", nullptr}, {"materials", ""}, {"out", "stack_response.csv"}};
  }
  if (command == "stack design") {
    return {{"template", ""}, {"target", "eq6-plus"}, {"restarts", 5},
            {"materials", ""}, {"wavelength_nm", nullptr}, {"out", "stack_design.csv"}};
  }
  if (command == "fock") {
    return {{"matrix", ""}, {"occupation", ""}, {"out", "fock.csv"}};
  }
  throw ConfigError("unknown command '" + command + "'");
}

template <typename T>
T get(const json& cfg, const char* key) {
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' is missing or has the wrong type");
  }
}

std::string angle_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return io::format_double(v.get<double>());
  throw ConfigError("angle must be a string or a number");
}

io::MaterialTable materials_from(const json& cfg) {
  const auto path = get<std::string>(cfg, "materials");
  if (!path.empty()) return io::MaterialTable::load(path);
  // Same entries as data/materials.json. Cr is a rough guess and stays flagged.
  return io::MaterialTable::from_json(
      {{"SiN", {{"n", 2.1}, {"k", 0.0}, {"wavelength_nm", 810.0}}},
       {"Cr", {{"n", 3.2}, {"k", 3.5}, {"wavelength_nm", 810.0}, {"placeholder", true}}}});
}

void warn_placeholders(const json& file, const io::MaterialTable& materials, std::ostream& err, json& manifest_notes) {
  for (const auto& name : io::placeholder_materials(file, materials)) {
    err << "warning: material '" << name
        << "' is a placeholder entry; confirm its index before trusting the result\n";
    manifest_notes.push_back(name);
  }
}

struct Outputs {
  fs::path csv;
  fs::path json_path;
  fs::path manifest;
};

Outputs outputs_for(const json& cfg) {
  const fs::path csv = get<std::string>(cfg, "out");
  if (csv.empty()) throw ConfigError("--out must not be empty");
  fs::path stem = csv;
  stem.replace_extension();
  Outputs o{csv, stem, stem};
  o.json_path += ".json";
  o.manifest += ".manifest.json";
  return o;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- samples --

bool looks_like_matrix(const json& j) {
  if (j.is_object()) return j.contains("real");
  return j.is_array() && !j.empty() && j.front().is_array();
}

Sample resolve_sample(const json& cfg, std::ostream& err, json& notes) {
  const auto file = get<std::string>(cfg, "sample_file");
  const double wavelength = get<double>(cfg, "wavelength_nm");
  if (!file.empty()) {
    const json j = io::read_json(file);
    if (looks_like_matrix(j)) return TransferMatrix(io::parse_matrix(j));
    const auto materials = materials_from(cfg);
    warn_placeholders(j, materials, err, notes);
    return io::parse_stack(j, materials, wavelength);
  }
  const auto name = get<std::string>(cfg, "sample");
  if (name == "lossless50") return lossless_bs(1.0 / std::sqrt(2.0), +1);
  if (name == "lossy-eq6-plus") return lossy_bs(+1);
  if (name == "lossy-eq6-minus") return lossy_bs(-1);
  if (name == "identity") return TransferMatrix::identity(2);
  if (name == "qsw") return qsw_composite({get<double>(cfg, "sc"), get<double>(cfg, "ss")});
  if (name == "sin100nm") {
    LayerStack s;
    s.layers = {{100.0, {2.1, 0.0}}};
    s.wavelength_nm = wavelength;
    return s;
  }
  throw ConfigError("unknown sample preset '" + name +
                    "' (lossless50, sin100nm, lossy-eq6-plus, lossy-eq6-minus, qsw, identity)");
}

json sample_json(const Sample& sample) {
  return std::visit(
      [](const auto& s) -> json {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, TransferMatrix>) {
          return {{"matrix", io::matrix_to_json(s.matrix())}};
        } else {
          return {{"stack", io::stack_to_json(s)}, {"matrix", io::matrix_to_json(sample_matrix(s).matrix())}};
        }
      },
      sample);
}

// ---------------------------------------------------------------- commands --

std::vector<std::string> hom_scan_cmd(const json& cfg, std::ostream& out, std::ostream& err, json& notes) {
  ScanConfig sc;
  sc.sample = resolve_sample(cfg, err, notes);
  sc.source.phi = BellPhase(parse_angle(angle_text(cfg.at("phi"))));
  sc.source.mixing = get<double>(cfg, "mixing");
  sc.packet = {get<double>(cfg, "wavelength_nm"), get<double>(cfg, "fwhm_nm")};
  sc.reference_counts = get<double>(cfg, "reference_counts");
  sc.noise = get<bool>(cfg, "noise");
  sc.rng_seed = get<std::uint64_t>(cfg, "seed");
  const double start = get<double>(cfg, "start_um");
  const double stop = get<double>(cfg, "stop_um");
  const double step = get<double>(cfg, "step_um");
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("positions need start <= stop and step > 0");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  if (count > 100000) throw ConfigError("too many scan positions");
  for (std::size_t i = 0; i < count; ++i) sc.positions_um.push_back(start + step * static_cast<double>(i));

  const ScanResult result = hom_scan(sc);
  const auto o = outputs_for(cfg);
  json doc = io::scan_json(result);
  doc["sample"] = sample_json(sc.sample);
  doc["config"] = cfg;
  if (!notes.empty()) doc["placeholder_materials"] = notes;

  double lo = result.points.front().normalized, hi = lo;
  for (const auto& p : result.points) {
    lo = std::min(lo, p.normalized);
    hi = std::max(hi, p.normalized);
  }
  const bool peak = (hi - 1.0) > (1.0 - lo);
  const FeatureKind kind = peak ? FeatureKind::Peak : FeatureKind::Dip;
  const double extremum = peak ? hi : lo;
  doc["feature"] = {{"kind", peak ? "peak" : "dip"},
                    {"normalized_extremum", extremum},
                    {"classical_limit", classical_limit(kind)},
                    {"regime", is_quantum(kind, extremum) ? "quantum" : "classical"}};
  if (result.points.size() >= 8) doc["fit"] = io::gaussian_fit_json(fit_hom_curve(result));

  io::write_file_atomic(o.csv, io::scan_csv(result));
  io::write_file_atomic(o.json_path, dump(doc));
  out << "baseline probability " << io::format_double(result.baseline_probability) << "\n"
      << (peak ? "peak" : "dip") << " normalized extremum " << io::format_double(extremum) << " ("
      << (is_quantum(kind, extremum) ? "beyond" : "within") << " classical limit "
      << io::format_double(classical_limit(kind)) << ")\n";
  return {o.csv.string(), o.json_path.string()};
}

std::vector<std::string> distribution_cmd(const json& cfg, std::ostream& out, std::ostream& err, json& notes) {
  const Sample sample = resolve_sample(cfg, err, notes);
  const BellPhase phi(parse_angle(angle_text(cfg.at("phi"))));
  const double g = get<double>(cfg, "overlap");
  const FockDistribution dist = pair_output(bell_input(phi), sample_matrix(sample), g);
  const auto table = port_count_distribution(dist);

  std::string csv = "n_left,n_right,n_lost,probability\n";
  json rows = json::array();
  for (const auto& [c, p] : table) {
    csv += std::to_string(c.left) + "," + std::to_string(c.right) + "," + std::to_string(c.lost) + "," +
           io::format_double(p) + "\n";
    rows.push_back({{"n_left", c.left}, {"n_right", c.right}, {"n_lost", c.lost}, {"probability", p}});
    out << "(" << c.left << "," << c.right << ") lost " << c.lost << ": " << io::format_double(p) << "\n";
  }
  json losses = json::object();
  for (const auto& [k, p] : loss_count_distribution(dist)) losses[std::to_string(k)] = p;

  const auto o = outputs_for(cfg);
  json doc = {{"rows", rows},
              {"loss_counts", losses},
              {"coincidence_probability", coincidence_probability(dist)},
              {"sample", sample_json(sample)},
              {"config", cfg}};
  if (!notes.empty()) doc["placeholder_materials"] = notes;
  io::write_file_atomic(o.csv, csv);
  io::write_file_atomic(o.json_path, dump(doc));
  return {o.csv.string(), o.json_path.string()};
}

std::vector<std::string> bell_scan_cmd(const json& cfg, std::ostream& out, std::ostream&, json&) {
  PolarizationInput input;
  input.phi = BellPhase(parse_angle(angle_text(cfg.at("phi"))));
  input.mixing = get<double>(cfg, "mixing");
  const auto admixture = get<std::string>(cfg, "admixture");
  if (admixture == "unpolarized") {
    input.admixture = PolarizationInput::Admixture::Unpolarized;
  } else if (admixture == "same") {
    input.admixture = PolarizationInput::Admixture::SamePolarization;
  } else {
    throw ConfigError("admixture must be 'unpolarized' or 'same'");
  }
  const auto points = get<int>(cfg, "points");
  if (points < 3) throw ConfigError("bell-scan needs at least 3 points");
  const auto grid = angle_grid(static_cast<std::size_t>(points));
  const BellScan scan = bell_test(input, grid);

  std::string csv = "theta2,theta1,probability\n";
  json vis = json::object();
  for (const auto& [theta2, curve] : scan.curves) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      csv += io::format_double(theta2) + "," + io::format_double(grid[i]) + "," + io::format_double(curve[i]) + "\n";
    vis[io::format_double(theta2)] = scan.visibilities.at(theta2).value;
  }
  const auto o = outputs_for(cfg);
  json doc = {{"visibilities", vis},
              {"V1", scan.result.v1},
              {"V2", scan.result.v2},
              {"S", scan.result.s},
              {"non_classical", scan.result.non_classical()},
              {"config", cfg}};
  io::write_file_atomic(o.csv, csv);
  io::write_file_atomic(o.json_path, dump(doc));
  out << "V1 " << io::format_double(scan.result.v1) << "\nV2 " << io::format_double(scan.result.v2) << "\nS "
      << io::format_double(scan.result.s) << (scan.result.non_classical() ? " (non-classical)" : " (classical)")
      << "\n";
  return {o.csv.string(), o.json_path.string()};
}

double stack_wavelength(const json& cfg, const json& file) {
  if (!cfg.at("wavelength_nm").is_null()) return get<double>(cfg, "wavelength_nm");
  if (file.is_object() && file.contains("wavelength_nm")) return file.at("wavelength_nm").get<double>();
  return 810.0;
}

json with_wavelength(json file, double wavelength) {
  if (file.is_object()) file["wavelength_nm"] = wavelength;
  return file;
}

std::vector<std::string> stack_response_cmd(const json& cfg, std::ostream& out, std::ostream& err, json& notes) {
  const auto path = get<std::string>(cfg, "file");
  if (path.empty()) throw ConfigError("stack response needs --file");
  const json file = io::read_json(path);
  const double wl = stack_wavelength(cfg, file);
  const auto materials = materials_from(cfg);
  warn_placeholders(file, materials, err, notes);
  const LayerStack stack = io::parse_stack(with_wavelength(file, wl), materials, wl);
  const StackResponse r = stack_response(stack);

  std::string csv = "side,t_re,t_im,r_re,r_im,T,R,A\n";
  auto row = [&](const char* side, Complex refl, double a) {
    csv += std::string(side) + "," + io::format_double(r.t.real()) + "," + io::format_double(r.t.imag()) + "," +
           io::format_double(refl.real()) + "," + io::format_double(refl.imag()) + "," +
           io::format_double(r.transmittance()) + "," + io::format_double(std::norm(refl)) + "," +
           io::format_double(a) + "\n";
  };
  row("left", r.r_left, r.absorptance_left());
  row("right", r.r_right, r.absorptance_right());
  const auto o = outputs_for(cfg);
  json doc = {{"t", io::complex_to_json(r.t)},
              {"r_left", io::complex_to_json(r.r_left)},
              {"r_right", io::complex_to_json(r.r_right)},
              {"T", r.transmittance()},
              {"R_left", r.reflectance_left()},
              {"R_right", r.reflectance_right()},
              {"A_left", r.absorptance_left()},
              {"A_right", r.absorptance_right()},
              {"stack", io::stack_to_json(stack)},
              {"config", cfg}};
  if (!notes.empty()) doc["placeholder_materials"] = notes;
  io::write_file_atomic(o.csv, csv);
  io::write_file_atomic(o.json_path, dump(doc));
  out << "T " << io::format_double(r.transmittance()) << "\nR " << io::format_double(r.reflectance_left())
      << "\nA " << io::format_double(r.absorptance_left()) << "\n";
  return {o.csv.string(), o.json_path.string()};
}

BeamsplitterSpec parse_target(const std::string& name) {
  if (name == "eq6-plus") return {0.5, 0.5};
  if (name == "eq6-minus") return {0.5, -0.5};
  if (name == "identity") return {1.0, 0.0};
  if (name == "lossless50") return {1.0 / std::sqrt(2.0), Complex(0.0, 1.0 / std::sqrt(2.0))};
  std::vector<double> parts;
  std::stringstream ss(name);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      parts.clear();
      break;
    }
  }
  if (parts.size() == 4) return make_beamsplitter({parts[0], parts[1]}, {parts[2], parts[3]});
  throw ConfigError("target must be eq6-plus, eq6-minus, identity, lossless50 or 't_re,t_im,r_re,r_im'");
}

std::vector<std::string> stack_design_cmd(const json& cfg, std::ostream& out, std::ostream& err, json& notes) {
  const auto path = get<std::string>(cfg, "template");
  if (path.empty()) throw ConfigError("stack design needs --template");
  const json file = io::read_json(path);
  const double wl = stack_wavelength(cfg, file);
  const auto materials = materials_from(cfg);
  warn_placeholders(file, materials, err, notes);
  const StackTemplate templ = io::parse_template(with_wavelength(file, wl), materials, wl);
  const BeamsplitterSpec target = parse_target(get<std::string>(cfg, "target"));
  DesignOptions opt;
  opt.restarts = get<int>(cfg, "restarts");
  const DesignResult res = design_stack(templ, target, opt);

  std::string csv = "parameter,value\n";
  json values = json::object();
  for (std::size_t i = 0; i < templ.parameters.size(); ++i) {
    csv += templ.parameters[i].name + "," + io::format_double(res.values[i]) + "\n";
    values[templ.parameters[i].name] = res.values[i];
    out << templ.parameters[i].name << " " << io::format_double(res.values[i]) << "\n";
  }
  csv += "residual," + io::format_double(res.residual) + "\n";
  const auto o = outputs_for(cfg);
  json doc = {{"parameters", values},
              {"residual", res.residual},
              {"t_aligned", io::complex_to_json(res.t)},
              {"r_aligned", io::complex_to_json(res.r)},
              {"best_restart", res.best_restart},
              {"stack", io::stack_to_json(res.stack)},
              {"config", cfg}};
  if (!notes.empty()) doc["placeholder_materials"] = notes;
  io::write_file_atomic(o.csv, csv);
  io::write_file_atomic(o.json_path, dump(doc));
  out << "residual " << io::format_double(res.residual) << "\n";
  return {o.csv.string(), o.json_path.string()};
}

std::vector<std::string> fock_cmd(const json& cfg, std::ostream& out, std::ostream&, json&) {
  const auto path = get<std::string>(cfg, "matrix");
  if (path.empty()) throw ConfigError("fock needs --matrix");
  const TransferMatrix m(io::parse_matrix(io::read_json(path)));
  Occupation occ;
  std::stringstream ss(get<std::string>(cfg, "occupation"));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      occ.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ConfigError("occupation must be comma-separated integers");
    }
  }
  if (static_cast<Eigen::Index>(occ.size()) != m.dim())
    throw ConfigError("occupation has " + std::to_string(occ.size()) + " entries for a " + std::to_string(m.dim()) +
                      "-mode matrix");
  const auto reg = ModeRegister::canonical(occ.size());
  const FockState input(reg, {{occ, Complex(1.0)}});
  const FockState output = evolve(input, m.is_unitary() ? m : dilate(m));

  auto occ_text = [](const Occupation& o) {
    std::string s;
    for (std::size_t i = 0; i < o.size(); ++i) s += (i ? " " : "") + std::to_string(o[i]);
    return s;
  };
  std::string csv = "occupation,amplitude_re,amplitude_im,probability\n";
  json rows = json::array();
  for (const auto& [o, a] : output.terms()) {
    csv += occ_text(o) + "," + io::format_double(a.real()) + "," + io::format_double(a.imag()) + "," +
           io::format_double(std::norm(a)) + "\n";
    rows.push_back({{"occupation", o}, {"amplitude", io::complex_to_json(a)}, {"probability", std::norm(a)}});
  }
  json modes = json::array();
  for (const auto& label : output.modes()) modes.push_back(label.name());
  const auto o = outputs_for(cfg);
  json doc = {{"modes", modes}, {"rows", rows}, {"dilated", !m.is_unitary()}, {"config", cfg}};
  io::write_file_atomic(o.csv, csv);
  io::write_file_atomic(o.json_path, dump(doc));
  out << output.terms().size() << " output terms over " << output.modes().size() << " modes\n";
  return {o.csv.string(), o.json_path.string()};
}

void write_manifest(const std::string& command, const json& cfg, const std::vector<std::string>& files,
                    const json& notes) {
  const auto o = outputs_for(cfg);
  json manifest = {{"command", command},
                   {"config", cfg},
                   {"seed", cfg.value("seed", 0)},
                   {"version", kVersion},
                   {"outputs", files},
                   {"placeholder_materials", notes}};
  io::write_file_atomic(o.manifest, dump(manifest));
}

}  // namespace

std::vector<std::string> execute(const std::string& command, const json& config, std::ostream& out,
                                 std::ostream& err) {
  // Fill gaps from the defaults so old manifests stay replayable.
  json cfg = defaults_for(command);
  for (const auto& [k, v] : config.items()) {
    if (!cfg.contains(k)) throw ConfigError("unknown config key '" + k + "' for " + command);
    cfg[k] = v;
  }
  std::vector<std::string> files;
  json notes = json::array();
  if (command == "hom-scan") {
    files = hom_scan_cmd(cfg, out, err, notes);
  } else if (command == "distribution") {
    files = distribution_cmd(cfg, out, err, notes);
  } else if (command == "bell-scan") {
    files = bell_scan_cmd(cfg, out, err, notes);
  } else if (command == "stack response") {
    files = stack_response_cmd(cfg, out, err, notes);
  } else if (command == "stack design") {
    files = stack_design_cmd(cfg, out, err, notes);
  } else if (command == "fock") {
    files = fock_cmd(cfg, out, err, notes);
  }
  write_manifest(command, cfg, files, notes);
  files.push_back(outputs_for(cfg).manifest.string());
  return files;
}

namespace {

// Flags bound to config keys; only flags given on the command line override
// the defaults and --config.
class FlagSet {
 public:
  explicit FlagSet(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<T>();
    auto* opt = app_->add_option(flag, *value, help);
    setters_.push_back([opt, value, key](json& cfg) {
      if (opt->count() > 0) cfg[key] = *value;
    });
  }

  void add_switch(const std::string& flag, const std::string& key, const std::string& help) {
    auto value = std::make_shared<bool>(false);
    auto* opt = app_->add_flag(flag, *value, help);
    setters_.push_back([opt, value, key](json& cfg) {
      if (opt->count() > 0) cfg[key] = *value;
    });
  }

  void apply(json& cfg) const {
    for (const auto& s : setters_) s(cfg);
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(json&)>> setters_;
};

struct Command {
  std::string name;
  CLI::App* app;
  std::shared_ptr<FlagSet> flags;
};

void add_sample_flags(FlagSet& f) {
  f.add<std::string>("--sample", "sample", "lossless50, sin100nm, lossy-eq6-plus, lossy-eq6-minus, qsw, identity");
  f.add<double>("--sc", "sc", "qsw: cosine standing-wave survival amplitude");
  f.add<double>("--ss", "ss", "qsw: sine standing-wave survival amplitude");
  f.add<std::string>("--sample-file", "sample_file", "matrix or stack JSON instead of a preset");
  f.add<std::string>("--materials", "materials", "materials JSON (name -> n, k, wavelength_nm)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Few-photon HOM / anti-HOM simulator and lossy beamsplitter design tool", "antihom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config merged under explicit flags");

  std::vector<Command> commands;
  auto make = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& help) {
    auto* sub = parent->add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config merged under explicit flags");
    commands.push_back({full, sub, std::make_shared<FlagSet>(sub)});
    return commands.back().flags;
  };

  {
    auto f = make(&app, "hom-scan", "hom-scan", "coincidence scan over sample position");
    f->add<std::string>("--phi", "phi", "Bell phase (0, pi, pi/2, radians)");
    add_sample_flags(*f);
    f->add<double>("--wavelength", "wavelength_nm", "center wavelength, nm");
    f->add<double>("--fwhm", "fwhm_nm", "filter FWHM, nm");
    f->add<double>("--start", "start_um", "first position, um");
    f->add<double>("--stop", "stop_um", "last position, um");
    f->add<double>("--step", "step_um", "position step, um");
    f->add<double>("--reference-counts", "reference_counts", "mean counts at the no-overlap level");
    f->add_switch("--noise", "noise", "add Poisson shot noise");
    f->add<std::uint64_t>("--seed", "seed", "noise seed (default 0)");
    f->add<double>("--mixing", "mixing", "weight of a same-polarization product pair");
    f->add<std::string>("--out", "out", "CSV path; JSON and manifest are written next to it");
  }
  {
    auto f = make(&app, "distribution", "distribution", "output photon-number distribution");
    f->add<std::string>("--phi", "phi", "Bell phase");
    add_sample_flags(*f);
    f->add<double>("--wavelength", "wavelength_nm", "wavelength for stack samples, nm");
    f->add<double>("--overlap", "overlap", "temporal overlap g in [0, 1]");
    f->add<std::string>("--out", "out", "CSV path");
  }
  {
    auto f = make(&app, "bell-scan", "bell-scan", "polarization correlations, visibilities, Bell parameter");
    f->add<std::string>("--phi", "phi", "Bell phase");
    f->add<int>("--points", "points", "theta1 grid size over [0, pi)");
    f->add<double>("--mixing", "mixing", "admixture weight");
    f->add<std::string>("--admixture", "admixture", "unpolarized or same");
    f->add<std::string>("--out", "out", "CSV path");
  }
  auto* stack = app.add_subcommand("stack", "thin-film stacks");
  stack->require_subcommand(1);
  {
    auto f = make(stack, "response", "stack response", "t, r, T, R, A of a stack");
    f->add<std::string>("--file", "file", "stack JSON");
    f->add<double>("--wavelength", "wavelength_nm", "wavelength, nm (overrides the file)");
    f->add<std::string>("--materials", "materials", "materials JSON");
    f->add<std::string>("--out", "out", "CSV path");
  }
  {
    auto f = make(stack, "design", "stack design", "fit free layer parameters to a target (t, r)");
    f->add<std::string>("--template", "template", "template stack JSON with free parameters");
    f->add<std::string>("--target", "target", "eq6-plus, eq6-minus, identity, lossless50 or t_re,t_im,r_re,r_im");
    f->add<int>("--restarts", "restarts", "Nelder-Mead restarts");
    f->add<double>("--wavelength", "wavelength_nm", "wavelength, nm (overrides the file)");
    f->add<std::string>("--materials", "materials", "materials JSON");
    f->add<std::string>("--out", "out", "CSV path");
  }
  {
    auto f = make(&app, "fock", "fock", "evolve an occupation through an arbitrary passive matrix");
    f->add<std::string>("--matrix", "matrix", "matrix JSON");
    f->add<std::string>("--occupation", "occupation", "comma-separated photon numbers per mode");
    f->add<std::string>("--out", "out", "CSV path");
  }
  std::string manifest_path;
  auto* replay = app.add_subcommand("replay", "re-run a manifest");
  replay->add_option("--manifest", manifest_path, "manifest JSON")->required();

  std::vector<std::string> argv_storage{"antihom"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (replay->parsed()) {
      const json manifest = io::read_json(manifest_path);
      execute(get<std::string>(manifest, "command"), manifest.at("config"), out, err);
      return kOk;
    }
    for (const auto& c : commands) {
      if (!c.app->parsed()) continue;
      json cfg = defaults_for(c.name);
      if (!config_path.empty()) {
        const json file = io::read_json(config_path);
        if (!file.is_object()) throw ConfigError("--config must hold a JSON object");
        for (const auto& [k, v] : file.items()) {
          if (!cfg.contains(k)) throw ConfigError("unknown config key '" + k + "' for " + c.name);
          cfg[k] = v;
        }
      }
      c.flags->apply(cfg);
      for (const auto& f : execute(c.name, cfg, out, err)) out << "wrote " << f << "\n";
      return kOk;
    }
    err << "no command given\n";
    return kConfig;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return kPhysics;
  } catch (const PhysicsError& e) {
    err << "error: " << e.what() << "\n";
    return kPhysics;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace antihom::cli
