#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "antihom/cli.hpp"
#include "antihom/io.hpp"
#include "antihom/linalg.hpp"
#include "antihom/states.hpp"

using namespace antihom;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("antihom_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ANTIHOM_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("angle parsing") {
  CHECK(cli::parse_angle("pi") == doctest::Approx(kPi));
  CHECK(cli::parse_angle("pi/2") == doctest::Approx(kPi / 2));
  CHECK(cli::parse_angle("-pi/4") == doctest::Approx(-kPi / 4));
  CHECK(cli::parse_angle("2pi") == doctest::Approx(2 * kPi));
  CHECK(cli::parse_angle("0.5*pi") == doctest::Approx(kPi / 2));
  CHECK(cli::parse_angle("1.25") == doctest::Approx(1.25));
  CHECK_THROWS(cli::parse_angle("half"));
  CHECK_THROWS(cli::parse_angle("pi/0"));
}

TEST_CASE("scan CSV matches the golden file and the overlap closed form") {
  TempDir tmp;
  const auto r = run({"hom-scan", "--start", "-24", "--stop", "24", "--step", "8", "--out", tmp / "scan.csv"});
  REQUIRE(r.code == 0);
  const std::string got = io::read_file(tmp / "scan.csv");
  CHECK(got == io::read_file(std::string(ANTIHOM_GOLDEN_DIR) + "/hom_scan_lossless.csv"));

  std::istringstream lines(got);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "position_um,probability,normalized,counts,shot_error");
  const double sigma = 2 * kPi * kSpeedOfLight * 10e-9 / (810e-9 * 810e-9) / (2 * std::sqrt(2 * std::log(2.0)));
  while (std::getline(lines, line)) {
    std::istringstream row(line);
    std::string z, p, n;
    std::getline(row, z, ',');
    std::getline(row, p, ',');
    std::getline(row, n, ',');
    CHECK(line.substr(line.size() - 2) == ",,");
    const double tau = 2 * std::stod(z) * 1e-6 / kSpeedOfLight;
    const double g = std::exp(-sigma * sigma * tau * tau / 2);
    CHECK(std::stod(n) == doctest::Approx(1 - g * g).epsilon(1e-12));
  }
}

TEST_CASE("noise fills the counts columns") {
  TempDir tmp;
  REQUIRE(run({"hom-scan", "--noise", "--seed", "4", "--out", tmp / "n.csv"}).code == 0);
  std::istringstream lines(io::read_file(tmp / "n.csv"));
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  CHECK(line.find(",,") == std::string::npos);
  const auto doc = io::read_json(tmp / "n.json");
  CHECK(doc.at("rng") == "philox4x32-10+std::poisson_distribution");
  CHECK(doc.at("noise") == true);
}

TEST_CASE("flags override config files which override defaults") {
  TempDir tmp;
  std::ofstream(tmp / "cfg.json") << R"({"phi": "pi", "sample": "lossy-eq6-plus", "step_um": 10})";
  REQUIRE(run({"hom-scan", "--config", tmp / "cfg.json", "--phi", "0", "--out", tmp / "a.csv"}).code == 0);
  const auto doc = io::read_json(tmp / "a.json");
  CHECK(doc.at("config").at("phi") == "0");
  CHECK(doc.at("config").at("sample") == "lossy-eq6-plus");
  CHECK(doc.at("config").at("step_um") == 10);
  CHECK(doc.at("config").at("fwhm_nm") == 10.0);
  CHECK(doc.at("feature").at("kind") == "peak");
}

TEST_CASE("exit codes") {
  TempDir tmp;
  CHECK(run({"hom-scan", "--sample", "nope", "--out", tmp / "x.csv"}).code == 2);
  CHECK(run({"hom-scan", "--no-such-flag"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"stack", "response", "--file", tmp / "missing.json", "--out", tmp / "x.csv"}).code == 2);
  std::ofstream(tmp / "cfg.json") << R"({"bogus": 1})";
  CHECK(run({"bell-scan", "--config", tmp / "cfg.json", "--out", tmp / "x.csv"}).code == 2);
  std::ofstream(tmp / "gain.json") << "[[1.2, 0], [0, 1]]";
  CHECK(run({"fock", "--matrix", tmp / "gain.json", "--occupation", "1,1", "--out", tmp / "x.csv"}).code == 3);
  std::ofstream(tmp / "id.json") << "[[1, 0], [0, 1]]";
  const auto big = run({"fock", "--matrix", tmp / "id.json", "--occupation", "3,2", "--out", tmp / "x.csv"});
  CHECK(big.code == 3);
  CHECK(big.err.find("limit") != std::string::npos);
  CHECK(run({"--version"}).code == 0);
}

TEST_CASE("placeholder materials warn and are recorded") {
  TempDir tmp;
  const auto r = run({"stack", "design", "--template", data("crsincr.json"), "--materials", data("materials.json"),
                      "--out", tmp / "d.csv"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("placeholder") != std::string::npos);
  const auto manifest = io::read_json(tmp / "d.manifest.json");
  CHECK(manifest.at("placeholder_materials") == nlohmann::json::array({"Cr"}));
  CHECK(io::read_json(tmp / "d.json").at("residual").get<double>() < 1e-4);
}

TEST_CASE("stack response of the SiN film") {
  TempDir tmp;
  REQUIRE(run({"stack", "response", "--file", data("sin100.json"), "--materials", data("materials.json"), "--out",
               tmp / "s.csv"})
              .code == 0);
  const auto doc = io::read_json(tmp / "s.json");
  CHECK(doc.at("R_left").get<double>() == doctest::Approx(0.3965).epsilon(1e-4));
}

TEST_CASE("distribution and fock commands") {
  TempDir tmp;
  REQUIRE(run({"distribution", "--sample", "lossy-eq6-plus", "--out", tmp / "d.csv"}).code == 0);
  const auto doc = io::read_json(tmp / "d.json");
  CHECK(doc.at("coincidence_probability").get<double>() == doctest::Approx(0.25));
  CHECK(doc.at("loss_counts").at("2").get<double>() == doctest::Approx(0.5));

  std::ofstream(tmp / "bs.json") << R"({"real": [[0.7071067811865476, 0], [0, 0.7071067811865476]],
                                      "imag": [[0, 0.7071067811865476], [0.7071067811865476, 0]]})";
  REQUIRE(run({"fock", "--matrix", tmp / "bs.json", "--occupation", "1,1", "--out", tmp / "f.csv"}).code == 0);
  const auto f = io::read_json(tmp / "f.json");
  for (const auto& row : f.at("rows"))
    if (row.at("occupation") == nlohmann::json::array({1, 1})) CHECK(row.at("probability").get<double>() < 1e-30);
}

TEST_CASE("replay reproduces outputs byte for byte") {
  TempDir tmp;
  REQUIRE(run({"hom-scan", "--noise", "--seed", "9", "--phi", "pi", "--sample", "lossy-eq6-minus", "--out",
               tmp / "r.csv"})
              .code == 0);
  const auto csv = io::read_file(tmp / "r.csv");
  const auto js = io::read_file(tmp / "r.json");
  fs::remove(tmp / "r.csv");
  fs::remove(tmp / "r.json");
  REQUIRE(run({"replay", "--manifest", tmp / "r.manifest.json"}).code == 0);
  CHECK(io::read_file(tmp / "r.csv") == csv);
  CHECK(io::read_file(tmp / "r.json") == js);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = ANTIHOM_BINARY;
  CHECK(std::system((bin + " --version > /dev/null").c_str()) == 0);
  CHECK(WEXITSTATUS(std::system((bin + " hom-scan --sample nope > /dev/null 2>&1").c_str())) == 2);
}

TEST_CASE("documented command lines") {
  TempDir tmp;
  const std::string out = tmp / "x.csv";
  REQUIRE(run({"distribution", "--phi", "0", "--sample", "lossless50", "--out", out}).code == 0);
  auto doc = io::read_json(tmp / "x.json");
  CHECK(doc.at("coincidence_probability").get<double>() < 1e-12);

  REQUIRE(run({"distribution", "--phi", "pi", "--sample", "lossy-eq6-plus", "--out", out}).code == 0);
  doc = io::read_json(tmp / "x.json");
  CHECK(doc.at("loss_counts").at("1").get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  REQUIRE(run({"distribution", "--phi", "0", "--sample", "identity", "--out", out}).code == 0);
  CHECK(io::read_json(tmp / "x.json").at("coincidence_probability").get<double>() == doctest::Approx(1.0));

  REQUIRE(run({"hom-scan", "--phi", "pi", "--sample", "lossy-eq6-plus", "--out", out}).code == 0);
  doc = io::read_json(tmp / "x.json");
  CHECK(doc.at("feature").at("normalized_extremum").get<double>() < 1e-12);

  REQUIRE(run({"hom-scan", "--phi", "0", "--sample", "identity", "--out", out}).code == 0);
  doc = io::read_json(tmp / "x.json");
  CHECK(doc.at("fit").at("center_um").is_null());
  CHECK(doc.at("feature").at("normalized_extremum").get<double>() == doctest::Approx(1.0));

  const auto bell = run({"bell-scan", "--phi", "0", "--out", out});
  REQUIRE(bell.code == 0);
  CHECK(bell.out.find("S 2.828427") != std::string::npos);

  const auto design = run({"stack", "design", "--template", data("crsincr.json"), "--target", "eq6-plus", "--out", out});
  REQUIRE(design.code == 0);
  CHECK(io::read_json(tmp / "x.json").at("residual").get<double>() < 0.02);
  CHECK(design.err.find("'Cr'") != std::string::npos);
}
