// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "antihom/beamsplitter.hpp"
#include "antihom/experiment.hpp"
#include "antihom/io.hpp"
#include "antihom/thin_film.hpp"
#include "oracles/expansion.hpp"
#include "oracles/optics.hpp"
#include "oracles/random.hpp"

using namespace antihom;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s | %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Normalized and absolute coincidence at full overlap through a one-point scan.
ScanPoint center_point(const Sample& sample, double phi) {
  ScanConfig cfg;
  cfg.positions_um = {0.0};
  cfg.sample = sample;
  cfg.source.phi = BellPhase(phi);
  return hom_scan(cfg).points.front();
}

double sq(double x) { return x * x; }

std::vector<double> scan_positions() {
  std::vector<double> z;
  for (int i = -30; i <= 30; ++i) z.push_back(2.0 * i);
  return z;
}

int sh(const std::string& cmd) { return WEXITSTATUS(std::system(cmd.c_str())); }

}  // namespace

int main() {
  const auto lossy_plus = lossy_bs(+1);
  const auto lossy_minus = lossy_bs(-1);
  const auto bs50 = lossless_bs(1.0 / std::sqrt(2.0));

  criterion(1, "HOM dip, lossless 50/50, bosonic pair", [&] {
    const auto p = center_point(bs50, 0.0);
    return Outcome{std::abs(p.normalized) < 1e-9, "normalized " + fmt(p.normalized)};
  });

  criterion(2, "HOM peak, lossless 50/50, fermionic pair", [&] {
    const auto p = center_point(bs50, kPi);
    return Outcome{std::abs(p.normalized - 2.0) < 1e-9, "normalized " + fmt(p.normalized)};
  });

  criterion(3, "anti-HOM baseline without overlap", [&] {
    double worst = 0.0;
    for (const auto& m : {lossy_plus, lossy_minus})
      for (double phi : {0.0, kPi}) worst = std::max(worst, std::abs(engine_coincidence({BellPhase(phi)}, m, 0.0) - 0.125));
    return Outcome{worst < 1e-9, "max |P - 0.125| " + fmt(worst)};
  });

  criterion(4, "anti-HOM bosonic peak", [&] {
    double worst = 0.0;
    for (const auto& m : {lossy_plus, lossy_minus}) {
      const auto p = center_point(m, 0.0);
      worst = std::max({worst, std::abs(p.probability - 0.25), std::abs(p.normalized - 2.0)});
    }
    return Outcome{worst < 1e-9, "max deviation from 0.25 / 2 " + fmt(worst)};
  });

  criterion(5, "anti-HOM fermionic dip and one-photon absorption", [&] {
    double worst = 0.0;
    bool exact_one = true;
    for (const auto& m : {lossy_plus, lossy_minus}) {
      const auto dist = pair_output(bell_input(BellPhase(kPi)), m, 1.0);
      worst = std::max(worst, coincidence_probability(dist));
      for (const auto& [k, p] : loss_count_distribution(dist))
        if (std::abs(p - (k == 1 ? 1.0 : 0.0)) > 1e-9) exact_one = false;
    }
    return Outcome{worst < 1e-9 && exact_one,
                   "coincidence " + fmt(worst) + (exact_one ? ", loss {1:1}" : ", loss distribution off")};
  });

  criterion(6, "bosonic absorption statistics", [&] {
    double worst = 0.0;
    // operator-substitution reference on the dilated map, one polarization
    const auto big = dilate(lossy_plus).matrix();
    const auto ref = oracle::expand(big, {1, 1, 0, 0});
    const double kept = std::norm(ref.at({2, 0, 0, 0})) + std::norm(ref.at({1, 1, 0, 0})) + std::norm(ref.at({0, 2, 0, 0}));
    const std::map<std::pair<int, int>, double> frozen{{{2, 0}, 0.25}, {{1, 1}, 0.5}, {{0, 2}, 0.25}};
    worst = std::max(worst, std::abs(std::norm(ref.at({1, 1, 0, 0})) / kept - 0.5));

    for (const auto& m : {lossy_plus, lossy_minus}) {
      const auto dist = pair_output(bell_input(BellPhase(0.0)), m, 1.0);
      const auto losses = loss_count_distribution(dist);
      for (int k = 0; k <= 2; ++k) {
        const double want = k == 1 ? 0.0 : 0.5;
        const double got = losses.count(k) ? losses.at(k) : 0.0;
        worst = std::max(worst, std::abs(got - want));
      }
      double survived = 0.0;
      std::map<std::pair<int, int>, double> cond;
      for (const auto& [c, p] : port_count_distribution(dist))
        if (c.lost == 0) {
          cond[{c.left, c.right}] += p;
          survived += p;
        }
      for (const auto& [key, want] : frozen) worst = std::max(worst, std::abs(cond[key] / survived - want));
    }
    return Outcome{worst < 1e-9, "max deviation " + fmt(worst)};
  });

  criterion(7, "standing-wave composite reproduces the lossy splitters", [&] {
    const double a = (qsw_composite({0.0, 1.0}).matrix() - lossy_minus.matrix()).cwiseAbs().maxCoeff();
    const double b = (qsw_composite({1.0, 0.0}).matrix() - lossy_plus.matrix()).cwiseAbs().maxCoeff();
    return Outcome{std::max(a, b) < 1e-12, "max entry deviation " + fmt(std::max(a, b))};
  });

  criterion(8, "SiN film reflectance and incomplete dip", [&] {
    LayerStack film;
    film.layers = {{100.0, 2.1}};
    const auto r = stack_response(film);
    const double T = r.transmittance(), R = r.reflectance_left();
    const double floor_formula = sq(T - R) / (sq(T) + sq(R));
    const double floor_engine = center_point(film, 0.0).normalized;
    const bool ok = R >= 0.38 && R <= 0.42 && std::abs(floor_formula - floor_engine) < 1e-6;
    return Outcome{ok, "|r|^2 " + fmt(R) + ", floor engine " + fmt(floor_engine) + " vs formula " + fmt(floor_formula)};
  });

  criterion(9, "engine and analytic coincidence agree", [&] {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto disk = [&] { return std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng)); };
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      // t +- r are the singular values' phasors, so drawing them in the disk keeps the splitter passive
      const Complex a = disk(), b = disk();
      const Complex t = 0.5 * (a + b), r = 0.5 * (a - b);
      const double g = u(rng);
      const auto sym = i % 2 ? Symmetry::Fermionic : Symmetry::Bosonic;
      const double engine = engine_coincidence({BellPhase(sym == Symmetry::Bosonic ? 0.0 : kPi)},
                                               two_port_matrix(t, r, r), g);
      worst = std::max(worst, std::abs(engine - analytic_coincidence(t, r, sym, g)));
    }
    return Outcome{worst < 1e-9, "max |engine - analytic| " + fmt(worst)};
  });

  criterion(10, "dilation of random passive matrices", [&] {
    std::mt19937_64 rng(1010);
    double unit = 0.0, top = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int n = 1 + i % 8;
      const auto m = oracle::random_passive(n, rng);
      const auto d = dilate(TransferMatrix(m));
      unit = std::max(unit, d.unitarity_residual());
      top = std::max(top, (d.matrix().topLeftCorner(n, n) - m).cwiseAbs().maxCoeff());
    }
    return Outcome{unit < 1e-10 && top < 1e-12, "unitarity " + fmt(unit) + ", top block " + fmt(top)};
  });

  criterion(11, "Bell machinery", [&] {
    const auto grid = angle_grid(36);
    double v_err = 0.0;
    for (double phi : {0.0, kPi}) {
      const auto scan = bell_test({BellPhase(phi)}, grid);
      v_err = std::max({v_err, std::abs(scan.result.v1 - 1), std::abs(scan.result.v2 - 1),
                        std::abs(scan.result.s - 2 * std::sqrt(2.0))});
    }
    double singlet = 0.0, same = 0.0, mirror = 0.0;
    for (double t : grid) {
      singlet = std::max(singlet, analyzer_coincidence(BellPhase(kPi), t, t));
      for (double t2 : {0.0, kPi / 2})
        same = std::max(same, std::abs(analyzer_coincidence(BellPhase(0.0), t, t2) -
                                       analyzer_coincidence(BellPhase(kPi), t, t2)));
      for (double t2 : {kPi / 4, -kPi / 4})
        mirror = std::max(mirror, std::abs(analyzer_coincidence(BellPhase(0.0), t, t2) -
                                           analyzer_coincidence(BellPhase(kPi), -t, t2)));
    }
    const bool ok = v_err < 1e-9 && singlet < 1e-12 && same < 1e-9 && mirror < 1e-9;
    return Outcome{ok, "V/S " + fmt(v_err) + ", singlet P(t,t) " + fmt(singlet) + ", H/V basis " + fmt(same) +
                           ", diagonal mirror " + fmt(mirror)};
  });

  criterion(12, "overlap half-width", [&] {
    const double dz = position_for_overlap(std::sqrt(0.5), WavePacketSpec{810.0, 10.0});
    return Outcome{dz >= 10.0 && dz <= 40.0, "g^2 = 0.5 at " + fmt(dz) + " um"};
  });

  criterion(13, "fit round trips, noiseless and Monte-Carlo", [&] {
    ScanConfig cfg;
    cfg.positions_um = scan_positions();
    cfg.sample = bs50;
    const auto clean = hom_scan(cfg);
    const auto g_fit = fit_hom_curve(clean);
    const WavePacketSpec packet;
    const double w = kSpeedOfLight * 1e6 / (2 * std::sqrt(2.0) * packet.sigma_omega());
    double rel = std::max({std::abs(g_fit.baseline - 1.0), std::abs(g_fit.amplitude + 1.0),
                           std::abs(*g_fit.width / w - 1.0), std::abs(*g_fit.center) / w});

    const auto grid = angle_grid(36);
    PolarizationInput pol{BellPhase(0.0), 0.3};
    const auto s_fit = fit_sinusoid(grid, polarization_scan(pol, kPi / 4, grid));
    rel = std::max({rel, std::abs(s_fit.offset / 0.25 - 1.0), std::abs(s_fit.amplitude / (0.7 * 0.25) - 1.0)});

    LayerStack film;
    film.layers = {{100.0, 2.1}};
    struct Case {
      std::string name;
      Sample sample;
      double phi;
    };
    const std::vector<Case> cases{{"50/50 dip", bs50, 0.0}, {"SiN dip", film, 0.0}, {"lossy peak", lossy_plus, 0.0}};
    const int seeds = 100;
    double worst_pull = 0.0;
    std::string mc;
    for (const auto& c : cases) {
      cfg.sample = c.sample;
      cfg.source.phi = BellPhase(c.phi);
      cfg.noise = false;
      const double exact = hom_scan(cfg).points[30].normalized;
      cfg.noise = true;
      std::vector<double> ext;
      for (int s = 0; s < seeds; ++s) {
        cfg.rng_seed = static_cast<std::uint64_t>(s);
        const auto f = fit_hom_curve(hom_scan(cfg));
        if (f.status != FitStatus::Converged) return Outcome{false, c.name + ": noisy fit failed at seed " + std::to_string(s)};
        ext.push_back(f.extremum());
      }
      double mean = 0.0;
      for (double e : ext) mean += e;
      mean /= seeds;
      double var = 0.0;
      for (double e : ext) var += sq(e - mean);
      const double sem = std::sqrt(var / (seeds - 1) / seeds);
      const double pull = std::abs(mean - exact) / sem;
      worst_pull = std::max(worst_pull, pull);
      mc += ", " + c.name + " " + fmt(mean) + " vs " + fmt(exact) + " (" + fmt(pull) + " sigma)";
    }
    return Outcome{rel < 1e-6 && worst_pull < 3.0, "noiseless rel " + fmt(rel) + mc};
  });

  criterion(14, "manifest replay is byte-identical across thread counts", [&] {
    const fs::path dir = fs::temp_directory_path() / "antihom_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir / "a");
    fs::create_directories(dir / "b");
    const std::string bin = ANTIHOM_BINARY;
    const std::string data = ANTIHOM_DATA_DIR;
    struct Job {
      std::string args, stem;
    };
    const std::vector<Job> jobs{
        {"hom-scan --noise --seed 42 --phi pi --sample lossy-eq6-minus --out scan.csv", "scan"},
        {"hom-scan --sample-file " + data + "/sin100.json --materials " + data + "/materials.json --out film.csv", "film"},
        {"stack design --template " + data + "/crsincr.json --materials " + data + "/materials.json --out design.csv",
         "design"},
        {"bell-scan --phi pi --mixing 0.1 --out bell.csv", "bell"},
        {"distribution --sample qsw --sc 0.3 --ss 0.9 --overlap 0.5 --out dist.csv", "dist"}};
    std::string bad;
    for (const auto& j : jobs) {
      if (sh("cd " + (dir / "a").string() + " && ANTIHOM_THREADS=1 " + bin + " " + j.args + " > /dev/null 2>&1") != 0)
        return Outcome{false, "run failed: " + j.args};
      fs::copy_file(dir / "a" / (j.stem + ".manifest.json"), dir / "b" / (j.stem + ".manifest.json"));
      if (sh("cd " + (dir / "b").string() + " && ANTIHOM_THREADS=8 " + bin + " replay --manifest " + j.stem +
             ".manifest.json > /dev/null 2>&1") != 0)
        return Outcome{false, "replay failed: " + j.stem};
      for (const std::string ext : {".csv", ".json", ".manifest.json"})
        if (io::read_file(dir / "a" / (j.stem + ext)) != io::read_file(dir / "b" / (j.stem + ext))) bad += j.stem + ext + " ";
    }
    fs::remove_all(dir);
    return Outcome{bad.empty(), bad.empty() ? std::to_string(jobs.size()) + " commands, 1 vs 8 threads identical"
                                            : "differs: " + bad};
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
