// Copyright 2026 The heavyell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// heavyell: command-line driver for the heavy-tailed elliptic matrix
// experiments. Every run writes config.log into --out; passing that file back
// through --config reproduces the run.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "heavyell/density.hpp"
#include "heavyell/ensemble.hpp"
#include "heavyell/experiments.hpp"
#include "heavyell/hermitization.hpp"
#include "heavyell/io.hpp"
#include "heavyell/pwit.hpp"
#include "heavyell/rde.hpp"
#include "heavyell/svg.hpp"

namespace fs = std::filesystem;
using namespace heavyell;

namespace {

struct Options {
  double alpha = 1.25;
  std::size_t n = 0;  // 0: command default
  std::uint64_t seed = 1;
  std::string theta = "circle";
  double b = -1.0;  // < 0: keep the preset's b
  std::string z = "0,0";
  double eta = 1.0;
  std::size_t trials = 0;  // 0: command default
  std::size_t trees = 500;
  std::size_t pool = 100'000;
  std::size_t gens = 50;
  std::size_t terms = 50;
  std::size_t branching = 50;
  std::size_t depth = 6;
  double prune = pwit::kDefaultPruneTolerance;
  bool tail_compensation = true;
  std::string diagonal = "one";
  std::string window = "-3,3";
  double h = 0.05;
  std::string n_list = "100,200,400";
  std::string out = "out";
};

cplx parse_z(const std::string& s) {
  const auto parts = io::split(s, ',');
  if (parts.size() == 1) return {io::parse_double(parts[0]), 0.0};
  if (parts.size() != 2) throw ConfigError("--z expects re,im");
  return {io::parse_double(parts[0]), io::parse_double(parts[1])};
}

std::pair<double, double> parse_range(const std::string& s) {
  const auto parts = io::split(s, ',');
  if (parts.size() != 2) throw ConfigError("expected lo,hi: '" + s + "'");
  const double lo = io::parse_double(parts[0]), hi = io::parse_double(parts[1]);
  if (!(hi > lo)) throw ConfigError("expected lo < hi: '" + s + "'");
  return {lo, hi};
}

SpectralMeasureSpec resolve_spec(const Options& o, const fs::path& base) {
  SpectralMeasureSpec spec = io::parse_theta(o.theta, o.alpha, base);
  if (o.b >= 0.0) {
    auto* arc = std::get_if<ArcUniform>(&spec.angular);
    if (!arc) throw ConfigError("--b only applies to arcs(...) presets");
    arc->halfwidth = o.b * std::numbers::pi / 4.0;
    spec.validate();
  }
  return spec;
}

ensemble::DiagonalLaw resolve_diagonal(const std::string& s) {
  if (s == "one") return ensemble::ConstantDiagonal{1.0};
  if (s == "zero") return ensemble::ZeroDiagonal{};
  if (s == "xi1") return ensemble::SameAsXi1{};
  throw ConfigError("--diagonal must be one, zero or xi1");
}

void write_config_log(const fs::path& dir, const std::string& command, const Options& o) {
  std::ofstream log(dir / "config.log");
  log << "# heavyell " << command << "\n";
  log << "alpha = " << io::fmt(o.alpha) << "\n";
  log << "n = " << o.n << "\n";
  log << "seed = " << o.seed << "\n";
  log << "theta = " << o.theta << "\n";
  log << "b = " << io::fmt(o.b) << "\n";
  log << "z = " << o.z << "\n";
  log << "eta = " << io::fmt(o.eta) << "\n";
  log << "trials = " << o.trials << "\n";
  log << "trees = " << o.trees << "\n";
  log << "pool = " << o.pool << "\n";
  log << "gens = " << o.gens << "\n";
  log << "terms = " << o.terms << "\n";
  log << "branching = " << o.branching << "\n";
  log << "depth = " << o.depth << "\n";
  log << "prune = " << io::fmt(o.prune) << "\n";
  log << "tail-compensation = " << (o.tail_compensation ? "true" : "false") << "\n";
  log << "diagonal = " << o.diagonal << "\n";
  log << "window = " << o.window << "\n";
  log << "h = " << io::fmt(o.h) << "\n";
  log << "n-list = " << o.n_list << "\n";
  log << "out = " << o.out << "\n";
}

DenseComplexMatrix sample_matrix(const Options& o, const SpectralMeasureSpec& spec, std::uint64_t seed,
                                 cplx z) {
  auto cfg = ensemble::EllipticEnsembleConfig::make(o.n, spec, seed, resolve_diagonal(o.diagonal));
  return ensemble::scale_and_shift(ensemble::build_elliptic_matrix(cfg), spec.alpha, z);
}

svg::Window window_of(const Options& o) {
  const auto [lo, hi] = parse_range(o.window);
  return {lo, hi, lo, hi};
}

int run(const std::string& command, Options& o, const fs::path& config_dir) {
  const fs::path out = o.out;
  fs::create_directories(out);
  const bool figure = command.rfind("figure", 0) == 0;
  if (o.n == 0) o.n = figure ? experiments::kFigureN : command == "crossval" ? 1000 : 200;
  if (o.trials == 0) {
    o.trials = command == "lsv" ? 200 : command == "crossval" ? 20
             : command == "concentration" ? 50 : 1;
  }
  write_config_log(out, command, o);
  const cplx z = parse_z(o.z);
  if (!(o.eta > 0.0)) throw ParameterError("--eta must be positive");
  const cplx eta(0.0, o.eta);

  if (figure) {
    const std::string digit = command.substr(6);
    const std::vector<std::string> panels =
        digit == "1" ? std::vector<std::string>{"1L", "1R"}
        : digit == "2" ? std::vector<std::string>{"2a", "2b"}
                       : std::vector<std::string>{"3a", "3b"};
    for (const auto& p : panels) {
      const auto r = experiments::run_figure(p, out, o.seed, window_of(o), o.n);
      std::cout << "figure " << p << ": " << r.eigenvalues.size() << " eigenvalues, " << r.drawn
                << " drawn -> " << r.csv.string() << "\n";
    }
    return 0;
  }
  if (command == "concentration") {
    std::vector<std::size_t> ns;
    for (const auto& s : io::split(o.n_list, ',')) ns.push_back(static_cast<std::size_t>(std::stoul(s)));
    const auto rows = experiments::run_concentration(ns, o.trials, "cauchy_kernel", o.seed, o.alpha);
    io::CsvWriter w(out / "concentration.csv", "n,mean,std");
    for (const auto& r : rows) w.row(static_cast<double>(r.n), r.mean, r.stddev);
    for (std::size_t k = 1; k < rows.size(); ++k) {
      std::cout << "std ratio n=" << rows[k - 1].n << " -> n=" << rows[k].n << ": "
                << rows[k - 1].stddev / rows[k].stddev << "\n";
    }
    return 0;
  }

  const SpectralMeasureSpec spec = resolve_spec(o, config_dir);
  if (command == "spectrum") {
    const auto ev = ensemble::eigenvalues(sample_matrix(o, spec, o.seed, 0.0));
    io::write_eigenvalues(out / "eigenvalues.csv", ev);
    svg::write_scatter(out / "spectrum.svg", ev, window_of(o), "spectrum, n = " + std::to_string(o.n));
  } else if (command == "singvals") {
    const auto s = ensemble::singular_values(sample_matrix(o, spec, o.seed, z));
    io::write_singular_values(out / "singular_values.csv", s);
    for (double eps : {0.05, 0.02}) {
      std::vector<std::pair<double, cplx>> curve;
      for (int k = -500; k <= 500; ++k) {
        const double e = 0.01 * k;
        curve.emplace_back(e, ensemble::stieltjes_from_singular_values(s, cplx(e, eps)));
      }
      const auto d = density_from_stieltjes(curve, eps);
      io::write_density(out / (eps == 0.05 ? "density.csv" : "density_refined.csv"), d);
    }
  } else if (command == "stieltjes") {
    std::vector<std::vector<double>> svals;
    for (std::size_t r = 0; r < o.trials; ++r) {
      svals.push_back(ensemble::singular_values(sample_matrix(o, spec, derive_seed(o.seed, r), z)));
    }
    std::vector<std::pair<double, cplx>> curve;
    for (int k = 0; k <= 24; ++k) {
      const double t = std::pow(10.0, -2.0 + k / 6.0);
      cplx m{};
      for (const auto& s : svals) m += ensemble::stieltjes_from_singular_values(s, cplx(0, t));
      curve.emplace_back(t, m / static_cast<double>(svals.size()));
    }
    io::write_stieltjes(out / "stieltjes.csv", curve);
  } else if (command == "pwit") {
    const HalfPlanePoint u(z, eta);
    const auto est = pwit::pwit_stieltjes_estimate(spec, o.branching, o.depth, u, o.trees, o.seed, o.prune);
    io::write_pwit_estimate(out / "pwit_estimate.csv", u, est);
    std::cout << "E a = " << est.mean_block.a << "\n";
  } else if (command == "rde") {
    rde::RdeConfig cfg(HalfPlanePoint(z, eta), spec);
    cfg.pool_size = o.pool;
    cfg.generations = o.gens;
    cfg.series_terms = o.terms;
    cfg.seed = o.seed;
    cfg.tail_compensation = o.tail_compensation;
    const auto sol = rde::rde_solve(cfg);
    io::write_population(out / "population.csv", sol.population.pool);
    io::CsvWriter w(out / "rde_history.csv", "generation,a_re,a_im,drift");
    for (std::size_t g = 0; g < sol.mean_history.size(); ++g) {
      w.row(static_cast<double>(g + 1), sol.mean_history[g].real(), sol.mean_history[g].imag(),
            sol.drift_history[g]);
    }
    std::cout << "m = " << sol.m << " (se " << sol.se_im_m << ", drift " << sol.drift << ")\n";
  } else if (command == "hermitize") {
    const auto c2 = validate_c2_support(spec);
    if (!c2.satisfied) {
      std::cerr << "error: theta violates Condition C2 (support on the line "
                << c2.witness->first << " z1 + " << c2.witness->second << " z2 = 0)\n";
      return 1;
    }
    const auto [lo, hi] = parse_range(o.window);
    const auto grid = ComplexGrid::square(lo, hi, o.h);
    const auto a = sample_matrix(o, spec, o.seed, 0.0);
    const auto u = log_potential_grid(a, grid, ensemble::default_clamp(o.n));
    const auto mu = mu_from_hermitization(grid, u.values);
    io::write_mu_grid(out / "mu_grid.csv", mu);
    io::write_eigenvalues(out / "eigenvalues.csv", ensemble::eigenvalues(a));
    std::cout << "mass " << mu.total_mass << ", clipped " << mu.clipped << ", clamped nodes "
              << u.saturated << "\n";
  } else if (command == "lsv") {
    auto cfg = ensemble::EllipticEnsembleConfig::make(o.n, spec, o.seed, resolve_diagonal(o.diagonal));
    const auto samples = ensemble::least_singular_values(cfg, z, o.trials);
    io::write_singular_values(out / "lsv_samples.csv", samples);
    std::vector<double> grid;
    for (int k = 0; k <= 40; ++k) grid.push_back(0.05 * k);
    io::CsvWriter w(out / "lsv_curve.csv", "t,probability");
    for (const auto& [t, p] : ensemble::lsv_tail_curve(samples, o.n, grid)) w.row(t, p);
    const double level = std::pow(static_cast<double>(o.n), -3.0);
    const auto tiny = std::count_if(samples.begin(), samples.end(), [level](double s) { return s <= level; });
    std::cout << "P(s_n <= n^-3) = " << static_cast<double>(tiny) / static_cast<double>(samples.size()) << "\n";
  } else if (command == "crossval") {
    if (!validate_c2_support(spec).satisfied) {
      std::cerr << "warning: theta violates Condition C2; nu still converges\n";
    }
    experiments::CrossvalConfig c;
    c.spec = spec;
    c.diagonal = resolve_diagonal(o.diagonal);
    c.z = z;
    c.eta_im = o.eta;
    c.n = o.n;
    c.replicas = o.trials;
    c.branching = o.branching;
    c.depth = o.depth;
    c.trees = o.trees;
    c.prune = o.prune;
    c.pool = o.pool;
    c.generations = o.gens;
    c.terms = o.terms;
    c.seed = o.seed;
    const auto report = experiments::run_crossval(c);
    std::ofstream(out / "crossval.csv") << report.text();
    std::cout << report.text();
    return report.consistent() ? 0 : 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heavyell: heavy-tailed elliptic random matrix experiments"};
  app.name("heavyell");
  app.set_help_flag("--help", "print this help and exit");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  std::string config;
  app.add_option("--alpha", o.alpha, "tail index in (0,2)")->capture_default_str();
  app.add_option("--n", o.n, "matrix dimension (0: command default)")->capture_default_str();
  app.add_option("--seed", o.seed, "base seed")->capture_default_str();
  app.add_option("--theta", o.theta, "iid | circle | arcs(centers=...; b=...) | atoms(file=...)")
      ->capture_default_str();
  app.add_option("--b", o.b, "halfwidth factor for arcs presets (halfwidth b*pi/4)");
  app.add_option("--z", o.z, "spectral shift re,im")->capture_default_str();
  app.add_option("--eta", o.eta, "Im(eta) > 0")->capture_default_str();
  app.add_option("--trials", o.trials, "matrix replicas / trials (0: command default)")->capture_default_str();
  app.add_option("--trees", o.trees, "PWIT replicas")->capture_default_str();
  app.add_option("--pool", o.pool, "RDE pool size")->capture_default_str();
  app.add_option("--gens", o.gens, "RDE generations")->capture_default_str();
  app.add_option("--terms", o.terms, "RDE series terms")->capture_default_str();
  app.add_option("--branching", o.branching, "PWIT branching B")->capture_default_str();
  app.add_option("--depth", o.depth, "PWIT depth H")->capture_default_str();
  app.add_option("--prune", o.prune, "PWIT path-weight pruning tolerance")->capture_default_str();
  app.add_option("--tail-compensation", o.tail_compensation, "RDE series tail compensation")
      ->capture_default_str();
  app.add_option("--diagonal", o.diagonal, "diagonal law: one | zero | xi1")->capture_default_str();
  app.add_option("--window", o.window, "plot / Hermitization window lo,hi")->capture_default_str();
  app.add_option("--h", o.h, "Hermitization grid spacing")->capture_default_str();
  app.add_option("--n-list", o.n_list, "dimensions for concentration")->capture_default_str();
  app.add_option("--out", o.out, "output directory")->capture_default_str();
  app.add_option("--config", config, "key = value file with the same keys as the flags");

  const std::vector<std::string> commands{"spectrum", "singvals", "stieltjes", "pwit", "rde",
                                          "hermitize", "figure1", "figure2", "figure3", "lsv",
                                          "concentration", "crossval"};
  for (const auto& c : commands) app.add_subcommand(c);

  // CLI11 consumes `args` from the back, so argv is stored reversed and the
  // config pairs are appended after it: they are parsed first and explicit
  // flags override them (TakeLast).
  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  std::vector<std::string> config_paths;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--config=", 0) == 0) config_paths.push_back(a.substr(9));
    else if (a == "--config" && i + 1 < argc) config_paths.emplace_back(argv[i + 1]);
  }
  fs::path config_dir;
  for (const auto& path : config_paths) {
    try {
      for (const auto& [key, value] : io::read_key_values(path)) {
        args.push_back(value);
        args.push_back("--" + key);
      }
    } catch (const heavyell::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    config_dir = fs::path(path).parent_path();
  }

  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    return run(app.get_subcommands().front()->get_name(), o, config_dir);
  } catch (const heavyell::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
