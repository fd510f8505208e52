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

#pragma once

// Experiment drivers shared by the command-line tool and the acceptance
// suite: figure reproduction, three-way cross-validation of Im m, and the
// concentration trend of linear statistics of singular values.
//
// Sub-seeds: crossval uses derive_seed(seed, 1) for matrices, 2 for PWIT and
// 3 for RDE; matrix replica r then uses derive_seed(that, r).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heavyell/ensemble.hpp"
#include "heavyell/errors.hpp"
#include "heavyell/io.hpp"
#include "heavyell/pwit.hpp"
#include "heavyell/rde.hpp"
#include "heavyell/stats.hpp"
#include "heavyell/svg.hpp"

namespace heavyell::experiments {

inline constexpr double kFigureAlpha = 1.25;
inline constexpr std::size_t kFigureN = 2000;

struct FigureSetup {
  std::string name;
  ensemble::EllipticEnsembleConfig config;
  std::optional<svg::Window> crop;  // nullopt: fit the data
};

inline FigureSetup figure_setup(const std::string& which, std::uint64_t seed,
                                std::size_t n = kFigureN, svg::Window crop = {}) {
  using std::numbers::pi;
  const double a = kFigureAlpha;
  FigureSetup f{which, {}, crop};
  if (which == "1L") {
    f.config = ensemble::EllipticEnsembleConfig::make(n, full_circle(a), seed, ensemble::SameAsXi1{});
    f.config.entries = ensemble::EntryLaw::kIidSignedPareto;
    f.crop.reset();
  } else if (which == "1R") {
    f.config = ensemble::EllipticEnsembleConfig::make(n, full_circle(a), seed);
  } else if (which == "2a" || which == "2b") {
    const double b = which == "2a" ? 0.1 : 0.5;
    f.config = ensemble::EllipticEnsembleConfig::make(n, arcs(a, {0, pi / 2, pi, 3 * pi / 2}, b), seed);
  } else if (which == "3a" || which == "3b") {
    const double b = which == "3a" ? 1.0 : 4.0 / 3.0;
    f.config = ensemble::EllipticEnsembleConfig::make(n, arcs(a, {pi / 4, 5 * pi / 4}, b), seed);
  } else {
    throw ParameterError("unknown figure '" + which + "' (expected 1L, 1R, 2a, 2b, 3a, 3b)");
  }
  return f;
}

inline std::vector<cplx> figure_spectrum(const FigureSetup& f) {
  const auto x = ensemble::build_elliptic_matrix(f.config);
  return ensemble::eigenvalues(ensemble::scale_and_shift(x, f.config.spec.alpha, 0.0));
}

inline svg::Window fit_window(std::span<const cplx> pts) {
  svg::Window w{0, 0, 0, 0};
  for (const auto& z : pts) {
    w.re_min = std::min(w.re_min, z.real());
    w.re_max = std::max(w.re_max, z.real());
    w.im_min = std::min(w.im_min, z.imag());
    w.im_max = std::max(w.im_max, z.imag());
  }
  const double half = 0.5 * std::max({w.re_max - w.re_min, w.im_max - w.im_min, 1e-9}) * 1.02;
  const double cr = 0.5 * (w.re_min + w.re_max), ci = 0.5 * (w.im_min + w.im_max);
  return {cr - half, cr + half, ci - half, ci + half};
}

struct FigureResult {
  std::vector<cplx> eigenvalues;
  std::filesystem::path csv;
  std::filesystem::path svg;
  svg::Window window;
  std::size_t drawn = 0;
};

/// Writes figure<which>.csv (all eigenvalues) and figure<which>.svg (cropped).
inline FigureResult run_figure(const std::string& which, const std::filesystem::path& out_dir,
                               std::uint64_t seed, svg::Window crop = {},
                               std::size_t n = kFigureN) {
  const FigureSetup f = figure_setup(which, seed, n, crop);
  FigureResult r;
  r.eigenvalues = figure_spectrum(f);
  std::filesystem::create_directories(out_dir);
  r.csv = out_dir / ("figure" + which + ".csv");
  r.svg = out_dir / ("figure" + which + ".svg");
  io::write_eigenvalues(r.csv, r.eigenvalues);
  r.window = f.crop ? *f.crop : fit_window(r.eigenvalues);
  r.drawn = svg::write_scatter(r.svg, r.eigenvalues, r.window,
                               "figure " + which + ", n = " + std::to_string(n));
  return r;
}

// Fraction of points with |Im| < band.
inline double near_real_fraction(std::span<const cplx> eigs, double band = 0.1) {
  if (eigs.empty()) return 0.0;
  const auto hits = std::count_if(eigs.begin(), eigs.end(),
                                  [band](const cplx& l) { return std::abs(l.imag()) < band; });
  return static_cast<double>(hits) / static_cast<double>(eigs.size());
}

struct Estimate {
  double im_m = 0.0;
  double se = 0.0;
};

struct CrossvalConfig {
  SpectralMeasureSpec spec = independent_axes(kFigureAlpha);
  ensemble::DiagonalLaw diagonal = ensemble::ConstantDiagonal{1.0};
  cplx z = 0.0;
  double eta_im = 1.0;
  std::size_t n = 1000;
  std::size_t replicas = 20;
  std::size_t branching = 50;
  std::size_t depth = 6;
  std::size_t trees = 500;
  double prune = pwit::kDefaultPruneTolerance;
  std::size_t pool = 100'000;
  std::size_t generations = 50;
  std::size_t terms = 50;
  std::uint64_t seed = 0;
};

struct CrossvalReport {
  Estimate matrix, pwit, rde;
  double z_matrix_pwit = 0.0, z_matrix_rde = 0.0, z_pwit_rde = 0.0;
  double rde_drift = 0.0;
  bool consistent() const noexcept {
    return z_matrix_pwit <= 3.0 && z_matrix_rde <= 3.0 && z_pwit_rde <= 3.0;
  }
  std::string text() const {
    std::ostringstream os;
    os << "route,im_m,se\n";
    os << "matrix," << io::fmt(matrix.im_m) << ',' << io::fmt(matrix.se) << '\n';
    os << "pwit," << io::fmt(pwit.im_m) << ',' << io::fmt(pwit.se) << '\n';
    os << "rde," << io::fmt(rde.im_m) << ',' << io::fmt(rde.se) << '\n';
    os << "pair,z\n";
    os << "matrix-pwit," << io::fmt(z_matrix_pwit) << '\n';
    os << "matrix-rde," << io::fmt(z_matrix_rde) << '\n';
    os << "pwit-rde," << io::fmt(z_pwit_rde) << '\n';
    os << "rde_drift," << io::fmt(rde_drift) << '\n';
    os << "consistent," << (consistent() ? "yes" : "no") << '\n';
    return os.str();
  }
};

/// Im m_{nu check}(eta) over `replicas` matrices of size n.
inline Estimate matrix_stieltjes(const CrossvalConfig& c) {
  const std::uint64_t base = derive_seed(c.seed, 1);
  auto cfg = ensemble::EllipticEnsembleConfig::make(c.n, c.spec, base, c.diagonal);
  std::vector<double> vals;
  for (std::size_t r = 0; r < c.replicas; ++r) {
    cfg.seed = derive_seed(base, r);
    const auto a = ensemble::scale_and_shift(ensemble::build_elliptic_matrix(cfg), c.spec.alpha, c.z);
    vals.push_back(ensemble::stieltjes_from_singular_values(ensemble::singular_values(a),
                                                            cplx(0, c.eta_im)).imag());
  }
  const auto s = stats::summarize(vals);
  return {s.mean, s.standard_error};
}

inline Estimate pwit_stieltjes(const CrossvalConfig& c) {
  const HalfPlanePoint u(c.z, cplx(0, c.eta_im));
  const auto est = pwit::pwit_stieltjes_estimate(c.spec, c.branching, c.depth, u, c.trees,
                                                 derive_seed(c.seed, 2), c.prune);
  std::vector<double> im;
  for (const auto& b : est.samples) im.push_back(b.a.imag());
  const auto s = stats::summarize(im);
  return {s.mean, s.standard_error};
}

inline rde::RdeConfig rde_config(const CrossvalConfig& c) {
  rde::RdeConfig cfg(HalfPlanePoint(c.z, cplx(0, c.eta_im)), c.spec);
  cfg.pool_size = c.pool;
  cfg.generations = c.generations;
  cfg.series_terms = c.terms;
  cfg.seed = derive_seed(c.seed, 3);
  return cfg;
}

inline CrossvalReport run_crossval(const CrossvalConfig& c) {
  if (!(c.eta_im > 0.0)) throw ParameterError("crossval needs Im(eta) > 0");
  CrossvalReport r;
  r.matrix = matrix_stieltjes(c);
  r.pwit = pwit_stieltjes(c);
  const auto sol = rde::rde_solve(rde_config(c));
  r.rde = {sol.m.imag(), sol.se_im_m};
  r.rde_drift = sol.drift;
  r.z_matrix_pwit = stats::z_score(r.matrix.im_m, r.matrix.se, r.pwit.im_m, r.pwit.se);
  r.z_matrix_rde = stats::z_score(r.matrix.im_m, r.matrix.se, r.rde.im_m, r.rde.se);
  r.z_pwit_rde = stats::z_score(r.pwit.im_m, r.pwit.se, r.rde.im_m, r.rde.se);
  return r;
}

struct ConcentrationRow {
  std::size_t n = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

// f(x) = 1 / (1 + x^2).
inline double cauchy_kernel(double x) { return 1.0 / (1.0 + x * x); }

/// Standard deviation across replicas of int f dnu_{A_n}, FullCircle preset,
/// z = 0. Replica r at size n uses derive_seed(derive_seed(seed, n), r).
inline std::vector<ConcentrationRow> run_concentration(std::span<const std::size_t> n_list,
                                                       std::size_t replicas,
                                                       const std::string& f_name,
                                                       std::uint64_t seed,
                                                       double alpha = kFigureAlpha) {
  if (f_name != "cauchy_kernel") throw ParameterError("unknown test function '" + f_name + "'");
  if (replicas < 20) throw PreconditionError("concentration needs at least 20 replicas");
  std::vector<ConcentrationRow> rows;
  for (std::size_t n : n_list) {
    auto cfg = ensemble::EllipticEnsembleConfig::make(n, full_circle(alpha), 0);
    std::vector<double> vals;
    for (std::size_t r = 0; r < replicas; ++r) {
      cfg.seed = derive_seed(derive_seed(seed, n), r);
      const auto s = ensemble::singular_values(
          ensemble::scale_and_shift(ensemble::build_elliptic_matrix(cfg), alpha, 0.0));
      double acc = 0.0;
      for (double v : s) acc += cauchy_kernel(v);
      vals.push_back(acc / static_cast<double>(n));
    }
    const auto sum = stats::summarize(vals);
    rows.push_back({n, sum.mean, std::sqrt(sum.variance)});
  }
  return rows;
}

}  // namespace heavyell::experiments
