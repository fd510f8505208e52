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

// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers as
// arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "heavyell/ensemble.hpp"
#include "heavyell/experiments.hpp"
#include "heavyell/hermitization.hpp"
#include "heavyell/linalg.hpp"
#include "heavyell/pwit.hpp"
#include "heavyell/rde.hpp"
#include "heavyell/stats.hpp"

namespace {

using namespace heavyell;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

SpectralMeasureSpec preset(std::uint64_t k, double alpha) {
  using std::numbers::pi;
  switch (k % 4) {
    case 0: return full_circle(alpha);
    case 1: return independent_axes(alpha);
    case 2: return arcs(alpha, {0, pi / 2, pi, 1.5 * pi}, 0.5);
    default: return arcs(alpha, {pi / 4, 5 * pi / 4}, 4.0 / 3.0);
  }
}

DenseComplexMatrix sample(std::size_t n, const SpectralMeasureSpec& spec, std::uint64_t seed, cplx z = 0.0) {
  const auto cfg = ensemble::EllipticEnsembleConfig::make(n, spec, seed);
  return ensemble::scale_and_shift(ensemble::build_elliptic_matrix(cfg), spec.alpha, z);
}

cplx random_shift(RngStream& rng) { return {4 * rng.uniform() - 2, 4 * rng.uniform() - 2}; }

Outcome bipartization() {
  RngStream rng(101, 0);
  double worst = 0.0, worst_abs = 0.0;
  for (std::uint64_t c = 0; c < 100; ++c) {
    const std::size_t n = 1 + rng.index(50);
    const double alpha = 0.2 + 1.7 * rng.uniform();
    const cplx z = random_shift(rng);
    const auto a = sample(n, preset(c, alpha), 1000 + c);
    const auto ev = linalg::hermitian_eigenvalues(ensemble::bipartize(a, z));
    DenseComplexMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= z;
    const auto s = ensemble::singular_values(shifted);
    std::vector<double> expected;
    for (auto it = s.begin(); it != s.end(); ++it) expected.push_back(-*it);
    for (auto it = s.rbegin(); it != s.rend(); ++it) expected.push_back(*it);
    // Error relative to max(1, s_1): alpha down to 0.2 gives norms near 1e7.
    const double scale = std::max(1.0, s.front());
    for (std::size_t k = 0; k < ev.size(); ++k) {
      const double err = std::abs(ev[k] - expected[k]);
      worst_abs = std::max(worst_abs, err);
      worst = std::max(worst, err / scale);
    }
  }
  return {worst <= 1e-10, format("max |eig B - (+-s)| / max(1, s_1) = %.3g over 100 cases (absolute %.3g)",
                                 worst, worst_abs)};
}

Outcome stieltjes() {
  RngStream rng(102, 0);
  double worst = 0.0;
  for (std::uint64_t c = 0; c < 50; ++c) {
    const std::size_t n = 1 + rng.index(50);
    const cplx z = random_shift(rng);
    const HalfPlanePoint u(z, cplx(0, 0.05 + 3 * rng.uniform()));
    const auto a = sample(n, preset(c, 1.25), 2000 + c);
    const cplx m = ensemble::stieltjes_symmetrized(ensemble::resolvent_diag_blocks(a, u));
    DenseComplexMatrix shifted = a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= z;
    const cplx direct = ensemble::stieltjes_from_singular_values(ensemble::singular_values(shifted), u.eta());
    worst = std::max(worst, std::abs(m - direct));
  }
  return {worst <= 1e-8, format("max |m_blocks - m_svals| = %.3g over 50 cases", worst)};
}

Outcome pwit_exactness() {
  RngStream rng(103, 0);
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const std::size_t b = 1 + t % 4;
    const std::size_t h = 1 + (t / 4) % 4;
    const auto tree = pwit::sample_truncated_pwit(preset(t, 1.25), b, h, 3000 + t);
    const HalfPlanePoint u(random_shift(rng), cplx(0, 0.1 + 2 * rng.uniform()));
    DenseComplexMatrix m = ensemble::bipartize(pwit::adjacency_matrix(tree), u.z());
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= u.eta();
    const auto r = linalg::inverse(m);
    const ResolventBlock dense{r(0, 0), r(0, 1), r(1, 0), r(1, 1)};
    worst = std::max(worst, pwit::recursive_resolvent(tree, u).max_abs_diff(dense));
  }
  return {worst <= 1e-10, format("max root block difference = %.3g over 50 trees", worst)};
}

Outcome stable_laws() {
  bool ok = true;
  std::ostringstream os;
  std::uint64_t seed = 400;
  double worst_z = 0.0;
  for (double beta : {0.5, 0.625}) {
    for (double s : {0.5, 1.0, 2.0}) {
      RngStream rng(seed++, 0);
      std::vector<double> v(100000);
      for (auto& x : v) x = std::exp(-s * sampler::sample_one_sided_stable(beta, rng));
      const auto sum = stats::summarize(v);
      const double z = std::abs(sum.mean - std::exp(-std::pow(s, beta))) / sum.standard_error;
      worst_z = std::max(worst_z, z);
      ok = ok && z <= 3.0;
    }
  }
  os << format("Laplace max z %.2f; ", worst_z);

  // sum w_i Z_i =d (sum w_i^beta)^{1/beta} Z.
  const double beta = 0.625;
  const std::vector<double> w{0.3, 1.0, 2.5};
  double norm = 0.0;
  for (double x : w) norm += std::pow(x, beta);
  norm = std::pow(norm, 1.0 / beta);
  RngStream a(410, 0), b(410, 1);
  const int n = 10000;
  std::vector<double> lhs(n), rhs(n);
  for (int i = 0; i < n; ++i) {
    for (double x : w) lhs[i] += x * sampler::sample_one_sided_stable(beta, a);
    rhs[i] = norm * sampler::sample_one_sided_stable(beta, b);
  }
  const double d = stats::ks_two_sample(lhs, rhs);
  const double crit = stats::ks_critical_two_sample(n, n, 0.01);
  ok = ok && d < crit;
  os << format("scaling KS %.4f (crit %.4f); ", d, crit);

  RngStream c(411, 0);
  std::vector<double> inv(100000);
  for (auto& x : inv) x = 1.0 / sampler::sample_one_sided_stable(0.5, c);
  const auto s = stats::summarize(inv);
  const double z = std::abs(s.mean - 2.0) / s.standard_error;
  ok = ok && z <= 3.0;
  os << format("E Z^-1 = %.4f (z %.2f)", s.mean, z);
  return {ok, os.str()};
}

Outcome ppp() {
  bool ordered = true;
  RngStream rng(500, 0);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto w = sampler::sample_radial_ppp(preset(rep, 0.3 + 1.6 * rng.uniform()), 200, rng);
    for (std::size_t i = 1; i < w.radii.size(); ++i) ordered = ordered && w.radii[i] < w.radii[i - 1];
  }
  bool ok = ordered;
  std::ostringstream os;
  os << (ordered ? "ordering exact" : "ordering violated");
  for (double mass : {1.0, 2.5}) {
    SpectralMeasureSpec spec{1.25, FullCircle{}, mass};
    RngStream r(501, static_cast<std::uint64_t>(mass * 10));
    const int reps = 10000;
    std::vector<double> counts(reps);
    for (auto& c : counts) {
      const auto w = sampler::sample_radial_ppp(spec, 60, r);
      c = static_cast<double>(std::count_if(w.radii.begin(), w.radii.end(), [](double x) { return x >= 1.0; }));
    }
    const auto s = stats::summarize(counts);
    const double zm = std::abs(s.mean - mass) / std::sqrt(mass / reps);
    const double zv = std::abs(s.variance - mass) / std::sqrt((mass + 2 * mass * mass) / reps);
    ok = ok && zm <= 3.0 && zv <= 3.0;
    os << format("; mass %.1f: mean %.4f (z %.2f) var %.4f (z %.2f)", mass, s.mean, zm, s.variance, zv);
  }
  return {ok, os.str()};
}

Outcome linear_algebra() {
  int nsm_bad = 0, weyl_bad = 0, schatten_bad = 0, interlace_bad = 0;
  double worst_rel = 0.0;
  RngStream rng(600, 0);
  for (std::uint64_t c = 0; c < 100; ++c) {
    const std::size_t n = 3 + rng.index(38);
    const auto a = sample(n, preset(c, 0.5 + 1.4 * rng.uniform()), 6000 + c, random_shift(rng));
    const auto r = ensemble::negative_second_moment_identity(a);
    const double rel = std::abs(r.lhs - r.rhs) / r.lhs;
    worst_rel = std::max(worst_rel, rel);
    nsm_bad += rel > 1e-8;

    const auto s = ensemble::singular_values(a);
    const auto ev = ensemble::eigenvalues(a);
    for (double p : {0.5, 1.0, 2.0}) {
      double lhs = 0.0, mid = 0.0, rows = 0.0;
      for (const auto& l : ev) lhs += std::pow(std::abs(l), p);
      for (double v : s) mid += std::pow(v, p);
      for (std::size_t i = 0; i < n; ++i) {
        double norm2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) norm2 += std::norm(a(i, j));
        rows += std::pow(norm2, p / 2.0);
      }
      weyl_bad += lhs > mid * (1 + 1e-10);
      schatten_bad += mid > rows * (1 + 1e-10);
    }
    const auto b = ensemble::singular_values(a.without_row(rng.index(n)));
    bool ok = true;
    for (std::size_t i = 0; i < b.size(); ++i) {
      ok = ok && s[i] * (1 + 1e-10) >= b[i] && b[i] * (1 + 1e-10) >= s[i + 1];
    }
    interlace_bad += !ok;
  }
  const bool pass = nsm_bad + weyl_bad + schatten_bad + interlace_bad == 0;
  return {pass, format("100 matrices: identity max rel err %.2g; failures identity %d, Weyl %d, "
                       "Schatten %d, interlacing %d",
                       worst_rel, nsm_bad, weyl_bad, schatten_bad, interlace_bad)};
}

Outcome three_way() {
  experiments::CrossvalConfig c;
  const auto r = experiments::run_crossval(c);
  std::string text = r.text();
  std::replace(text.begin(), text.end(), '\n', ' ');
  return {r.consistent(), text};
}

Outcome hermitization() {
  const double h = 0.05;
  const std::size_t n = 20;
  const auto grid = ComplexGrid::square(-3.0, 3.0, h);
  const auto a = sample(n, full_circle(1.25), 2026);
  const auto u = log_potential_grid(a, grid, ensemble::default_clamp(n));
  const auto mu = mu_from_hermitization(grid, u.values);
  const auto eigs = ensemble::eigenvalues(a);
  const auto hist = grid_histogram(grid, eigs);
  const double tv = total_variation(mu.mass, hist);

  // Fundamental solution with the pole at a cell centre.
  const auto shifted = ComplexGrid::square(-3.0 - h / 2, 3.0 + h / 2, h);
  std::vector<double> g(shifted.size());
  for (std::size_t i = 0; i < shifted.nx; ++i) {
    for (std::size_t j = 0; j < shifted.ny; ++j) g[shifted.index(i, j)] = std::log(std::abs(shifted.point(i, j)));
  }
  const auto delta = mu_from_hermitization(shifted, g);
  const double delta_mass = delta.total_mass;
  const bool pass = tv <= 0.15 && delta_mass >= 0.95 && delta_mass <= 1.05;
  return {pass, format("TV %.4f (limit 0.15), recovered mass %.4f, clipped %.4f; delta_0 mass %.4f (signed %.4f)",
                       tv, mu.total_mass, mu.clipped, delta_mass, delta.net_mass)};
}

Outcome least_singular_value() {
  const std::size_t n = 200;
  const auto cfg = ensemble::EllipticEnsembleConfig::make(n, full_circle(1.25), 900);
  const auto s = ensemble::least_singular_values(cfg, 1.0, 200);
  const double t = std::pow(static_cast<double>(n), -3.0);
  const auto hits = std::count_if(s.begin(), s.end(), [t](double v) { return v <= t; });
  const double p = static_cast<double>(hits) / s.size();
  return {p <= 0.05, format("P(s_n <= n^-3) = %.3f over 200 trials; min s_n %.3g", p,
                            *std::min_element(s.begin(), s.end()))};
}

std::vector<cplx> read_eigenvalues(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  std::vector<cplx> out;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    out.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return out;
}

double conjugation_defect(const std::vector<cplx>& eigs) {
  double worst = 0.0;
  for (const auto& l : eigs) {
    double best = INFINITY;
    for (const auto& m : eigs) best = std::min(best, std::abs(m - std::conj(l)));
    worst = std::max(worst, best / std::max(1.0, std::abs(l)));
  }
  return worst;
}

Outcome figures() {
  const auto dir = std::filesystem::temp_directory_path() / "heavyell_acceptance_figures";
  std::filesystem::remove_all(dir);
  bool ok = true;
  std::ostringstream os;
  for (const char* cmd : {"figure1", "figure2", "figure3"}) {
    const std::string line = std::string(HEAVYELL_CLI_PATH) + " " + cmd + " --seed 1 --out " +
                             dir.string() + " > /dev/null";
    if (std::system(line.c_str()) != 0) {
      ok = false;
      os << cmd << " failed; ";
    }
  }
  for (const char* which : {"1L", "1R", "2a", "2b", "3a", "3b"}) {
    const auto path = dir / (std::string("figure") + which + ".csv");
    const std::size_t rows = std::filesystem::exists(path) ? read_eigenvalues(path).size() : 0;
    ok = ok && rows == experiments::kFigureN;
    os << which << " " << rows << " rows; ";
  }
  const auto r1 = read_eigenvalues(dir / "figure1R.csv");
  const double defect = r1.empty() ? INFINITY : conjugation_defect(r1);
  ok = ok && defect <= 1e-8;
  os << format("1R conjugation defect %.2g; ", defect);

  // Paired seeds: the b = 1 preset (3a) has fewer eigenvalues near the real
  // axis than b = 4/3 (3b).
  int wins = 0;
  os << "near-real fractions 3a/3b:";
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto fa = experiments::near_real_fraction(experiments::figure_spectrum(experiments::figure_setup("3a", seed)));
    const auto fb = experiments::near_real_fraction(experiments::figure_spectrum(experiments::figure_setup("3b", seed)));
    wins += fa < fb;
    os << format(" %.3f/%.3f", fa, fb);
  }
  ok = ok && wins >= 7;
  os << format("; ordering held in %d/10", wins);
  return {ok, os.str()};
}

Outcome resolvent_structure() {
  std::size_t checked = 0, bad = 0;
  double worst = 0.0;
  auto check = [&](const ResolventBlock& b, cplx eta) {
    const auto c = check_block(b, eta);
    ++checked;
    bad += !c.ok();
    worst = std::max({worst, std::abs(b.a.real()), std::abs(b.c.real()), std::abs(b.b_prime - std::conj(b.b))});
  };
  RngStream rng(1100, 0);
  for (std::uint64_t k = 0; k < 12; ++k) {
    const auto a = sample(100, preset(k, 0.5 + 1.4 * rng.uniform()), 11000 + k);
    for (double t : {0.05, 0.5, 1.0, 4.0}) {
      const HalfPlanePoint u(random_shift(rng), cplx(0, t));
      for (const auto& b : ensemble::resolvent_diag_blocks(a, u)) check(b, u.eta());
    }
  }
  const std::size_t matrix_blocks = checked;
  for (std::uint64_t k = 0; k < 3000; ++k) {
    const HalfPlanePoint u(random_shift(rng), cplx(0, 0.1 + 2 * rng.uniform()));
    const auto spec = preset(k, 1.25);
    check(pwit::recursive_resolvent(pwit::sample_truncated_pwit(spec, 4, 3, 12000 + k), u), u.eta());
    if (k % 10 == 0) check(pwit::root_block_streamed(spec, 20, 4, u, 13000 + k, 1e-3), u.eta());
  }
  const std::size_t pwit_blocks = checked - matrix_blocks;
  for (std::uint64_t k = 0; k < 2; ++k) {
    rde::RdeConfig cfg(HalfPlanePoint(random_shift(rng), cplx(0, 0.5 + rng.uniform())), preset(k, 1.25));
    cfg.pool_size = 2000;
    cfg.series_terms = 30;
    cfg.seed = 14000 + k;
    auto pop = rde::initial_population(cfg);
    for (int g = 0; g < 3; ++g) {
      pop = rde::rde_iterate(pop, cfg);
      for (const auto& b : pop.pool) check(b, cfg.u.eta());
    }
  }
  const std::size_t rde_blocks = checked - matrix_blocks - pwit_blocks;
  return {bad == 0 && checked >= 10000,
          format("%zu blocks (matrix %zu, PWIT %zu, RDE %zu), %zu violations, max structure defect %.2g",
                 checked, matrix_blocks, pwit_blocks, rde_blocks, bad, worst)};
}

Outcome concentration() {
  const std::vector<std::size_t> ns{100, 400};
  const auto rows = experiments::run_concentration(ns, 50, "cauchy_kernel", 7);
  const double ratio = rows[0].stddev / rows[1].stddev;
  return {ratio >= 1.2 && ratio <= 3.5,
          format("sd(n=100) %.5f, sd(n=400) %.5f, ratio %.3f (range [1.2, 3.5])", rows[0].stddev,
                 rows[1].stddev, ratio)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{
      bipartization, stieltjes,           pwit_exactness,       stable_laws,
      ppp,           linear_algebra,      three_way,            hermitization,
      least_singular_value, figures,      resolvent_structure,  concentration};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const int id = static_cast<int>(k + 1);
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("criterion %d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
