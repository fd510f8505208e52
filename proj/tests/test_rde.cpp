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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heavyell/density.hpp"
#include "heavyell/ensemble.hpp"
#include "heavyell/pwit.hpp"
#include "heavyell/rde.hpp"
#include "heavyell/stats.hpp"

namespace heavyell {
namespace {

rde::RdeConfig small_config(const SpectralMeasureSpec& spec, cplx z = 0.0, cplx eta = cplx(0, 1)) {
  rde::RdeConfig cfg(HalfPlanePoint(z, eta), spec);
  cfg.pool_size = 2000;
  cfg.generations = 10;
  cfg.series_terms = 20;
  cfg.seed = 5;
  return cfg;
}

std::vector<double> im_a(const std::vector<ResolventBlock>& pool) {
  std::vector<double> out;
  for (const auto& b : pool) out.push_back(b.a.imag());
  return out;
}

TEST(RdeConfig, Validation) {
  auto cfg = small_config(full_circle(1.0));
  cfg.pool_size = 99;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = small_config(full_circle(1.0));
  cfg.series_terms = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
  cfg = small_config(full_circle(1.0));
  cfg.generations = 0;
  EXPECT_THROW(cfg.validate(), ParameterError);
}

TEST(SeriesUpdate, NoTermsGivesFreeBlock) {
  const HalfPlanePoint u(cplx(0.2, 0.3), cplx(0, 1));
  std::vector<rde::SeriesTerm> terms(5);  // all radii 0
  for (auto& t : terms) t.block = ResolventBlock{1, 2, 3, 4};
  EXPECT_LT(rde::series_update(u, terms).max_abs_diff(free_resolvent(u)), 1e-15);
}

TEST(SeriesUpdate, OneAxisTermClosedForm) {
  const HalfPlanePoint u(cplx(0.5, 0.0), cplx(0, 1));
  const ResolventBlock r{cplx(0, 0.3), cplx(0.1, 0.05), cplx(0.1, -0.05), cplx(0, 0.7)};
  const std::vector<rde::SeriesTerm> terms{{1.0, {1.0, 0.0}, r}};
  // -(U + (c, 0; 0, 0))^{-1} with U = (eta, z; conj z, eta).
  const cplx eta = u.eta(), z = u.z();
  const cplx p = eta + r.c, det = p * eta - z * std::conj(z);
  const ResolventBlock expected{-eta / det, z / det, std::conj(z) / det, -p / det};
  EXPECT_LT(rde::series_update(u, terms).max_abs_diff(expected), 1e-15);
}

TEST(Iterate, FreeCaseAndStructure) {
  SpectralMeasureSpec empty{1.25, FullCircle{}, 0.0};
  const auto cfg = small_config(empty);
  const auto sol = rde::rde_solve(cfg);
  EXPECT_EQ(sol.m, -1.0 / cfg.u.eta());
  EXPECT_EQ(sol.se_im_m, 0.0);
}

TEST(Iterate, PoolInvariantsEveryGeneration) {
  const auto cfg = small_config(independent_axes(1.25), 0.3);
  auto pop = rde::initial_population(cfg);
  for (int g = 0; g < 6; ++g) {
    pop = rde::rde_iterate(pop, cfg);
    ASSERT_EQ(pop.pool.size(), cfg.pool_size);
    for (const auto& b : pop.pool) ASSERT_TRUE(check_block(b, cfg.u.eta()).ok());
  }
}

TEST(Iterate, OneStepMatchesDepthOneTree) {
  auto cfg = small_config(full_circle(1.25));
  cfg.pool_size = 10000;
  cfg.series_terms = 10;
  cfg.tail_compensation = false;
  const auto pop = rde::rde_iterate(rde::initial_population(cfg), cfg);
  std::vector<double> tree;
  for (std::uint64_t r = 0; r < 10000; ++r) {
    tree.push_back(pwit::recursive_resolvent(
                       pwit::sample_truncated_pwit(cfg.spec, 10, 1, derive_seed(77, r)), cfg.u)
                       .a.imag());
  }
  EXPECT_LT(stats::ks_two_sample(im_a(pop.pool), tree), stats::ks_critical_two_sample(10000, 10000, 0.01));
}

TEST(Iterate, DepthUnrollingMatchesPwit) {
  auto cfg = small_config(independent_axes(1.25));
  cfg.pool_size = 3000;
  cfg.series_terms = 30;
  cfg.tail_compensation = false;
  auto pop = rde::initial_population(cfg);
  for (int g = 0; g < 3; ++g) pop = rde::rde_iterate(pop, cfg);
  std::vector<double> tree;
  for (std::uint64_t r = 0; r < 3000; ++r) {
    tree.push_back(pwit::root_block_streamed(cfg.spec, 30, 3, cfg.u, derive_seed(78, r), 0.0).a.imag());
  }
  EXPECT_LT(stats::ks_two_sample(im_a(pop.pool), tree), stats::ks_critical_two_sample(3000, 3000, 0.01));
}

TEST(Solve, AxisSwapSymmetry) {
  auto cfg = small_config(atoms(1.25, {{{1.0, 0.0}, 0.5}, {{0.0, 1.0}, 0.5}}));
  cfg.pool_size = 5000;
  auto swapped = cfg;
  swapped.spec = atoms(1.25, {{{0.0, 1.0}, 0.5}, {{1.0, 0.0}, 0.5}});
  swapped.seed = 6;
  const auto a = rde::rde_solve(cfg), b = rde::rde_solve(swapped);
  EXPECT_LT(stats::ks_two_sample(im_a(a.population.pool), im_a(b.population.pool)),
            stats::ks_critical_two_sample(5000, 5000, 0.01));
}

TEST(Solve, MeanBoundsAndDriftDecrease) {
  auto cfg = small_config(full_circle(1.25), 0.5);
  cfg.pool_size = 20000;
  cfg.generations = 50;
  const auto sol = rde::rde_solve(cfg);
  EXPECT_GT(sol.m.imag(), 0.0);
  EXPECT_LE(std::abs(sol.m), 1.0 / cfg.u.eta().imag());
  ASSERT_EQ(sol.drift_history.size(), 50u);
  EXPECT_LT(sol.drift, sol.drift_history[4]);
}

TEST(Solve, SymmetricPresetMatchesMatrix) {
  // Atom at angle pi/4: xi1 = xi2, the Levy (symmetric) case.
  const double h = 1.0 / std::sqrt(2.0);
  const auto spec = atoms(1.25, {{{h, h}, 0.5}, {{-h, -h}, 0.5}});
  rde::RdeConfig cfg(HalfPlanePoint(0.0, cplx(0, 1)), spec);
  cfg.seed = 21;
  const auto sol = rde::rde_solve(cfg);

  std::vector<double> vals;
  auto mcfg = ensemble::EllipticEnsembleConfig::make(1000, spec, 0);
  for (std::uint64_t r = 0; r < 20; ++r) {
    mcfg.seed = derive_seed(22, r);
    const auto a = ensemble::scale_and_shift(ensemble::build_elliptic_matrix(mcfg), 1.25, 0.0);
    vals.push_back(ensemble::stieltjes_from_singular_values(ensemble::singular_values(a), cplx(0, 1)).imag());
  }
  const auto m = stats::summarize(vals);
  EXPECT_LE(stats::z_score(sol.m.imag(), sol.se_im_m, m.mean, m.standard_error), 3.0)
      << "rde " << sol.m.imag() << " +- " << sol.se_im_m << " matrix " << m.mean << " +- "
      << m.standard_error;
}

TEST(TailWeight, MatchesDirectSum) {
  // E sum_{k > K} Gamma_k^{-p} = sum_{k > K} Gamma(k - p) / Gamma(k).
  const double alpha = 1.25, p = 2.0 / alpha;
  const std::size_t k_terms = 50;
  double direct = 0.0;
  for (std::size_t k = k_terms + 1; k < 5'000'000; ++k) {
    direct += std::exp(std::lgamma(k - p) - std::lgamma(static_cast<double>(k)));
  }
  // Remainder beyond the cut ~ int_N^inf x^{-p} dx.
  direct += std::pow(5e6, 1.0 - p) / (p - 1.0);
  EXPECT_NEAR(rde::truncated_tail_weight(alpha, 1.0, k_terms), direct, 1e-6 * direct);
}

TEST(Density, CauchyValueAndValidation) {
  const std::vector<std::pair<double, cplx>> curve{{-1.0, cplx(0, 1)}, {0.0, cplx(0, 1)}, {1.0, cplx(0, 1)}};
  const auto d = density_from_stieltjes(curve, 1.0);
  EXPECT_NEAR(d.values[1], 1.0 / std::numbers::pi, 1e-15);
  EXPECT_THROW(density_from_stieltjes(curve, 0.0), ParameterError);
  const std::vector<std::pair<double, cplx>> bad{{0.0, cplx(0, 1)}, {0.0, cplx(0, 1)}};
  EXPECT_THROW(density_from_stieltjes(bad, 1.0), PreconditionError);
  const std::vector<std::pair<double, cplx>> neg{{0.0, cplx(0, -0.1)}};
  EXPECT_NEAR(density_from_stieltjes(neg, 1.0).clipped, 0.1 / std::numbers::pi, 1e-15);
}

TEST(Density, MassAndEvennessFromMatrix) {
  auto mcfg = ensemble::EllipticEnsembleConfig::make(300, full_circle(1.25), 23);
  const auto a = ensemble::scale_and_shift(ensemble::build_elliptic_matrix(mcfg), 1.25, 0.0);
  const auto s = ensemble::singular_values(a);
  const double eps = 0.05;
  std::vector<std::pair<double, cplx>> curve;
  for (int k = -4000; k <= 4000; ++k) {
    const double e = k * 0.01;
    curve.emplace_back(e, ensemble::stieltjes_from_singular_values(s, cplx(e, eps)));
  }
  const auto d = density_from_stieltjes(curve, eps);
  EXPECT_GE(d.trapezoid_mass(), 0.9);
  EXPECT_LE(d.trapezoid_mass(), 1.1);
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    EXPECT_NEAR(d.values[k], d.values[d.values.size() - 1 - k], 1e-10);
  }
}

}  // namespace
}  // namespace heavyell
