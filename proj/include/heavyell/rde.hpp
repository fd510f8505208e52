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

// Population dynamics for the fixed-point law of the root resolvent block:
//
//   R  =d  -(U + sum_k r_k^2 (c_k |w1_k|^2, b'_k w1_k w2_k; b_k conj(w1_k w2_k), a_k |w2_k|^2))^{-1}
//
// with r_k the radial Poisson process, w_k i.i.d. angular and R_k = (a_k, b_k;
// b'_k, c_k) i.i.d. copies of R. A pool of P blocks stands in for the law of R;
// every generation rebuilds each entry from K resampled pool members.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "heavyell/errors.hpp"
#include "heavyell/heavy_sampler.hpp"
#include "heavyell/resolvent_block.hpp"
#include "heavyell/rng.hpp"
#include "heavyell/spectral_measure.hpp"

namespace heavyell::rde {

struct RdeConfig {
  RdeConfig(HalfPlanePoint point, SpectralMeasureSpec measure)
      : u(point), spec(std::move(measure)) {}

  std::size_t pool_size = 100'000;
  std::size_t generations = 50;
  std::size_t series_terms = 50;
  HalfPlanePoint u;
  SpectralMeasureSpec spec;
  std::uint64_t seed = 0;
  // Replace the discarded terms k > K of the series by their mean.
  bool tail_compensation = true;
  // m is averaged over this many final generations.
  std::size_t averaging_window = 10;

  void validate() const {
    spec.validate();
    if (pool_size < 100) throw ParameterError("RDE pool size must be >= 100");
    if (series_terms == 0) throw ParameterError("RDE needs at least one series term");
    if (generations == 0) throw ParameterError("RDE needs at least one generation");
    if (averaging_window == 0) throw ParameterError("RDE averaging window must be >= 1");
  }
};

struct ResolventPopulation {
  std::vector<ResolventBlock> pool;
  std::size_t generation = 0;
};

inline ResolventPopulation initial_population(const RdeConfig& cfg) {
  return {std::vector<ResolventBlock>(cfg.pool_size, free_resolvent(cfg.u)), 0};
}

struct SeriesTerm {
  double radius = 0.0;
  Pair direction;
  ResolventBlock block;
};

/// -(U + sum_k r_k^2 M(w_k, R_k))^{-1} for explicit terms, plus an optional
/// deterministic drift added to the sum.
inline ResolventBlock series_update(const HalfPlanePoint& u, std::span<const SeriesTerm> terms,
                                    const ResolventBlock& drift = {}) {
  ResolventBlock m = u_matrix(u);
  for (const auto& t : terms) {
    m += edge_term(t.radius * t.direction.first, t.radius * t.direction.second, t.block);
  }
  m += drift;
  return negative_inverse(m);
}

/// E sum_{k > K} Gamma_k^{-2/alpha} * total_mass^{2/alpha}, i.e. the mean of
/// the squared radii dropped by a K-term truncation. Uses
/// sum_{k > K} Gamma(k - p) / Gamma(k) = Gamma(K + 1 - p) / ((p - 1) Gamma(K)),
/// p = 2/alpha > 1.
inline double truncated_tail_weight(double alpha, double total_mass, std::size_t k_terms) {
  const double p = 2.0 / alpha;
  const double k = static_cast<double>(k_terms);
  if (k + 1.0 - p <= 0.0) throw ParameterError("too few series terms for tail compensation");
  return std::pow(total_mass, p) *
         std::exp(std::lgamma(k + 1.0 - p) - std::lgamma(k)) / (p - 1.0);
}

inline ResolventBlock pool_mean(std::span<const ResolventBlock> pool) {
  ResolventBlock mean;
  for (const auto& b : pool) mean += b;
  return (1.0 / static_cast<double>(pool.size())) * mean;
}

// Mean of the discarded part of the series, given the current pool.
inline ResolventBlock tail_drift(const RdeConfig& cfg, std::span<const ResolventBlock> pool) {
  if (!cfg.tail_compensation || cfg.spec.total_mass == 0.0) return {};
  const double weight = truncated_tail_weight(cfg.spec.alpha, cfg.spec.total_mass,
                                              cfg.series_terms);
  const AngularMoments w = angular_moments(cfg.spec);
  const ResolventBlock mean = pool_mean(pool);
  return weight * ResolventBlock{mean.c * w.first_sq, mean.b_prime * w.product,
                                 mean.b * std::conj(w.product), mean.a * w.second_sq};
}

/// One generation. Entry e of generation g + 1 draws from
/// RngStream(derive_seed(cfg.seed, g + 1), e): K radii, then per term an
/// angular sample and a uniform pool index.
inline ResolventPopulation rde_iterate(const ResolventPopulation& pop, const RdeConfig& cfg) {
  if (pop.pool.empty()) throw PreconditionError("rde_iterate: empty pool");
  const std::size_t k_terms = cfg.series_terms;
  const std::uint64_t gen_seed = derive_seed(cfg.seed, pop.generation + 1);
  const ResolventBlock drift = tail_drift(cfg, pop.pool);
  const bool empty_process = cfg.spec.total_mass == 0.0;

  ResolventPopulation next{std::vector<ResolventBlock>(pop.pool.size()), pop.generation + 1};
  std::vector<SeriesTerm> terms(k_terms);
  for (std::size_t e = 0; e < pop.pool.size(); ++e) {
    if (empty_process) {
      next.pool[e] = series_update(cfg.u, {}, drift);
      continue;
    }
    RngStream rng(gen_seed, e);
    const auto ppp = sampler::sample_radial_ppp(cfg.spec, k_terms, rng);
    for (std::size_t k = 0; k < k_terms; ++k) {
      terms[k].radius = ppp.radii[k];
      terms[k].direction = sampler::sample_angular(cfg.spec, rng);
      terms[k].block = pop.pool[rng.index(pop.pool.size())];
    }
    next.pool[e] = series_update(cfg.u, terms, drift);
  }
  return next;
}

struct RdeSolution {
  ResolventPopulation population;
  cplx m{};            // mean of a over the final pool(s)
  double se_im_m = 0;  // standard error of Im(m)
  double drift = 0;    // |mean a(T) - mean a(T-1)|
  std::vector<double> drift_history;  // drift after each generation
  std::vector<cplx> mean_history;     // pool mean of a after each generation
};

/// Runs T generations from -U^{-1}. m averages the pool mean of a over the
/// last min(window, T) generations; its SE combines the final pool's SE with
/// the spread of those generation means.
inline RdeSolution rde_solve(const RdeConfig& cfg) {
  cfg.validate();
  RdeSolution sol;
  sol.population = initial_population(cfg);
  cplx previous = pool_mean(sol.population.pool).a;
  for (std::size_t g = 0; g < cfg.generations; ++g) {
    sol.population = rde_iterate(sol.population, cfg);
    const cplx current = pool_mean(sol.population.pool).a;
    sol.drift_history.push_back(std::abs(current - previous));
    sol.mean_history.push_back(current);
    previous = current;
  }
  sol.drift = sol.drift_history.back();

  const std::size_t window = std::min(cfg.averaging_window, cfg.generations);
  const auto tail = std::span<const cplx>(sol.mean_history).last(window);
  cplx sum{};
  for (const cplx& v : tail) sum += v;
  sol.m = sum / static_cast<double>(window);
  double between = 0.0;
  if (window > 1) {
    for (const cplx& v : tail) between += (v.imag() - sol.m.imag()) * (v.imag() - sol.m.imag());
    between /= static_cast<double>(window - 1);
  }

  const double last = previous.imag();
  double m2 = 0.0;
  for (const auto& b : sol.population.pool) m2 += (b.a.imag() - last) * (b.a.imag() - last);
  const double p = static_cast<double>(sol.population.pool.size());
  const double within = m2 / (p - 1.0) / p;
  sol.se_im_m = std::sqrt(within + between);
  return sol;
}

}  // namespace heavyell::rde
